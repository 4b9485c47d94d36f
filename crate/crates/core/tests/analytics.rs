mod common;

use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, Duration, Utc};
use proptest::prelude::*;

use qualcube::analytics::{
    filter_observations, rank, six_star, trend, FilterCriteria, MissingPolicy, Normalization, RankingProfile,
};
use qualcube::rdf::NamedNode;
use qualcube::vocab::{ns, shipped_descriptors, TBox};

use common::{at, nn, observation_graph};

const METRICS: [&str; 3] = [ns::DQM_DATATYPE_CONSISTENCY, ns::DQM_LABELED_RESOURCES, ns::DQM_EXTERNAL_LINKAGE];

fn tbox() -> TBox {
    shipped_descriptors().1
}

fn version(i: usize) -> String {
    format!("http://example.org/ds/v{i}")
}

/// `cells[candidate][metric]`: each a list of (value in eighths, day offset).
type Cells = Vec<Vec<Vec<(u8, i64)>>>;

fn cells_strategy(candidates: usize) -> impl Strategy<Value = Cells> {
    prop::collection::vec(
        prop::collection::vec(prop::collection::vec((0u8..=8, 0i64..30), 0..3), METRICS.len()),
        candidates,
    )
}

fn rows_of(cells: &Cells) -> Vec<(String, &'static str, f64, DateTime<Utc>)> {
    let mut rows = Vec::new();
    for (c, metrics) in cells.iter().enumerate() {
        for (m, obs) in metrics.iter().enumerate() {
            for (eighths, day) in obs {
                rows.push((version(c), METRICS[m], f64::from(*eighths) / 8.0, at(2014, 1, 1) + Duration::days(*day)));
            }
        }
    }
    rows
}

fn graph_of(rows: &[(String, &'static str, f64, DateTime<Utc>)]) -> qualcube::rdf::QuadDataset {
    let borrowed: Vec<(&str, &str, f64, DateTime<Utc>)> =
        rows.iter().map(|(on, c, v, t)| (on.as_str(), *c, *v, *t)).collect();
    observation_graph(&borrowed)
}

/// Latest value per (candidate, metric) straight from the rows; ties on the
/// date go to the later row, matching the fixture's ascending IRIs.
fn latest_by_hand(rows: &[(String, &'static str, f64, DateTime<Utc>)], on: &str, metric: &str) -> Option<f64> {
    let mut best: Option<(DateTime<Utc>, usize, f64)> = None;
    for (i, (o, m, v, t)) in rows.iter().enumerate() {
        if o == on && *m == metric {
            // observation IRIs are .../obs/{i}: compare them as strings
            let beats = match best {
                None => true,
                Some((bt, bi, _)) => *t > bt || (*t == bt && i.to_string() > bi.to_string()),
            };
            if beats {
                best = Some((*t, i, *v));
            }
        }
    }
    best.map(|(_, _, v)| v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn rank_order_survives_positive_weight_scaling(
        cells in cells_strategy(5),
        weights in prop::collection::vec(0u8..=6, METRICS.len()),
        scale_num in 1u32..=40,
        scale_shift in 0u32..=4,
        exclude in any::<bool>(),
    ) {
        prop_assume!(weights.iter().any(|w| *w > 0));
        let rows = rows_of(&cells);
        let data = graph_of(&rows);
        let t = tbox();
        let candidates: BTreeSet<NamedNode> = (0..5).map(|i| nn(&version(i))).collect();
        let policy = if exclude { MissingPolicy::Exclude } else { MissingPolicy::ScoreZero };
        let profile = |k: f64| RankingProfile {
            weights: METRICS.iter().zip(&weights).map(|(m, w)| (nn(m), f64::from(*w) * k)).collect(),
            normalization: Normalization::None,
            missing_policy: policy,
        };
        let base = rank(&candidates, &data, &profile(1.0), &t).unwrap();
        let k = f64::from(scale_num) / f64::from(1u32 << scale_shift);
        let scaled = rank(&candidates, &data, &profile(k), &t).unwrap();
        let order = |r: &[(NamedNode, f64)]| r.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>();
        prop_assert_eq!(order(&base), order(&scaled));

        // independent weighted sums
        let mut expected: Vec<(String, f64)> = Vec::new();
        'candidates: for c in 0..5 {
            let mut score = 0.0;
            for (m, w) in METRICS.iter().zip(&weights) {
                if *w == 0 {
                    continue;
                }
                match latest_by_hand(&rows, &version(c), m) {
                    Some(v) => score += f64::from(*w) * v,
                    None if exclude => continue 'candidates,
                    None => {}
                }
            }
            expected.push((version(c), score));
        }
        expected.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let got: Vec<(String, f64)> = base.iter().map(|(c, s)| (c.as_str().to_owned(), *s)).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn duration_rescaling_is_scale_invariant_too(
        latencies in prop::collection::vec(prop::option::of(1u16..2000), 4),
        w in 1u8..10,
        k in 1u32..50,
    ) {
        let rows: Vec<(String, &'static str, f64, DateTime<Utc>)> = latencies
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.map(|ms| (version(i), ns::DQM_ENDPOINT_LATENCY, f64::from(ms) / 1000.0, at(2014, 2, 1))))
            .collect();
        let data = graph_of(&rows);
        let t = tbox();
        let candidates: BTreeSet<NamedNode> = (0..4).map(|i| nn(&version(i))).collect();
        let profile = |weight: f64| RankingProfile {
            weights: BTreeMap::from([(nn(ns::DQM_ENDPOINT_LATENCY), weight)]),
            normalization: Normalization::MinMaxWithinCohort,
            missing_policy: MissingPolicy::Exclude,
        };
        let a = rank(&candidates, &data, &profile(f64::from(w)), &t).unwrap();
        let b = rank(&candidates, &data, &profile(f64::from(w) * f64::from(k)), &t).unwrap();
        let order = |r: &[(NamedNode, f64)]| r.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>();
        prop_assert_eq!(order(&a), order(&b));
        // shortest latency first
        let mut present: Vec<(u16, String)> = latencies.iter().enumerate().filter_map(|(i, l)| l.map(|ms| (ms, version(i)))).collect();
        present.sort();
        if let (Some((fastest, _)), Some((top, _))) = (present.first(), a.first()) {
            let top_ms = latencies[top.as_str().trim_start_matches("http://example.org/ds/v").parse::<usize>().unwrap()].unwrap();
            prop_assert_eq!(top_ms, *fastest);
        }
    }

    #[test]
    fn conjunctive_filter_is_the_intersection(
        cells in cells_strategy(4),
        on in 0usize..4,
        from in 0i64..30,
        len in 0i64..30,
        threshold in 0u8..=8,
        class in 0usize..4,
    ) {
        let rows = rows_of(&cells);
        let data = graph_of(&rows);
        let t = tbox();
        let classes = [ns::DQM_DATATYPE_CONSISTENCY, ns::DQM_LABELED_RESOURCES, "http://www.diachron-fp7.eu/dqm#Understandability", "http://www.diachron-fp7.eu/dqm#SyntacticValidity"];
        let range = (at(2014, 1, 1) + Duration::days(from), at(2014, 1, 1) + Duration::days(from + len));
        let limit = f64::from(threshold) / 8.0;
        let make = |c: bool, o: bool, d: bool, v: bool| FilterCriteria {
            class: c.then(|| nn(classes[class])),
            computed_on: o.then(|| nn(&version(on))),
            date_range: d.then_some(range),
            value_predicate: if v { Some(Box::new(move |x: f64| x >= limit)) } else { None },
        };
        let iris = |crit: &FilterCriteria| -> BTreeSet<NamedNode> {
            filter_observations(&data, crit, &t).into_iter().map(|r| r.iri).collect()
        };
        let singles = [iris(&make(true, false, false, false)), iris(&make(false, true, false, false)),
            iris(&make(false, false, true, false)), iris(&make(false, false, false, true))];
        let everything = iris(&make(false, false, false, false));
        prop_assert_eq!(everything.len(), rows.len());
        for mask in 0u8..16 {
            let bit = |i: u8| mask & (1 << i) != 0;
            let got = iris(&make(bit(0), bit(1), bit(2), bit(3)));
            let mut expected = everything.clone();
            for (i, s) in singles.iter().enumerate() {
                if bit(i as u8) {
                    expected = expected.intersection(s).cloned().collect();
                }
            }
            prop_assert_eq!(got, expected, "mask {}", mask);
        }
        // each single filter checked against the rows
        let by_row = |f: &dyn Fn(&(String, &'static str, f64, DateTime<Utc>)) -> bool| -> BTreeSet<NamedNode> {
            rows.iter().enumerate().filter(|(_, r)| f(r)).map(|(i, _)| nn(&format!("http://example.org/q/obs/{i}"))).collect()
        };
        prop_assert_eq!(&singles[1], &by_row(&|r| r.0 == version(on)));
        prop_assert_eq!(&singles[2], &by_row(&|r| range.0 <= r.3 && r.3 <= range.1));
        prop_assert_eq!(&singles[3], &by_row(&|r| r.2 >= limit));
        let class_rows = match class {
            0 | 3 => by_row(&|r| r.1 == ns::DQM_DATATYPE_CONSISTENCY),
            _ => by_row(&|r| r.1 == ns::DQM_LABELED_RESOURCES),
        };
        // the fixture has no dimension instances, so dimension classes only
        // match through the metric class hierarchy, which they are not part of
        if class < 2 {
            prop_assert_eq!(&singles[0], &class_rows);
        } else {
            prop_assert!(singles[0].is_empty());
        }
    }

    #[test]
    fn trend_is_sorted_and_stable_under_permutation(
        days in prop::collection::vec(0i64..365, 2..8),
        values in prop::collection::vec(0u8..=8, 8),
        perm_seed in any::<u64>(),
    ) {
        // one observation per version; versions named independently of order
        let rows: Vec<(String, &'static str, f64, DateTime<Utc>)> = days
            .iter()
            .enumerate()
            .map(|(i, d)| (version(i), ns::DQM_LABELED_RESOURCES, f64::from(values[i]) / 8.0, at(2014, 1, 1) + Duration::days(*d)))
            .collect();
        let data = graph_of(&rows);
        let t = tbox();
        let class = nn(ns::DQM_LABELED_RESOURCES);
        let mut chronological: Vec<usize> = (0..days.len()).collect();
        chronological.sort_by_key(|i| (days[*i], version(*i)));
        let versions: Vec<NamedNode> = chronological.iter().map(|i| nn(&version(*i))).collect();
        let series = trend(&data, &class, &versions, &t).unwrap();
        prop_assert!(series.skipped.is_empty());
        prop_assert!(series.points.windows(2).all(|w| w[0].timestamp <= w[1].timestamp));
        for (p, i) in series.points.iter().zip(&chronological) {
            prop_assert_eq!(p.value, f64::from(values[*i]) / 8.0);
        }

        let mut shuffled = versions.clone();
        let mut s = perm_seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = trend(&data, &class, &shuffled, &t).unwrap();
        for (v, p) in shuffled.iter().zip(&permuted.points) {
            let same = series.points.iter().find(|q| &q.computed_on == v).unwrap();
            prop_assert_eq!(p, same);
        }
        // re-sorting a permuted request gives back the chronological series
        let mut resorted = permuted.points.clone();
        resorted.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.computed_on.cmp(&b.computed_on)));
        prop_assert_eq!(resorted, series.points);
    }
}

#[test]
fn six_star_needs_five_base_stars_and_every_threshold() {
    let t = tbox();
    let on = version(0);
    let thresholds: BTreeMap<NamedNode, f64> = METRICS.iter().map(|m| (nn(m), 0.5)).collect();
    // below, exactly at, above, absent
    let options = [Some(0.25), Some(0.5), Some(0.75), None];
    let mut awarded = 0;
    for a in options {
        for b in options {
            for c in options {
                let rows: Vec<(&str, &str, f64, DateTime<Utc>)> = [a, b, c]
                    .iter()
                    .zip(METRICS)
                    .filter_map(|(v, m)| v.map(|v| (on.as_str(), m, v, at(2014, 3, 1))))
                    .collect();
                let data = observation_graph(&rows);
                let all_met = [a, b, c].iter().all(|v| v.is_some_and(|v| v >= 0.5));
                for base in 0u8..=7 {
                    let r = six_star(&nn(&on), &data, &thresholds, base, &t);
                    let clamped = base.min(5);
                    let expect = if clamped == 5 && all_met { 6 } else { clamped };
                    assert_eq!(r.stars, expect, "{a:?} {b:?} {c:?} base {base}");
                    assert_eq!(r.reasons.is_empty(), expect == 6);
                    awarded += usize::from(r.stars == 6);
                }
            }
        }
    }
    // 2^3 passing combinations times bases 5, 6 and 7
    assert_eq!(awarded, 8 * 3);
}
