use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, Utc};
use serde::Deserialize;
use thiserror::Error;

use super::{latest, observations, ObservationRecord};
use crate::rdf::{NamedNode, QuadDataset};
use crate::vocab::{ns, TBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    None,
    /// Duration-valued metrics are rescaled to [0,1] across the candidates,
    /// shortest duration scoring 1.
    MinMaxWithinCohort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingPolicy {
    /// A missing metric contributes nothing.
    #[default]
    ScoreZero,
    /// Candidates missing any positively weighted metric are dropped.
    Exclude,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankingProfile {
    pub weights: BTreeMap<NamedNode, f64>,
    pub normalization: Normalization,
    pub missing_policy: MissingPolicy,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("invalid ranking profile: {0}")]
    InvalidProfile(String),
}

impl RankingProfile {
    pub fn validate(&self) -> Result<(), RankError> {
        if let Some((m, w)) = self.weights.iter().find(|(_, w)| !w.is_finite() || **w < 0.0) {
            return Err(RankError::InvalidProfile(format!("weight {w} for {m} is not a non-negative number")));
        }
        if !self.weights.values().any(|w| *w > 0.0) {
            return Err(RankError::InvalidProfile("no strictly positive weight".into()));
        }
        Ok(())
    }
}

fn is_duration_metric(class: &NamedNode, tbox: &TBox, cohort: &[&ObservationRecord]) -> bool {
    !tbox.units_of(class).is_empty() || cohort.iter().any(|o| o.unit_measure.is_some())
}

/// Weighted sum of each candidate's latest metric values, highest first;
/// equal scores order by IRI.
pub fn rank(
    candidates: &BTreeSet<NamedNode>,
    data: &QuadDataset,
    profile: &RankingProfile,
    tbox: &TBox,
) -> Result<Vec<(NamedNode, f64)>, RankError> {
    profile.validate()?;
    let records = observations(data);
    let mut scores: BTreeMap<&NamedNode, f64> = candidates.iter().map(|c| (c, 0.0)).collect();
    let mut excluded: BTreeSet<&NamedNode> = BTreeSet::new();
    for (metric, &weight) in profile.weights.iter().filter(|(_, w)| **w > 0.0) {
        let cohort: Vec<(&NamedNode, &ObservationRecord)> = candidates
            .iter()
            .filter_map(|c| latest(&records, metric, c, tbox).map(|o| (c, o)))
            .filter(|(_, o)| o.numeric_value().is_some())
            .collect();
        let present: BTreeSet<&NamedNode> = cohort.iter().map(|(c, _)| *c).collect();
        if profile.missing_policy == MissingPolicy::Exclude {
            excluded.extend(candidates.iter().filter(|c| !present.contains(c)));
        }
        let obs: Vec<&ObservationRecord> = cohort.iter().map(|(_, o)| *o).collect();
        let rescale = profile.normalization == Normalization::MinMaxWithinCohort && is_duration_metric(metric, tbox, &obs);
        let values: Vec<f64> = obs.iter().map(|o| o.numeric_value().expect("filtered")).collect();
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
        for ((c, _), v) in cohort.iter().zip(values) {
            let v = if !rescale {
                v
            } else if hi > lo {
                (hi - v) / (hi - lo)
            } else {
                0.5
            };
            *scores.get_mut(c).expect("candidate") += weight * v;
        }
    }
    let mut out: Vec<(NamedNode, f64)> = scores
        .into_iter()
        .filter(|(c, _)| !excluded.contains(c))
        .map(|(c, s)| (c.clone(), s))
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendPoint {
    pub computed_on: NamedNode,
    pub timestamp: DateTime<Utc>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendSeries {
    pub metric_class: NamedNode,
    pub points: Vec<TrendPoint>,
    /// Versions without a usable observation.
    pub skipped: Vec<NamedNode>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TrendError {
    #[error("{class} has non-numeric expected datatype {datatype}")]
    NonNumeric { class: NamedNode, datatype: NamedNode },
}

/// One point per version, in the caller's version order, taken from the
/// latest observation of `class` on that version.
pub fn trend(
    data: &QuadDataset,
    class: &NamedNode,
    versions: &[NamedNode],
    tbox: &TBox,
) -> Result<TrendSeries, TrendError> {
    for dt in tbox.expected_data_types_of(class) {
        if dt != ns::XSD_BOOLEAN && !ns::NUMERIC_DATATYPES.contains(&dt.as_str()) {
            return Err(TrendError::NonNumeric {
                class: class.clone(),
                datatype: dt,
            });
        }
    }
    let records = observations(data);
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    let mut seen = BTreeSet::new();
    for v in versions {
        if !seen.insert(v) {
            continue;
        }
        match latest(&records, class, v, tbox).and_then(|o| o.numeric_value().map(|x| (o, x))) {
            Some((o, value)) => points.push(TrendPoint {
                computed_on: v.clone(),
                timestamp: o.timestamp,
                value,
            }),
            None => skipped.push(v.clone()),
        }
    }
    Ok(TrendSeries {
        metric_class: class.clone(),
        points,
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarRating {
    pub stars: u8,
    /// Why the quality star was withheld; empty when awarded.
    pub reasons: Vec<String>,
}

/// Adds the quality star to a five-star dataset whose latest observations
/// meet every threshold. `base_stars` above 5 is clamped to 5.
pub fn six_star(
    computed_on: &NamedNode,
    data: &QuadDataset,
    thresholds: &BTreeMap<NamedNode, f64>,
    base_stars: u8,
    tbox: &TBox,
) -> StarRating {
    let base = base_stars.min(5);
    let records = observations(data);
    let mut reasons = Vec::new();
    if base < 5 {
        reasons.push(format!("base rating is {base} stars; the quality star needs 5"));
    }
    for (metric, minimum) in thresholds {
        match latest(&records, metric, computed_on, tbox).and_then(ObservationRecord::numeric_value) {
            None => reasons.push(format!("no observation of {metric}")),
            Some(v) if v < *minimum => reasons.push(format!("{metric} is {v}, below the minimum {minimum}")),
            Some(_) => {}
        }
    }
    StarRating {
        stars: if reasons.is_empty() { base + 1 } else { base },
        reasons,
    }
}
