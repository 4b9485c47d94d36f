//! Random daQ-shaped TBox+ABox fixtures and a chain-enumerating grouping
//! oracle that reads nothing but N-Quads lines.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qualcube::rdf::{Quad, QuadDataset};
use qualcube::vocab::{builtin_daq_tbox, ns, TBox};

use super::nn;
use super::oracle::{self, Obj};

pub const EX: &str = "http://example.org/g/";
const SUB_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
const SUB_PROPERTY: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";

pub fn ex(local: &str) -> String {
    format!("{EX}{local}")
}

/// Random class and property hierarchies hung below the daQ roots, plus an
/// instance layer with typed resources, scaffold links and observations.
pub fn fixture(rng: &mut ChaCha8Rng) -> QuadDataset {
    let mut d = QuadDataset::new();
    let graphs = [None, Some(nn(&ex("qg1"))), Some(nn(&ex("qg2")))];
    let add = |d: &mut QuadDataset, rng: &mut ChaCha8Rng, s: &str, p: &str, o: &str| {
        let g = graphs.choose(rng).unwrap().clone();
        d.insert(Quad::new(nn(s), nn(p), nn(o), g));
    };

    let mut classes: Vec<String> = Vec::new();
    for (root, stem, n) in [
        (ns::DAQ_CATEGORY, "Cat", 3),
        (ns::DAQ_DIMENSION, "Dim", 4),
        (ns::DAQ_METRIC_CLASS, "Met", 6),
    ] {
        for i in 0..n {
            let c = ex(&format!("{stem}{i}"));
            // attach to the root or to an earlier sibling, sometimes both
            let parent = if i > 0 && rng.gen_bool(0.5) {
                ex(&format!("{stem}{}", rng.gen_range(0..i)))
            } else {
                root.to_owned()
            };
            add(&mut d, rng, &c, SUB_CLASS, &parent);
            if rng.gen_bool(0.1) {
                add(&mut d, rng, &c, SUB_CLASS, root);
            }
            classes.push(c);
        }
    }
    classes.push(ex("Unrelated"));

    let mut dim_props = Vec::new();
    let mut metric_props = Vec::new();
    for (root, stem, out) in [
        (ns::DAQ_HAS_DIMENSION, "hd", &mut dim_props),
        (ns::DAQ_HAS_METRIC, "hm", &mut metric_props),
    ] {
        out.push(root.to_owned());
        for i in 0..3 {
            let p = ex(&format!("{stem}{i}"));
            let parent = out.choose(rng).unwrap().clone();
            add(&mut d, rng, &p, SUB_PROPERTY, &parent);
            out.push(p);
        }
    }
    let noise_props = [ex("seeAlso"), ex("hdLike")];

    let instances: Vec<String> = (0..rng.gen_range(5..25)).map(|i| ex(&format!("i{i}"))).collect();
    for x in &instances {
        for _ in 0..rng.gen_range(0..3) {
            let c = classes.choose(rng).unwrap().clone();
            add(&mut d, rng, x, ns::RDF_TYPE, &c);
        }
    }
    let budget = rng.gen_range(20..400);
    let mut next_obs = 0;
    while d.len() < budget {
        let s = instances.choose(rng).unwrap();
        let o = instances.choose(rng).unwrap();
        let props: Option<&[String]> = match rng.gen_range(0..6) {
            0 => Some(&dim_props),
            1 => Some(&metric_props),
            2 => Some(&noise_props),
            _ => None,
        };
        match props {
            Some(props) => {
                let p = props.choose(rng).unwrap().clone();
                add(&mut d, rng, s, &p, o);
            }
            None => {
                let o = ex(&format!("obs{next_obs}"));
                next_obs += 1;
                add(&mut d, rng, s, ns::DAQ_HAS_OBSERVATION, &o);
                add(&mut d, rng, &o, ns::RDF_TYPE, ns::QB_OBSERVATION);
            }
        }
    }
    d
}

pub struct Edges(Vec<(String, String, String)>);

impl Edges {
    pub fn from_nquads(text: &str) -> Self {
        let strip = |s: &str| s.trim_start_matches('<').trim_end_matches('>').to_owned();
        Edges(
            oracle::lines(text)
                .into_iter()
                .filter_map(|l| match l.object {
                    Obj::Iri(o) if l.subject.starts_with('<') => Some((strip(&l.subject), l.predicate, o)),
                    _ => None,
                })
                .collect(),
        )
    }

    /// Everything that reaches `top` over `link`, `top` included, by
    /// relaxing until nothing changes.
    fn below(&self, top: &str, link: &str) -> BTreeSet<String> {
        let mut found = BTreeSet::from([top.to_owned()]);
        loop {
            let before = found.len();
            for (s, p, o) in &self.0 {
                if p == link && found.contains(o) {
                    found.insert(s.clone());
                }
            }
            if found.len() == before {
                return found;
            }
        }
    }

    fn objects(&self, s: &str, props: &BTreeSet<String>) -> Vec<&str> {
        self.0
            .iter()
            .filter(|(s2, p, _)| s2 == s && props.contains(p))
            .map(|(_, _, o)| o.as_str())
            .collect()
    }
}

/// Every observation at the end of one of the chains
/// `x hasObservation o`, `x hasMetric* m hasObservation o` and
/// `x hasDimension* d hasMetric* m hasObservation o`, for `x` typed with a
/// subclass of `class`.
pub fn brute_force(e: &Edges, class: &str) -> BTreeSet<String> {
    let classes = e.below(class, SUB_CLASS);
    let dim = e.below(ns::DAQ_HAS_DIMENSION, SUB_PROPERTY);
    let met = e.below(ns::DAQ_HAS_METRIC, SUB_PROPERTY);
    let obs = BTreeSet::from([ns::DAQ_HAS_OBSERVATION.to_owned()]);
    let xs: BTreeSet<&str> = e
        .0
        .iter()
        .filter(|(_, p, o)| p == ns::RDF_TYPE && classes.contains(o))
        .map(|(s, _, _)| s.as_str())
        .collect();
    let mut out = BTreeSet::new();
    for x in xs {
        out.extend(e.objects(x, &obs).into_iter().map(str::to_owned));
        for m in e.objects(x, &met) {
            out.extend(e.objects(m, &obs).into_iter().map(str::to_owned));
        }
        for d in e.objects(x, &dim) {
            for m in e.objects(d, &met) {
                out.extend(e.objects(m, &obs).into_iter().map(str::to_owned));
            }
        }
    }
    out
}

pub fn closed_tbox(data: &QuadDataset) -> TBox {
    let mut t = builtin_daq_tbox();
    t.merge(&TBox::from_dataset(data));
    t.closure()
}

/// Classes worth grouping by in a [`fixture`].
pub fn queried_classes() -> Vec<String> {
    let mut out: Vec<String> = (0..3).map(|k| ex(&format!("Cat{k}"))).collect();
    out.extend((0..4).map(|k| ex(&format!("Dim{k}"))));
    out.extend((0..6).map(|k| ex(&format!("Met{k}"))));
    out.extend([ns::DAQ_CATEGORY, ns::DAQ_DIMENSION, ns::DAQ_METRIC_CLASS].map(str::to_owned));
    out.push(ex("Unrelated"));
    out
}
