//! Blank-node colour refinement, canonical relabelling and dataset isomorphism.
//!
//! Colours are computed by iterated neighbourhood refinement: a blank node's
//! colour is the rank of (previous colour, sorted incident edges) among all
//! blank nodes. Ranks are invariant under relabelling, so colours can be used
//! both to order blank nodes canonically and to prune the bijection search.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::model::{BlankNode, NamedNode, Quad, QuadDataset, Subject, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Ground(Term),
    Blank(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Neighbour {
    Ground(Term),
    Blank(usize),
    Itself,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Edge {
    outgoing: bool,
    predicate: NamedNode,
    other: Neighbour,
    graph: Option<NamedNode>,
}

fn index_quads<'a>(quads: impl Iterator<Item = &'a Quad>, blanks: &mut Vec<BlankNode>, lookup: &mut HashMap<BlankNode, usize>) -> Vec<(Slot, Slot)> {
    let mut slot = |t: Term| match t {
        Term::BlankNode(b) => {
            let next = blanks.len();
            let idx = *lookup.entry(b.clone()).or_insert(next);
            if idx == next {
                blanks.push(b);
            }
            Slot::Blank(idx)
        }
        other => Slot::Ground(other),
    };
    quads
        .map(|q| (slot(q.subject.to_term()), slot(q.object.clone())))
        .collect()
}

/// Refines colours until the number of distinct colours is stable.
fn refine(n_blanks: usize, quads: &[&Quad], slots: &[(Slot, Slot)]) -> Vec<usize> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_blanks];
    for (i, (s, o)) in slots.iter().enumerate() {
        if let Slot::Blank(b) = s {
            incident[*b].push(i);
        }
        if let Slot::Blank(b) = o {
            if *s != Slot::Blank(*b) {
                incident[*b].push(i);
            }
        }
    }
    let mut colors = vec![0usize; n_blanks];
    let mut distinct = if n_blanks == 0 { 0 } else { 1 };
    loop {
        let signatures: Vec<(usize, Vec<Edge>)> = (0..n_blanks)
            .map(|b| {
                let mut edges: Vec<Edge> = incident[b]
                    .iter()
                    .flat_map(|&qi| {
                        let (s, o) = &slots[qi];
                        let q = quads[qi];
                        let colour_of = |slot: &Slot| match slot {
                            Slot::Ground(t) => Neighbour::Ground(t.clone()),
                            Slot::Blank(x) if *x == b => Neighbour::Itself,
                            Slot::Blank(x) => Neighbour::Blank(colors[*x]),
                        };
                        let mut out = Vec::with_capacity(2);
                        if *s == Slot::Blank(b) {
                            out.push(Edge {
                                outgoing: true,
                                predicate: q.predicate.clone(),
                                other: colour_of(o),
                                graph: q.graph.clone(),
                            });
                        }
                        if *o == Slot::Blank(b) {
                            out.push(Edge {
                                outgoing: false,
                                predicate: q.predicate.clone(),
                                other: colour_of(s),
                                graph: q.graph.clone(),
                            });
                        }
                        out
                    })
                    .collect();
                edges.sort();
                (colors[b], edges)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<Edge>), usize> = signatures
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let next_distinct = ranks.len();
        colors = next;
        if next_distinct == distinct {
            return colors;
        }
        distinct = next_distinct;
    }
}

/// Canonical labels `b0, b1, ...` assigned by first occurrence in the
/// colour-sorted quad sequence.
pub fn canonical_blank_labels(dataset: &QuadDataset) -> HashMap<BlankNode, BlankNode> {
    let quads: Vec<&Quad> = dataset.iter().collect();
    let mut blanks = Vec::new();
    let mut lookup = HashMap::new();
    let slots = index_quads(quads.iter().copied(), &mut blanks, &mut lookup);
    if blanks.is_empty() {
        return HashMap::new();
    }
    let colors = refine(blanks.len(), &quads, &slots);

    // Sort key hides labels behind colours; ties fall back to dataset order.
    let key = |i: usize| {
        let q = quads[i];
        let (s, o) = &slots[i];
        let k = |slot: &Slot| match slot {
            Slot::Ground(t) => (0u8, Some(t.clone()), 0usize),
            Slot::Blank(b) => (1u8, None, colors[*b]),
        };
        (q.graph.clone(), k(s), q.predicate.clone(), k(o))
    };
    let mut order: Vec<usize> = (0..quads.len()).collect();
    order.sort_by_cached_key(|&i| key(i));

    let mut labels = HashMap::new();
    let assign = |slot: &Slot, labels: &mut HashMap<BlankNode, BlankNode>| {
        if let Slot::Blank(b) = slot {
            let next = labels.len();
            labels
                .entry(blanks[*b].clone())
                .or_insert_with(|| BlankNode::new(format!("b{next}")).expect("valid label"));
        }
    };
    for i in order {
        let (s, o) = &slots[i];
        assign(s, &mut labels);
        assign(o, &mut labels);
    }
    labels
}

/// Applies a blank-node renaming to every quad.
pub fn relabel(dataset: &QuadDataset, labels: &HashMap<BlankNode, BlankNode>) -> QuadDataset {
    let map_term = |t: &Term| match t {
        Term::BlankNode(b) => Term::BlankNode(labels.get(b).cloned().unwrap_or_else(|| b.clone())),
        other => other.clone(),
    };
    let mut out: QuadDataset = dataset
        .iter()
        .map(|q| Quad {
            graph: q.graph.clone(),
            subject: Subject::try_from(map_term(&q.subject.to_term())).expect("subject stays non-literal"),
            predicate: q.predicate.clone(),
            object: map_term(&q.object),
        })
        .collect();
    for (p, iri) in dataset.prefixes() {
        out.set_prefix(p.clone(), iri.clone());
    }
    out
}

/// True iff some bijection between blank nodes maps `a` exactly onto `b`.
pub fn isomorphic(a: &QuadDataset, b: &QuadDataset) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let has_blank = |q: &Quad| matches!(q.subject, Subject::BlankNode(_)) || q.object.is_blank_node();
    let ground_a: Vec<&Quad> = a.iter().filter(|q| !has_blank(q)).collect();
    let ground_b: Vec<&Quad> = b.iter().filter(|q| !has_blank(q)).collect();
    if ground_a != ground_b {
        return false;
    }
    let blank_a: Vec<&Quad> = a.iter().filter(|q| has_blank(q)).collect();
    let blank_b: Vec<&Quad> = b.iter().filter(|q| has_blank(q)).collect();
    if blank_a.is_empty() {
        return true;
    }

    // Refine both sides jointly so colours are comparable across them.
    let mut blanks = Vec::new();
    let mut lookup_a = HashMap::new();
    let slots_a = index_quads(blank_a.iter().copied(), &mut blanks, &mut lookup_a);
    let n_a = blanks.len();
    let mut blanks_b = Vec::new();
    let mut lookup_b = HashMap::new();
    let slots_b = index_quads(blank_b.iter().copied(), &mut blanks_b, &mut lookup_b);
    let n_b = blanks_b.len();
    if n_a != n_b {
        return false;
    }
    let shift = |s: &Slot| match s {
        Slot::Blank(x) => Slot::Blank(x + n_a),
        g => g.clone(),
    };
    let mut all_slots = slots_a.clone();
    all_slots.extend(slots_b.iter().map(|(s, o)| (shift(s), shift(o))));
    let all_quads: Vec<&Quad> = blank_a.iter().chain(blank_b.iter()).copied().collect();
    let colors = refine(n_a + n_b, &all_quads, &all_slots);

    let mut histogram: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (i, c) in colors.iter().enumerate() {
        let e = histogram.entry(*c).or_default();
        if i < n_a {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    if histogram.values().any(|(x, y)| x != y) {
        return false;
    }

    let target: BTreeSet<(Slot, NamedNode, Slot, Option<NamedNode>)> = blank_b
        .iter()
        .zip(&slots_b)
        .map(|(q, (s, o))| (s.clone(), q.predicate.clone(), o.clone(), q.graph.clone()))
        .collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_a];
    for (i, (s, o)) in slots_a.iter().enumerate() {
        for slot in [s, o] {
            if let Slot::Blank(x) = slot {
                if !incident[*x].contains(&i) {
                    incident[*x].push(i);
                }
            }
        }
    }
    // Smallest colour classes first.
    let mut order: Vec<usize> = (0..n_a).collect();
    order.sort_by_key(|&x| (histogram[&colors[x]].0, colors[x], x));

    let search = Search {
        colors: &colors,
        n_a,
        slots_a: &slots_a,
        quads_a: &blank_a,
        incident: &incident,
        target: &target,
        order: &order,
    };
    let mut mapping = vec![None; n_a];
    let mut used = vec![false; n_b];
    search.run(0, &mut mapping, &mut used)
}

struct Search<'a> {
    colors: &'a [usize],
    n_a: usize,
    slots_a: &'a [(Slot, Slot)],
    quads_a: &'a [&'a Quad],
    incident: &'a [Vec<usize>],
    target: &'a BTreeSet<(Slot, NamedNode, Slot, Option<NamedNode>)>,
    order: &'a [usize],
}

impl Search<'_> {
    fn run(&self, depth: usize, mapping: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..used.len() {
            if used[y] || self.colors[self.n_a + y] != self.colors[x] {
                continue;
            }
            mapping[x] = Some(y);
            used[y] = true;
            if self.consistent(x, mapping) && self.run(depth + 1, mapping, used) {
                return true;
            }
            mapping[x] = None;
            used[y] = false;
        }
        false
    }

    fn consistent(&self, x: usize, mapping: &[Option<usize>]) -> bool {
        self.incident[x].iter().all(|&qi| {
            let (s, o) = &self.slots_a[qi];
            let map = |slot: &Slot| match slot {
                Slot::Ground(t) => Some(Slot::Ground(t.clone())),
                Slot::Blank(b) => mapping[*b].map(Slot::Blank),
            };
            match (map(s), map(o)) {
                (Some(s), Some(o)) => {
                    let q = self.quads_a[qi];
                    self.target.contains(&(s, q.predicate.clone(), o, q.graph.clone()))
                }
                // not fully mapped yet
                _ => true,
            }
        })
    }
}
