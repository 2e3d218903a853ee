//! The topology that disconnects a Morse decomposition, and its order
//! complex.

use std::fmt::Write as _;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};

/// Order complex of a family of disjoint sets of simplices: its simplices are
/// the chains of the face order that stay inside one set.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    complex: SimplicialComplex,
    back: Vec<SimplexId>,
    labels: Vec<usize>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl OrderComplex {
    /// The chain complex as an abstract simplicial complex; vertex `i`
    /// stands for [`source`](Self::source)`(i)`.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn num_vertices(&self) -> usize {
        self.back.len()
    }

    /// Source simplex of nerve vertex `v`.
    pub fn source(&self, v: usize) -> SimplexId {
        self.back[v]
    }

    /// Index of the set owning nerve vertex `v`.
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Nerve vertex standing for source simplex `s`, if `s` is covered.
    pub fn vertex_of(&self, s: SimplexId) -> Option<usize> {
        match self.position.get(s.index()) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    /// Text dump: `v <vertex> <source> <label>` lines, then one
    /// `s <vertex>...` line per maximal chain.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for v in 0..self.back.len() {
            let _ = writeln!(out, "v {v} {} {}", self.back[v], self.labels[v]);
        }
        for t in self.complex.toplexes().filter(|&t| self.complex.dim(t) > 0) {
            out.push('s');
            for v in self.complex.vertices(t) {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Builds the order complex of `(∪ sets, ≤)` where two simplices are
/// comparable only if they are faces of one another and share a set.
///
/// The sets must be pairwise disjoint.
pub fn morse_nerve(complex: &SimplicialComplex, sets: &[SimplexSet]) -> OrderComplex {
    let mut label_of = vec![usize::MAX; complex.len()];
    for (i, set) in sets.iter().enumerate() {
        for s in set.iter() {
            debug_assert_eq!(label_of[s.index()], usize::MAX, "Morse sets overlap");
            label_of[s.index()] = i;
        }
    }
    let mut back = Vec::new();
    let mut labels = Vec::new();
    let mut position = vec![ABSENT; complex.len()];
    for s in complex.ids() {
        if label_of[s.index()] != usize::MAX {
            position[s.index()] = back.len() as u32;
            back.push(s);
            labels.push(label_of[s.index()]);
        }
    }

    let mut family: Vec<Vec<u32>> = Vec::new();
    let mut chain: Vec<SimplexId> = Vec::new();
    for &s in &back {
        chain.push(s);
        extend_chains(complex, &label_of, &position, &mut chain, &mut family);
        chain.pop();
    }
    OrderComplex {
        complex: SimplicialComplex::from_closed_family(back.len(), family),
        back,
        labels,
        position,
    }
}

fn extend_chains(
    complex: &SimplicialComplex,
    label_of: &[usize],
    position: &[u32],
    chain: &mut Vec<SimplexId>,
    family: &mut Vec<Vec<u32>>,
) {
    family.push(chain.iter().map(|s| position[s.index()]).collect());
    let top = *chain.last().expect("chain is nonempty");
    let label = label_of[top.index()];
    for c in complex.cofaces_of(top) {
        if c != top && label_of[c.index()] == label {
            chain.push(c);
            extend_chains(complex, label_of, position, chain, family);
            chain.pop();
        }
    }
}

/// The simplicial inclusion `source -> target` that is the identity on
/// underlying simplices, as the image of every simplex of `source`.
///
/// Fails with the first set of `source` that is not contained in a single
/// set of `target`; the `step` field of the error is left at zero.
pub fn nerve_inclusion(source: &OrderComplex, target: &OrderComplex) -> Result<Vec<SimplexId>> {
    let mut image_label: Vec<Option<usize>> = Vec::new();
    for v in 0..source.num_vertices() {
        let label = source.label(v);
        if image_label.len() <= label {
            image_label.resize(label + 1, None);
        }
        let violation = Error::RefinementViolation { step: 0, set: label };
        let w = target.vertex_of(source.source(v)).ok_or_else(|| violation.clone())?;
        match image_label[label] {
            None => image_label[label] = Some(target.label(w)),
            Some(l) if l == target.label(w) => {}
            Some(_) => return Err(violation),
        }
    }
    let mut buffer = Vec::new();
    Ok(source
        .complex
        .ids()
        .map(|t| {
            buffer.clear();
            buffer.extend(source.complex.vertices(t).iter().map(|&v| {
                target.vertex_of(source.source(v as usize)).expect("vertex checked above") as u32
            }));
            target.complex.find(&buffer).expect("chains of a refinement are chains of the target")
        })
        .collect())
}

/// Minimal open neighbourhoods `M ∩ star(s)` for `s ∈ M`, one per covered
/// simplex and deduplicated. Every open set of the topology is a union of
/// these.
pub fn tm_basis(complex: &SimplicialComplex, sets: &[SimplexSet]) -> Vec<SimplexSet> {
    let mut basis: Vec<SimplexSet> = Vec::new();
    for set in sets {
        for s in set.iter() {
            let cell = complex.upper_set(s).intersection(set);
            if !basis.contains(&cell) {
                basis.push(cell);
            }
        }
    }
    basis
}
