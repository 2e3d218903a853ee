//! Combinatorial dynamical systems: multivalued maps on the simplices of a
//! complex, stored as digraphs.

mod scc;

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{parse_error, Error, Result};

pub(crate) use scc::tarjan;

/// A multivalued map `F: K -o K` as a digraph with an edge `s -> t` iff `t ∈ F(s)`.
///
/// Images may be empty; such a simplex has no outgoing edge.
#[derive(Clone, Debug)]
pub struct DynamicalSystem<'k> {
    complex: &'k SimplicialComplex,
    offsets: Vec<usize>,
    targets: Vec<SimplexId>,
}

impl<'k> DynamicalSystem<'k> {
    /// Builds the system from one image per simplex.
    pub fn from_images(complex: &'k SimplicialComplex, images: Vec<Vec<SimplexId>>) -> Result<Self> {
        if images.len() != complex.len() {
            return Err(Error::SizeMismatch(images.len(), complex.len()));
        }
        let mut offsets = Vec::with_capacity(images.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut image in images {
            if let Some(bad) = image.iter().find(|t| t.index() >= complex.len()) {
                return Err(Error::VertexOutOfRange {
                    vertex: bad.index(),
                    count: complex.len(),
                });
            }
            image.sort_unstable();
            image.dedup();
            targets.extend(image);
            offsets.push(targets.len());
        }
        Ok(DynamicalSystem {
            complex,
            offsets,
            targets,
        })
    }

    /// Builds the system from a function giving each image.
    pub fn from_fn(complex: &'k SimplicialComplex, mut image: impl FnMut(SimplexId) -> Vec<SimplexId>) -> Result<Self> {
        let images = complex.ids().map(&mut image).collect();
        Self::from_images(complex, images)
    }

    pub fn complex(&self) -> &'k SimplicialComplex {
        self.complex
    }

    /// `F(s)` in increasing id order.
    pub fn successors(&self, s: SimplexId) -> &[SimplexId] {
        &self.targets[self.offsets[s.index()]..self.offsets[s.index() + 1]]
    }

    pub fn image(&self, s: SimplexId) -> SimplexSet {
        self.complex.set_of(self.successors(s).iter().copied())
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    pub fn has_edge(&self, s: SimplexId, t: SimplexId) -> bool {
        self.successors(s).binary_search(&t).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (SimplexId, SimplexId)> + '_ {
        self.complex
            .ids()
            .flat_map(move |s| self.successors(s).iter().map(move |&t| (s, t)))
    }

    fn predecessors(&self) -> Vec<Vec<SimplexId>> {
        let mut preds = vec![Vec::new(); self.complex.len()];
        for (s, t) in self.edges() {
            preds[t.index()].push(s);
        }
        preds
    }

    /// Simplices of `a` through which a full solution inside `a` passes.
    pub fn invariant_part(&self, a: &SimplexSet) -> SimplexSet {
        let n = self.complex.len();
        let (comp, count) = tarjan(n, |v| a.contains(SimplexId::new(v)), |v| self.successors(SimplexId::new(v)));
        let cyclic = self.cyclic_components(&comp, count, a);
        let mut on_cycle = vec![false; n];
        for v in 0..n {
            on_cycle[v] = comp[v] != usize::MAX && cyclic[comp[v]];
        }

        // Forward closure of cycle nodes within `a`.
        let forward = self.sweep(a, &on_cycle, |v| self.successors(SimplexId::new(v)).to_vec());
        let preds = self.predecessors();
        let backward = self.sweep(a, &on_cycle, |v| preds[v].clone());
        self.complex
            .set_of((0..n).filter(|&v| forward[v] && backward[v]).map(SimplexId::new))
    }

    fn cyclic_components(&self, comp: &[usize], count: usize, a: &SimplexSet) -> Vec<bool> {
        let mut cyclic = vec![false; count];
        for s in a.iter() {
            let c = comp[s.index()];
            if self
                .successors(s)
                .iter()
                .any(|t| a.contains(*t) && comp[t.index()] == c)
            {
                cyclic[c] = true;
            }
        }
        cyclic
    }

    fn sweep(&self, a: &SimplexSet, seeds: &[bool], next: impl Fn(usize) -> Vec<SimplexId>) -> Vec<bool> {
        let mut seen = seeds.to_vec();
        let mut queue: VecDeque<usize> = (0..seeds.len()).filter(|&v| seeds[v]).collect();
        while let Some(v) = queue.pop_front() {
            for t in next(v) {
                if a.contains(t) && !seen[t.index()] {
                    seen[t.index()] = true;
                    queue.push_back(t.index());
                }
            }
        }
        seen
    }

    /// Every member of `a` lies on a full solution contained in `a`.
    pub fn is_invariant(&self, a: &SimplexSet) -> bool {
        self.invariant_part(a) == *a
    }

    /// The maximal invariant set `S(F)`.
    pub fn maximal_invariant_set(&self) -> SimplexSet {
        self.invariant_part(&self.complex.full_set())
    }

    /// `n` is closed, contains the invariant set `s`, and no walk in `n`
    /// with endpoints in `s` leaves `s`.
    pub fn is_isolating_neighborhood(&self, n: &SimplexSet, s: &SimplexSet) -> bool {
        if !self.complex.is_closed(n) || !s.is_subset(n) || !self.is_invariant(s) {
            return false;
        }
        let outside = n.difference(s);
        let mut seen = self.complex.empty_set();
        let mut queue = VecDeque::new();
        for a in s.iter() {
            for &t in self.successors(a) {
                if outside.contains(t) && seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for &t in self.successors(v) {
                if s.contains(t) {
                    return false;
                }
                if outside.contains(t) && seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        true
    }

    /// `s` is isolated by its own closure, hence by some closed set.
    pub fn is_isolated_invariant(&self, s: &SimplexSet) -> bool {
        self.is_isolating_neighborhood(&self.complex.closure(s), s)
    }

    /// Whether some walk (possibly of length zero) starts in `from` and ends in `to`.
    pub fn connections(&self, from: &SimplexSet, to: &SimplexSet) -> bool {
        if !from.is_disjoint(to) {
            return true;
        }
        let everything = self.complex.full_set();
        let mut seeds = vec![false; self.complex.len()];
        for s in from.iter() {
            seeds[s.index()] = true;
        }
        let reached = self.sweep(&everything, &seeds, |v| self.successors(SimplexId::new(v)).to_vec());
        to.iter().any(|t| reached[t.index()])
    }

    /// Strongly connected components carrying a cycle, sorted by smallest member.
    pub fn morse_sets(&self) -> Vec<SimplexSet> {
        self.decompose(false).sets
    }

    /// The minimal Morse decomposition with its partial order.
    pub fn minimal_morse_decomposition(&self) -> MorseDecomposition {
        self.decompose(true)
    }

    fn decompose(&self, with_order: bool) -> MorseDecomposition {
        let n = self.complex.len();
        let everything = self.complex.full_set();
        let (comp, count) = tarjan(n, |_| true, |v| self.successors(SimplexId::new(v)));
        let cyclic = self.cyclic_components(&comp, count, &everything);

        let mut members: Vec<Vec<SimplexId>> = vec![Vec::new(); count];
        for v in 0..n {
            if cyclic[comp[v]] {
                members[comp[v]].push(SimplexId::new(v));
            }
        }
        let mut morse: Vec<usize> = (0..count).filter(|&c| cyclic[c]).collect();
        morse.sort_unstable_by_key(|&c| members[c][0]);
        let mut rank = vec![usize::MAX; count];
        for (i, &c) in morse.iter().enumerate() {
            rank[c] = i;
        }
        let sets: Vec<SimplexSet> = morse
            .iter()
            .map(|&c| self.complex.set_of(members[c].iter().copied()))
            .collect();

        let mut below = vec![FixedBitSet::with_capacity(sets.len()); sets.len()];
        if with_order {
            let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); count];
            for v in 0..n {
                by_comp[comp[v]].push(v);
            }
            // Tarjan numbers sinks first, so successors are final when visited.
            let mut reach = vec![FixedBitSet::with_capacity(sets.len()); count];
            for c in 0..count {
                let mut acc = FixedBitSet::with_capacity(sets.len());
                for &v in &by_comp[c] {
                    for t in self.successors(SimplexId::new(v)) {
                        let d = comp[t.index()];
                        if d != c {
                            acc.union_with(&reach[d]);
                            if rank[d] != usize::MAX {
                                acc.insert(rank[d]);
                            }
                        }
                    }
                }
                reach[c] = acc;
            }
            for (i, &c) in morse.iter().enumerate() {
                below[i] = reach[c].clone();
            }
        }
        MorseDecomposition { sets, below }
    }

    /// One line per simplex: `id: succ succ ...`.
    pub fn format_digraph(&self) -> String {
        let mut out = String::new();
        for s in self.complex.ids() {
            let succ: Vec<String> = self.successors(s).iter().map(|t| t.to_string()).collect();
            let _ = writeln!(out, "{s}: {}", succ.join(" "));
        }
        out
    }

    /// Reads the format of [`format_digraph`](Self::format_digraph). Missing
    /// lines mean empty images.
    pub fn parse_digraph(complex: &'k SimplicialComplex, text: &str) -> Result<Self> {
        let mut images = vec![Vec::new(); complex.len()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, tail) = line
                .split_once(':')
                .ok_or_else(|| parse_error(i + 1, "expected `id: successors`"))?;
            let parse_id = |t: &str| -> Result<SimplexId> {
                let v: usize = t.trim().parse().map_err(|_| parse_error(i + 1, format!("bad id `{t}`")))?;
                if v >= complex.len() {
                    return Err(parse_error(i + 1, format!("id {v} out of range")));
                }
                Ok(SimplexId::new(v))
            };
            let s = parse_id(head)?;
            images[s.index()] = tail.split_whitespace().map(parse_id).collect::<Result<_>>()?;
        }
        Self::from_images(complex, images)
    }
}

/// Disjoint invariant sets with the partial order induced by reachability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseDecomposition {
    sets: Vec<SimplexSet>,
    // below[i] holds j iff M_i > M_j.
    below: Vec<FixedBitSet>,
}

impl MorseDecomposition {
    pub fn sets(&self) -> &[SimplexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `M_i > M_j`: some walk runs from `M_i` to `M_j`.
    pub fn is_above(&self, i: usize, j: usize) -> bool {
        self.below[i].contains(j)
    }

    /// All pairs `(i, j)` with `M_i > M_j`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.below[i].ones().map(move |j| (i, j)))
            .collect()
    }

    /// Index of the Morse set containing `s`.
    pub fn set_of(&self, s: SimplexId) -> Option<usize> {
        self.sets.iter().position(|m| m.contains(s))
    }

    pub fn union(&self, capacity: usize) -> SimplexSet {
        self.sets
            .iter()
            .fold(SimplexSet::empty(capacity), |acc, m| acc.union(m))
    }

    /// `set i: ids` lines followed by `above i j` lines for `M_i > M_j`.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for (i, m) in self.sets.iter().enumerate() {
            let _ = write!(out, "set {i}:");
            for s in m.iter() {
                let _ = write!(out, " {s}");
            }
            out.push('\n');
        }
        for (i, j) in self.order_pairs() {
            let _ = writeln!(out, "above {i} {j}");
        }
        out
    }
}
