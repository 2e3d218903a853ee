//! Multivector fields: partitions of a complex into orderly convex parts.

mod cvcmf;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::dynamics::DynamicalSystem;
use crate::error::{parse_error, Error, Result};
use crate::homology::relative_betti;

pub use cvcmf::{cvcmf, format_vectors, parse_vectors};

/// A partition of the simplices of a complex into orderly convex multivectors.
#[derive(Clone, Debug)]
pub struct MultivectorField<'k> {
    complex: &'k SimplicialComplex,
    parts: Vec<Vec<SimplexId>>,
    part_of: Vec<usize>,
}

/// Checks that `parts` is a partition of `complex` into orderly convex sets.
///
/// Part numbering is kept; members inside each part are sorted.
pub fn validate_mvf(complex: &SimplicialComplex, parts: Vec<Vec<SimplexId>>) -> Result<MultivectorField<'_>> {
    let n = complex.len();
    let mut part_of = vec![usize::MAX; n];
    let mut sorted = Vec::with_capacity(parts.len());
    for (p, mut part) in parts.into_iter().enumerate() {
        part.sort_unstable();
        if let Some(w) = part.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Overlap(w[0]));
        }
        for &s in &part {
            if s.index() >= n {
                return Err(Error::VertexOutOfRange { vertex: s.index(), count: n });
            }
            if part_of[s.index()] != usize::MAX {
                return Err(Error::Overlap(s));
            }
            part_of[s.index()] = p;
        }
        sorted.push(part);
    }
    if let Some(s) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::Omission(SimplexId::new(s)));
    }
    for (p, part) in sorted.iter().enumerate() {
        if let Some((lower, middle, upper)) = complex.convexity_witness(&complex.set_of(part.iter().copied())) {
            return Err(Error::NotConvex { part: p, lower, middle, upper });
        }
    }
    Ok(MultivectorField {
        complex,
        parts: sorted,
        part_of,
    })
}

impl<'k> MultivectorField<'k> {
    /// The field in which every simplex is its own multivector.
    pub fn singletons(complex: &'k SimplicialComplex) -> Self {
        MultivectorField {
            complex,
            parts: complex.ids().map(|s| vec![s]).collect(),
            part_of: (0..complex.len()).collect(),
        }
    }

    /// Builds a field from one label per simplex; parts are ordered by their
    /// smallest member.
    fn from_labels<L: Eq + std::hash::Hash>(complex: &'k SimplicialComplex, labels: impl Iterator<Item = L>) -> Result<Self> {
        let mut index: HashMap<L, usize> = HashMap::new();
        let mut parts: Vec<Vec<SimplexId>> = Vec::new();
        for (s, label) in labels.enumerate() {
            let next = parts.len();
            let p = *index.entry(label).or_insert(next);
            if p == next {
                parts.push(Vec::new());
            }
            parts[p].push(SimplexId::new(s));
        }
        validate_mvf(complex, parts)
    }

    pub fn complex(&self) -> &'k SimplicialComplex {
        self.complex
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<SimplexId>] {
        &self.parts
    }

    pub fn part(&self, p: usize) -> &[SimplexId] {
        &self.parts[p]
    }

    /// Index of the multivector containing `s`.
    pub fn part_of(&self, s: SimplexId) -> usize {
        self.part_of[s.index()]
    }

    /// The multivector containing `s`.
    pub fn multivector(&self, s: SimplexId) -> &[SimplexId] {
        &self.parts[self.part_of(s)]
    }

    /// `F(s) = cl s ∪ [s]`.
    pub fn generated_system(&self) -> DynamicalSystem<'k> {
        DynamicalSystem::from_fn(self.complex, |s| {
            let mut image = self.complex.faces_of(s);
            image.extend_from_slice(self.multivector(s));
            image
        })
        .expect("images lie in the complex")
    }

    /// Common refinement: `s` and `t` share a part iff they share a part in both fields.
    pub fn intersect(&self, other: &MultivectorField<'_>) -> Result<MultivectorField<'k>> {
        if self.complex.len() != other.complex.len() {
            return Err(Error::SizeMismatch(self.complex.len(), other.complex.len()));
        }
        Self::from_labels(
            self.complex,
            (0..self.complex.len()).map(|s| (self.part_of[s], other.part_of[s])),
        )
    }

    /// Every part of `self` lies inside a part of `other`.
    pub fn is_inscribed_in(&self, other: &MultivectorField<'_>) -> bool {
        self.complex.len() == other.complex.len()
            && self
                .parts
                .iter()
                .all(|part| part.iter().all(|&s| other.part_of(s) == other.part_of(part[0])))
    }

    /// Pulls `target` back along a simplicial map given by the image of every
    /// simplex of `source`. The map must preserve the face order.
    pub fn pullback(
        source: &'k SimplicialComplex,
        map: &[SimplexId],
        target: &MultivectorField<'_>,
    ) -> Result<MultivectorField<'k>> {
        if map.len() != source.len() {
            return Err(Error::SizeMismatch(map.len(), source.len()));
        }
        let tk = target.complex;
        if let Some(bad) = map.iter().find(|t| t.index() >= tk.len()) {
            return Err(Error::VertexOutOfRange { vertex: bad.index(), count: tk.len() });
        }
        for s in source.ids() {
            for &f in source.facets(s) {
                if !tk.is_face(map[f.index()], map[s.index()]) {
                    return Err(Error::NotOrderPreserving { face: f, coface: s });
                }
            }
        }
        Self::from_labels(source, map.iter().map(|&t| target.part_of(t)))
    }

    /// One line per part: `part: id id ...`.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for (p, part) in self.parts.iter().enumerate() {
            let _ = write!(out, "{p}:");
            for s in part {
                let _ = write!(out, " {s}");
            }
            out.push('\n');
        }
        out
    }

    /// Reads the output of [`format`](Self::format). Part labels must be
    /// `0, 1, ...` in order.
    pub fn parse(complex: &'k SimplicialComplex, text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (label, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_error(i + 1, "expected `part: ids`"))?;
            let label: usize = label
                .trim()
                .parse()
                .map_err(|_| parse_error(i + 1, format!("bad part label `{}`", label.trim())))?;
            if label != parts.len() {
                return Err(parse_error(i + 1, format!("expected part {}, found {label}", parts.len())));
            }
            let part = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map(SimplexId::new)
                        .map_err(|_| parse_error(i + 1, format!("bad simplex id `{tok}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            parts.push(part);
        }
        validate_mvf(complex, parts)
    }
}

/// A locally closed set `A` is trivial when `H(cl A, cl A \ A)` vanishes.
///
/// Returns [`Error::InvalidSubcomplex`] when `cl A \ A` is not closed.
pub fn is_trivial_morse(complex: &SimplicialComplex, set: &SimplexSet) -> Result<bool> {
    let closure = complex.closure(set);
    let members = closure.to_vec();
    let family: Vec<Vec<u32>> = members.iter().map(|&s| complex.vertices(s).to_vec()).collect();
    let sub = SimplicialComplex::from_closed_family(complex.num_vertices(), family);
    let mut mouth = sub.empty_set();
    for t in sub.ids() {
        let original = complex.find(sub.vertices(t)).expect("closure simplices exist");
        if !set.contains(original) {
            mouth.insert(t);
        }
    }
    let betti = relative_betti(&sub, &mouth)?;
    Ok(betti.iter().all(|&b| b == 0))
}
