//! Simplicial complexes viewed as finite T0 spaces.
//!
//! The face relation `s <= t` (s is a face of t) is the specialization
//! order of the Alexandrov topology: open sets are upper sets (closed under
//! taking cofaces) and closed sets are lower sets (closed under taking faces).
//! Simplex ids are assigned in `(dimension, lexicographic vertex list)` order,
//! which is a linear extension of the face order.

mod geometry;
pub mod mesh_io;
mod predicates;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::util::UnionFind;

pub use geometry::{Geometry, Point};

/// Dense index of a simplex inside its owning complex.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId(u32);

impl SimplexId {
    pub fn new(index: usize) -> Self {
        SimplexId(u32::try_from(index).expect("simplex index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for SimplexId {
    fn from(index: usize) -> Self {
        SimplexId::new(index)
    }
}

/// A subset of the simplices of one complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplexSet {
    bits: FixedBitSet,
}

impl SimplexSet {
    /// The empty set over a complex with `capacity` simplices.
    pub fn empty(capacity: usize) -> Self {
        SimplexSet {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        SimplexSet { bits }
    }

    pub fn from_ids<I>(capacity: usize, ids: I) -> Self
    where
        I: IntoIterator<Item = SimplexId>,
    {
        let mut set = SimplexSet::empty(capacity);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, id: SimplexId) -> bool {
        !self.bits.put(id.index())
    }

    pub fn remove(&mut self, id: SimplexId) {
        self.bits.set(id.index(), false);
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.bits.contains(id.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.bits.ones().map(SimplexId::new)
    }

    pub fn to_vec(&self) -> Vec<SimplexId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        SimplexSet { bits }
    }

    pub fn intersection(&self, other: &SimplexSet) -> SimplexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        SimplexSet { bits }
    }

    pub fn difference(&self, other: &SimplexSet) -> SimplexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        SimplexSet { bits }
    }

    /// Complement relative to the whole complex.
    pub fn complement(&self) -> SimplexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        SimplexSet { bits }
    }

    pub fn is_subset(&self, other: &SimplexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &SimplexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for SimplexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|id| id.0)).finish()
    }
}

/// A finite abstract simplicial complex with an optional geometric
/// realization.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Box<[u32]>>,
    facets: Vec<Box<[SimplexId]>>,
    cofacets: Vec<Box<[SimplexId]>>,
    lookup: HashMap<Box<[u32]>, SimplexId>,
    num_vertices: usize,
    max_dim: usize,
    geometry: Option<Geometry>,
}

impl SimplicialComplex {
    /// Builds the face closure of `toplexes` over vertices `0..num_vertices`.
    ///
    /// Every vertex is a simplex even when no toplex references it.
    pub fn from_toplexes(num_vertices: usize, toplexes: &[Vec<usize>]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut family: Vec<Vec<u32>> = (0..num_vertices as u32).map(|v| vec![v]).collect();
        for toplex in toplexes {
            let mut sorted = toplex.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != toplex.len() || sorted.len() > 31 {
                return Err(Error::MalformedToplex(toplex.clone()));
            }
            if let Some(&vertex) = sorted.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::VertexOutOfRange {
                    vertex,
                    count: num_vertices,
                });
            }
            if !seen.insert(sorted.clone()) {
                return Err(Error::DuplicateToplex(toplex.clone()));
            }
            let verts: Vec<u32> = sorted.iter().map(|&v| v as u32).collect();
            for mask in 1u32..(1 << verts.len()) {
                let face: Vec<u32> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                if face.len() > 1 {
                    family.push(face);
                }
            }
        }
        Ok(Self::from_closed_family(num_vertices, family))
    }

    /// Builds a geometric complex whose vertices are the points of `geometry`.
    pub fn with_geometry(geometry: Geometry, toplexes: &[Vec<usize>]) -> Result<Self> {
        let mut complex = Self::from_toplexes(geometry.len(), toplexes)?;
        complex.geometry = Some(geometry);
        Ok(complex)
    }

    /// Builds a complex from a family of vertex lists that is already closed
    /// under taking faces. Duplicates are removed; vertex lists need not be
    /// sorted.
    pub fn from_closed_family(num_vertices: usize, mut family: Vec<Vec<u32>>) -> Self {
        for simplex in &mut family {
            simplex.sort_unstable();
        }
        family.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        family.dedup();

        let simplices: Vec<Box<[u32]>> = family.into_iter().map(Vec::into_boxed_slice).collect();
        let mut lookup = HashMap::with_capacity(simplices.len());
        for (i, s) in simplices.iter().enumerate() {
            lookup.insert(s.clone(), SimplexId::new(i));
        }

        let mut facets = Vec::with_capacity(simplices.len());
        let mut cofacets: Vec<Vec<SimplexId>> = vec![Vec::new(); simplices.len()];
        let mut buffer = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            let mut own = Vec::new();
            if s.len() > 1 {
                for skip in 0..s.len() {
                    buffer.clear();
                    buffer.extend(s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                    let face = *lookup
                        .get(buffer.as_slice())
                        .expect("family is not closed under faces");
                    own.push(face);
                    cofacets[face.index()].push(SimplexId::new(i));
                }
                own.sort_unstable();
            }
            facets.push(own.into_boxed_slice());
        }
        let max_dim = simplices.last().map_or(0, |s| s.len().saturating_sub(1));
        SimplicialComplex {
            simplices,
            facets,
            cofacets: cofacets.into_iter().map(Vec::into_boxed_slice).collect(),
            lookup,
            num_vertices,
            max_dim,
            geometry: None,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Largest simplex dimension.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = SimplexId> {
        (0..self.simplices.len()).map(SimplexId::new)
    }

    pub fn dim(&self, s: SimplexId) -> usize {
        self.simplices[s.index()].len() - 1
    }

    /// Sorted vertex ids of `s`.
    pub fn vertices(&self, s: SimplexId) -> &[u32] {
        &self.simplices[s.index()]
    }

    /// Codimension-one faces.
    pub fn facets(&self, s: SimplexId) -> &[SimplexId] {
        &self.facets[s.index()]
    }

    /// Codimension-one cofaces.
    pub fn cofacets(&self, s: SimplexId) -> &[SimplexId] {
        &self.cofacets[s.index()]
    }

    pub fn is_toplex(&self, s: SimplexId) -> bool {
        self.cofacets[s.index()].is_empty()
    }

    pub fn toplexes(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.ids().filter(|&s| self.is_toplex(s))
    }

    /// Looks a simplex up by its vertex list (in any order).
    pub fn find(&self, vertices: &[u32]) -> Option<SimplexId> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.lookup.get(key.as_slice()).copied()
    }

    /// The 0-simplex of vertex `v`.
    pub fn vertex(&self, v: usize) -> SimplexId {
        SimplexId::new(v)
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    pub fn empty_set(&self) -> SimplexSet {
        SimplexSet::empty(self.len())
    }

    pub fn full_set(&self) -> SimplexSet {
        SimplexSet::full(self.len())
    }

    pub fn set_of<I: IntoIterator<Item = SimplexId>>(&self, ids: I) -> SimplexSet {
        SimplexSet::from_ids(self.len(), ids)
    }

    /// `s <= t` in the face order.
    pub fn is_face(&self, s: SimplexId, t: SimplexId) -> bool {
        let (a, b) = (self.vertices(s), self.vertices(t));
        if a.len() > b.len() {
            return false;
        }
        let mut it = b.iter();
        a.iter().all(|v| it.any(|w| w == v))
    }

    /// All faces of `s`, including `s`, in increasing id order.
    pub fn faces_of(&self, s: SimplexId) -> Vec<SimplexId> {
        let mut out = vec![s];
        let mut frontier = vec![s];
        while !frontier.is_empty() {
            let mut next: Vec<SimplexId> = frontier
                .iter()
                .flat_map(|&f| self.facets(f).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            out.extend_from_slice(&next);
            frontier = next;
        }
        out.sort_unstable();
        out
    }

    /// All cofaces of `s` (the open star), including `s`, in increasing id order.
    pub fn cofaces_of(&self, s: SimplexId) -> Vec<SimplexId> {
        let mut out = vec![s];
        let mut frontier = vec![s];
        while !frontier.is_empty() {
            let mut next: Vec<SimplexId> = frontier
                .iter()
                .flat_map(|&f| self.cofacets(f).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            out.extend_from_slice(&next);
            frontier = next;
        }
        out.sort_unstable();
        out
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: &SimplexSet) -> SimplexSet {
        let mut out = set.clone();
        // Faces have smaller ids, so a single descending sweep closes the set.
        for s in self.ids().rev() {
            if out.contains(s) {
                for &f in self.facets(s) {
                    out.insert(f);
                }
            }
        }
        out
    }

    /// Upper set (open star) of a single simplex.
    pub fn upper_set(&self, s: SimplexId) -> SimplexSet {
        self.set_of(self.cofaces_of(s))
    }

    /// Smallest open set containing `set`.
    pub fn open_hull(&self, set: &SimplexSet) -> SimplexSet {
        let mut out = set.clone();
        for s in self.ids() {
            if out.contains(s) {
                for &c in self.cofacets(s) {
                    out.insert(c);
                }
            }
        }
        out
    }

    pub fn is_closed(&self, set: &SimplexSet) -> bool {
        set.iter().all(|s| self.facets(s).iter().all(|&f| set.contains(f)))
    }

    /// Open in the Alexandrov topology, i.e. an upper set.
    pub fn is_open(&self, set: &SimplexSet) -> bool {
        set.iter().all(|s| self.cofacets(s).iter().all(|&c| set.contains(c)))
    }

    /// `{t : lower <= t <= upper}`; empty unless `lower <= upper`.
    pub fn interval(&self, lower: SimplexId, upper: SimplexId) -> SimplexSet {
        if !self.is_face(lower, upper) {
            return self.empty_set();
        }
        self.set_of(
            self.faces_of(upper)
                .into_iter()
                .filter(|&t| self.is_face(lower, t)),
        )
    }

    /// Fence-connected components of `set` under the restricted face order.
    /// Components are sorted internally and by their smallest member.
    pub fn order_components(&self, set: &SimplexSet) -> Vec<Vec<SimplexId>> {
        let members = set.to_vec();
        let position: HashMap<SimplexId, usize> =
            members.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut uf = UnionFind::new(members.len());
        for (i, &s) in members.iter().enumerate() {
            for f in self.faces_of(s) {
                if let Some(&j) = position.get(&f) {
                    uf.union(i, j);
                }
            }
        }
        let mut groups: HashMap<usize, Vec<SimplexId>> = HashMap::new();
        for (i, &s) in members.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(s);
        }
        let mut out: Vec<Vec<SimplexId>> = groups.into_values().collect();
        out.sort_unstable_by_key(|c| c[0]);
        out
    }

    /// First triple `lower <= middle <= upper` with the outer two in `set`
    /// and `middle` outside it, scanning `upper` then `middle` by id.
    pub fn convexity_witness(&self, set: &SimplexSet) -> Option<(SimplexId, SimplexId, SimplexId)> {
        for upper in set.iter() {
            for middle in self.faces_of(upper) {
                if set.contains(middle) {
                    continue;
                }
                if let Some(lower) = self.faces_of(middle).into_iter().find(|&f| set.contains(f)) {
                    return Some((lower, middle, upper));
                }
            }
        }
        None
    }

    pub fn is_orderly_convex(&self, set: &SimplexSet) -> bool {
        self.convexity_witness(set).is_none()
    }

    /// Smallest superset of `set` whose solid is convex.
    ///
    /// Requires a geometric realization in dimension at most two whose
    /// polytope is convex.
    pub fn co(&self, set: &SimplexSet) -> Result<SimplexSet> {
        let ids = self.co_ids(&set.to_vec())?;
        Ok(self.set_of(ids))
    }

    /// [`co`](Self::co) on sorted id lists.
    pub fn co_ids(&self, ids: &[SimplexId]) -> Result<Vec<SimplexId>> {
        let geometry = self.geometry.as_ref().ok_or(Error::MissingCoordinates)?;
        geometry.convex_closure(self, ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // A=0, B=1, C=2 on the unit interval.
    pub(crate) fn path_abc() -> SimplicialComplex {
        let geometry = Geometry::from_f64(1, &[vec![0.0], vec![0.5], vec![1.0]]).unwrap();
        SimplicialComplex::with_geometry(geometry, &[vec![0, 1], vec![1, 2]]).unwrap()
    }

    // P=0, Q=1, R=2, S=3.
    fn pqrs() -> SimplicialComplex {
        let geometry = Geometry::from_f64(
            2,
            &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
        )
        .unwrap();
        SimplicialComplex::with_geometry(geometry, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap()
    }

    fn named(k: &SimplicialComplex, names: &[&str]) -> SimplexSet {
        let letters = ['A', 'B', 'C'];
        let pqrs = ['P', 'Q', 'R', 'S'];
        k.set_of(names.iter().map(|n| {
            let verts: Vec<u32> = n
                .chars()
                .map(|c| {
                    letters
                        .iter()
                        .position(|&l| l == c)
                        .or_else(|| pqrs.iter().position(|&l| l == c))
                        .unwrap() as u32
                })
                .collect();
            k.find(&verts).unwrap()
        }))
    }

    #[test]
    fn builds_face_closures() {
        assert_eq!(path_abc().len(), 5);
        assert_eq!(pqrs().len(), 11);
        let point = SimplicialComplex::from_toplexes(1, &[vec![0]]).unwrap();
        assert_eq!(point.len(), 1);
        assert!(point.is_toplex(SimplexId::new(0)));
    }

    #[test]
    fn ids_follow_dimension_then_lex_order() {
        let k = pqrs();
        let dims: Vec<usize> = k.ids().map(|s| k.dim(s)).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2]);
        for s in k.ids() {
            for &f in k.facets(s) {
                assert!(f < s);
                assert!(k.cofacets(f).contains(&s));
            }
        }
        let toplexes: Vec<_> = k.toplexes().collect();
        assert_eq!(toplexes, vec![SimplexId::new(9), SimplexId::new(10)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::from_toplexes(2, &[vec![0, 1], vec![1, 0]]),
            Err(Error::DuplicateToplex(_))
        ));
        assert!(matches!(
            SimplicialComplex::from_toplexes(2, &[vec![0, 2]]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_toplexes(2, &[vec![]]),
            Err(Error::MalformedToplex(_))
        ));
        assert!(matches!(
            Geometry::from_f64(2, &[vec![0.0, 0.0], vec![1.0]]),
            Err(Error::CoordinateDimension { vertex: 1, .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let k = path_abc();
        assert_eq!(k.closure(&named(&k, &["AB"])), named(&k, &["A", "B", "AB"]));
        assert!(k.closure(&k.empty_set()).is_empty());
        let k = pqrs();
        assert_eq!(
            k.closure(&named(&k, &["PQR"])),
            named(&k, &["P", "Q", "R", "PQ", "PR", "QR", "PQR"])
        );
    }

    #[test]
    fn open_sets_are_upper_sets() {
        let k = path_abc();
        assert_eq!(k.upper_set(k.vertex(1)), named(&k, &["B", "AB", "BC"]));
        assert!(k.is_open(&named(&k, &["AB"])));
        assert!(!k.is_open(&named(&k, &["B"])));
        let a = named(&k, &["B", "AB"]);
        assert_eq!(k.is_open(&a), k.is_closed(&a.complement()));
    }

    #[test]
    fn interval_examples() {
        let k = pqrs();
        let q = k.vertex(1);
        let qrs = k.find(&[1, 2, 3]).unwrap();
        assert_eq!(k.interval(q, qrs), named(&k, &["Q", "QR", "QS", "QRS"]));
        assert_eq!(k.interval(qrs, qrs), named(&k, &["QRS"]));
        let k = path_abc();
        let ab = k.find(&[0, 1]).unwrap();
        assert!(k.interval(ab, k.vertex(1)).is_empty());
    }

    #[test]
    fn order_component_examples() {
        let k = path_abc();
        assert_eq!(k.order_components(&named(&k, &["A", "BC"])).len(), 2);
        assert_eq!(k.order_components(&named(&k, &["AB", "B", "BC"])).len(), 1);
        assert!(k.order_components(&k.empty_set()).is_empty());
    }

    #[test]
    fn orderly_convexity_examples() {
        let k = pqrs();
        assert!(k.is_orderly_convex(&named(&k, &["S", "RS", "QS", "QRS"])));
        let bad = named(&k, &["P", "PQR"]);
        let (lower, middle, upper) = k.convexity_witness(&bad).unwrap();
        assert_eq!(lower, k.vertex(0));
        assert_eq!(k.vertices(middle), &[0, 1]);
        assert_eq!(k.vertices(upper), &[0, 1, 2]);
        for s in k.ids() {
            assert!(k.is_orderly_convex(&k.set_of([s])));
        }
    }

    #[test]
    fn co_examples_on_the_path() {
        let k = path_abc();
        assert_eq!(
            k.co(&named(&k, &["AB", "BC"])).unwrap(),
            named(&k, &["AB", "B", "BC"])
        );
        assert_eq!(k.co(&named(&k, &["AB"])).unwrap(), named(&k, &["AB"]));
        assert_eq!(k.co(&named(&k, &["A", "C"])).unwrap(), k.full_set());
        assert_eq!(k.co(&k.empty_set()), Err(Error::EmptySet));
        let abstract_k = SimplicialComplex::from_toplexes(2, &[vec![0, 1]]).unwrap();
        assert_eq!(
            abstract_k.co(&abstract_k.full_set()),
            Err(Error::MissingCoordinates)
        );
    }

    #[test]
    fn co_examples_on_two_triangles() {
        let k = pqrs();
        // Q and R span the diagonal; nothing else meets the segment.
        assert_eq!(k.co(&named(&k, &["Q", "R"])).unwrap(), named(&k, &["Q", "R", "QR"]));
        // P and S: the segment PS crosses QR and both open triangles.
        assert_eq!(
            k.co(&named(&k, &["P", "S"])).unwrap(),
            named(&k, &["P", "S", "QR", "PQR", "QRS"])
        );
        assert_eq!(k.co(&named(&k, &["PQR"])).unwrap(), named(&k, &["PQR"]));
        // The open square plus S is already convex; the open edges PQ and PR stay out.
        assert_eq!(
            k.co(&named(&k, &["PQR", "S"])).unwrap(),
            named(&k, &["PQR", "QR", "QRS", "S"])
        );
        assert_eq!(
            k.co(&named(&k, &["P", "Q", "S"])).unwrap(),
            named(&k, &["P", "Q", "S", "PQ", "QS", "QR", "PQR", "QRS"])
        );
        assert_eq!(k.co(&named(&k, &["P", "Q", "R", "S"])).unwrap(), k.full_set());
    }
}
