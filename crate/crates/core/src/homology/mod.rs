//! Simplicial homology over Z/2 and persistence of homology modules.

mod matrix;
mod persistence;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::util::UnionFind;

pub use matrix::BitMatrix;
pub use persistence::{
    filtration_persistence, format_barcode, format_intervals, parse_barcode, write_barcode, zigzag_decompose, Arrow, Barcode, Interval,
    PersistenceModule,
};


/// Sparse Z/2 column: sorted row indices.
type Column = Vec<usize>;

fn add_columns(a: &[usize], b: &[usize]) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Standard column reduction. Returns the reduced columns keyed by their
/// lowest (largest) row index.
fn reduce(columns: Vec<Column>) -> HashMap<usize, Column> {
    let mut pivots: HashMap<usize, Column> = HashMap::new();
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = add_columns(&col, p),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivots.insert(low, col);
        }
    }
    pivots
}

/// Boundary matrices of a complex, or of a complex relative to a closed subcomplex.
#[derive(Clone, Debug)]
pub struct ChainComplexZ2 {
    // counts[k] = number of k-cells.
    counts: Vec<usize>,
    // boundaries[k][j] = rows of column j of ∂_k (k >= 1).
    boundaries: Vec<Vec<Column>>,
}

impl ChainComplexZ2 {
    pub fn of_complex(complex: &SimplicialComplex) -> Self {
        Self::quotient(complex, &complex.empty_set())
    }

    /// The quotient chain complex `C(K) / C(L)`.
    pub fn relative(complex: &SimplicialComplex, sub: &SimplexSet) -> Result<Self> {
        if sub.capacity() != complex.len() || !complex.is_closed(sub) {
            return Err(Error::InvalidSubcomplex);
        }
        Ok(Self::quotient(complex, sub))
    }

    fn quotient(complex: &SimplicialComplex, sub: &SimplexSet) -> Self {
        let top = if complex.is_empty() { 0 } else { complex.max_dim() + 1 };
        let mut local = vec![usize::MAX; complex.len()];
        let mut counts = vec![0; top];
        for s in complex.ids() {
            if !sub.contains(s) {
                let k = complex.dim(s);
                local[s.index()] = counts[k];
                counts[k] += 1;
            }
        }
        let mut boundaries: Vec<Vec<Column>> = vec![Vec::new(); top];
        for s in complex.ids() {
            let k = complex.dim(s);
            if k == 0 || sub.contains(s) {
                continue;
            }
            let mut col: Column = complex
                .facets(s)
                .iter()
                .filter(|f| !sub.contains(**f))
                .map(|f| local[f.index()])
                .collect();
            col.sort_unstable();
            boundaries[k].push(col);
        }
        let chain = ChainComplexZ2 { counts, boundaries };
        debug_assert!(chain.boundary_squares_to_zero());
        chain
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Column `j` of `∂_k`.
    pub fn boundary(&self, k: usize, j: usize) -> &[usize] {
        &self.boundaries[k][j]
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.counts.len()).all(|k| {
            self.boundaries[k].iter().all(|col| {
                let mut acc: Column = Vec::new();
                for &r in col {
                    acc = add_columns(&acc, &self.boundaries[k - 1][r]);
                }
                acc.is_empty()
            })
        })
    }

    fn rank(&self, k: usize) -> usize {
        if k == 0 || k >= self.counts.len() {
            return 0;
        }
        reduce(self.boundaries[k].clone()).len()
    }

    /// Betti numbers `b_0, ..., b_top`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.counts.len()).map(|k| self.rank(k)).collect();
        (0..self.counts.len())
            .map(|k| self.counts[k] - ranks[k] - ranks[k + 1])
            .collect()
    }
}

/// Betti numbers of a complex over Z/2.
pub fn betti(complex: &SimplicialComplex) -> Vec<usize> {
    ChainComplexZ2::of_complex(complex).betti()
}

/// Betti numbers of the pair `(complex, sub)` over Z/2.
pub fn relative_betti(complex: &SimplicialComplex, sub: &SimplexSet) -> Result<Vec<usize>> {
    Ok(ChainComplexZ2::relative(complex, sub)?.betti())
}

/// Homology in one degree together with a chosen basis and the data needed
/// to express any cycle in that basis.
#[derive(Clone, Debug)]
struct Degree {
    offset: usize,
    count: usize,
    basis: Vec<Column>,
    // low index of an essential cycle -> basis position
    essential: HashMap<usize, usize>,
    // reduced boundary columns of ∂_{k+1} keyed by low
    boundaries: HashMap<usize, Column>,
    // degree 0: component label of each vertex
    component: Vec<usize>,
}

/// Z/2 homology of a complex in degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct Homology {
    degrees: Vec<Degree>,
}

impl Homology {
    pub fn compute(complex: &SimplicialComplex, max_degree: usize) -> Self {
        let mut offsets = vec![0usize; complex.max_dim() + 3];
        for s in complex.ids() {
            offsets[complex.dim(s) + 1] += 1;
        }
        for k in 1..offsets.len() {
            offsets[k] += offsets[k - 1];
        }
        let count = |k: usize| if k + 1 < offsets.len() { offsets[k + 1] - offsets[k] } else { 0 };
        let columns = |k: usize| -> Vec<Column> {
            if k == 0 || count(k) == 0 {
                return Vec::new();
            }
            (offsets[k]..offsets[k] + count(k))
                .map(|i| {
                    complex
                        .facets(SimplexId::new(i))
                        .iter()
                        .map(|f| f.index() - offsets[k - 1])
                        .collect()
                })
                .collect()
        };

        let mut degrees = Vec::new();
        for k in 0..=max_degree {
            let n = count(k);
            let boundaries = reduce(columns(k + 1));
            let mut degree = Degree {
                offset: if k < offsets.len() { offsets[k] } else { 0 },
                count: n,
                basis: Vec::new(),
                essential: HashMap::new(),
                boundaries,
                component: Vec::new(),
            };
            match k {
                0 => {
                    let mut uf = UnionFind::new(n);
                    for col in columns(1) {
                        uf.union(col[0], col[1]);
                    }
                    let mut label = HashMap::new();
                    degree.component = (0..n)
                        .map(|v| {
                            let root = uf.find(v);
                            let next = label.len();
                            *label.entry(root).or_insert(next)
                        })
                        .collect();
                    for v in 0..n {
                        if degree.component[v] == degree.basis.len() {
                            degree.essential.insert(v, degree.basis.len());
                            degree.basis.push(vec![v]);
                        }
                    }
                }
                1 => degree.basis_from_forest(&columns(1), count(0)),
                _ => degree.basis_from_reduction(columns(k)),
            }
            degrees.push(degree);
        }
        Homology { degrees }
    }

    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.basis.len())
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    /// Representative cycles of the basis in degree `k`.
    pub fn representatives(&self, k: usize) -> Vec<Vec<SimplexId>> {
        let d = &self.degrees[k];
        d.basis
            .iter()
            .map(|c| c.iter().map(|&i| SimplexId::new(d.offset + i)).collect())
            .collect()
    }

    /// Coordinates of the class of the cycle `chain` (k-simplices, each
    /// listed once) in the chosen basis.
    pub fn coordinates(&self, k: usize, chain: &[SimplexId]) -> Result<FixedBitSet> {
        let d = &self.degrees[k];
        let mut out = FixedBitSet::with_capacity(d.basis.len());
        let mut col: Column = chain.iter().map(|s| s.index() - d.offset).collect();
        col.sort_unstable();
        if col.iter().any(|&i| i >= d.count) {
            return Err(Error::NotACycle);
        }
        if k == 0 {
            for v in col {
                out.toggle(d.component[v]);
            }
            return Ok(out);
        }
        while let Some(&low) = col.last() {
            if let Some(b) = d.boundaries.get(&low) {
                col = add_columns(&col, b);
            } else if let Some(&e) = d.essential.get(&low) {
                out.toggle(e);
                col = add_columns(&col, &d.basis[e]);
            } else {
                return Err(Error::NotACycle);
            }
        }
        Ok(out)
    }
}

impl Degree {
    /// Degree one: positive edges close a cycle in the spanning forest built
    /// in index order; the cycle is the edge plus the forest path.
    fn basis_from_forest(&mut self, edges: &[Column], vertices: usize) {
        let mut uf = UnionFind::new(vertices);
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
        let mut positive = Vec::new();
        for (j, e) in edges.iter().enumerate() {
            if uf.union(e[0], e[1]) {
                adjacency[e[0]].push((e[1], j));
                adjacency[e[1]].push((e[0], j));
            } else {
                positive.push(j);
            }
        }
        let essential: Vec<usize> = positive
            .into_iter()
            .filter(|j| !self.boundaries.contains_key(j))
            .collect();
        if essential.is_empty() {
            return;
        }
        // Root every tree and record parent edges and depths.
        let mut parent = vec![(usize::MAX, usize::MAX); vertices];
        let mut depth = vec![usize::MAX; vertices];
        for root in 0..vertices {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(w, j) in &adjacency[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = (v, j);
                        stack.push(w);
                    }
                }
            }
        }
        for j in essential {
            let (mut a, mut b) = (edges[j][0], edges[j][1]);
            let mut cycle = vec![j];
            while a != b {
                if depth[a] >= depth[b] {
                    cycle.push(parent[a].1);
                    a = parent[a].0;
                } else {
                    cycle.push(parent[b].1);
                    b = parent[b].0;
                }
            }
            cycle.sort_unstable();
            self.essential.insert(j, self.basis.len());
            self.basis.push(cycle);
        }
    }

    /// General degree: reduce `∂_k` while tracking column operations; zero
    /// columns give cycles whose lowest simplex is their own index.
    fn basis_from_reduction(&mut self, columns: Vec<Column>) {
        let mut pivots: HashMap<usize, (Column, Column)> = HashMap::new();
        for (j, mut col) in columns.into_iter().enumerate() {
            let mut v: Column = vec![j];
            while let Some(&low) = col.last() {
                match pivots.get(&low) {
                    Some((pc, pv)) => {
                        col = add_columns(&col, pc);
                        v = add_columns(&v, pv);
                    }
                    None => break,
                }
            }
            match col.last() {
                Some(&low) => {
                    pivots.insert(low, (col, v));
                }
                None => {
                    if !self.boundaries.contains_key(&j) {
                        self.essential.insert(j, self.basis.len());
                        self.basis.push(v);
                    }
                }
            }
        }
    }
}

/// Matrix of the map `H_k(source) -> H_k(target)` induced by a simplicial
/// map given as `map[s]` for each source simplex. Columns index the source
/// basis, rows the target basis.
pub fn induced_map(
    source: &Homology,
    target: &Homology,
    map: &[SimplexId],
    k: usize,
) -> Result<BitMatrix> {
    let mut m = BitMatrix::zeros(target.betti(k), source.betti(k));
    for (c, cycle) in source.representatives(k).into_iter().enumerate() {
        let mut image: Vec<SimplexId> = cycle.iter().map(|s| map[s.index()]).collect();
        image.sort_unstable();
        // Z/2: simplices hit twice cancel.
        let mut reduced = Vec::with_capacity(image.len());
        for s in image {
            if reduced.last() == Some(&s) {
                reduced.pop();
            } else {
                reduced.push(s);
            }
        }
        let coords = target.coordinates(k, &reduced)?;
        for r in coords.ones() {
            m.set(r, c, true);
        }
    }
    Ok(m)
}
