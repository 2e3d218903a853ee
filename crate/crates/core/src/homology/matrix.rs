//! Dense matrices over Z/2 stored column-wise as bitsets.

use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: Vec<FixedBitSet>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols: vec![FixedBitSet::with_capacity(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from columns given as sets of row indices.
    pub fn from_columns(rows: usize, columns: Vec<FixedBitSet>) -> Self {
        let cols = columns
            .into_iter()
            .map(|mut c| {
                c.grow(rows);
                c
            })
            .collect();
        BitMatrix { rows, cols }
    }

    /// Builds a matrix from a row-major 0/1 table.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].contains(r)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.cols[c].set(r, value);
    }

    pub fn column(&self, c: usize) -> &FixedBitSet {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[FixedBitSet] {
        &self.cols
    }

    /// `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc = FixedBitSet::with_capacity(self.rows);
                for k in col.ones() {
                    acc.symmetric_difference_with(&self.cols[k]);
                }
                acc
            })
            .collect();
        BitMatrix { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols(), self.rows);
        for (c, col) in self.cols.iter().enumerate() {
            for r in col.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank_of(self.cols.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(FixedBitSet::is_clear)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols())?;
        for r in 0..self.rows {
            let line: String = (0..self.cols()).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Rank of a family of vectors by elimination on leading bits.
pub(crate) fn rank_of(vectors: Vec<FixedBitSet>) -> usize {
    let mut basis = EchelonBasis::default();
    vectors.into_iter().filter(|v| basis.insert(v.clone())).count()
}

/// Vectors kept in echelon form by their highest set bit.
#[derive(Clone, Debug, Default)]
pub(crate) struct EchelonBasis {
    pivots: std::collections::HashMap<usize, FixedBitSet>,
}

impl EchelonBasis {
    /// Reduces `v` against the basis; returns whether it was independent.
    pub(crate) fn insert(&mut self, v: FixedBitSet) -> bool {
        let v = self.reduce(v);
        match v.maximum() {
            Some(top) => {
                self.pivots.insert(top, v);
                true
            }
            None => false,
        }
    }

    pub(crate) fn reduce(&self, mut v: FixedBitSet) -> FixedBitSet {
        while let Some(top) = v.maximum() {
            match self.pivots.get(&top) {
                Some(p) => {
                    if p.len() > v.len() {
                        v.grow(p.len());
                    }
                    v.symmetric_difference_with(p);
                }
                None => break,
            }
        }
        v
    }
}

/// Basis of `{x : m x = 0}`.
pub(crate) fn nullspace(m: &BitMatrix) -> Vec<FixedBitSet> {
    let n = m.cols();
    // Track column combinations: reduce columns of m, recording which
    // originals were added.
    let mut pivots: std::collections::HashMap<usize, (FixedBitSet, FixedBitSet)> = Default::default();
    let mut kernel = Vec::new();
    for c in 0..n {
        let mut col = m.column(c).clone();
        let mut combo = FixedBitSet::with_capacity(n);
        combo.insert(c);
        while let Some(top) = col.maximum() {
            match pivots.get(&top) {
                Some((pc, pcombo)) => {
                    col.symmetric_difference_with(pc);
                    combo.symmetric_difference_with(pcombo);
                }
                None => break,
            }
        }
        match col.maximum() {
            Some(top) => {
                pivots.insert(top, (col, combo));
            }
            None => kernel.push(combo),
        }
    }
    kernel
}
