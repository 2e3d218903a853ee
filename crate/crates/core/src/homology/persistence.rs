//! Persistence modules over Z/2 indexed by `1..=n` and their barcodes.

use std::fmt::Write as _;
use std::path::Path;

use fixedbitset::FixedBitSet;

use super::matrix::{nullspace, rank_of, BitMatrix};
use crate::error::{parse_error, Error, Result};

/// Direction of the map between consecutive spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    /// `V_i -> V_{i+1}`
    Forward,
    /// `V_i <- V_{i+1}`
    Backward,
}

/// A representation of a type-A quiver: spaces `V_1, ..., V_n` and one
/// matrix per consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceModule {
    dims: Vec<usize>,
    arrows: Vec<(Arrow, BitMatrix)>,
}

impl PersistenceModule {
    pub fn new(dims: Vec<usize>, arrows: Vec<(Arrow, BitMatrix)>) -> Result<Self> {
        if dims.is_empty() && !arrows.is_empty() || !dims.is_empty() && arrows.len() + 1 != dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} spaces need {} arrows, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                arrows.len()
            )));
        }
        for (i, (arrow, m)) in arrows.iter().enumerate() {
            let (src, dst) = match arrow {
                Arrow::Forward => (dims[i], dims[i + 1]),
                Arrow::Backward => (dims[i + 1], dims[i]),
            };
            if m.cols() != src || m.rows() != dst {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} is {}x{}, expected {}x{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    dst,
                    src
                )));
            }
        }
        Ok(PersistenceModule { dims, arrows })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[(Arrow, BitMatrix)] {
        &self.arrows
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Rank of `lim -> colim` of the restriction to the 0-based range `[s, t]`.
    fn generalized_rank(&self, s: usize, t: usize) -> usize {
        let offsets: Vec<usize> = self.dims[s..=t]
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = self.dims[s..=t].iter().sum();
        if total == 0 {
            return 0;
        }

        // Compatibility equations for the limit and generators of the
        // relations for the colimit, both as vectors in ⊕ V_i.
        let mut equations: Vec<FixedBitSet> = Vec::new();
        let mut relations: Vec<FixedBitSet> = Vec::new();
        for i in s..t {
            let (arrow, m) = &self.arrows[i];
            let (src, dst) = match arrow {
                Arrow::Forward => (i - s, i + 1 - s),
                Arrow::Backward => (i + 1 - s, i - s),
            };
            // Rows of `m x_src - x_dst = 0`.
            let mt = m.transpose();
            for r in 0..m.rows() {
                let mut eq = FixedBitSet::with_capacity(total);
                for c in mt.column(r).ones() {
                    eq.insert(offsets[src] + c);
                }
                eq.toggle(offsets[dst] + r);
                equations.push(eq);
            }
            // x_src ~ m x_src
            for c in 0..m.cols() {
                let mut rel = FixedBitSet::with_capacity(total);
                rel.insert(offsets[src] + c);
                for r in m.column(c).ones() {
                    rel.toggle(offsets[dst] + r);
                }
                relations.push(rel);
            }
        }
        let mut constraint = BitMatrix::zeros(equations.len(), total);
        for (r, eq) in equations.iter().enumerate() {
            for c in eq.ones() {
                constraint.set(r, c, true);
            }
        }
        let limit = nullspace(&constraint);
        // A limit element is identified in the colimit with any of its
        // components; use the first space.
        let first = self.dims[s];
        let embedded: Vec<FixedBitSet> = limit
            .iter()
            .map(|x| {
                let mut v = FixedBitSet::with_capacity(total);
                for c in x.ones().filter(|&c| c < first) {
                    v.insert(c);
                }
                v
            })
            .collect();
        let base = rank_of(relations.clone());
        let mut all = relations;
        all.extend(embedded);
        rank_of(all) - base
    }
}

/// A closed interval `[birth, death]` of step indices (1-based) in one
/// homology dimension. `death = None` stands for an unbounded interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
}

impl Interval {
    pub fn new(dim: usize, birth: usize, death: usize) -> Self {
        Interval {
            dim,
            birth,
            death: Some(death),
        }
    }

    pub fn contains(&self, t: usize) -> bool {
        self.birth <= t && self.death.is_none_or(|d| t <= d)
    }

    /// Number of steps covered, capped at `n` for unbounded intervals.
    pub fn length(&self, n: usize) -> usize {
        (self.death.unwrap_or(n) + 1).saturating_sub(self.birth)
    }
}

/// A multiset of intervals, kept sorted by `(dim, birth, death)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by_key(|i| (i.dim, i.birth, i.death.unwrap_or(usize::MAX)));
        Barcode { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn of_dim(&self, dim: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |i| i.dim == dim)
    }

    /// Number of intervals of dimension `dim` containing step `t`.
    pub fn multiplicity(&self, dim: usize, t: usize) -> usize {
        self.of_dim(dim).filter(|i| i.contains(t)).count()
    }

    pub fn extend(&mut self, other: Barcode) {
        let mut all = std::mem::take(&mut self.intervals);
        all.extend(other.intervals);
        *self = Barcode::new(all);
    }

    /// Checks that each step is covered by as many intervals as the module's dimension there.
    pub fn matches_dims(&self, dim: usize, dims: &[usize]) -> bool {
        dims.iter().enumerate().all(|(i, &d)| self.multiplicity(dim, i + 1) == d)
    }
}

/// Interval multiplicities from a rank function by inclusion–exclusion:
/// `m[b,d] = r(b,d) - r(b-1,d) - r(b,d+1) + r(b-1,d+1)`.
fn mobius(n: usize, dim: usize, rank: impl Fn(usize, usize) -> usize) -> Vec<Interval> {
    let mut table = vec![vec![0usize; n + 2]; n + 2];
    for s in 1..=n {
        for t in s..=n {
            table[s][t] = rank(s - 1, t - 1);
        }
    }
    let r = |s: usize, t: usize| -> i64 {
        if s == 0 || t > n || s > t {
            0
        } else {
            table[s][t] as i64
        }
    };
    let mut out = Vec::new();
    for b in 1..=n {
        for d in b..=n {
            let m = r(b, d) - r(b - 1, d) - r(b, d + 1) + r(b - 1, d + 1);
            debug_assert!(m >= 0, "negative multiplicity");
            for _ in 0..m.max(0) {
                out.push(Interval::new(dim, b, d));
            }
        }
    }
    out
}

/// Barcode of a module whose arrows all point forward.
pub fn filtration_persistence(module: &PersistenceModule, dim: usize) -> Result<Barcode> {
    if let Some(i) = module.arrows.iter().position(|(a, _)| *a != Arrow::Forward) {
        return Err(Error::OrientationMismatch(i + 1));
    }
    let n = module.len();
    // composite[s][t] = rank of V_s -> V_t
    let mut ranks = vec![vec![0usize; n]; n];
    for s in 0..n {
        ranks[s][s] = module.dims[s];
        let mut acc = BitMatrix::identity(module.dims[s]);
        for t in s + 1..n {
            acc = module.arrows[t - 1].1.mul(&acc);
            ranks[s][t] = acc.rank();
        }
    }
    Ok(Barcode::new(mobius(n, dim, |s, t| ranks[s][t])))
}

/// Interval decomposition of a module with arbitrary arrow directions.
pub fn zigzag_decompose(module: &PersistenceModule, dim: usize) -> Result<Barcode> {
    let n = module.len();
    Ok(Barcode::new(mobius(n, dim, |s, t| module.generalized_rank(s, t))))
}

/// CSV `dim,birth,death`, sorted, unbounded deaths written as `inf`.
pub fn format_barcode(barcode: &Barcode) -> String {
    format_intervals(barcode.intervals())
}

/// [`format_barcode`] for intervals in a caller-chosen order.
pub fn format_intervals(intervals: &[Interval]) -> String {
    let mut out = String::from("dim,birth,death\n");
    for i in intervals {
        match i.death {
            Some(d) => {
                let _ = writeln!(out, "{},{},{}", i.dim, i.birth, d);
            }
            None => {
                let _ = writeln!(out, "{},{},inf", i.dim, i.birth);
            }
        }
    }
    out
}

pub fn parse_barcode(text: &str) -> Result<Barcode> {
    let mut intervals = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with("dim")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(parse_error(i + 1, "expected dim,birth,death"));
        }
        let num = |f: &str| f.parse::<usize>().map_err(|_| parse_error(i + 1, format!("bad number `{f}`")));
        let death = if fields[2] == "inf" { None } else { Some(num(fields[2])?) };
        intervals.push(Interval {
            dim: num(fields[0])?,
            birth: num(fields[1])?,
            death,
        });
    }
    Ok(Barcode::new(intervals))
}

pub fn write_barcode(path: impl AsRef<Path>, barcode: &Barcode) -> Result<()> {
    std::fs::write(path, format_barcode(barcode))?;
    Ok(())
}
