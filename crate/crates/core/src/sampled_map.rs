//! Combinatorial dynamical systems reconstructed from sampled pairs
//! `(x, f(x) + noise)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::complex::{Point, SimplexId, SimplicialComplex};
use crate::dynamics::DynamicalSystem;
use crate::error::{parse_error, Error, Result};

/// One observation `y ≈ f(x)`. In one dimension the second coordinates are zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePair {
    pub x: Point,
    pub y: Point,
}

impl SamplePair {
    pub fn new(x: Point, y: Point) -> Self {
        SamplePair { x, y }
    }

    pub fn on_line(x: f64, y: f64) -> Self {
        SamplePair {
            x: [x, 0.0],
            y: [y, 0.0],
        }
    }
}

/// Transition counts between toplexes.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    simplices: usize,
    // rows[t] lists (target, count) for toplex t, sorted by target.
    rows: Vec<Vec<(SimplexId, u32)>>,
    n_max: u32,
    accepted: usize,
    rejected: usize,
}

impl FrequencyTable {
    /// `n_{from, to}`.
    pub fn count(&self, from: SimplexId, to: SimplexId) -> u32 {
        let row = &self.rows[from.index()];
        row.binary_search_by_key(&to, |e| e.0).map_or(0, |i| row[i].1)
    }

    /// Nonzero entries of the row of `from`.
    pub fn row(&self, from: SimplexId) -> &[(SimplexId, u32)] {
        &self.rows[from.index()]
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// `n_{from, to} / n_max`.
    pub fn relative(&self, from: SimplexId, to: SimplexId) -> f64 {
        if self.n_max == 0 {
            return 0.0;
        }
        self.count(from, to) as f64 / self.n_max as f64
    }

    /// Pairs with both points in the polytope.
    pub fn accepted(&self) -> usize {
        self.accepted
    }

    /// Pairs dropped because a point fell outside the polytope.
    pub fn rejected(&self) -> usize {
        self.rejected
    }

    /// `2i / n_max` for `i = floor(n_max / 2), ..., 1, 0`: decreasing thresholds.
    pub fn default_levels(&self) -> Vec<f64> {
        let n = self.n_max.max(1) as f64;
        (0..=self.n_max / 2).rev().map(|i| 2.0 * i as f64 / n).collect()
    }

    /// `A_{μ,τ}`: toplexes reached from `tau` with relative frequency at least `mu`.
    fn admissible(&self, complex: &SimplicialComplex, tau: SimplexId, mu: f64) -> Vec<SimplexId> {
        if mu <= 0.0 {
            return complex.toplexes().collect();
        }
        self.rows[tau.index()]
            .iter()
            .filter(|&&(_, n)| n as f64 / self.n_max as f64 >= mu)
            .map(|&(t, _)| t)
            .collect()
    }
}

fn check_pure(complex: &SimplicialComplex) -> Result<()> {
    let expected = complex.max_dim();
    if let Some(s) = complex.toplexes().find(|&s| complex.dim(s) != expected) {
        return Err(Error::MixedDimension {
            expected,
            found: complex.dim(s),
        });
    }
    Ok(())
}

/// Counts `n_{τ,τ'}`: pairs with `x` in the closed cell of `τ` and `y` in
/// the closed cell of `τ'`. A point on a shared face counts for every
/// incident toplex.
pub fn count_frequencies(complex: &SimplicialComplex, pairs: &[SamplePair]) -> Result<FrequencyTable> {
    let geometry = complex.geometry().ok_or(Error::MissingCoordinates)?;
    if geometry.dim() > 2 {
        return Err(Error::UnsupportedDimension(geometry.dim()));
    }
    check_pure(complex)?;
    if pairs.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut counts: Vec<HashMap<SimplexId, u32>> = vec![HashMap::new(); complex.len()];
    let (mut accepted, mut rejected) = (0, 0);
    for pair in pairs {
        let from = geometry.locate(complex, pair.x);
        let to = geometry.locate(complex, pair.y);
        if from.is_empty() || to.is_empty() {
            rejected += 1;
            continue;
        }
        accepted += 1;
        for &a in &from {
            for &b in &to {
                *counts[a.index()].entry(b).or_insert(0) += 1;
            }
        }
    }
    let rows: Vec<Vec<(SimplexId, u32)>> = counts
        .into_iter()
        .map(|m| {
            let mut row: Vec<_> = m.into_iter().collect();
            row.sort_unstable();
            row
        })
        .collect();
    let n_max = rows.iter().flatten().map(|e| e.1).max().unwrap_or(0);
    Ok(FrequencyTable {
        simplices: complex.len(),
        rows,
        n_max,
        accepted,
        rejected,
    })
}

/// Builds `F_μ` for several thresholds, sharing convex hulls between them.
pub struct FMuBuilder<'k> {
    complex: &'k SimplicialComplex,
    table: &'k FrequencyTable,
    hulls: HashMap<Vec<SimplexId>, Vec<SimplexId>>,
}

impl<'k> FMuBuilder<'k> {
    pub fn new(complex: &'k SimplicialComplex, table: &'k FrequencyTable) -> Result<Self> {
        if table.simplices != complex.len() {
            return Err(Error::ForeignTable);
        }
        if complex.geometry().is_none() {
            return Err(Error::MissingCoordinates);
        }
        Ok(FMuBuilder {
            complex,
            table,
            hulls: HashMap::new(),
        })
    }

    /// `F_μ(σ) = co ⋃ {A_{μ,τ} : σ ⪯ τ, τ a toplex}`, empty when the union is.
    pub fn build(&mut self, mu: f64) -> Result<DynamicalSystem<'k>> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::ThresholdOutOfRange(mu));
        }
        let complex = self.complex;
        let admissible: HashMap<SimplexId, Vec<SimplexId>> = complex
            .toplexes()
            .map(|t| (t, self.table.admissible(complex, t, mu)))
            .collect();
        let mut images = Vec::with_capacity(complex.len());
        for s in complex.ids() {
            let mut union: Vec<SimplexId> = complex
                .cofaces_of(s)
                .into_iter()
                .filter(|&t| complex.is_toplex(t))
                .flat_map(|t| admissible[&t].iter().copied())
                .collect();
            union.sort_unstable();
            union.dedup();
            if union.is_empty() {
                images.push(Vec::new());
                continue;
            }
            let image = match self.hulls.get(&union) {
                Some(hull) => hull.clone(),
                None => {
                    let hull = complex.co_ids(&union)?;
                    self.hulls.insert(union, hull.clone());
                    hull
                }
            };
            images.push(image);
        }
        DynamicalSystem::from_images(complex, images)
    }
}

/// `F_μ` for a single threshold.
pub fn build_f_mu<'k>(complex: &'k SimplicialComplex, table: &'k FrequencyTable, mu: f64) -> Result<DynamicalSystem<'k>> {
    FMuBuilder::new(complex, table)?.build(mu)
}

/// CSV with columns `x1,x2,y1,y2` (or `x,y` when `dim == 1`), 17 significant digits.
pub fn format_samples(pairs: &[SamplePair], dim: usize) -> String {
    let mut out = String::new();
    if dim == 1 {
        out.push_str("x,y\n");
        for p in pairs {
            let _ = writeln!(out, "{:.16e},{:.16e}", p.x[0], p.y[0]);
        }
    } else {
        out.push_str("x1,x2,y1,y2\n");
        for p in pairs {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p.x[0], p.x[1], p.y[0], p.y[1]);
        }
    }
    out
}

pub fn parse_samples(text: &str) -> Result<Vec<SamplePair>> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: std::result::Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let Ok(v) = fields else {
            if i == 0 {
                continue; // header
            }
            return Err(parse_error(i + 1, format!("bad sample row `{line}`")));
        };
        match v.len() {
            2 => pairs.push(SamplePair::on_line(v[0], v[1])),
            4 => pairs.push(SamplePair::new([v[0], v[1]], [v[2], v[3]])),
            n => return Err(parse_error(i + 1, format!("expected 2 or 4 columns, found {n}"))),
        }
    }
    Ok(pairs)
}

pub fn write_samples(path: impl AsRef<Path>, pairs: &[SamplePair], dim: usize) -> Result<()> {
    std::fs::write(path, format_samples(pairs, dim))?;
    Ok(())
}

pub fn read_samples(path: impl AsRef<Path>) -> Result<Vec<SamplePair>> {
    parse_samples(&std::fs::read_to_string(path)?)
}
