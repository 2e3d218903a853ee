//! Interval multiplicities of small Z/2 quiver representations from
//! `dim Hom(I_J, M)`, counted by enumerating every family of vectors.

use combdyn::homology::{Arrow, BitMatrix, Interval, PersistenceModule};
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Raw data of a representation: space dimensions, arrow directions and
/// row-major 0/1 matrices (`target × source`).
#[derive(Clone, Debug)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub arrows: Vec<(Arrow, Vec<Vec<bool>>)>,
}

impl Rep {
    pub fn module(&self) -> PersistenceModule {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, (a, rows))| {
                let (s, t) = self.ends(i);
                let mut m = BitMatrix::zeros(self.dims[t], self.dims[s]);
                for (r, row) in rows.iter().enumerate() {
                    for (c, &bit) in row.iter().enumerate() {
                        m.set(r, c, bit);
                    }
                }
                (*a, m)
            })
            .collect();
        PersistenceModule::new(self.dims.clone(), arrows).unwrap()
    }

    /// `(source, target)` spaces of arrow `i`.
    fn ends(&self, i: usize) -> (usize, usize) {
        match self.arrows[i].0 {
            Arrow::Forward => (i, i + 1),
            Arrow::Backward => (i + 1, i),
        }
    }

    /// The interval module on `[b, e]` (0-based, inclusive) with the same
    /// arrow directions.
    pub fn interval(dirs: &[Arrow], b: usize, e: usize) -> Rep {
        let n = dirs.len() + 1;
        let dims: Vec<usize> = (0..n).map(|t| usize::from(b <= t && t <= e)).collect();
        let arrows = dirs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let (s, t) = match a {
                    Arrow::Forward => (i, i + 1),
                    Arrow::Backward => (i + 1, i),
                };
                let both = dims[s] == 1 && dims[t] == 1;
                (a, vec![vec![both; dims[s]]; dims[t]])
            })
            .collect();
        Rep { dims, arrows }
    }

    /// `dim Hom(I_[b,e], self)`: families `v_t ∈ M_t` for `t ∈ [b, e]` with
    /// `M(α) v_s = v_t` on arrows inside the interval and `M(α) v_s = 0` on
    /// arrows leaving it.
    pub fn hom_from_interval(&self, b: usize, e: usize) -> usize {
        let offsets: Vec<usize> = (0..self.dims.len())
            .scan(0, |acc, t| {
                let o = *acc;
                if b <= t && t <= e {
                    *acc += self.dims[t];
                }
                Some(o)
            })
            .collect();
        let total: usize = (b..=e).map(|t| self.dims[t]).sum();
        assert!(total <= 16, "enumeration is exponential in the total dimension");
        let within = |t: usize| b <= t && t <= e;
        let mut solutions = 0usize;
        for bits in 0u32..(1 << total) {
            let vector = |t: usize| -> Vec<bool> { (0..self.dims[t]).map(|j| bits & (1 << (offsets[t] + j)) != 0).collect() };
            let ok = (0..self.arrows.len()).all(|i| {
                let (s, t) = self.ends(i);
                if !within(s) {
                    return true;
                }
                let v = vector(s);
                let image: Vec<bool> = self.arrows[i]
                    .1
                    .iter()
                    .map(|row| row.iter().zip(&v).fold(false, |acc, (&m, &x)| acc ^ (m & x)))
                    .collect();
                if within(t) {
                    image == vector(t)
                } else {
                    image.iter().all(|&x| !x)
                }
            });
            if ok {
                solutions += 1;
            }
        }
        solutions.trailing_zeros() as usize
    }
}

/// Interval multiplicities of `rep` in dimension `dim`, from the linear
/// system `dim Hom(I_J, M) = Σ_K m_K dim Hom(I_J, I_K)`.
pub fn decompose_by_hom(rep: &Rep, dim: usize) -> Vec<Interval> {
    let n = rep.dims.len();
    let dirs: Vec<Arrow> = rep.arrows.iter().map(|a| a.0).collect();
    let spans: Vec<(usize, usize)> = (0..n).flat_map(|b| (b..n).map(move |e| (b, e))).collect();
    let m = spans.len();
    let mut system: Vec<Vec<Ratio<i64>>> = spans
        .iter()
        .map(|&(b, e)| {
            let mut row: Vec<Ratio<i64>> = spans
                .iter()
                .map(|&(c, f)| Ratio::from_integer(Rep::interval(&dirs, c, f).hom_from_interval(b, e) as i64))
                .collect();
            row.push(Ratio::from_integer(rep.hom_from_interval(b, e) as i64));
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&r| !system[r][c].is_zero()).expect("interval Hom matrix is invertible");
        system.swap(c, p);
        let inv = Ratio::one() / system[c][c];
        for x in system[c].iter_mut() {
            *x *= inv;
        }
        let pivot = system[c].clone();
        for (r, row) in system.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    let mut out = Vec::new();
    for (r, &(b, e)) in spans.iter().enumerate() {
        let count = system[r][m];
        assert!(count.is_integer() && count >= Ratio::zero(), "multiplicity {count} for [{b}, {e}]");
        for _ in 0..count.to_integer() {
            out.push(Interval::new(dim, b + 1, e + 1));
        }
    }
    out
}
