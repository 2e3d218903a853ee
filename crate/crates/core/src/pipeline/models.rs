//! The two sampled systems and the rectangular meshes they live on.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;

use crate::complex::{Geometry, Point, SimplicialComplex};
use crate::error::{Error, Result};
use crate::sampled_map::SamplePair;

/// Name of the normal-variate algorithm behind every Gaussian draw.
pub const NORMAL_SAMPLER: &str = "rand_distr-0.6 Normal (ziggurat) over ChaCha8Rng";

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Region {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Region { x0, x1, y0, y1 }
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.x0..=self.x1).contains(&p[0]) && (self.y0..=self.y1).contains(&p[1])
    }
}

fn exact(x: f64) -> Option<Rational64> {
    let r = Rational64::approximate_float(x)?;
    (r.to_f64() == Some(x)).then_some(r)
}

/// Uniform `nx × ny` grid over `region`, each square cut along the diagonal
/// from its lower-left to its upper-right corner.
///
/// Vertex `j * (nx + 1) + i` sits at column `i`, row `j`. Coordinates are
/// exact rationals whenever the region bounds are.
pub fn grid_mesh(region: Region, nx: usize, ny: usize) -> Result<SimplicialComplex> {
    let finite = [region.x0, region.x1, region.y0, region.y1].iter().all(|v| v.is_finite());
    if nx == 0 || ny == 0 || !finite || region.x1 <= region.x0 || region.y1 <= region.y0 {
        return Err(Error::DegenerateRegion);
    }
    let bounds = [region.x0, region.x1, region.y0, region.y1].map(exact);
    let geometry = if let [Some(x0), Some(x1), Some(y0), Some(y1)] = bounds {
        let mut coords = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                let x = x0 + (x1 - x0) * Rational64::new(i as i64, nx as i64);
                let y = y0 + (y1 - y0) * Rational64::new(j as i64, ny as i64);
                coords.push(vec![x, y]);
            }
        }
        Geometry::from_rationals(2, &coords)?
    } else {
        let mut coords = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                let x = region.x0 + (region.x1 - region.x0) * i as f64 / nx as f64;
                let y = region.y0 + (region.y1 - region.y0) * j as f64 / ny as f64;
                coords.push(vec![x, y]);
            }
        }
        Geometry::from_f64(2, &coords)?
    };
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let a = j * (nx + 1) + i;
            let (b, c, d) = (a + 1, a + nx + 1, a + nx + 2);
            triangles.push(vec![a, b, d]);
            triangles.push(vec![a, c, d]);
        }
    }
    SimplicialComplex::with_geometry(geometry, &triangles)
}

/// Coefficients of the planar map
/// `N(x) = R(θ) ((1 + α) x + |x|² [[a, -b], [b, a]] x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KuznetsovParams {
    pub theta: f64,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
}

impl Default for KuznetsovParams {
    fn default() -> Self {
        KuznetsovParams {
            theta: std::f64::consts::PI / 17.0,
            alpha: 0.5,
            a: -1.0,
            b: 0.5,
        }
    }
}

impl KuznetsovParams {
    pub fn apply(&self, x: Point) -> Point {
        let r2 = x[0] * x[0] + x[1] * x[1];
        let u = [
            (1.0 + self.alpha) * x[0] + r2 * (self.a * x[0] - self.b * x[1]),
            (1.0 + self.alpha) * x[1] + r2 * (self.b * x[0] + self.a * x[1]),
        ];
        let (s, c) = self.theta.sin_cos();
        [c * u[0] - s * u[1], s * u[0] + c * u[1]]
    }
}

/// Settings for drawing noisy samples of the map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseConfig {
    pub seed: u64,
    pub count: usize,
    pub sigma_x: f64,
    pub sigma_y: f64,
}

/// Accepted pairs plus the number of draws whose image left the square.
#[derive(Clone, Debug)]
pub struct KuznetsovSample {
    pub pairs: Vec<SamplePair>,
    pub rejected: usize,
}

/// Draws `count` points uniformly in `[-1, 1]²` and pairs each with the noisy
/// image `N(x + e_X) + e_Y`. Pairs whose image leaves the square are dropped.
pub fn sample_kuznetsov(params: &KuznetsovParams, noise: &NoiseConfig) -> KuznetsovSample {
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let nx = Normal::new(0.0, noise.sigma_x).expect("finite non-negative sigma_x");
    let ny = Normal::new(0.0, noise.sigma_y).expect("finite non-negative sigma_y");
    let square = Region::new(-1.0, 1.0, -1.0, 1.0);
    let mut pairs = Vec::with_capacity(noise.count);
    let mut rejected = 0;
    for _ in 0..noise.count {
        let x = [rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)];
        let ex: Point = [rng.sample(nx), rng.sample(nx)];
        let ey: Point = [rng.sample(ny), rng.sample(ny)];
        let image = params.apply([x[0] + ex[0], x[1] + ex[1]]);
        let y = [image[0] + ey[0], image[1] + ey[1]];
        if square.contains(y) {
            pairs.push(SamplePair::new(x, y));
        } else {
            rejected += 1;
        }
    }
    KuznetsovSample { pairs, rejected }
}

/// Predator-prey field
/// `x' = x (1 - x/k) - a1 x y / (b + x)`, `y' = a2 x y / (b + x) - g y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LVParams {
    pub k: f64,
    pub b: f64,
    pub g: f64,
    pub a1: f64,
    pub a2: f64,
}

impl LVParams {
    /// Parameters with `a1 = (1 - 1/k)(b + 1)` and `a2 = g (b + 1)`.
    pub fn new(k: f64, b: f64, g: f64) -> Self {
        LVParams {
            k,
            b,
            g,
            a1: (1.0 - 1.0 / k) * (b + 1.0),
            a2: g * (b + 1.0),
        }
    }

    pub fn field(&self, p: Point) -> Result<Point> {
        let [x, y] = p;
        let denom = self.b + x;
        if denom == 0.0 {
            return Err(Error::Pole { x, y });
        }
        Ok([
            x * (1.0 - x / self.k) - self.a1 * x * y / denom,
            self.a2 * x * y / denom - self.g * y,
        ])
    }
}

impl Default for LVParams {
    fn default() -> Self {
        LVParams::new(3.5, 1.0, 0.5)
    }
}

/// The field evaluated at every vertex of a planar mesh.
pub fn sample_lv_vectors(params: &LVParams, mesh: &SimplicialComplex) -> Result<Vec<Point>> {
    let geometry = mesh.geometry().ok_or(Error::MissingCoordinates)?;
    if geometry.dim() != 2 {
        return Err(Error::UnsupportedDimension(geometry.dim()));
    }
    (0..geometry.len()).map(|v| params.field(geometry.point(v))).collect()
}
