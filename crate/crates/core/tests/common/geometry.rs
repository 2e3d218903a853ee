//! Smallest convex superset by enumerating every superset, on lattice
//! complexes with at most a dozen simplices.

use combdyn::{Geometry, SimplexSet, SimplicialComplex};
use num_rational::Ratio;
use num_traits::{Signed, Zero};

type Q = Ratio<i128>;
type P = (Q, Q);

fn q(v: i64) -> Q {
    Q::from_integer(v as i128)
}

fn orient(a: &P, b: &P, c: &P) -> Q {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn dot(a: &P, b: &P, c: &P) -> Q {
    (b.0 - a.0) * (c.0 - a.0) + (b.1 - a.1) * (c.1 - a.1)
}

/// Convex hull as its affine dimension and its corners, counter-clockwise
/// in dimension two.
struct Hull {
    dim: usize,
    corners: Vec<P>,
}

fn hull(points: &[P]) -> Hull {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Hull { dim: 0, corners: pts };
    }
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    if pts.iter().all(|p| orient(&a, &b, p).is_zero()) {
        return Hull { dim: 1, corners: vec![a, b] };
    }
    // Monotone chain, dropping collinear points.
    let mut lower: Vec<P> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Q::zero() {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<P> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Q::zero() {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Hull { dim: 2, corners: lower }
}

fn inside(h: &Hull, p: &P, strict: bool) -> bool {
    let c = &h.corners;
    match h.dim {
        0 => c[0] == *p,
        1 => {
            if !orient(&c[0], &c[1], p).is_zero() {
                return false;
            }
            let (s, t) = (dot(&c[0], &c[1], p), dot(&c[1], &c[0], p));
            if strict {
                s.is_positive() && t.is_positive()
            } else {
                !s.is_negative() && !t.is_negative()
            }
        }
        _ => (0..c.len()).all(|i| {
            let o = orient(&c[i], &c[(i + 1) % c.len()], p);
            if strict {
                o.is_positive()
            } else {
                !o.is_negative()
            }
        }),
    }
}

/// Crossing point of closed segments `ab` and `cd` when they are not parallel.
fn crossing(a: &P, b: &P, c: &P, d: &P) -> Option<P> {
    let denom = (b.0 - a.0) * (d.1 - c.1) - (b.1 - a.1) * (d.0 - c.0);
    if denom.is_zero() {
        return None;
    }
    let t = ((c.0 - a.0) * (d.1 - c.1) - (c.1 - a.1) * (d.0 - c.0)) / denom;
    let u = ((c.0 - a.0) * (b.1 - a.1) - (c.1 - a.1) * (b.0 - a.0)) / denom;
    let unit = |x: &Q| !x.is_negative() && *x <= Q::from_integer(1);
    (unit(&t) && unit(&u)).then(|| (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)))
}

/// Whether the relative interiors of `conv(x)` and `conv(y)` meet. The
/// intersection of the closed hulls is the hull of the corners of either
/// inside the other plus edge crossings; its centroid lies in both relative
/// interiors exactly when those meet.
fn relints_meet(x: &[P], y: &[P]) -> bool {
    let (hx, hy) = (hull(x), hull(y));
    let mut found: Vec<P> = Vec::new();
    found.extend(hx.corners.iter().filter(|p| inside(&hy, p, false)));
    found.extend(hy.corners.iter().filter(|p| inside(&hx, p, false)));
    for i in 0..hx.corners.len() {
        for j in i + 1..hx.corners.len() {
            for k in 0..hy.corners.len() {
                for l in k + 1..hy.corners.len() {
                    let (a, b, c, d) = (&hx.corners[i], &hx.corners[j], &hy.corners[k], &hy.corners[l]);
                    found.extend(crossing(a, b, c, d));
                }
            }
        }
    }
    if found.is_empty() {
        return false;
    }
    let n = Q::from_integer(found.len() as i128);
    let sum = found.iter().fold((Q::zero(), Q::zero()), |s, p| (s.0 + p.0, s.1 + p.1));
    let centroid = (sum.0 / n, sum.1 / n);
    inside(&hx, &centroid, true) && inside(&hy, &centroid, true)
}

/// A planar complex on integer coordinates.
pub struct LatticeComplex {
    pub points: Vec<(i64, i64)>,
    pub toplexes: Vec<Vec<usize>>,
}

impl LatticeComplex {
    pub fn build(&self, exact: bool) -> SimplicialComplex {
        let geometry = if exact {
            let coords: Vec<Vec<num_rational::Rational64>> = self
                .points
                .iter()
                .map(|&(x, y)| vec![x.into(), y.into()])
                .collect();
            Geometry::from_rationals(2, &coords).unwrap()
        } else {
            let coords: Vec<Vec<f64>> = self.points.iter().map(|&(x, y)| vec![x as f64, y as f64]).collect();
            Geometry::from_f64(2, &coords).unwrap()
        };
        SimplicialComplex::with_geometry(geometry, &self.toplexes).unwrap()
    }
}

/// `meets[s][t]`: cells whose open cell meets the relative interior of the
/// hull of `s ∪ t`, as a bit mask over simplex ids. A set is convex iff it
/// contains `meets[s][t]` for all its members `s`, `t`.
fn segment_masks(k: &SimplicialComplex, points: &[(i64, i64)]) -> Vec<Vec<u32>> {
    let corners = |s: combdyn::SimplexId| -> Vec<P> {
        k.vertices(s).iter().map(|&v| (q(points[v as usize].0), q(points[v as usize].1))).collect()
    };
    let n = k.len();
    let mut masks = vec![vec![0u32; n]; n];
    for s in k.ids() {
        for t in k.ids().filter(|t| *t >= s) {
            let mut span = corners(s);
            span.extend(corners(t));
            let mut mask = 0;
            for r in k.ids() {
                if relints_meet(&corners(r), &span) {
                    mask |= 1 << r.index();
                }
            }
            masks[s.index()][t.index()] = mask;
            masks[t.index()][s.index()] = mask;
        }
    }
    masks
}

fn is_convex(masks: &[Vec<u32>], set: u32) -> bool {
    let members: Vec<usize> = (0..masks.len()).filter(|&i| set & (1 << i) != 0).collect();
    members
        .iter()
        .all(|&s| members.iter().all(|&t| masks[s][t] & !set == 0))
}

/// Intersection of all convex supersets of `a`, by enumeration.
pub fn co_oracle(k: &SimplicialComplex, points: &[(i64, i64)], a: &SimplexSet) -> SimplexSet {
    let n = k.len();
    assert!(n <= 16, "oracle is exponential in the complex size");
    let masks = segment_masks(k, points);
    let base: u32 = a.iter().fold(0, |m, s| m | 1 << s.index());
    let free: Vec<usize> = (0..n).filter(|&i| base & (1 << i) == 0).collect();
    let mut meet = (1u32 << n) - 1;
    for choice in 0u32..(1 << free.len()) {
        let mut set = base;
        for (j, &i) in free.iter().enumerate() {
            if choice & (1 << j) != 0 {
                set |= 1 << i;
            }
        }
        if is_convex(&masks, set) {
            meet &= set;
        }
    }
    k.set_of((0..n).filter(|&i| meet & (1 << i) != 0).map(combdyn::SimplexId::new))
}
