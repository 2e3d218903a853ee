//! Planar predicates on relatively open convex pieces.
//!
//! Everything is generic over [`Scalar`]: `i128` on integer lattices gives
//! exact answers, `f64` falls back to an absolute tolerance.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

pub(crate) const FLOAT_TOLERANCE: f64 = 1e-9;

pub(crate) trait Scalar:
    Copy + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn sign(self) -> Ordering;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }

    fn sign(self) -> Ordering {
        self.cmp(&0)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn sign(self) -> Ordering {
        if self > FLOAT_TOLERANCE {
            Ordering::Greater
        } else if self < -FLOAT_TOLERANCE {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

pub(crate) type P2<T> = [T; 2];

fn sub<T: Scalar>(a: P2<T>, b: P2<T>) -> P2<T> {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross<T: Scalar>(u: P2<T>, v: P2<T>) -> T {
    u[0] * v[1] - u[1] * v[0]
}

fn dot<T: Scalar>(u: P2<T>, v: P2<T>) -> T {
    u[0] * v[0] + u[1] * v[1]
}

/// Twice the signed area of `abc`; positive for a left turn.
pub(crate) fn orient<T: Scalar>(a: P2<T>, b: P2<T>, c: P2<T>) -> T {
    cross(sub(b, a), sub(c, a))
}

fn same<T: Scalar>(a: P2<T>, b: P2<T>) -> bool {
    (a[0] - b[0]).sign().is_eq() && (a[1] - b[1]).sign().is_eq()
}

fn lex_cmp<T: Scalar>(a: P2<T>, b: P2<T>) -> Ordering {
    (a[0] - b[0]).sign().then((a[1] - b[1]).sign())
}

/// Convex hull of labelled points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Hull {
    Point(usize),
    Segment(usize, usize),
    /// Counter-clockwise, no three consecutive vertices collinear.
    Polygon(Vec<usize>),
}

/// Monotone chain hull. `labels` index into `points`.
pub(crate) fn convex_hull<T: Scalar>(points: &[P2<T>], labels: &[usize]) -> Option<Hull> {
    let mut order: Vec<usize> = labels.to_vec();
    order.sort_by(|&a, &b| lex_cmp(points[a], points[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| same(points[*a], points[*b]));
    match order.len() {
        0 => return None,
        1 => return Some(Hull::Point(order[0])),
        _ => {}
    }
    let half = |iter: &mut dyn Iterator<Item = usize>| {
        let mut chain: Vec<usize> = Vec::new();
        for i in iter {
            while chain.len() >= 2 {
                let n = chain.len();
                let turn = orient(points[chain[n - 2]], points[chain[n - 1]], points[i]).sign();
                if turn == Ordering::Greater {
                    break;
                }
                chain.pop();
            }
            chain.push(i);
        }
        chain
    };
    let mut lower = half(&mut order.iter().copied());
    let mut upper = half(&mut order.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    match lower.len() {
        0 | 1 => Some(Hull::Point(order[0])),
        2 => Some(Hull::Segment(lower[0], lower[1])),
        _ => Some(Hull::Polygon(lower)),
    }
}

/// Relative interior of a point, a segment or a convex polygon.
#[derive(Clone, Debug)]
pub(crate) enum Piece<T> {
    Point(P2<T>),
    Segment(P2<T>, P2<T>),
    /// Counter-clockwise with positive area.
    Polygon(Vec<P2<T>>),
}

impl<T: Scalar> Piece<T> {
    /// An open triangle, oriented counter-clockwise.
    pub(crate) fn triangle(a: P2<T>, b: P2<T>, c: P2<T>) -> Self {
        if orient(a, b, c).sign() == Ordering::Less {
            Piece::Polygon(vec![a, c, b])
        } else {
            Piece::Polygon(vec![a, b, c])
        }
    }
}

/// A bound `num / den` on the segment parameter, `den > 0`.
#[derive(Clone, Copy)]
struct Bound<T> {
    num: T,
    den: T,
    strict: bool,
}

fn cmp_bound<T: Scalar>(a: &Bound<T>, b: &Bound<T>) -> Ordering {
    (a.num * b.den - b.num * a.den).sign()
}

/// Feasible set of `t` on `p(t) = a + t (b - a)`, intersected against
/// affine constraints `f(t) >= 0` or `f(t) > 0`.
struct ParamInterval<T> {
    lo: Bound<T>,
    hi: Bound<T>,
    empty: bool,
}

impl<T: Scalar> ParamInterval<T> {
    fn unit(open: bool, one: T) -> Self {
        ParamInterval {
            lo: Bound {
                num: T::zero(),
                den: one,
                strict: open,
            },
            hi: Bound {
                num: one,
                den: one,
                strict: open,
            },
            empty: false,
        }
    }

    /// Adds `f0 + t (f1 - f0) >= 0` (or `> 0` when `strict`).
    fn constrain(&mut self, f0: T, f1: T, strict: bool) {
        let d = f1 - f0;
        match d.sign() {
            Ordering::Equal => {
                let s = f0.sign();
                if s == Ordering::Less || (strict && s == Ordering::Equal) {
                    self.empty = true;
                }
            }
            Ordering::Greater => {
                let bound = Bound {
                    num: -f0,
                    den: d,
                    strict,
                };
                match cmp_bound(&bound, &self.lo) {
                    Ordering::Greater => self.lo = bound,
                    Ordering::Equal => self.lo.strict |= strict,
                    Ordering::Less => {}
                }
            }
            Ordering::Less => {
                let bound = Bound {
                    num: f0,
                    den: -d,
                    strict,
                };
                match cmp_bound(&bound, &self.hi) {
                    Ordering::Less => self.hi = bound,
                    Ordering::Equal => self.hi.strict |= strict,
                    Ordering::Greater => {}
                }
            }
        }
    }

    fn is_nonempty(&self) -> bool {
        if self.empty {
            return false;
        }
        match cmp_bound(&self.lo, &self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.lo.strict && !self.hi.strict,
            Ordering::Greater => false,
        }
    }
}

fn in_relint<T: Scalar>(p: P2<T>, piece: &Piece<T>) -> bool {
    match piece {
        Piece::Point(q) => same(p, *q),
        Piece::Segment(c, d) => {
            orient(*c, *d, p).sign().is_eq()
                && dot(sub(p, *c), sub(*d, *c)).sign().is_gt()
                && dot(sub(p, *d), sub(*c, *d)).sign().is_gt()
        }
        Piece::Polygon(vs) => (0..vs.len()).all(|i| orient(vs[i], vs[(i + 1) % vs.len()], p).sign().is_gt()),
    }
}

/// Open segment `(a, b)` against the relative interior of a segment or polygon.
fn open_segment_meets<T: Scalar>(a: P2<T>, b: P2<T>, other: &Piece<T>, one: T) -> bool {
    let mut interval = ParamInterval::unit(true, one);
    match other {
        Piece::Point(q) => return in_relint(*q, &Piece::Segment(a, b)),
        Piece::Segment(c, d) => {
            let fa = orient(*c, *d, a);
            let fb = orient(*c, *d, b);
            interval.constrain(fa, fb, false);
            interval.constrain(-fa, -fb, false);
            let dir = sub(*d, *c);
            interval.constrain(dot(sub(a, *c), dir), dot(sub(b, *c), dir), true);
            let back = sub(*c, *d);
            interval.constrain(dot(sub(a, *d), back), dot(sub(b, *d), back), true);
        }
        Piece::Polygon(vs) => {
            for i in 0..vs.len() {
                let (u, w) = (vs[i], vs[(i + 1) % vs.len()]);
                interval.constrain(orient(u, w, a), orient(u, w, b), true);
            }
        }
    }
    interval.is_nonempty()
}

/// Interiors of two convex polygons overlap iff no edge normal of either
/// weakly separates them.
fn polygons_overlap<T: Scalar>(p: &[P2<T>], q: &[P2<T>]) -> bool {
    let separated_by_edges_of = |a: &[P2<T>], b: &[P2<T>]| {
        (0..a.len()).any(|i| {
            let (u, w) = (a[i], a[(i + 1) % a.len()]);
            b.iter().all(|&v| orient(u, w, v).sign().is_le())
        })
    };
    !separated_by_edges_of(p, q) && !separated_by_edges_of(q, p)
}

/// Whether the relative interiors of two pieces intersect.
pub(crate) fn relints_intersect<T: Scalar>(a: &Piece<T>, b: &Piece<T>, one: T) -> bool {
    match (a, b) {
        (Piece::Point(p), other) | (other, Piece::Point(p)) => in_relint(*p, other),
        (Piece::Segment(s, t), other) | (other, Piece::Segment(s, t)) => open_segment_meets(*s, *t, other, one),
        (Piece::Polygon(p), Piece::Polygon(q)) => polygons_overlap(p, q),
    }
}

/// Whether `p` lies in the closed segment `[a, b]`.
pub(crate) fn on_closed_segment<T: Scalar>(p: P2<T>, a: P2<T>, b: P2<T>) -> bool {
    orient(a, b, p).sign().is_eq()
        && dot(sub(p, a), sub(b, a)).sign().is_ge()
        && dot(sub(p, b), sub(a, b)).sign().is_ge()
}

/// Position of `p` along direction `b - a` (unnormalized).
pub(crate) fn along<T: Scalar>(p: P2<T>, a: P2<T>, b: P2<T>) -> T {
    dot(sub(p, a), sub(b, a))
}

/// Exact sign of `nx * px + ny * py + c / scale` where the coefficients are
/// integers and `p` is an arbitrary float point. A float evaluation is
/// trusted when it clears a forward error bound; otherwise the sum is
/// evaluated in big rationals.
pub(crate) fn linear_sign(nx: i128, ny: i128, c: i128, scale: i128, p: [f64; 2]) -> Ordering {
    let (fx, fy, fc, fs) = (nx as f64, ny as f64, c as f64, scale as f64);
    let value = fx * p[0] + fy * p[1] + fc / fs;
    let magnitude = (fx * p[0]).abs() + (fy * p[1]).abs() + (fc / fs).abs();
    // Conversions of |coefficient| < 2^60 are exact up to one rounding each,
    // and three products plus two sums add at most a handful more.
    let bound = 16.0 * f64::EPSILON * magnitude;
    if value > bound {
        return Ordering::Greater;
    }
    if value < -bound {
        return Ordering::Less;
    }
    let big = |v: i128| BigRational::from_i128(v).expect("i128 is representable");
    let px = BigRational::from_float(p[0]).expect("finite coordinate");
    let py = BigRational::from_float(p[1]).expect("finite coordinate");
    let exact = big(nx) * px + big(ny) * py + big(c) / big(scale);
    if exact.is_zero() {
        Ordering::Equal
    } else if exact.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}
