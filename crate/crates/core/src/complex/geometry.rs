//! Geometric realization of a complex in the plane (or on a line).

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::predicates::{self, along, convex_hull, on_closed_segment, orient, Hull, Piece, Scalar, P2};
use super::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};

/// A point in the plane. Points of a 1-dimensional realization have `y = 0`.
pub type Point = [f64; 2];

/// Lattice coordinates are kept below this bound so that every predicate
/// fits comfortably in `i128`.
const LATTICE_LIMIT: i128 = 1 << 26;

#[derive(Clone, Debug)]
enum Kernel {
    /// Coordinates are `lattice / scale` exactly.
    Exact { lattice: Vec<[i128; 2]>, scale: i128 },
    Float,
}

/// Vertex coordinates together with the arithmetic kernel used for
/// predicates on them.
#[derive(Clone, Debug)]
pub struct Geometry {
    dim: usize,
    coords: Vec<Vec<f64>>,
    points: Vec<Point>,
    kernel: Kernel,
    index: OnceLock<Index>,
}

impl Geometry {
    /// Coordinates given as floats. When every coordinate is a short
    /// rational (as on regular grids), predicates are evaluated exactly.
    pub fn from_f64(dim: usize, coords: &[Vec<f64>]) -> Result<Self> {
        check_dims(dim, coords.iter().map(Vec::len))?;
        let recovered: Option<Vec<Vec<Rational64>>> = coords
            .iter()
            .map(|c| c.iter().map(|&x| exact_rational(x)).collect())
            .collect();
        let kernel = recovered
            .as_deref()
            .and_then(|r| lattice_kernel(dim, r))
            .unwrap_or(Kernel::Float);
        Ok(Self::assemble(dim, coords.to_vec(), kernel))
    }

    /// Exact rational coordinates.
    pub fn from_rationals(dim: usize, coords: &[Vec<Rational64>]) -> Result<Self> {
        check_dims(dim, coords.iter().map(Vec::len))?;
        let floats: Vec<Vec<f64>> = coords
            .iter()
            .map(|c| c.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        let kernel = lattice_kernel(dim, coords).unwrap_or(Kernel::Float);
        Ok(Self::assemble(dim, floats, kernel))
    }

    fn assemble(dim: usize, coords: Vec<Vec<f64>>, kernel: Kernel) -> Self {
        let points = coords
            .iter()
            .map(|c| [c.first().copied().unwrap_or(0.0), c.get(1).copied().unwrap_or(0.0)])
            .collect();
        Geometry {
            dim,
            coords,
            points,
            kernel,
            index: OnceLock::new(),
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self, vertex: usize) -> &[f64] {
        &self.coords[vertex]
    }

    /// Planar view of a vertex.
    pub fn point(&self, vertex: usize) -> Point {
        self.points[vertex]
    }

    /// Whether predicates run in exact integer arithmetic.
    pub fn is_exact(&self) -> bool {
        matches!(self.kernel, Kernel::Exact { .. })
    }

    /// Sign of `cross(p[w] - p[u], d)`: positive when `d` points to the left
    /// of the directed line `u -> w`.
    pub fn turn_sign(&self, u: usize, w: usize, d: Point) -> Ordering {
        match &self.kernel {
            Kernel::Exact { lattice, .. } => {
                let (a, b) = (lattice[u], lattice[w]);
                predicates::linear_sign(-(b[1] - a[1]), b[0] - a[0], 0, 1, d)
            }
            Kernel::Float => {
                let (a, b) = (self.points[u], self.points[w]);
                ((b[0] - a[0]) * d[1] - (b[1] - a[1]) * d[0]).sign()
            }
        }
    }

    /// Sign of `dot(p[w] - p[u], d)`.
    pub fn dot_sign(&self, u: usize, w: usize, d: Point) -> Ordering {
        match &self.kernel {
            Kernel::Exact { lattice, .. } => {
                let (a, b) = (lattice[u], lattice[w]);
                predicates::linear_sign(b[0] - a[0], b[1] - a[1], 0, 1, d)
            }
            Kernel::Float => {
                let (a, b) = (self.points[u], self.points[w]);
                ((b[0] - a[0]) * d[0] + (b[1] - a[1]) * d[1]).sign()
            }
        }
    }

    /// Sign of `orient(p[u], p[w], x)` for an arbitrary point `x`.
    pub fn side_of(&self, u: usize, w: usize, x: Point) -> Ordering {
        match &self.kernel {
            Kernel::Exact { lattice, scale } => {
                let (a, b) = (lattice[u], lattice[w]);
                let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
                predicates::linear_sign(-ey, ex, ey * a[0] - ex * a[1], *scale, x)
            }
            Kernel::Float => orient(self.points[u], self.points[w], x).sign(),
        }
    }

    /// Sign of `dot(x - p[u], p[w] - p[u])`.
    fn along_sign(&self, u: usize, w: usize, x: Point) -> Ordering {
        match &self.kernel {
            Kernel::Exact { lattice, scale } => {
                let (a, b) = (lattice[u], lattice[w]);
                let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
                predicates::linear_sign(ex, ey, -(ex * a[0] + ey * a[1]), *scale, x)
            }
            Kernel::Float => {
                let (a, b) = (self.points[u], self.points[w]);
                ((x[0] - a[0]) * (b[0] - a[0]) + (x[1] - a[1]) * (b[1] - a[1])).sign()
            }
        }
    }

    fn index(&self, complex: &SimplicialComplex) -> &Index {
        self.index.get_or_init(|| Index::build(self, complex))
    }

    /// Whether `|K|` is a convex set.
    pub(crate) fn polytope_is_convex(&self, complex: &SimplicialComplex) -> bool {
        self.index(complex).convex
    }

    /// Toplexes whose closed cell contains `x`, in increasing id order.
    pub(crate) fn locate(&self, complex: &SimplicialComplex, x: Point) -> Vec<SimplexId> {
        let index = self.index(complex);
        let mut found: Vec<SimplexId> = index
            .toplexes
            .query([x, x])
            .filter(|&s| self.closed_cell_contains(complex, s, x))
            .collect();
        found.sort_unstable();
        found.dedup();
        found
    }

    fn closed_cell_contains(&self, complex: &SimplicialComplex, s: SimplexId, x: Point) -> bool {
        let v: Vec<usize> = complex.vertices(s).iter().map(|&v| v as usize).collect();
        match v.len() {
            1 => {
                // Equality of a float point with a vertex.
                let p = self.points[v[0]];
                match &self.kernel {
                    Kernel::Exact { lattice, scale } => {
                        let q = lattice[v[0]];
                        predicates::linear_sign(1, 0, -q[0], *scale, x).is_eq()
                            && predicates::linear_sign(0, 1, -q[1], *scale, x).is_eq()
                    }
                    Kernel::Float => (x[0] - p[0]).sign().is_eq() && (x[1] - p[1]).sign().is_eq(),
                }
            }
            2 => {
                self.side_of(v[0], v[1], x).is_eq()
                    && self.along_sign(v[0], v[1], x).is_ge()
                    && self.along_sign(v[1], v[0], x).is_ge()
            }
            3 => {
                let ccw = self.orientation(v[0], v[1], v[2]);
                let (a, b, c) = if ccw == Ordering::Less {
                    (v[0], v[2], v[1])
                } else {
                    (v[0], v[1], v[2])
                };
                self.side_of(a, b, x).is_ge() && self.side_of(b, c, x).is_ge() && self.side_of(c, a, x).is_ge()
            }
            _ => false,
        }
    }

    fn orientation(&self, a: usize, b: usize, c: usize) -> Ordering {
        match &self.kernel {
            Kernel::Exact { lattice, .. } => orient(lattice[a], lattice[b], lattice[c]).sign(),
            Kernel::Float => orient(self.points[a], self.points[b], self.points[c]).sign(),
        }
    }

    /// Fixed point of `D -> {s : open cell of s meets conv |D|}` started at `ids`.
    pub(crate) fn convex_closure(&self, complex: &SimplicialComplex, ids: &[SimplexId]) -> Result<Vec<SimplexId>> {
        if ids.is_empty() {
            return Err(Error::EmptySet);
        }
        if self.dim > 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if !self.polytope_is_convex(complex) {
            return Err(Error::NonConvexPolytope);
        }
        let mut current = ids.to_vec();
        current.sort_unstable();
        current.dedup();
        match &self.kernel {
            Kernel::Exact { lattice, .. } => Ok(self.fixpoint(complex, lattice, 1i128, current)),
            Kernel::Float => Ok(self.fixpoint(complex, &self.points, 1.0f64, current)),
        }
    }

    fn fixpoint<T: Scalar>(
        &self,
        complex: &SimplicialComplex,
        pts: &[P2<T>],
        one: T,
        mut current: Vec<SimplexId>,
    ) -> Vec<SimplexId> {
        let index = self.index(complex);
        loop {
            let (pieces, hull_vertices) = solid_hull(complex, pts, &current);
            let bbox = self.bbox(hull_vertices.iter().copied());
            let mut next = current.clone();
            for s in index.cells.query(bbox) {
                if current.binary_search(&s).is_ok() {
                    continue;
                }
                let cell = cell_piece(complex, pts, s);
                if pieces.iter().any(|p| predicates::relints_intersect(p, &cell, one)) {
                    next.push(s);
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.len() == current.len() {
                return current;
            }
            current = next;
        }
    }

    fn bbox(&self, vertices: impl Iterator<Item = usize>) -> [Point; 2] {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in vertices {
            let p = self.points[v];
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        [lo, hi]
    }
}

fn check_dims(dim: usize, lens: impl Iterator<Item = usize>) -> Result<()> {
    if dim == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    for (vertex, found) in lens.enumerate() {
        if found != dim {
            return Err(Error::CoordinateDimension {
                expected: dim,
                found,
                vertex,
            });
        }
    }
    Ok(())
}

/// The rational with the smallest denominator that converts back to `x`.
fn exact_rational(x: f64) -> Option<Rational64> {
    if !x.is_finite() {
        return None;
    }
    let r = Rational64::approximate_float(x)?;
    (r.to_f64() == Some(x)).then_some(r)
}

fn lattice_kernel(dim: usize, coords: &[Vec<Rational64>]) -> Option<Kernel> {
    if dim > 2 {
        return None;
    }
    let mut scale: i128 = 1;
    for c in coords.iter().flatten() {
        scale = scale.lcm(&(*c.denom() as i128));
        if scale > LATTICE_LIMIT {
            return None;
        }
    }
    let mut lattice = Vec::with_capacity(coords.len());
    for c in coords {
        let mut p = [0i128; 2];
        for (k, r) in c.iter().enumerate() {
            let v = (*r.numer() as i128).checked_mul(scale / *r.denom() as i128)?;
            if v.abs() > LATTICE_LIMIT {
                return None;
            }
            p[k] = v;
        }
        lattice.push(p);
    }
    Some(Kernel::Exact { lattice, scale })
}

fn cell_piece<T: Scalar>(complex: &SimplicialComplex, pts: &[P2<T>], s: SimplexId) -> Piece<T> {
    let v = complex.vertices(s);
    match v.len() {
        1 => Piece::Point(pts[v[0] as usize]),
        2 => Piece::Segment(pts[v[0] as usize], pts[v[1] as usize]),
        _ => Piece::triangle(pts[v[0] as usize], pts[v[1] as usize], pts[v[2] as usize]),
    }
}

/// `conv |D|` as a union of relatively open pieces, plus the vertices
/// spanning its closure.
///
/// The relative interior of the closed hull always belongs to `conv |D|`.
/// A boundary point lies in `conv |D|` iff it lies in the convex hull of the
/// cells of `D` contained in the boundary face through it, so each hull
/// edge is handled as a 1-dimensional instance.
fn solid_hull<T: Scalar>(complex: &SimplicialComplex, pts: &[P2<T>], cells: &[SimplexId]) -> (Vec<Piece<T>>, Vec<usize>) {
    let mut vertices: Vec<usize> = cells
        .iter()
        .flat_map(|&s| complex.vertices(s).iter().map(|&v| v as usize))
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    let point_cells: Vec<usize> = cells
        .iter()
        .filter(|&&s| complex.dim(s) == 0)
        .map(|&s| complex.vertices(s)[0] as usize)
        .collect();
    let has_point = |v: usize| point_cells.contains(&v);

    let hull = convex_hull(pts, &vertices).expect("nonempty cell set");
    let mut pieces = Vec::new();
    match hull {
        Hull::Point(v) => pieces.push(Piece::Point(pts[v])),
        Hull::Segment(a, b) => segment_pieces(pts, a, b, &has_point, &mut pieces),
        Hull::Polygon(ref ring) => {
            pieces.push(Piece::Polygon(ring.iter().map(|&v| pts[v]).collect()));
            for i in 0..ring.len() {
                let (u, w) = (pts[ring[i]], pts[ring[(i + 1) % ring.len()]]);
                // Cells of D lying in the closed hull edge.
                let mut on_edge: Vec<usize> = Vec::new();
                for &s in cells {
                    let verts = complex.vertices(s);
                    if verts.len() <= 2 && verts.iter().all(|&v| on_closed_segment(pts[v as usize], u, w)) {
                        on_edge.extend(verts.iter().map(|&v| v as usize));
                    }
                }
                if on_edge.is_empty() {
                    continue;
                }
                let key = |&v: &usize| along(pts[v], u, w);
                let lo = *on_edge.iter().min_by(|a, b| (key(a) - key(b)).sign()).unwrap();
                let hi = *on_edge.iter().max_by(|a, b| (key(a) - key(b)).sign()).unwrap();
                if (key(&lo) - key(&hi)).sign().is_eq() {
                    pieces.push(Piece::Point(pts[lo]));
                } else {
                    segment_pieces(pts, lo, hi, &has_point, &mut pieces);
                }
            }
        }
    }
    (pieces, vertices)
}

fn segment_pieces<T: Scalar>(pts: &[P2<T>], a: usize, b: usize, has_point: &dyn Fn(usize) -> bool, out: &mut Vec<Piece<T>>) {
    out.push(Piece::Segment(pts[a], pts[b]));
    for v in [a, b] {
        if has_point(v) {
            out.push(Piece::Point(pts[v]));
        }
    }
}

#[derive(Clone, Debug)]
struct Index {
    cells: BucketGrid,
    toplexes: BucketGrid,
    convex: bool,
}

impl Index {
    fn build(geometry: &Geometry, complex: &SimplicialComplex) -> Self {
        let bbox_of = |s: SimplexId| geometry.bbox(complex.vertices(s).iter().map(|&v| v as usize));
        let all = geometry.bbox(0..geometry.len());
        let mut cells = BucketGrid::new(all, complex.len());
        let mut toplexes = BucketGrid::new(all, complex.len());
        for s in complex.ids() {
            cells.insert(bbox_of(s), s);
            if complex.is_toplex(s) {
                toplexes.insert(bbox_of(s), s);
            }
        }
        let convex = match &geometry.kernel {
            _ if geometry.dim > 2 => false,
            Kernel::Exact { lattice, .. } => solid_is_convex(complex, lattice),
            Kernel::Float => solid_is_convex(complex, &geometry.points),
        };
        Index { cells, toplexes, convex }
    }
}

/// Whether a (properly embedded) complex of dimension at most two has a
/// convex solid.
fn solid_is_convex<T: Scalar>(complex: &SimplicialComplex, pts: &[P2<T>]) -> bool {
    let all: Vec<usize> = (0..complex.num_vertices()).collect();
    let Some(hull) = convex_hull(pts, &all) else {
        return false;
    };
    let toplexes: Vec<SimplexId> = complex.toplexes().collect();
    match hull {
        Hull::Point(_) => complex.num_vertices() == 1,
        Hull::Segment(a, b) => {
            // Every toplex an edge on the line, and consecutive edges abut.
            let mut spans = Vec::new();
            for &s in &toplexes {
                let v = complex.vertices(s);
                if v.len() != 2 {
                    return false;
                }
                let (p, q) = (along(pts[v[0] as usize], pts[a], pts[b]), along(pts[v[1] as usize], pts[a], pts[b]));
                spans.push(if (p - q).sign().is_lt() { (p, q) } else { (q, p) });
            }
            spans.sort_by(|x, y| (x.0 - y.0).sign());
            let mut reach = T::zero();
            for (lo, hi) in spans {
                if (lo - reach).sign().is_gt() {
                    return false;
                }
                if (hi - reach).sign().is_gt() {
                    reach = hi;
                }
            }
            (reach - along(pts[b], pts[a], pts[b])).sign().is_eq()
        }
        Hull::Polygon(ring) => {
            let origin = pts[ring[0]];
            let mut hull_area = T::zero();
            for i in 1..ring.len() - 1 {
                hull_area = hull_area + orient(origin, pts[ring[i]], pts[ring[i + 1]]);
            }
            let mut area = T::zero();
            for &s in &toplexes {
                let v = complex.vertices(s);
                if v.len() != 3 {
                    return false;
                }
                let a = orient(pts[v[0] as usize], pts[v[1] as usize], pts[v[2] as usize]);
                area = area + if a.sign().is_lt() { -a } else { a };
            }
            (area - hull_area).sign().is_eq()
        }
    }
}

/// Uniform bucket grid over bounding boxes.
#[derive(Clone, Debug)]
struct BucketGrid {
    origin: Point,
    cell: [f64; 2],
    shape: [usize; 2],
    buckets: Vec<Vec<SimplexId>>,
}

impl BucketGrid {
    fn new(bounds: [Point; 2], items: usize) -> Self {
        let side = ((items as f64).sqrt().ceil() as usize).clamp(1, 512);
        let mut cell = [0.0; 2];
        let mut shape = [1; 2];
        for k in 0..2 {
            let extent = bounds[1][k] - bounds[0][k];
            if extent > 0.0 && extent.is_finite() {
                shape[k] = side;
                cell[k] = extent / side as f64;
            }
        }
        BucketGrid {
            origin: bounds[0],
            cell,
            shape,
            buckets: vec![Vec::new(); shape[0] * shape[1]],
        }
    }

    fn range(&self, lo: f64, hi: f64, k: usize) -> (usize, usize) {
        if self.cell[k] == 0.0 {
            return (0, 0);
        }
        let slack = 1e-9 * self.cell[k];
        let to_bucket = |x: f64| {
            let b = ((x - self.origin[k]) / self.cell[k]).floor();
            b.clamp(0.0, (self.shape[k] - 1) as f64) as usize
        };
        (to_bucket(lo - slack), to_bucket(hi + slack))
    }

    fn insert(&mut self, bbox: [Point; 2], s: SimplexId) {
        let (x0, x1) = self.range(bbox[0][0], bbox[1][0], 0);
        let (y0, y1) = self.range(bbox[0][1], bbox[1][1], 1);
        for y in y0..=y1 {
            for x in x0..=x1 {
                self.buckets[y * self.shape[0] + x].push(s);
            }
        }
    }

    /// Candidates whose bounding box may meet `bbox`; may repeat ids.
    fn query(&self, bbox: [Point; 2]) -> impl Iterator<Item = SimplexId> + '_ {
        let (x0, x1) = self.range(bbox[0][0], bbox[1][0], 0);
        let (y0, y1) = self.range(bbox[0][1], bbox[1][1], 1);
        let mut seen: Vec<SimplexId> = (y0..=y1)
            .flat_map(|y| (x0..=x1).map(move |x| (y, x)))
            .flat_map(|(y, x)| self.buckets[y * self.shape[0] + x].iter().copied())
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
    }
}
