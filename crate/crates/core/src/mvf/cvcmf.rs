//! Multivector fields from a vector cloud on the vertices of a planar
//! triangulation.

use std::cmp::Ordering;
use std::fmt::Write as _;

use super::MultivectorField;
use crate::complex::{Geometry, Point, SimplexId, SimplicialComplex};
use crate::error::{parse_error, Error, Result};

/// Builds a multivector field from one vector per vertex.
///
/// `alpha` is the angular tolerance in degrees for attaching a vertex to an
/// incident edge. The complex must be a triangulated planar region.
pub fn cvcmf<'k>(complex: &'k SimplicialComplex, vectors: &[Point], alpha: f64) -> Result<MultivectorField<'k>> {
    let geometry = complex.geometry().ok_or(Error::MissingCoordinates)?;
    if geometry.dim() != 2 {
        return Err(Error::UnsupportedDimension(geometry.dim()));
    }
    if let Some(t) = complex.toplexes().find(|&t| complex.dim(t) != 2) {
        return Err(Error::MixedDimension { expected: 2, found: complex.dim(t) });
    }
    if vectors.len() != complex.num_vertices() {
        return Err(Error::VectorCount {
            expected: complex.num_vertices(),
            found: vectors.len(),
        });
    }

    // Every simplex points at the toplex its mean vector flows into.
    let mut m: Vec<SimplexId> = complex
        .ids()
        .map(|s| {
            let verts = complex.vertices(s);
            let mut mean = [0.0, 0.0];
            for &v in verts {
                mean[0] += vectors[v as usize][0];
                mean[1] += vectors[v as usize][1];
            }
            let k = verts.len() as f64;
            let mean = [mean[0] / k, mean[1] / k];
            complex
                .cofaces_of(s)
                .into_iter()
                .find(|&t| complex.is_toplex(t) && (t == s || enters(complex, geometry, s, t, mean)))
                .unwrap_or(s)
        })
        .collect();

    // Vertices prefer the lowest-dimensional coface within the tolerance.
    for p in 0..complex.num_vertices() {
        let ps = complex.vertex(p);
        let v = vectors[p];
        let mut best: Option<(usize, f64, SimplexId)> = None;
        let zero = v[0] == 0.0 && v[1] == 0.0;
        for t in complex.cofaces_of(ps) {
            let angle = if t == ps {
                if zero {
                    0.0
                } else {
                    continue;
                }
            } else if complex.dim(t) == 1 {
                edge_angle(complex, geometry, p, t, v)
            } else if complex.is_toplex(t) && enters(complex, geometry, ps, t, v) {
                0.0
            } else {
                continue;
            };
            if angle > alpha {
                continue;
            }
            let key = (complex.dim(t), angle, t);
            let better = match &best {
                None => true,
                Some(b) => key.0.cmp(&b.0).then(key.1.total_cmp(&b.1)).then(key.2.cmp(&b.2)) == Ordering::Less,
            };
            if better {
                best = Some(key);
            }
        }
        if let Some((_, _, t)) = best {
            m[p] = t;
        }
    }

    // Resolve overlapping intervals [t, m[t]] and [s, m[s]] for t <= s.
    let mut order: Vec<SimplexId> = complex.ids().collect();
    order.sort_by_key(|&s| (std::cmp::Reverse(complex.dim(s)), s));
    let mut rounds = 0usize;
    loop {
        let mut changed = false;
        for &s in &order {
            loop {
                let conflict = complex.faces_of(s).into_iter().find(|&t| {
                    m[t.index()] != m[s.index()]
                        && complex.is_face(s, m[t.index()])
                        && complex.is_face(s, m[s.index()])
                });
                match conflict {
                    Some(t) => {
                        rounds += 1;
                        assert!(rounds <= complex.len() * complex.len(), "conflict removal does not terminate");
                        m[t.index()] = s;
                        m[s.index()] = s;
                        changed = true;
                    }
                    None => break,
                }
            }
        }
        if !changed {
            break;
        }
    }
    if let Some(s) = complex.ids().find(|&s| !complex.is_face(s, m[s.index()])) {
        return Err(Error::AssignmentNotCoface(s));
    }

    MultivectorField::from_labels(complex, m.into_iter())
}

/// Whether the ray from the barycenter of `s` along `d` enters the open
/// triangle `t`, for `s` a proper face of `t`.
fn enters(complex: &SimplicialComplex, geometry: &Geometry, s: SimplexId, t: SimplexId, d: Point) -> bool {
    let face = complex.vertices(s);
    let tri = complex.vertices(t);
    (0..3).all(|i| {
        let (u, w, x) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
        if face.contains(&x) {
            return true;
        }
        // `s` lies on the line through u and w; the ray must leave it towards x.
        let inside = geometry.side_of(u as usize, w as usize, geometry.point(x as usize));
        let turn = geometry.turn_sign(u as usize, w as usize, d);
        turn != Ordering::Equal && turn == inside
    })
}

/// Angle in degrees between `v` and the edge `e` leaving vertex `p`; infinite
/// when `v` does not point along the edge.
fn edge_angle(complex: &SimplicialComplex, geometry: &Geometry, p: usize, e: SimplexId, v: Point) -> f64 {
    let verts = complex.vertices(e);
    let q = if verts[0] as usize == p { verts[1] } else { verts[0] } as usize;
    if geometry.dot_sign(p, q, v) != Ordering::Greater {
        return f64::INFINITY;
    }
    if geometry.turn_sign(p, q, v) == Ordering::Equal {
        return 0.0;
    }
    let (a, b) = (geometry.point(p), geometry.point(q));
    let u = [b[0] - a[0], b[1] - a[1]];
    let cross = (u[0] * v[1] - u[1] * v[0]).abs();
    let norm = u[0].hypot(u[1]) * v[0].hypot(v[1]);
    (cross / norm).clamp(0.0, 1.0).asin().to_degrees()
}

/// CSV with header `px,py,vx,vy`, one row per vertex.
pub fn format_vectors(geometry: &Geometry, vectors: &[Point]) -> String {
    let mut out = String::from("px,py,vx,vy\n");
    for (i, v) in vectors.iter().enumerate() {
        let p = geometry.point(i);
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p[0], p[1], v[0], v[1]);
    }
    out
}

/// Reads `px,py,vx,vy` rows; returns `(positions, vectors)`.
pub fn parse_vectors(text: &str) -> Result<(Vec<Point>, Vec<Point>)> {
    let mut positions = Vec::new();
    let mut vectors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("px") {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_error(i + 1, e.to_string()))?;
        if fields.len() != 4 {
            return Err(parse_error(i + 1, format!("expected 4 fields, found {}", fields.len())));
        }
        positions.push([fields[0], fields[1]]);
        vectors.push([fields[2], fields[3]]);
    }
    Ok((positions, vectors))
}
