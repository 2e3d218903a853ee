//! Plain-text mesh format.
//!
//! ```text
//! # comment
//! v 0 0          vertex (one or two coordinates)
//! v 1/2 0        rational literals are kept exact
//! t 0 1 2        triangle
//! e 0 1          edge
//! ```
//! Vertices are numbered in order of appearance. Faces of the listed
//! toplexes are generated.

use std::fmt::Write as _;
use std::path::Path;

use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::{Geometry, SimplicialComplex};
use crate::error::{parse_error, Error, Result};

/// A coordinate literal: its float value and, when representable, the exact rational.
fn parse_literal(token: &str) -> Option<(f64, Option<Rational64>)> {
    if let Some((p, q)) = token.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        let r = Rational64::new(p, q);
        return Some((r.to_f64()?, Some(r)));
    }
    let value: f64 = token.parse().ok()?;
    if !value.is_finite() {
        return None;
    }
    Some((value, decimal_rational(token)))
}

/// Exact value of a plain decimal literal such as `-0.0575`.
fn decimal_rational(token: &str) -> Option<Rational64> {
    if token.contains(['e', 'E']) {
        return None;
    }
    let (int, frac) = token.split_once('.').unwrap_or((token, ""));
    if frac.len() > 15 {
        return None;
    }
    let digits: i64 = format!("{int}{frac}").parse().ok()?;
    Some(Rational64::new(digits, 10i64.checked_pow(frac.len() as u32)?))
}

pub fn parse_mesh(text: &str) -> Result<SimplicialComplex> {
    let mut floats: Vec<Vec<f64>> = Vec::new();
    let mut exact: Vec<Vec<Rational64>> = Vec::new();
    let mut all_exact = true;
    let mut toplexes: Vec<Vec<usize>> = Vec::new();
    let mut toplex_lines = Vec::new();
    let mut dim = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        match tag {
            "v" => {
                if rest.is_empty() || rest.len() > 2 {
                    return Err(parse_error(line_no, "vertex needs one or two coordinates"));
                }
                match dim {
                    None => dim = Some(rest.len()),
                    Some(d) if d != rest.len() => {
                        return Err(Error::CoordinateDimension {
                            expected: d,
                            found: rest.len(),
                            vertex: floats.len(),
                        })
                    }
                    _ => {}
                }
                let mut fs = Vec::new();
                let mut rs = Vec::new();
                for token in rest {
                    let (f, r) = parse_literal(token)
                        .ok_or_else(|| parse_error(line_no, format!("bad coordinate `{token}`")))?;
                    fs.push(f);
                    match r {
                        Some(r) => rs.push(r),
                        None => all_exact = false,
                    }
                }
                floats.push(fs);
                exact.push(rs);
            }
            "t" | "e" => {
                let arity = if tag == "t" { 3 } else { 2 };
                if rest.len() != arity {
                    return Err(parse_error(line_no, format!("`{tag}` needs {arity} vertex indices")));
                }
                let ids = rest
                    .iter()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| parse_error(line_no, e.to_string()))?;
                toplexes.push(ids);
                toplex_lines.push(line_no);
            }
            other => return Err(parse_error(line_no, format!("unknown record `{other}`"))),
        }
    }

    let dim = dim.ok_or_else(|| parse_error(0, "no vertices"))?;
    let geometry = if all_exact {
        Geometry::from_rationals(dim, &exact)?
    } else {
        Geometry::from_f64(dim, &floats)?
    };
    SimplicialComplex::with_geometry(geometry, &toplexes)
}

pub fn read_mesh(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_mesh(&std::fs::read_to_string(path)?)
}

fn format_coordinate(x: f64) -> String {
    match Rational64::approximate_float(x) {
        Some(r) if r.to_f64() == Some(x) => {
            if *r.denom() == 1 {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        _ => format!("{x:e}"),
    }
}

/// Serializes vertices and toplexes. Coordinates that are short rationals
/// are written as `p/q`; others use the shortest round-trip float form.
pub fn format_mesh(complex: &SimplicialComplex) -> Result<String> {
    let geometry = complex.geometry().ok_or(Error::MissingCoordinates)?;
    let mut out = String::new();
    for v in 0..geometry.len() {
        let coords: Vec<String> = geometry.coords(v).iter().map(|&x| format_coordinate(x)).collect();
        let _ = writeln!(out, "v {}", coords.join(" "));
    }
    for s in complex.toplexes() {
        let verts: Vec<String> = complex.vertices(s).iter().map(u32::to_string).collect();
        match verts.len() {
            1 => continue,
            2 => {
                let _ = writeln!(out, "e {}", verts.join(" "));
            }
            3 => {
                let _ = writeln!(out, "t {}", verts.join(" "));
            }
            n => return Err(Error::UnsupportedDimension(n - 1)),
        }
    }
    Ok(out)
}

pub fn write_mesh(complex: &SimplicialComplex, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_mesh(complex)?)?;
    Ok(())
}
