//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod geometry;
pub mod modules;
pub mod suites;
pub mod topology;

use combdyn::sampled_map::SamplePair;
use combdyn::{Geometry, SimplexId, SimplexSet, SimplicialComplex};

pub fn ids(v: &[usize]) -> Vec<SimplexId> {
    v.iter().map(|&i| SimplexId::new(i)).collect()
}

pub fn sorted(set: &SimplexSet) -> Vec<usize> {
    set.iter().map(SimplexId::index).collect()
}

/// A=0, B=1/2, C=1 on a line.
pub fn path_abc() -> SimplicialComplex {
    let g = Geometry::from_f64(1, &[vec![0.0], vec![0.5], vec![1.0]]).unwrap();
    SimplicialComplex::with_geometry(g, &[vec![0, 1], vec![1, 2]]).unwrap()
}

/// Two triangles PQR and QRS of the unit square.
pub fn pqrs() -> SimplicialComplex {
    let g = Geometry::from_f64(2, &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
    SimplicialComplex::with_geometry(g, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap()
}

/// Simplices named by vertex letters: A, B, C or P, Q, R, S.
pub fn named(k: &SimplicialComplex, names: &[&str]) -> SimplexSet {
    k.set_of(names.iter().map(|n| {
        let verts: Vec<u32> = n
            .chars()
            .map(|c| match c {
                'A' | 'P' => 0,
                'B' | 'Q' => 1,
                'C' | 'R' => 2,
                'S' => 3,
                _ => panic!("unknown vertex {c}"),
            })
            .collect();
        k.find(&verts).unwrap_or_else(|| panic!("no simplex {n}"))
    }))
}

/// The four-part field on PQRS: {P,PR}, {R,QR}, {Q,PQ}, {PQR}, {S,RS,QS,QRS}.
pub fn pqrs_parts(k: &SimplicialComplex) -> Vec<Vec<SimplexId>> {
    [&["P", "PR"][..], &["R", "QR"], &["Q", "PQ"], &["PQR"], &["S", "RS", "QS", "QRS"]]
        .iter()
        .map(|names| named(k, names).to_vec())
        .collect()
}

/// Samples with counts n(AB,AB)=11, n(AB,BC)=4, n(BC,AB)=3, n(BC,BC)=12.
pub fn toy_pairs() -> Vec<SamplePair> {
    let mut pairs = Vec::new();
    for i in 0..11 {
        let x = 0.02 + 0.04 * i as f64;
        let y = if i < 7 { 0.05 + 0.06 * i as f64 } else { 0.5 };
        pairs.push(SamplePair::on_line(x, y));
    }
    for i in 0..12 {
        let x = 0.52 + 0.04 * i as f64;
        let y = if i < 9 { 0.55 + 0.05 * i as f64 } else { 0.5 };
        pairs.push(SamplePair::on_line(x, y));
    }
    pairs
}

/// Rank over Z/2 by dense elimination.
pub fn z2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of `(k, sub)` from dense boundary matrices built from
/// vertex lists alone.
pub fn naive_betti(k: &SimplicialComplex, sub: &SimplexSet) -> Vec<usize> {
    let top = k.max_dim();
    let mut cells: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    for s in k.ids() {
        if !sub.contains(s) {
            cells[k.dim(s)].push(k.vertices(s).to_vec());
        }
    }
    let mut ranks = vec![0; top + 2];
    for d in 1..=top {
        let rows: Vec<Vec<bool>> = cells[d - 1]
            .iter()
            .map(|face| {
                cells[d]
                    .iter()
                    .map(|cell| {
                        face.len() + 1 == cell.len() && face.iter().all(|v| cell.contains(v))
                    })
                    .collect()
            })
            .collect();
        ranks[d] = z2_rank(rows);
    }
    (0..=top).map(|d| cells[d].len() - ranks[d] - ranks[d + 1]).collect()
}

/// Mutual reachability classes of vertices on a cycle, ordered by smallest
/// member, with `(i, j)` whenever a walk runs from class `i` to class `j`.
pub fn scc_oracle(n: usize, edges: &[(usize, usize)]) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for m in 0..n {
        for a in 0..n {
            if reach[a][m] {
                for b in 0..n {
                    if reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in (0..n).filter(|&v| reach[v][v]) {
        match classes.iter_mut().find(|c| reach[c[0]][v] && reach[v][c[0]]) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::new();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            if i != j && reach[classes[i][0]][classes[j][0]] {
                order.push((i, j));
            }
        }
    }
    (classes, order)
}

/// Collects named checks and reports the failed ones together.
#[derive(Default)]
pub struct Checks {
    passed: usize,
    failed: Vec<String>,
}

impl Checks {
    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(name.into());
        }
    }

    pub fn result(self, detail: impl Into<String>) -> Result<String, String> {
        let detail = detail.into();
        if self.failed.is_empty() {
            Ok(format!("{} checks; {detail}", self.passed))
        } else {
            Err(format!("failed: {}; {detail}", self.failed.join("; ")))
        }
    }
}
