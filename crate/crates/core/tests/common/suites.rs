//! Randomized comparisons against the brute-force oracles. Each suite runs
//! a fixed number of cases from proptest's deterministic runner and reports
//! the first counterexample.

use combdyn::homology::{betti, filtration_persistence, relative_betti, zigzag_decompose, Arrow, Barcode};
use combdyn::{DynamicalSystem, SimplexId, SimplicialComplex};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::geometry::{co_oracle, LatticeComplex};
use super::modules::{decompose_by_hom, Rep};
use super::{naive_betti, scc_oracle};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(result: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    result.map_err(|e| e.to_string())
}

/// Random digraphs on up to twelve nodes against reachability classes.
pub fn scc_suite(cases: u32) -> Result<(), String> {
    let strategy = (1usize..=12).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=2 * n)));
    report(runner(cases).run(&strategy, |(n, edges)| {
        let k = SimplicialComplex::from_toplexes(n, &[]).unwrap();
        let mut images = vec![Vec::new(); n];
        for &(a, b) in &edges {
            images[a].push(SimplexId::new(b));
        }
        let f = DynamicalSystem::from_images(&k, images).unwrap();
        let md = f.minimal_morse_decomposition();
        let (classes, order) = scc_oracle(n, &edges);
        let sets: Vec<Vec<usize>> = md.sets().iter().map(super::sorted).collect();
        prop_assert_eq!(&sets, &classes);
        let mut pairs = md.order_pairs();
        pairs.sort_unstable();
        let mut expected = order;
        expected.sort_unstable();
        prop_assert_eq!(pairs, expected);
        prop_assert_eq!(f.morse_sets().iter().map(super::sorted).collect::<Vec<_>>(), classes);
        Ok(())
    }))
}

fn lattice_complex(rng: &mut ChaCha8Rng) -> LatticeComplex {
    let pt = |rng: &mut ChaCha8Rng| (rng.random_range(0i64..5), rng.random_range(0i64..5));
    let cross = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    match rng.random_range(0..5) {
        0 => {
            let dirs = [(1, 0), (0, 1), (1, 1), (2, 1), (1, -2)];
            let d = dirs[rng.random_range(0..dirs.len())];
            let o = pt(rng);
            let count = rng.random_range(2usize..=6);
            let mut ts: Vec<i64> = (0..9).collect();
            for i in (1..ts.len()).rev() {
                ts.swap(i, rng.random_range(0..=i));
            }
            let mut ts = ts[..count].to_vec();
            ts.sort_unstable();
            LatticeComplex {
                points: ts.iter().map(|t| (o.0 + t * d.0, o.1 + t * d.1)).collect(),
                toplexes: (0..count - 1).map(|i| vec![i, i + 1]).collect(),
            }
        }
        1 => loop {
            let (a, b, c) = (pt(rng), pt(rng), pt(rng));
            if cross(a, b, c) != 0 {
                break LatticeComplex { points: vec![a, b, c], toplexes: vec![vec![0, 1, 2]] };
            }
        },
        2 => loop {
            let (a, c) = (pt(rng), pt(rng));
            let w = (rng.random_range(-2i64..=2), rng.random_range(-2i64..=2));
            let (m, b) = ((a.0 + w.0, a.1 + w.1), (a.0 + 2 * w.0, a.1 + 2 * w.1));
            if cross(a, b, c) != 0 {
                break LatticeComplex {
                    points: vec![a, m, b, c],
                    toplexes: vec![vec![0, 1, 3], vec![1, 2, 3]],
                };
            }
        },
        3 => loop {
            let mut p: Vec<(i64, i64)> = (0..4).map(|_| pt(rng)).collect();
            let c = (p.iter().map(|x| x.0).sum::<i64>() as f64 / 4.0, p.iter().map(|x| x.1).sum::<i64>() as f64 / 4.0);
            p.sort_by(|x, y| {
                let ax = (x.1 as f64 - c.1).atan2(x.0 as f64 - c.0);
                let ay = (y.1 as f64 - c.1).atan2(y.0 as f64 - c.0);
                ax.total_cmp(&ay)
            });
            if (0..4).all(|i| cross(p[i], p[(i + 1) % 4], p[(i + 2) % 4]) > 0) {
                let toplexes = if rng.random_bool(0.5) {
                    vec![vec![0, 1, 2], vec![0, 2, 3]]
                } else {
                    vec![vec![0, 1, 3], vec![1, 2, 3]]
                };
                break LatticeComplex { points: p, toplexes };
            }
        },
        _ => {
            let a = pt(rng);
            let b = loop {
                let b = pt(rng);
                if b != a {
                    break b;
                }
            };
            if rng.random_bool(0.5) {
                LatticeComplex { points: vec![a], toplexes: vec![vec![0]] }
            } else {
                LatticeComplex { points: vec![a, b], toplexes: vec![vec![0, 1]] }
            }
        }
    }
}

/// Convex hulls on small lattice complexes against superset enumeration.
pub fn co_suite(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lattice = lattice_complex(&mut rng);
        let k = lattice.build(rng.random_bool(0.5));
        prop_assert!(k.len() <= 12);
        let a = loop {
            let a = k.set_of(k.ids().filter(|_| rng.random_bool(0.3)));
            if !a.is_empty() {
                break a;
            }
        };
        let got = k.co(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let want = co_oracle(&k, &lattice.points, &a);
        prop_assert_eq!(got.to_vec(), want.to_vec(), "points {:?} toplexes {:?} set {:?}", lattice.points, lattice.toplexes, a.to_vec());
        Ok(())
    }))
}

fn random_abstract_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    loop {
        let n = rng.random_range(3usize..=12);
        let count = rng.random_range(1usize..=14);
        let mut toplexes: Vec<Vec<usize>> = Vec::new();
        for _ in 0..count {
            let size = rng.random_range(1usize..=4).min(n);
            let mut verts: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                verts.swap(i, rng.random_range(0..=i));
            }
            let mut t = verts[..size].to_vec();
            t.sort_unstable();
            if !toplexes.contains(&t) {
                toplexes.push(t);
            }
        }
        let k = SimplicialComplex::from_toplexes(n, &toplexes).unwrap();
        if k.len() <= 200 {
            return k;
        }
    }
}

/// Absolute and relative Betti numbers against dense elimination.
pub fn betti_suite(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_abstract_complex(&mut rng);
        prop_assert_eq!(betti(&k), naive_betti(&k, &k.empty_set()));
        let picked = k.set_of(k.ids().filter(|_| rng.random_bool(0.25)));
        let sub = k.closure(&picked);
        prop_assert_eq!(relative_betti(&k, &sub).unwrap(), naive_betti(&k, &sub));
        Ok(())
    }))
}

fn random_rep(rng: &mut ChaCha8Rng) -> Rep {
    let n = rng.random_range(1usize..=5);
    let mut dims = vec![0; n];
    let mut budget = rng.random_range(0usize..=6);
    while budget > 0 {
        dims[rng.random_range(0..n)] += 1;
        budget -= 1;
    }
    let arrows = (0..n - 1)
        .map(|i| {
            let a = if rng.random_bool(0.5) { Arrow::Forward } else { Arrow::Backward };
            let (s, t) = match a {
                Arrow::Forward => (i, i + 1),
                Arrow::Backward => (i + 1, i),
            };
            let rows = (0..dims[t]).map(|_| (0..dims[s]).map(|_| rng.random_bool(0.5)).collect()).collect();
            (a, rows)
        })
        .collect();
    Rep { dims, arrows }
}

/// Zigzag decompositions of modules of total dimension at most six against
/// Hom-dimension counting, plus the pointwise dimension invariant.
pub fn zigzag_suite(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_rep(&mut rng);
        let module = rep.module();
        let got = zigzag_decompose(&module, 0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(got.matches_dims(0, module.dims()));
        let want = Barcode::new(decompose_by_hom(&rep, 0));
        prop_assert_eq!(&got, &want, "{:?}", rep);
        if rep.arrows.iter().all(|a| a.0 == Arrow::Forward) {
            prop_assert_eq!(filtration_persistence(&module, 0).unwrap(), want);
        }
        Ok(())
    }))
}
