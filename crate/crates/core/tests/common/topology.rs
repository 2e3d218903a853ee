//! Exhaustive checks of the disconnecting topology generated by a family of
//! disjoint sets.

use combdyn::homology::betti;
use combdyn::nerve::{morse_nerve, tm_basis};
use combdyn::{SimplexId, SimplexSet, SimplicialComplex};

fn is_face_by_vertices(k: &SimplicialComplex, s: SimplexId, t: SimplexId) -> bool {
    let vt = k.vertices(t);
    k.vertices(s).iter().all(|v| vt.contains(v))
}

fn components(n: usize, mut linked: impl FnMut(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            for b in 0..n {
                if label[a] != label[b] && linked(a, b) {
                    let (lo, hi) = (label[a].min(label[b]), label[a].max(label[b]));
                    for l in label.iter_mut() {
                        if *l == hi {
                            *l = lo;
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match groups.iter_mut().find(|g| label[g[0]] == l) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

/// Verifies, for disjoint `sets` of `k`:
/// 1. the basis generates a topology on their union,
/// 2. the topology induced on each set is the one induced by the face order,
/// 3. every set is open, so the family is disconnected,
/// 4. connected components are the order-connected pieces of the sets,
///
/// and that the nerve never joins simplices of different sets.
pub fn check_disconnecting_topology(k: &SimplicialComplex, sets: &[SimplexSet]) -> Result<(), String> {
    let basis = tm_basis(k, sets);
    let union = sets.iter().fold(k.empty_set(), |acc, m| acc.union(m));
    let points: Vec<SimplexId> = union.iter().collect();
    let open = |y: &SimplexSet| y.iter().all(|x| basis.iter().any(|b| b.contains(x) && b.is_subset(y)));

    if !points.iter().all(|&x| basis.iter().any(|b| b.contains(x))) {
        return Err("basis does not cover the union".into());
    }
    if !basis.iter().all(|b| !b.is_empty() && sets.iter().any(|m| b.is_subset(m))) {
        return Err("basis element meets two sets".into());
    }
    for b1 in &basis {
        for b2 in &basis {
            if !open(&b1.intersection(b2)) {
                return Err("basis not closed under intersection".into());
            }
        }
    }
    for (i, m) in sets.iter().enumerate() {
        if !open(m) || !open(&union.difference(m)) {
            return Err(format!("set {i} is not clopen"));
        }
        let members: Vec<SimplexId> = m.iter().collect();
        if members.len() > 16 {
            return Err(format!("set {i} too large for enumeration"));
        }
        for bits in 0u32..(1 << members.len()) {
            let y = k.set_of((0..members.len()).filter(|&j| bits & (1 << j) != 0).map(|j| members[j]));
            let upper = k.set_of(k.ids().filter(|&t| y.iter().any(|s| is_face_by_vertices(k, s, t))));
            let face_open = upper.intersection(m) == y;
            if open(&y) != face_open {
                return Err(format!("set {i}: induced topologies differ on {:?}", y.to_vec()));
            }
        }
    }

    let by_basis = components(points.len(), |a, b| {
        basis.iter().any(|o| o.contains(points[a]) && o.contains(points[b]))
    });
    let by_order = components(points.len(), |a, b| {
        let same = sets.iter().any(|m| m.contains(points[a]) && m.contains(points[b]));
        same && (is_face_by_vertices(k, points[a], points[b]) || is_face_by_vertices(k, points[b], points[a]))
    });
    let normalize = |mut g: Vec<Vec<usize>>| {
        g.sort();
        g
    };
    let by_basis = normalize(by_basis);
    if by_basis != normalize(by_order) {
        return Err("components differ from the order-connected pieces".into());
    }
    for (i, m) in sets.iter().enumerate() {
        if k.order_components(m).len() == 1 {
            let as_points: Vec<usize> = m.iter().map(|s| points.iter().position(|p| *p == s).unwrap()).collect();
            if !by_basis.contains(&as_points) {
                return Err(format!("connected set {i} is not a component"));
            }
        }
    }

    let nerve = morse_nerve(k, sets);
    let nk = nerve.complex();
    for s in nk.ids() {
        let labels: Vec<usize> = nk.vertices(s).iter().map(|&v| nerve.label(v as usize)).collect();
        if labels.windows(2).any(|w| w[0] != w[1]) {
            return Err("nerve simplex spans two sets".into());
        }
    }
    let b0 = if nk.is_empty() { 0 } else { betti(nk)[0] };
    if b0 != by_basis.len() {
        return Err(format!("nerve has {b0} components, topology {}", by_basis.len()));
    }
    Ok(())
}

/// Small complexes with random digraphs on them, as Morse decompositions.
pub fn random_decompositions(count: usize, seed: u64) -> Vec<(SimplicialComplex, Vec<SimplexSet>)> {
    use combdyn::DynamicalSystem;
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let shapes: [(usize, Vec<Vec<usize>>); 5] = [
        (3, vec![vec![0, 1], vec![1, 2]]),
        (4, vec![vec![0, 1, 2], vec![1, 2, 3]]),
        (3, vec![vec![0, 1, 2]]),
        (4, vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1]]),
        (5, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![1, 4]]),
    ];
    (0..count)
        .map(|_| {
            let (n, toplexes) = &shapes[rng.random_range(0..shapes.len())];
            let k = SimplicialComplex::from_toplexes(*n, toplexes).unwrap();
            let p = rng.random_range(0.05..0.35);
            let images: Vec<Vec<SimplexId>> = k.ids().map(|_| k.ids().filter(|_| rng.random_bool(p)).collect()).collect();
            let sets = DynamicalSystem::from_images(&k, images).unwrap().minimal_morse_decomposition().sets().to_vec();
            (k, sets)
        })
        .collect()
}
