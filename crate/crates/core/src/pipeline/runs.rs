//! Persistence of Morse decompositions along a threshold sweep and along an
//! angle zigzag.

use crate::complex::{Point, SimplexId, SimplexSet, SimplicialComplex};
use crate::dynamics::MorseDecomposition;
use crate::error::{Error, Result};
use crate::homology::{
    betti, filtration_persistence, induced_map, zigzag_decompose, Arrow, Barcode, BitMatrix, Homology, Interval,
    PersistenceModule,
};
use crate::mvf::{cvcmf, is_trivial_morse, MultivectorField};
use crate::nerve::{morse_nerve, nerve_inclusion, OrderComplex};
use crate::sampled_map::{FMuBuilder, FrequencyTable};

/// Homology degrees tracked by both runs.
pub const DEGREES: [usize; 2] = [0, 1];

/// Result of [`run_mu_sweep`]. Step `i` (1-based in the barcode) is `levels[i - 1]`.
#[derive(Clone, Debug)]
pub struct MuSweep {
    pub levels: Vec<f64>,
    pub decompositions: Vec<MorseDecomposition>,
    /// Betti numbers of each nerve in degrees 0 and 1.
    pub betti: Vec<[usize; 2]>,
    pub barcode: Barcode,
}

fn stage_error(err: Error, step: usize) -> Error {
    match err {
        Error::RefinementViolation { set, .. } => Error::RefinementViolation { step, set },
        other => other,
    }
}

struct Stage {
    nerve: OrderComplex,
    homology: Homology,
}

impl Stage {
    fn new(complex: &SimplicialComplex, sets: &[SimplexSet]) -> Self {
        let nerve = morse_nerve(complex, sets);
        let homology = Homology::compute(nerve.complex(), DEGREES.len() - 1);
        Stage { nerve, homology }
    }

    fn betti(&self) -> [usize; 2] {
        DEGREES.map(|k| self.homology.betti(k))
    }
}

/// Collects per-degree matrices for the arrow `from -> to`.
fn arrow_maps(from: &Stage, to: &Stage, step: usize) -> Result<Vec<BitMatrix>> {
    let map: Vec<SimplexId> = nerve_inclusion(&from.nerve, &to.nerve).map_err(|e| stage_error(e, step))?;
    DEGREES
        .iter()
        .map(|&k| induced_map(&from.homology, &to.homology, &map, k))
        .collect()
}

/// Builds `F_μ` at each level, its minimal Morse decomposition and nerve,
/// and the barcode of the homology of the nerves under inclusion.
///
/// Levels must be strictly decreasing, so decompositions coarsen and the
/// nerves include forward.
pub fn run_mu_sweep(complex: &SimplicialComplex, table: &FrequencyTable, levels: &[f64]) -> Result<MuSweep> {
    if levels.is_empty() {
        return Err(Error::EmptyParameterList);
    }
    if levels.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::LevelsNotDecreasing);
    }
    let mut builder = FMuBuilder::new(complex, table)?;
    let mut decompositions = Vec::with_capacity(levels.len());
    let mut dims = Vec::with_capacity(levels.len());
    let mut arrows: Vec<Vec<(Arrow, BitMatrix)>> = vec![Vec::new(); DEGREES.len()];
    let mut previous: Option<Stage> = None;
    for (i, &mu) in levels.iter().enumerate() {
        let system = builder.build(mu)?;
        let md = system.minimal_morse_decomposition();
        let stage = Stage::new(complex, md.sets());
        if let Some(prev) = &previous {
            for (k, m) in arrow_maps(prev, &stage, i)?.into_iter().enumerate() {
                arrows[k].push((Arrow::Forward, m));
            }
        }
        dims.push(stage.betti());
        decompositions.push(md);
        previous = Some(stage);
    }
    let mut barcode = Barcode::default();
    for (k, arrows) in arrows.into_iter().enumerate() {
        let module = PersistenceModule::new(dims.iter().map(|d| d[k]).collect(), arrows)?;
        barcode.extend(filtration_persistence(&module, DEGREES[k])?);
    }
    Ok(MuSweep {
        levels: levels.to_vec(),
        decompositions,
        betti: dims,
        barcode,
    })
}

/// One object of the angle zigzag.
#[derive(Clone, Debug)]
pub struct ZigzagStage {
    /// `V3` for a field, `V3^V4` for the meet of two neighbours.
    pub label: String,
    pub decomposition: MorseDecomposition,
    /// Whether each Morse set survives the trivial-set filter.
    pub kept: Vec<bool>,
    pub betti: [usize; 2],
}

impl ZigzagStage {
    pub fn kept_sets(&self) -> Vec<SimplexSet> {
        self.decomposition
            .sets()
            .iter()
            .zip(&self.kept)
            .filter(|(_, &k)| k)
            .map(|(m, _)| m.clone())
            .collect()
    }

    /// `set i [kept|trivial]: ids` lines.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for (i, (m, &kept)) in self.decomposition.sets().iter().zip(&self.kept).enumerate() {
            out.push_str(&format!("set {i} {}:", if kept { "kept" } else { "trivial" }));
            for s in m.iter() {
                out.push_str(&format!(" {s}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Result of [`run_alpha_zigzag`].
#[derive(Clone, Debug)]
pub struct AlphaZigzag {
    pub alphas: Vec<f64>,
    pub stages: Vec<ZigzagStage>,
    pub barcode: Barcode,
    /// The bars of `barcode`, largest average Morse set first.
    pub ordered: Vec<Interval>,
}

/// Morse sets that are a single multivector with vanishing relative homology.
fn trivial_flags(field: &MultivectorField<'_>, md: &MorseDecomposition) -> Result<Vec<bool>> {
    let complex = field.complex();
    md.sets()
        .iter()
        .map(|m| {
            let first = m.iter().next().expect("Morse sets are nonempty");
            let single = m.len() == field.multivector(first).len() && m.iter().all(|s| field.part_of(s) == field.part_of(first));
            Ok(single && is_trivial_morse(complex, m)?)
        })
        .collect()
}

/// Index of the set of `coarse` containing all of `fine`, if any.
fn container(coarse: &MorseDecomposition, fine: &SimplexSet) -> Option<usize> {
    let first = fine.iter().next()?;
    let j = coarse.set_of(first)?;
    fine.is_subset(&coarse.sets()[j]).then_some(j)
}

/// Builds `V_i = cvcmf(α_i)` and the meets `V_i ⊓ V_{i+1}`, and the zigzag
/// barcode of the nerves of their nontrivial Morse sets:
/// `V_1 <- V_1⊓V_2 -> V_2 <- ... -> V_n`.
///
/// A Morse set of a meet is kept only if it is nontrivial and both Morse sets
/// containing it in the neighbouring fields are kept.
pub fn run_alpha_zigzag(complex: &SimplicialComplex, vectors: &[Point], alphas: &[f64]) -> Result<AlphaZigzag> {
    if alphas.is_empty() {
        return Err(Error::EmptyParameterList);
    }
    let fields: Vec<MultivectorField<'_>> = alphas
        .iter()
        .map(|&a| cvcmf(complex, vectors, a))
        .collect::<Result<_>>()?;
    let identity: Vec<SimplexId> = complex.ids().collect();

    let mut field_stages = Vec::with_capacity(fields.len());
    for (i, field) in fields.iter().enumerate() {
        let md = field.generated_system().minimal_morse_decomposition();
        let kept: Vec<bool> = trivial_flags(field, &md)?.into_iter().map(|t| !t).collect();
        field_stages.push((format!("V{}", i + 1), field.clone(), md, kept));
    }

    let mut stages: Vec<ZigzagStage> = Vec::with_capacity(2 * fields.len() - 1);
    for i in 0..fields.len() {
        let (label, _, md, kept) = &field_stages[i];
        stages.push(ZigzagStage {
            label: label.clone(),
            decomposition: md.clone(),
            kept: kept.clone(),
            betti: [0, 0],
        });
        if i + 1 == fields.len() {
            break;
        }
        let back = MultivectorField::pullback(complex, &identity, &fields[i + 1])?;
        let meet = fields[i].intersect(&back)?;
        let md = meet.generated_system().minimal_morse_decomposition();
        let trivial = trivial_flags(&meet, &md)?;
        let mut kept = Vec::with_capacity(md.len());
        for (j, m) in md.sets().iter().enumerate() {
            let mut keep = !trivial[j];
            for (side, step) in [(i, 2 * i + 1), (i + 1, 2 * i + 2)] {
                let (_, _, coarse, coarse_kept) = &field_stages[side];
                let c = container(coarse, m).ok_or(Error::RefinementViolation { step, set: j })?;
                keep &= coarse_kept[c];
            }
            kept.push(keep);
        }
        stages.push(ZigzagStage {
            label: format!("V{}^V{}", i + 1, i + 2),
            decomposition: md,
            kept,
            betti: [0, 0],
        });
    }

    let built: Vec<Stage> = stages.iter().map(|s| Stage::new(complex, &s.kept_sets())).collect();
    for (stage, b) in stages.iter_mut().zip(&built) {
        stage.betti = b.betti();
    }
    let mut arrows: Vec<Vec<(Arrow, BitMatrix)>> = vec![Vec::new(); DEGREES.len()];
    for t in 0..built.len().saturating_sub(1) {
        // Meets sit at odd positions and map into both neighbours.
        let (arrow, maps) = if t % 2 == 0 {
            (Arrow::Backward, arrow_maps(&built[t + 1], &built[t], t + 1)?)
        } else {
            (Arrow::Forward, arrow_maps(&built[t], &built[t + 1], t + 1)?)
        };
        for (k, m) in maps.into_iter().enumerate() {
            arrows[k].push((arrow, m));
        }
    }
    let mut barcode = Barcode::default();
    for (k, arrows) in arrows.into_iter().enumerate() {
        let module = PersistenceModule::new(stages.iter().map(|s| s.betti[k]).collect(), arrows)?;
        barcode.extend(zigzag_decompose(&module, DEGREES[k])?);
    }
    let ordered = order_by_set_size(complex, &stages, &barcode);
    Ok(AlphaZigzag {
        alphas: alphas.to_vec(),
        stages,
        barcode,
        ordered,
    })
}

/// Sorts bars by the mean size of the kept Morse sets carrying homology in
/// the bar's degree, averaged over the bar's steps; larger first.
fn order_by_set_size(complex: &SimplicialComplex, stages: &[ZigzagStage], barcode: &Barcode) -> Vec<Interval> {
    // mean[k][t]: mean size of kept sets at step t with nonzero b_k.
    let mut mean = vec![vec![None; stages.len()]; DEGREES.len()];
    for (t, stage) in stages.iter().enumerate() {
        let mut acc = vec![(0usize, 0usize); DEGREES.len()];
        for m in stage.kept_sets() {
            let b = betti(morse_nerve(complex, std::slice::from_ref(&m)).complex());
            for k in DEGREES {
                if b.get(k).copied().unwrap_or(0) > 0 {
                    acc[k].0 += m.len();
                    acc[k].1 += 1;
                }
            }
        }
        for k in DEGREES {
            if acc[k].1 > 0 {
                mean[k][t] = Some(acc[k].0 as f64 / acc[k].1 as f64);
            }
        }
    }
    let n = stages.len();
    let key = |bar: &Interval| -> f64 {
        let steps = bar.birth..=bar.death.unwrap_or(n);
        let values: Vec<f64> = steps.filter_map(|t| mean[bar.dim][t - 1]).collect();
        if values.is_empty() {
            0.0
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        }
    };
    let mut bars: Vec<(f64, Interval)> = barcode.intervals().iter().map(|b| (key(b), *b)).collect();
    bars.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    bars.into_iter().map(|(_, b)| b).collect()
}
