//! Complete experiment runs rendered to named text artifacts.

use std::fmt::Write as _;
use std::path::Path;

use super::config::RunConfig;
use super::models::{grid_mesh, sample_kuznetsov, sample_lv_vectors, NoiseConfig, NORMAL_SAMPLER};
use super::render::{barcode_svg, diagram_svg, morse_overlay_svg};
use super::runs::{run_alpha_zigzag, run_mu_sweep, AlphaZigzag, MuSweep};
use crate::complex::mesh_io::format_mesh;
use crate::error::Result;
use crate::homology::{format_barcode, format_intervals};
use crate::mvf::format_vectors;
use crate::sampled_map::count_frequencies;

/// Output files as `(relative path, contents)`, in a fixed order.
pub type Artifacts = Vec<(String, String)>;

/// Writes every artifact below `dir`, creating directories as needed.
pub fn write_artifacts(dir: &Path, artifacts: &Artifacts) -> Result<()> {
    for (name, body) in artifacts {
        let path = dir.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, body)?;
    }
    Ok(())
}

/// Summary of a threshold sweep run.
#[derive(Clone, Debug)]
pub struct SweepRun {
    pub sweep: MuSweep,
    pub n_max: u32,
    pub accepted: usize,
    pub rejected: usize,
    pub artifacts: Artifacts,
}

/// First step with at least one Morse set, if any.
pub fn emergence_step(sweep: &MuSweep) -> Option<usize> {
    sweep.decompositions.iter().position(|m| !m.is_empty()).map(|i| i + 1)
}

/// Samples the noisy planar map, sweeps the threshold and renders the result.
pub fn kuznetsov_run(config: &RunConfig) -> Result<SweepRun> {
    let mesh = grid_mesh(config.region, config.nx, config.ny)?;
    let noise = NoiseConfig {
        seed: config.seed,
        count: config.samples,
        sigma_x: config.sigma_x(),
        sigma_y: config.sigma_y(),
    };
    let sample = sample_kuznetsov(&config.kuznetsov, &noise);
    let table = count_frequencies(&mesh, &sample.pairs)?;
    let levels = config.levels.clone().unwrap_or_else(|| table.default_levels());
    let sweep = run_mu_sweep(&mesh, &table, &levels)?;
    let steps = sweep.levels.len();

    let mut artifacts = Artifacts::new();
    let mut run = config.format();
    let _ = writeln!(run, "# generated = {}", config.samples);
    let _ = writeln!(run, "# rejected_image = {}", sample.rejected);
    let _ = writeln!(run, "# rejected_location = {}", table.rejected());
    let _ = writeln!(run, "# accepted = {}", table.accepted());
    let _ = writeln!(run, "# n_max = {}", table.n_max());
    let _ = writeln!(run, "# normal_sampler = {NORMAL_SAMPLER}");
    artifacts.push(("run.txt".into(), run));

    let mut levels_csv = String::from("step,mu,morse_sets,b0,b1\n");
    for (i, (mu, md)) in sweep.levels.iter().zip(&sweep.decompositions).enumerate() {
        let b = sweep.betti[i];
        let _ = writeln!(levels_csv, "{},{mu:?},{},{},{}", i + 1, md.len(), b[0], b[1]);
    }
    artifacts.push(("levels.csv".into(), levels_csv));
    artifacts.push(("barcode.csv".into(), format_barcode(&sweep.barcode)));
    let labels: Vec<String> = (1..=steps).map(|t| t.to_string()).collect();
    artifacts.push(("barcode.svg".into(), barcode_svg(sweep.barcode.intervals(), steps, &labels)));
    artifacts.push(("diagram.svg".into(), diagram_svg(sweep.barcode.intervals(), steps)));
    for (i, md) in sweep.decompositions.iter().enumerate() {
        artifacts.push((format!("morse/step_{:03}.txt", i + 1), md.format()));
    }
    let overlays = if config.overlays.is_empty() {
        default_overlays(&sweep)
    } else {
        config.overlays.clone()
    };
    for t in overlays.into_iter().filter(|&t| (1..=steps).contains(&t)) {
        let svg = morse_overlay_svg(&mesh, sweep.decompositions[t - 1].sets())?;
        artifacts.push((format!("overlay_step_{t:03}.svg"), svg));
    }
    Ok(SweepRun {
        n_max: table.n_max(),
        accepted: table.accepted(),
        rejected: sample.rejected + table.rejected(),
        sweep,
        artifacts,
    })
}

fn default_overlays(sweep: &MuSweep) -> Vec<usize> {
    let n = sweep.levels.len();
    match emergence_step(sweep) {
        Some(e) => {
            let mut steps = vec![e, e + (n - e) / 2, n];
            steps.dedup();
            steps
        }
        None => Vec::new(),
    }
}

/// Summary of an angle zigzag run.
#[derive(Clone, Debug)]
pub struct ZigzagRun {
    pub zigzag: AlphaZigzag,
    pub artifacts: Artifacts,
}

/// Evaluates the predator-prey field on the mesh, runs the angle zigzag and
/// renders the result.
pub fn lotka_volterra_run(config: &RunConfig) -> Result<ZigzagRun> {
    let mesh = grid_mesh(config.region, config.nx, config.ny)?;
    let vectors = sample_lv_vectors(&config.lv, &mesh)?;
    let zigzag = run_alpha_zigzag(&mesh, &vectors, &config.alphas)?;
    let steps = zigzag.stages.len();

    let mut artifacts = Artifacts::new();
    let mut run = config.format();
    let _ = writeln!(run, "# conflict_scan = descending dimension, ascending id; faces by ascending id");
    artifacts.push(("run.txt".into(), run));
    artifacts.push(("mesh.txt".into(), format_mesh(&mesh)?));
    artifacts.push(("vectors.csv".into(), format_vectors(mesh.geometry().expect("grid meshes are geometric"), &vectors)));

    let mut stages_csv = String::from("step,label,morse_sets,kept,b0,b1\n");
    for (i, s) in zigzag.stages.iter().enumerate() {
        let kept = s.kept.iter().filter(|&&k| k).count();
        let _ = writeln!(
            stages_csv,
            "{},{},{},{kept},{},{}",
            i + 1,
            s.label,
            s.decomposition.len(),
            s.betti[0],
            s.betti[1]
        );
    }
    artifacts.push(("stages.csv".into(), stages_csv));
    artifacts.push(("barcode.csv".into(), format_intervals(&zigzag.ordered)));
    let labels: Vec<String> = zigzag.stages.iter().map(|s| s.label.clone()).collect();
    artifacts.push(("barcode.svg".into(), barcode_svg(&zigzag.ordered, steps, &labels)));
    artifacts.push(("diagram.svg".into(), diagram_svg(&zigzag.ordered, steps)));
    for (i, s) in zigzag.stages.iter().enumerate() {
        artifacts.push((format!("morse/step_{:02}.txt", i + 1), s.format()));
        if i % 2 == 0 {
            artifacts.push((
                format!("overlay_step_{:02}.svg", i + 1),
                morse_overlay_svg(&mesh, &s.kept_sets())?,
            ));
        }
    }
    Ok(ZigzagRun { zigzag, artifacts })
}
