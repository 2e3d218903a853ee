use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use combdyn::complex::mesh_io::{format_mesh, read_mesh};
use combdyn::homology::parse_barcode;
use combdyn::mvf::{cvcmf, format_vectors, parse_vectors, MultivectorField};
use combdyn::pipeline::render::{barcode_svg, diagram_svg, morse_overlay_svg};
use combdyn::pipeline::{
    emergence_step, grid_mesh, kuznetsov_run, lotka_volterra_run, sample_kuznetsov, sample_lv_vectors,
    write_artifacts, NoiseConfig, RunConfig,
};
use combdyn::sampled_map::{build_f_mu, count_frequencies, format_samples, read_samples};
use combdyn::{DynamicalSystem, SimplexId, SimplicialComplex};

#[derive(Parser)]
#[command(name = "combdyn", version, about = "Morse decompositions of sampled dynamics and their persistence")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Flat `key = value` file applied over the experiment defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a triangulated rectangular grid (region and size from the config).
    MeshGrid {
        /// Use the predator-prey region instead of the square.
        #[arg(long)]
        lv: bool,
    },
    /// Draw noisy samples of the planar map.
    SampleKuznetsov,
    /// Evaluate the predator-prey field at every vertex of a mesh.
    SampleLv {
        #[arg(long)]
        mesh: PathBuf,
    },
    /// Build the sampled multivalued map at one threshold.
    Fmu {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        mu: f64,
    },
    /// Build a multivector field from a vector cloud.
    Cvcmf {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        vectors: PathBuf,
        /// Angular tolerance in degrees.
        #[arg(long)]
        alpha: f64,
    },
    /// Minimal Morse decomposition of a digraph or a multivector field.
    Morse {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long, conflicts_with = "mvf", required_unless_present = "mvf")]
        digraph: Option<PathBuf>,
        #[arg(long)]
        mvf: Option<PathBuf>,
    },
    /// Threshold sweep of the noisy planar map.
    SweepMu,
    /// Angle zigzag of the predator-prey field.
    ZigzagAlpha,
    /// Render a barcode CSV or a Morse decomposition over a mesh.
    Render {
        #[arg(long)]
        barcode: Option<PathBuf>,
        #[arg(long, requires = "morse")]
        mesh: Option<PathBuf>,
        #[arg(long, requires = "mesh")]
        morse: Option<PathBuf>,
    },
}

fn load_config(cli: &Cli, base: RunConfig) -> Result<RunConfig> {
    let mut config = base;
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        config.apply(&text)?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn write(out: &Path, name: &str, body: &str) -> Result<()> {
    fs::create_dir_all(out)?;
    let path = out.join(name);
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn load_mesh(path: &Path) -> Result<SimplicialComplex> {
    read_mesh(path).with_context(|| format!("reading mesh {}", path.display()))
}

/// Parses `set i: ids` lines (extra words before the colon are ignored).
fn parse_morse_sets(complex: &SimplicialComplex, text: &str) -> Result<Vec<combdyn::SimplexSet>> {
    let mut sets = Vec::new();
    for line in text.lines().filter(|l| l.starts_with("set ")) {
        let (head, ids) = line.split_once(':').context("malformed set line")?;
        if head.ends_with("trivial") {
            continue;
        }
        let ids = ids
            .split_whitespace()
            .map(|t| t.parse::<usize>().map(SimplexId::new))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        sets.push(complex.set_of(ids));
    }
    Ok(sets)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match &cli.command {
        Command::MeshGrid { lv } => {
            let base = if *lv { RunConfig::lotka_volterra() } else { RunConfig::kuznetsov() };
            let config = load_config(&cli, base)?;
            let mesh = grid_mesh(config.region, config.nx, config.ny)?;
            write(&out, "mesh.txt", &format_mesh(&mesh)?)?;
        }
        Command::SampleKuznetsov => {
            let config = load_config(&cli, RunConfig::kuznetsov())?;
            let noise = NoiseConfig {
                seed: config.seed,
                count: config.samples,
                sigma_x: config.sigma_x(),
                sigma_y: config.sigma_y(),
            };
            let sample = sample_kuznetsov(&config.kuznetsov, &noise);
            eprintln!("accepted {} rejected {}", sample.pairs.len(), sample.rejected);
            write(&out, "samples.csv", &format_samples(&sample.pairs, 2))?;
        }
        Command::SampleLv { mesh } => {
            let config = load_config(&cli, RunConfig::lotka_volterra())?;
            let mesh = load_mesh(mesh)?;
            let vectors = sample_lv_vectors(&config.lv, &mesh)?;
            let geometry = mesh.geometry().context("mesh has no coordinates")?;
            write(&out, "vectors.csv", &format_vectors(geometry, &vectors))?;
        }
        Command::Fmu { mesh, samples, mu } => {
            let mesh = load_mesh(mesh)?;
            let pairs = read_samples(samples)?;
            let table = count_frequencies(&mesh, &pairs)?;
            eprintln!("n_max {} accepted {} rejected {}", table.n_max(), table.accepted(), table.rejected());
            let system = build_f_mu(&mesh, &table, *mu)?;
            write(&out, "digraph.txt", &system.format_digraph())?;
        }
        Command::Cvcmf { mesh, vectors, alpha } => {
            let mesh = load_mesh(mesh)?;
            let (_, vectors) = parse_vectors(&fs::read_to_string(vectors)?)?;
            let field = cvcmf(&mesh, &vectors, *alpha)?;
            write(&out, "mvf.txt", &field.format())?;
        }
        Command::Morse { mesh, digraph, mvf } => {
            let mesh = load_mesh(mesh)?;
            let md = match (digraph, mvf) {
                (Some(path), _) => {
                    DynamicalSystem::parse_digraph(&mesh, &fs::read_to_string(path)?)?.minimal_morse_decomposition()
                }
                (None, Some(path)) => MultivectorField::parse(&mesh, &fs::read_to_string(path)?)?
                    .generated_system()
                    .minimal_morse_decomposition(),
                (None, None) => bail!("pass --digraph or --mvf"),
            };
            write(&out, "morse.txt", &md.format())?;
        }
        Command::SweepMu => {
            let config = load_config(&cli, RunConfig::kuznetsov())?;
            let run = kuznetsov_run(&config)?;
            write_artifacts(&out, &run.artifacts)?;
            eprintln!(
                "n_max {} accepted {} rejected {}; {} levels, Morse sets from step {:?}",
                run.n_max,
                run.accepted,
                run.rejected,
                run.sweep.levels.len(),
                emergence_step(&run.sweep)
            );
            print!("{}", combdyn::homology::format_barcode(&run.sweep.barcode));
        }
        Command::ZigzagAlpha => {
            let config = load_config(&cli, RunConfig::lotka_volterra())?;
            let run = lotka_volterra_run(&config)?;
            write_artifacts(&out, &run.artifacts)?;
            print!("{}", combdyn::homology::format_intervals(&run.zigzag.ordered));
        }
        Command::Render { barcode, mesh, morse } => {
            if barcode.is_none() && mesh.is_none() {
                bail!("pass --barcode, or --mesh with --morse");
            }
            if let Some(path) = barcode {
                let bars = parse_barcode(&fs::read_to_string(path)?)?;
                let steps = bars.intervals().iter().map(|b| b.death.unwrap_or(b.birth)).max().unwrap_or(0);
                write(&out, "barcode.svg", &barcode_svg(bars.intervals(), steps, &[]))?;
                write(&out, "diagram.svg", &diagram_svg(bars.intervals(), steps))?;
            }
            if let (Some(mesh), Some(morse)) = (mesh, morse) {
                let mesh = load_mesh(mesh)?;
                let sets = parse_morse_sets(&mesh, &fs::read_to_string(morse)?)?;
                write(&out, "overlay.svg", &morse_overlay_svg(&mesh, &sets)?)?;
            }
        }
    }
    Ok(())
}
