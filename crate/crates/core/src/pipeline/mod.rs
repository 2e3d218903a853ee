//! Experiment drivers: samplers, meshes, the threshold sweep, the angle
//! zigzag and their rendered outputs.

mod artifacts;
mod config;
mod models;
pub mod render;
mod runs;

pub use artifacts::{emergence_step, kuznetsov_run, lotka_volterra_run, write_artifacts, Artifacts, SweepRun, ZigzagRun};
pub use config::RunConfig;
pub use models::{
    grid_mesh, sample_kuznetsov, sample_lv_vectors, KuznetsovParams, KuznetsovSample, LVParams, NoiseConfig, Region,
    NORMAL_SAMPLER,
};
pub use runs::{run_alpha_zigzag, run_mu_sweep, AlphaZigzag, MuSweep, ZigzagStage, DEGREES};
