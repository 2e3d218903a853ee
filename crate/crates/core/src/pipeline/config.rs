//! Flat `key = value` run configuration.

use super::models::{KuznetsovParams, LVParams, Region};
use crate::error::{parse_error, Result};

/// Settings shared by both experiments. Unset noise levels default to a
/// quarter of the grid spacing for `sigma_x` and the full spacing for
/// `sigma_y`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    pub samples: usize,
    pub sigma_x: Option<f64>,
    pub sigma_y: Option<f64>,
    /// Threshold levels, decreasing; `None` means `2i / n_max` down to zero.
    pub levels: Option<Vec<f64>>,
    /// Angles in degrees.
    pub alphas: Vec<f64>,
    pub kuznetsov: KuznetsovParams,
    pub lv: LVParams,
    /// 1-based steps whose Morse sets are drawn over the mesh.
    pub overlays: Vec<usize>,
}

impl RunConfig {
    /// The noisy planar map on a 48 × 48 grid of `[-1, 1]²`.
    pub fn kuznetsov() -> Self {
        RunConfig {
            seed: 20190101,
            region: Region::new(-1.0, 1.0, -1.0, 1.0),
            nx: 48,
            ny: 48,
            samples: 7_000_000,
            sigma_x: None,
            sigma_y: None,
            levels: None,
            alphas: Vec::new(),
            kuznetsov: KuznetsovParams::default(),
            lv: LVParams::default(),
            overlays: Vec::new(),
        }
    }

    /// The predator-prey field on a 60 × 40 grid of `[0.05, 3.5] × [0.05, 2]`.
    pub fn lotka_volterra() -> Self {
        RunConfig {
            region: Region::new(0.05, 3.5, 0.05, 2.0),
            nx: 60,
            ny: 40,
            alphas: vec![0.0, 7.0, 14.0, 21.0, 28.0, 35.0],
            ..RunConfig::kuznetsov()
        }
    }

    /// Horizontal grid spacing.
    pub fn spacing(&self) -> f64 {
        (self.region.x1 - self.region.x0) / self.nx as f64
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x.unwrap_or(self.spacing() / 4.0)
    }

    pub fn sigma_y(&self) -> f64 {
        self.sigma_y.unwrap_or(self.spacing())
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#`
    /// comments are skipped; lists are separated by commas or whitespace.
    pub fn apply(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let n = i + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_error(n, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let float = |v: &str| v.parse::<f64>().map_err(|_| parse_error(n, format!("bad number `{v}`")));
            let int = |v: &str| v.parse::<usize>().map_err(|_| parse_error(n, format!("bad integer `{v}`")));
            let list = |v: &str| -> Result<Vec<f64>> {
                v.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(float)
                    .collect()
            };
            match key {
                "seed" => self.seed = value.parse().map_err(|_| parse_error(n, format!("bad seed `{value}`")))?,
                "region" => {
                    let r = list(value)?;
                    if r.len() != 4 {
                        return Err(parse_error(n, "region needs x0, x1, y0, y1"));
                    }
                    self.region = Region::new(r[0], r[1], r[2], r[3]);
                }
                "nx" => self.nx = int(value)?,
                "ny" => self.ny = int(value)?,
                "grid" => {
                    self.nx = int(value)?;
                    self.ny = self.nx;
                }
                "samples" => self.samples = int(value)?,
                "sigma_x" => self.sigma_x = Some(float(value)?),
                "sigma_y" => self.sigma_y = Some(float(value)?),
                "levels" => self.levels = if value == "auto" { None } else { Some(list(value)?) },
                "alphas" => self.alphas = list(value)?,
                "theta" => self.kuznetsov.theta = float(value)?,
                "bif_alpha" => self.kuznetsov.alpha = float(value)?,
                "coef_a" => self.kuznetsov.a = float(value)?,
                "coef_b" => self.kuznetsov.b = float(value)?,
                "lv_k" => self.lv = LVParams::new(float(value)?, self.lv.b, self.lv.g),
                "lv_b" => self.lv = LVParams::new(self.lv.k, float(value)?, self.lv.g),
                "lv_g" => self.lv = LVParams::new(self.lv.k, self.lv.b, float(value)?),
                "overlays" => {
                    self.overlays = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|t| !t.is_empty())
                        .map(int)
                        .collect::<Result<_>>()?
                }
                other => return Err(parse_error(n, format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    /// `key = value` text that [`apply`](Self::apply) reads back to `self`.
    pub fn format(&self) -> String {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let r = self.region;
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("region = {:?}, {:?}, {:?}, {:?}\n", r.x0, r.x1, r.y0, r.y1));
        out.push_str(&format!("nx = {}\nny = {}\n", self.nx, self.ny));
        out.push_str(&format!("samples = {}\n", self.samples));
        out.push_str(&format!("sigma_x = {:?}\nsigma_y = {:?}\n", self.sigma_x(), self.sigma_y()));
        match &self.levels {
            Some(l) => out.push_str(&format!("levels = {}\n", join(l))),
            None => out.push_str("levels = auto\n"),
        }
        out.push_str(&format!("alphas = {}\n", join(&self.alphas)));
        let k = self.kuznetsov;
        out.push_str(&format!("theta = {:?}\nbif_alpha = {:?}\ncoef_a = {:?}\ncoef_b = {:?}\n", k.theta, k.alpha, k.a, k.b));
        out.push_str(&format!("lv_k = {:?}\nlv_b = {:?}\nlv_g = {:?}\n", self.lv.k, self.lv.b, self.lv.g));
        let overlays: Vec<String> = self.overlays.iter().map(usize::to_string).collect();
        out.push_str(&format!("overlays = {}\n", overlays.join(", ")));
        out
    }
}
