//! Flag values merged with config-file defaults.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::Args;

use crate::config::ConfigFile;

/// Output directory used for relative `--out` paths.
pub const OUT_DIR_ENV: &str = "SUPRACONV_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridMode {
    Uniform,
    Analytic,
    Equidistributed,
    Adaptive,
}

impl FromStr for GridMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "analytic" => Ok(Self::Analytic),
            "equidistributed" => Ok(Self::Equidistributed),
            "adaptive" => Ok(Self::Adaptive),
            other => Err(format!(
                "unknown grid mode `{other}` (expected uniform, analytic, equidistributed or adaptive)"
            )),
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Model parameter λ (> 0) [default: 10]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Domain length ℓ (> 0) [default: 1]
    #[arg(long)]
    pub ell: Option<f64>,
    /// Number of intervals N
    #[arg(long)]
    pub n: Option<usize>,
    /// uniform | analytic | equidistributed | adaptive
    #[arg(long)]
    pub grid: Option<GridMode>,
    /// α in ω = 1 + α|u_x|^β
    #[arg(long)]
    pub alpha: Option<f64>,
    /// β of the monitor power
    #[arg(long)]
    pub beta: Option<f64>,
    /// Grid-equation tolerance on node displacement [default: 1e-12]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Maximum grid-equation sweeps [default: 10000]
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    /// Outer adaptive tolerance on the solution change [default: 1e-10]
    #[arg(long)]
    pub eps: Option<f64>,
    /// Maximum outer adaptive iterations [default: 1000]
    #[arg(long = "max-outer")]
    pub max_outer: Option<usize>,
    /// Output file (CSV); relative paths resolve against $SUPRACONV_OUT_DIR when set
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub lambda: f64,
    pub ell: f64,
    pub n: Option<usize>,
    pub grid: Option<GridMode>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub eps: f64,
    pub max_outer: usize,
    pub out: Option<PathBuf>,
    pub ladder: Option<String>,
}

fn pick<T: FromStr>(flag: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

impl Settings {
    pub fn resolve(args: &CommonArgs, cfg: &ConfigFile) -> Result<Self> {
        let grid = match args.grid {
            Some(g) => Some(g),
            None => match cfg.get::<String>("grid")? {
                Some(s) => Some(s.parse().map_err(anyhow::Error::msg)?),
                None => None,
            },
        };
        let out = pick(args.out.clone(), cfg, "out")?.map(|p: PathBuf| {
            match std::env::var_os(OUT_DIR_ENV) {
                Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
                _ => p,
            }
        });
        Ok(Self {
            lambda: pick(args.lambda, cfg, "lambda")?.unwrap_or(10.0),
            ell: pick(args.ell, cfg, "ell")?.unwrap_or(1.0),
            n: pick(args.n, cfg, "n")?,
            grid,
            alpha: pick(args.alpha, cfg, "alpha")?,
            beta: pick(args.beta, cfg, "beta")?,
            tol: pick(args.tol, cfg, "tol")?.unwrap_or(1e-12),
            max_iter: pick(args.max_iter, cfg, "max-iter")?.unwrap_or(10_000),
            eps: pick(args.eps, cfg, "eps")?.unwrap_or(1e-10),
            max_outer: pick(args.max_outer, cfg, "max-outer")?.unwrap_or(1000),
            out,
            ladder: cfg.get("ladder")?,
        })
    }

    pub fn require_beta(&self) -> Result<f64> {
        match self.beta {
            Some(b) => Ok(b),
            None => bail!("--beta is required for this grid mode"),
        }
    }

    pub fn require_alpha(&self) -> Result<f64> {
        match self.alpha {
            Some(a) => Ok(a),
            None => bail!("--alpha is required for the adaptive grid mode"),
        }
    }
}

/// Parses `10,20,40` into a list of N values.
pub fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse()
                .map_err(|_| anyhow::anyhow!("invalid {what} entry `{t}`"))
        })
        .collect()
}
