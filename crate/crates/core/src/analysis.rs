//! Error norms, observed convergence orders, the local consistency error of
//! the scheme, and the fourth-order grid condition
//! `x_qq u_xxx + x_q² u_xxxx / 4 = 0`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grid::{analytic_mapped_grid, Grid, MappingKind, MappingSpec};
use crate::problem::ProblemSpec;
use crate::solver::{solve_bvp, DiscreteSolution};

/// `‖u_h - u‖_∞` over all nodes.
pub fn max_error(sol: &DiscreteSolution) -> f64 {
    sol.abs_errors().into_iter().fold(0.0, f64::max)
}

/// `log2(e_coarse / e_fine)`.
pub fn convergence_order(e_coarse: f64, e_fine: f64) -> Result<f64> {
    for (name, v) in [("e_coarse", e_coarse), ("e_fine", e_fine)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "error norms must be finite and > 0",
            });
        }
    }
    Ok((e_coarse / e_fine).log2())
}

/// Residual of the scheme with a smooth function `u` inserted, at the
/// interior nodes `j = 1..N-1`.
pub fn consistency_error_of(grid: &Grid, lambda_sq: f64, u: impl Fn(f64) -> f64) -> Vec<f64> {
    let x = grid.nodes();
    let vals: Vec<f64> = x.iter().map(|&xi| u(xi)).collect();
    (1..grid.n())
        .map(|j| {
            let hm = grid.step(j - 1);
            let hp = grid.step(j);
            let hj = 0.5 * (hm + hp);
            -((vals[j + 1] - vals[j]) / hp - (vals[j] - vals[j - 1]) / hm) / hj
                + lambda_sq * vals[j]
        })
        .collect()
}

/// `ψ_j` for the exact boundary-layer solution.
pub fn consistency_error(grid: &Grid, spec: &ProblemSpec) -> Vec<f64> {
    let lambda = spec.lambda();
    let ell = spec.ell();
    consistency_error_of(grid, lambda * lambda, |x| (lambda * (x - ell)).exp())
}

/// Leading term of `ψ_j` on a uniform grid, `-u_xxxx(x_j) Δx² / 12`.
pub fn uniform_leading_consistency_term(spec: &ProblemSpec, x: f64, dx: f64) -> Result<f64> {
    Ok(-spec.exact_derivative(x, 4)? * dx * dx / 12.0)
}

/// Both terms of the fourth-order condition at one reference point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourthOrderResidual {
    /// `x_qq u_xxx`.
    pub curvature_term: f64,
    /// `x_q² u_xxxx / 4`.
    pub layer_term: f64,
    pub raw: f64,
    /// `raw / (|curvature_term| + |layer_term|)`, in `[-1, 1]`.
    pub normalized: f64,
}

pub fn fourth_order_residual(map: &MappingSpec, q: f64) -> Result<FourthOrderResidual> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q,
            reason: "must lie in (0, 1)",
        });
    }
    let spec = &map.spec;
    let x = map.x(q).clamp(0.0, spec.ell());
    let curvature_term = map.x_qq(q) * spec.exact_derivative(x, 3)?;
    let x_q = map.x_q(q);
    let layer_term = 0.25 * x_q * x_q * spec.exact_derivative(x, 4)?;
    let raw = curvature_term + layer_term;
    let normalized = raw / (curvature_term.abs() + layer_term.abs() + f64::MIN_POSITIVE);
    Ok(FourthOrderResidual {
        curvature_term,
        layer_term,
        raw,
        normalized,
    })
}

/// Refinement ladder in which each `N` doubles the previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder(Vec<usize>);

impl Ladder {
    pub fn new(ns: Vec<usize>) -> Result<Self> {
        if ns.is_empty() {
            return Err(Error::InvalidParameter {
                name: "ladder",
                value: 0.0,
                reason: "empty ladder",
            });
        }
        if ns[0] < 2 {
            return Err(Error::InvalidParameter {
                name: "N",
                value: ns[0] as f64,
                reason: "need at least 2 intervals",
            });
        }
        if let Some(w) = ns.windows(2).find(|w| w[1] != 2 * w[0]) {
            return Err(Error::InvalidParameter {
                name: "ladder",
                value: w[1] as f64,
                reason: "each entry must double the previous one",
            });
        }
        Ok(Self(ns))
    }

    /// `n0, 2 n0, ..., 2^{levels-1} n0`.
    pub fn doubling(n0: usize, levels: usize) -> Result<Self> {
        Self::new((0..levels).map(|k| n0 << k).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub error: f64,
    /// Observed order against the previous row; absent in the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub label: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn from_errors(label: impl Into<String>, errors: &[(usize, f64)]) -> Result<Self> {
        let mut rows = Vec::with_capacity(errors.len());
        for (k, &(n, error)) in errors.iter().enumerate() {
            let order = if k == 0 {
                None
            } else {
                Some(convergence_order(errors[k - 1].1, error)?)
            };
            rows.push(ConvergenceRow { n, error, order });
        }
        Ok(Self {
            label: label.into(),
            rows,
        })
    }

    /// Runs `error_at(N)` for every rung of the ladder.
    pub fn from_ladder(
        label: impl Into<String>,
        ladder: &Ladder,
        mut error_at: impl FnMut(usize) -> Result<f64>,
    ) -> Result<Self> {
        let errors = ladder
            .as_slice()
            .iter()
            .map(|&n| error_at(n).map(|e| (n, e)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_errors(label, &errors)
    }

    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error).collect()
    }

    pub fn orders(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.order).collect()
    }
}

/// Max-norm errors of the scheme on analytic mapped grids along a ladder.
pub fn mapped_grid_study(map: &MappingSpec, ladder: &Ladder) -> Result<ConvergenceReport> {
    ConvergenceReport::from_ladder(mapping_label(map), ladder, |n| {
        let grid = analytic_mapped_grid(map, n)?;
        Ok(max_error(&solve_bvp(&grid, &map.spec)?))
    })
}

pub fn mapping_label(map: &MappingSpec) -> String {
    match map.kind {
        MappingKind::Uniform => "omega=1".to_string(),
        MappingKind::PowerMonitor { beta } if beta == 0.0 => "omega=1".to_string(),
        MappingKind::PowerMonitor { beta } => format!("omega=(u_x)^{beta}"),
    }
}

/// Three significant digits in scientific notation.
pub fn sci3(v: f64) -> String {
    format!("{v:.2e}")
}

/// Several reports side by side, one `error  p` column pair per report.
/// Reports are aligned by row index.
pub fn render_side_by_side(reports: &[ConvergenceReport]) -> String {
    const COL: usize = 20;
    let mut out = String::new();
    let _ = write!(out, "{:>6}", "N");
    for r in reports {
        let _ = write!(out, " | {:^w$}", r.label, w = COL);
    }
    out.push('\n');
    let _ = write!(out, "{:>6}", "");
    for _ in reports {
        let _ = write!(out, " | {:>11} {:>8}", "error", "p");
    }
    out.push('\n');
    let rows = reports.iter().map(|r| r.rows.len()).max().unwrap_or(0);
    for i in 0..rows {
        let n = reports
            .iter()
            .find_map(|r| r.rows.get(i))
            .map(|row| row.n)
            .unwrap_or(0);
        let _ = write!(out, "{n:>6}");
        for r in reports {
            match r.rows.get(i) {
                Some(row) => {
                    let p = row
                        .order
                        .map(|p| format!("{p:.2}"))
                        .unwrap_or_else(|| "---".into());
                    let _ = write!(out, " | {:>11} {:>8}", sci3(row.error), p);
                }
                None => {
                    let _ = write!(out, " | {:>11} {:>8}", "", "");
                }
            }
        }
        out.push('\n');
    }
    out
}
