//! Solution-adaptive grids: alternate the finite-difference solve with
//! equidistribution of `ω = 1 + α |u_x|^β` built from the latest discrete
//! solution, until consecutive solutions agree to `eps` in max-norm.

use crate::analysis::max_error;
use crate::equidist::{equidistribute, EquidistOptions, MonitorFunction};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::problem::ProblemSpec;
use crate::solver::{solve_bvp, DiscreteSolution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveConfig {
    pub alpha: f64,
    pub beta: f64,
    /// Outer stopping tolerance on `‖u^{n+1} - u^n‖_∞`.
    pub eps: f64,
    pub max_outer: usize,
    pub inner: EquidistOptions,
}

impl AdaptiveConfig {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta,
            ..Self::default()
        }
    }
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            eps: 1e-10,
            max_outer: 1000,
            inner: EquidistOptions::default(),
        }
    }
}

/// One outer iteration of the adaptive loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub n: usize,
    pub error_norm: f64,
    /// `max_j |u_j^{n} - u_j^{n-1}|` at like node indices.
    pub solution_change: f64,
    pub grid_change: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveResult {
    /// Final solution when converged, otherwise the iterate with the
    /// smallest solution change.
    pub solution: DiscreteSolution,
    /// Number of remesh-and-resolve cycles.
    pub outer_iterations: usize,
    pub error_norm: f64,
    pub converged: bool,
    pub trace: Vec<TraceRow>,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Runs the adaptive loop from the uniform grid with `n` intervals.
///
/// Each outer iteration builds the monitor from the current solution,
/// equidistributes it, re-solves, and compares the new node values with the
/// previous ones index by index. Non-convergence is not an error: the result
/// is flagged and carries the best iterate seen.
pub fn adaptive_solve(
    spec: &ProblemSpec,
    n: usize,
    cfg: &AdaptiveConfig,
) -> Result<AdaptiveResult> {
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: cfg.eps,
            reason: "must be > 0",
        });
    }
    let mut current = solve_bvp(&Grid::uniform(spec.ell(), n)?, spec)?;
    let mut trace = Vec::new();
    let mut best: Option<(f64, DiscreteSolution, usize)> = None;

    for outer in 1..=cfg.max_outer {
        let monitor = MonitorFunction::adaptive(cfg.alpha, cfg.beta, &current)?;
        // ω = 1 + α|u_x|^0 or ω = 1: the equidistributed grid is uniform
        let grid = if cfg.alpha == 0.0 || cfg.beta == 0.0 {
            Grid::uniform(spec.ell(), n)?
        } else {
            equidistribute(&monitor, spec, n, Some(current.grid()), cfg.inner)?.grid
        };
        let next = solve_bvp(&grid, spec)?;

        let change = max_abs_diff(next.values(), current.values());
        let row = TraceRow {
            n: outer,
            error_norm: max_error(&next),
            solution_change: change,
            grid_change: grid.max_node_distance(current.grid()),
        };
        log::debug!(
            "outer {outer}: change {change:e}, error {:e}",
            row.error_norm
        );
        trace.push(row);
        current = next;

        if change < cfg.eps {
            return Ok(AdaptiveResult {
                error_norm: row.error_norm,
                solution: current,
                outer_iterations: outer,
                converged: true,
                trace,
            });
        }
        if best.as_ref().is_none_or(|(c, _, _)| change < *c) {
            best = Some((change, current.clone(), outer));
        }
    }

    let (_, solution, _) = best.unwrap_or_else(|| (f64::INFINITY, current.clone(), 0));
    log::warn!(
        "adaptive loop (alpha = {}, beta = {}) did not converge in {} iterations",
        cfg.alpha,
        cfg.beta,
        cfg.max_outer
    );
    Ok(AdaptiveResult {
        error_norm: max_error(&solution),
        solution,
        outer_iterations: cfg.max_outer,
        converged: false,
        trace,
    })
}
