//! Equidistribution grids: the discrete problem
//! `ω_{j+1/2} (x_{j+1} - x_j) - ω_{j-1/2} (x_j - x_{j-1}) = 0`, `x_0 = 0`, `x_N = ℓ`,
//! solved by freezing the monitor on the current grid and solving the
//! resulting linear tridiagonal system until the nodes stop moving.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::linalg::TridiagonalSystem;
use crate::problem::ProblemSpec;
use crate::solver::DiscreteSolution;

/// Anything that can supply one positive weight per grid interval.
pub trait Monitor {
    /// `ω_{j+1/2}` for every interval of `grid`.
    fn interval_values(&self, grid: &Grid) -> Vec<f64>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum MonitorFunction {
    /// `ω ≡ 1`.
    Constant,
    /// `ω = (u_x)^β` with the exact derivative, sampled at interval midpoints.
    ExactPower { beta: f64, spec: ProblemSpec },
    /// `ω = 1 + α |u_x|^β` with `|u_x|` taken from the difference quotients
    /// of a discrete solution. Values are attached to interval indices.
    AdaptiveAlphaBeta {
        alpha: f64,
        beta: f64,
        slopes: Vec<f64>,
    },
}

impl MonitorFunction {
    pub fn exact_power(spec: ProblemSpec, beta: f64) -> Result<Self> {
        check_nonneg("beta", beta)?;
        Ok(Self::ExactPower { beta, spec })
    }

    pub fn adaptive(alpha: f64, beta: f64, solution: &DiscreteSolution) -> Result<Self> {
        check_nonneg("alpha", alpha)?;
        check_nonneg("beta", beta)?;
        Ok(Self::AdaptiveAlphaBeta {
            alpha,
            beta,
            slopes: solution.interval_slopes(),
        })
    }

    /// Pointwise value where the monitor is a function of `x`.
    pub fn value_at(&self, x: f64) -> Option<f64> {
        match self {
            Self::Constant => Some(1.0),
            Self::ExactPower { beta, spec } => {
                // (λ e^{λ(x-ℓ)})^β without forming the underflowing power
                Some((beta * (spec.lambda().ln() + spec.lambda() * (x - spec.ell()))).exp())
            }
            Self::AdaptiveAlphaBeta { .. } => None,
        }
    }
}

impl Monitor for MonitorFunction {
    fn interval_values(&self, grid: &Grid) -> Vec<f64> {
        match self {
            Self::Constant => vec![1.0; grid.n()],
            Self::ExactPower { .. } => grid
                .midpoints()
                .into_iter()
                .map(|m| self.value_at(m).unwrap())
                .collect(),
            Self::AdaptiveAlphaBeta {
                alpha,
                beta,
                slopes,
            } => slopes
                .iter()
                .map(|s| 1.0 + alpha * s.abs().powf(*beta))
                .collect(),
        }
    }
}

fn check_nonneg(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be finite and >= 0",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquidistOptions {
    /// Stop once `max_j |x_j^{new} - x_j^{old}| < tol`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EquidistOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquidistResult {
    pub grid: Grid,
    pub iterations: usize,
    pub final_update: f64,
    pub equidist_defect: f64,
}

fn checked_weights(monitor: &(impl Monitor + ?Sized), grid: &Grid) -> Result<Vec<f64>> {
    let w = monitor.interval_values(grid);
    if w.len() != grid.n() {
        return Err(Error::DimensionMismatch(format!(
            "monitor supplied {} interval values for {} intervals",
            w.len(),
            grid.n()
        )));
    }
    if let Some((interval, &value)) = w
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v > 0.0))
    {
        return Err(Error::DegenerateMonitor { interval, value });
    }
    Ok(w)
}

/// Linear system for the interior nodes with the interval weights frozen.
///
/// Off-diagonals are `-ω`, so the matrix is an irreducibly diagonally dominant
/// M-matrix whenever every weight is positive.
pub fn grid_system(weights: &[f64], ell: f64) -> TridiagonalSystem {
    let n = weights.len();
    let m = n - 1;
    let diag = (1..n).map(|j| weights[j - 1] + weights[j]).collect();
    let lower = (2..n).map(|j| -weights[j - 1]).collect();
    let upper = (1..n - 1).map(|j| -weights[j]).collect();
    let mut rhs = vec![0.0; m];
    rhs[m - 1] += weights[n - 1] * ell;
    TridiagonalSystem {
        lower,
        diag,
        upper,
        rhs,
    }
}

/// One linearized sweep: monitor evaluated on `grid`, new nodes from the
/// frozen-weight system. `sweep` only labels errors.
pub fn linearized_sweep(
    monitor: &(impl Monitor + ?Sized),
    grid: &Grid,
    sweep: usize,
) -> Result<Grid> {
    let ell = grid.ell();
    let w = checked_weights(monitor, grid)?;
    let interior = grid_system(&w, ell).solve()?;

    let mut nodes = Vec::with_capacity(grid.n() + 1);
    nodes.push(0.0);
    nodes.extend(interior);
    nodes.push(ell);
    if let Some(interval) = nodes.windows(2).position(|p| !(p[1] > p[0])) {
        return Err(Error::NonMonotoneGrid { sweep, interval });
    }
    Grid::from_nodes(nodes, ell)
}

/// Relative spread `max_j |ω_{j+1/2} J_{j+1/2} - C_h| / C_h`, `C_h` being the mean.
pub fn equidist_defect(grid: &Grid, monitor: &(impl Monitor + ?Sized)) -> f64 {
    let products: Vec<f64> = monitor
        .interval_values(grid)
        .into_iter()
        .zip(grid.half_jacobians())
        .map(|(w, j)| w * j)
        .collect();
    let mean = products.iter().sum::<f64>() / products.len() as f64;
    products
        .iter()
        .map(|p| (p - mean).abs())
        .fold(0.0, f64::max)
        / mean
}

/// Solves the discrete equidistribution equations for `monitor`.
///
/// Starts from `initial`, or from the uniform grid when `None`.
pub fn equidistribute(
    monitor: &(impl Monitor + ?Sized),
    spec: &ProblemSpec,
    n: usize,
    initial: Option<&Grid>,
    opts: EquidistOptions,
) -> Result<EquidistResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: opts.tol,
            reason: "must be > 0",
        });
    }
    let mut grid = match initial {
        Some(g) => {
            if g.n() != n || g.ell() != spec.ell() {
                return Err(Error::InvalidGrid(format!(
                    "initial grid has N = {}, ell = {}; expected N = {n}, ell = {}",
                    g.n(),
                    g.ell(),
                    spec.ell()
                )));
            }
            g.clone()
        }
        None => Grid::uniform(spec.ell(), n)?,
    };

    let mut update = f64::INFINITY;
    for sweep in 1..=opts.max_iter {
        let next = linearized_sweep(monitor, &grid, sweep)?;
        update = next.max_node_distance(&grid);
        grid = next;
        if update < opts.tol {
            let defect = equidist_defect(&grid, monitor);
            return Ok(EquidistResult {
                grid,
                iterations: sweep,
                final_update: update,
                equidist_defect: defect,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        final_update: update,
    })
}
