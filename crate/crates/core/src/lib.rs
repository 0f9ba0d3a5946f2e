//! Centered finite differences for the boundary-layer problem
//! `-u'' + λ²u = 0`, `u(0) = e^{-λℓ}`, `u(ℓ) = 1`, on uniform, closed-form
//! mapped, equidistributed, and solution-adaptive grids.
//!
//! The crate shows how node placement alone moves the three-point scheme
//! from second to fourth order: grids equidistributing `(u_x)^{1/4}` make the
//! leading consistency term vanish.

pub mod adapt;
pub mod analysis;
pub mod equidist;
pub mod error;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod problem;
pub mod solver;

pub use adapt::{adaptive_solve, AdaptiveConfig, AdaptiveResult, TraceRow};
pub use analysis::{
    consistency_error, convergence_order, fourth_order_residual, mapped_grid_study, max_error,
    ConvergenceReport, ConvergenceRow, FourthOrderResidual, Ladder,
};
pub use equidist::{
    equidist_defect, equidistribute, EquidistOptions, EquidistResult, Monitor, MonitorFunction,
};
pub use error::{Error, Result};
pub use grid::{analytic_mapped_grid, uniform_grid, Grid, MappingKind, MappingSpec};
pub use linalg::{solve_tridiagonal, TridiagonalSystem};
pub use problem::ProblemSpec;
pub use solver::{assemble_scheme, solve_bvp, DiscreteSolution};
