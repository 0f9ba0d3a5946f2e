//! Shared inputs for the benchmarks.

use supraconv_core::{assemble_scheme, uniform_grid, ProblemSpec, TridiagonalSystem};

/// The reference problem, `λ = 10`, `ℓ = 1`.
pub fn reference_problem() -> ProblemSpec {
    ProblemSpec::new(10.0, 1.0).expect("valid parameters")
}

/// Scheme matrix on the uniform grid with `n` intervals.
pub fn scheme_system(n: usize) -> TridiagonalSystem {
    let spec = reference_problem();
    assemble_scheme(&uniform_grid(&spec, n).expect("n >= 2"), &spec)
}
