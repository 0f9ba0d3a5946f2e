//! Three-point centered scheme
//! `-[(u_{j+1}-u_j)/h_{j+1/2} - (u_j-u_{j-1})/h_{j-1/2}] / h_j + λ² u_j = 0`
//! on an arbitrary grid, with Dirichlet rows folded into the right-hand side.
//! On a uniform grid this reduces to the classical `(u_{j+1} - 2u_j + u_{j-1})/Δx²`
//! stencil, and it is algebraically the same scheme as the one written on the
//! reference interval with Jacobians `J_{j±1/2}`, `J_j`.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::linalg::TridiagonalSystem;
use crate::problem::ProblemSpec;

/// Node values of the discrete solution together with the grid they live on.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    grid: Grid,
    values: Vec<f64>,
    spec: ProblemSpec,
}

impl DiscreteSolution {
    pub fn new(grid: Grid, values: Vec<f64>, spec: ProblemSpec) -> Result<Self> {
        if values.len() != grid.nodes().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                grid.nodes().len()
            )));
        }
        Ok(Self { grid, values, spec })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// `u(x_j)` at every node.
    pub fn exact_values(&self) -> Vec<f64> {
        self.grid
            .nodes()
            .iter()
            .map(|&x| {
                self.spec
                    .exact_solution(x)
                    .expect("grid nodes lie in [0, ell]")
            })
            .collect()
    }

    /// `|u_j - u(x_j)|` at every node.
    pub fn abs_errors(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(self.exact_values())
            .map(|(u, e)| (u - e).abs())
            .collect()
    }

    /// Difference quotients `(u_{j+1} - u_j) / h_{j+1/2}`.
    pub fn interval_slopes(&self) -> Vec<f64> {
        self.values
            .windows(2)
            .zip(self.grid.steps())
            .map(|(w, h)| (w[1] - w[0]) / h)
            .collect()
    }
}

/// Assembles the scheme for `-u'' + lambda_sq u = 0` with `u(0) = left`,
/// `u(ℓ) = right`. Unknowns are the `N-1` interior values.
pub fn assemble_dirichlet(grid: &Grid, lambda_sq: f64, left: f64, right: f64) -> TridiagonalSystem {
    let n = grid.n();
    let m = n - 1;
    let mut lower = Vec::with_capacity(m - 1);
    let mut diag = Vec::with_capacity(m);
    let mut upper = Vec::with_capacity(m - 1);
    let mut rhs = vec![0.0; m];

    for j in 1..n {
        let hm = grid.step(j - 1);
        let hp = grid.step(j);
        let hj = 0.5 * (hm + hp);
        let west = 1.0 / (hj * hm);
        let east = 1.0 / (hj * hp);
        diag.push(west + east + lambda_sq);
        if j > 1 {
            lower.push(-west);
        } else {
            rhs[0] += west * left;
        }
        if j < n - 1 {
            upper.push(-east);
        } else {
            rhs[m - 1] += east * right;
        }
    }
    TridiagonalSystem {
        lower,
        diag,
        upper,
        rhs,
    }
}

pub fn assemble_scheme(grid: &Grid, spec: &ProblemSpec) -> TridiagonalSystem {
    let lambda = spec.lambda();
    assemble_dirichlet(grid, lambda * lambda, spec.left_bc(), spec.right_bc())
}

/// All `N+1` node values of the discrete solution for general Dirichlet data.
pub fn solve_dirichlet(grid: &Grid, lambda_sq: f64, left: f64, right: f64) -> Result<Vec<f64>> {
    let interior = assemble_dirichlet(grid, lambda_sq, left, right).solve()?;
    let mut values = Vec::with_capacity(grid.n() + 1);
    values.push(left);
    values.extend(interior);
    values.push(right);
    Ok(values)
}

pub fn solve_bvp(grid: &Grid, spec: &ProblemSpec) -> Result<DiscreteSolution> {
    let lambda = spec.lambda();
    let values = solve_dirichlet(grid, lambda * lambda, spec.left_bc(), spec.right_bc())?;
    DiscreteSolution::new(grid.clone(), values, *spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{analytic_mapped_grid, MappingSpec};
    use proptest::prelude::*;

    fn max_err(sol: &DiscreteSolution) -> f64 {
        sol.abs_errors().into_iter().fold(0.0, f64::max)
    }

    #[test]
    fn laplacian_rows_on_uniform_grid() {
        let g = Grid::uniform(1.0, 4).unwrap();
        let sys = assemble_dirichlet(&g, 0.0, 0.0, 0.0);
        assert_eq!(sys.diag, vec![32.0; 3]);
        assert_eq!(sys.lower, vec![-16.0; 2]);
        assert_eq!(sys.upper, vec![-16.0; 2]);
    }

    #[test]
    fn reduces_to_classical_stencil_on_uniform_grid() {
        let spec = ProblemSpec::new(7.5, 2.0).unwrap();
        let g = Grid::uniform(2.0, 16).unwrap();
        let sys = assemble_scheme(&g, &spec);
        let dx = 2.0 / 16.0;
        let inv = 1.0 / (dx * dx);
        for d in &sys.diag {
            assert!((d - (2.0 * inv + 7.5 * 7.5)).abs() <= 1e-12 * d);
        }
        for v in sys.lower.iter().chain(&sys.upper) {
            assert!((v + inv).abs() <= 1e-12 * inv);
        }
        assert!((sys.rhs[0] - inv * spec.left_bc()).abs() <= 1e-12 * inv);
        assert!((sys.rhs[14] - inv).abs() <= 1e-12 * inv);
    }

    #[test]
    fn matches_reference_interval_form() {
        // -1/(h J_j) [ (v_{j+1}-v_j)/(h J_{j+1/2}) - (v_j-v_{j-1})/(h J_{j-1/2}) ]
        let spec = ProblemSpec::new(10.0, 1.0).unwrap();
        let g = analytic_mapped_grid(&MappingSpec::power(spec, 0.5).unwrap(), 12).unwrap();
        let sys = assemble_scheme(&g, &spec);
        let h = g.h();
        let jh = g.half_jacobians();
        for j in 1..12 {
            let jj = g.jacobian(j);
            let west = 1.0 / (h * jj * h * jh[j - 1]);
            let east = 1.0 / (h * jj * h * jh[j]);
            let d = sys.diag[j - 1];
            assert!((d - (west + east + 100.0)).abs() <= 1e-12 * d);
        }
    }

    #[test]
    fn three_node_row() {
        let g = Grid::from_nodes(vec![0.0, 0.25, 1.0], 1.0).unwrap();
        let sys = assemble_dirichlet(&g, 1.0, 0.0, 0.0);
        assert_eq!(sys.n(), 1);
        assert!((sys.diag[0] - (1.0 / (0.5 * 0.75) + 1.0 / (0.5 * 0.25) + 1.0)).abs() < 1e-13);
        assert!((sys.diag[0] - 11.666_666_666_666_666).abs() < 1e-12);
    }

    #[test]
    fn assembled_system_is_dominant_m_matrix() {
        let spec = ProblemSpec::new(10.0, 1.0).unwrap();
        for &beta in &[0.0, 0.25, 2.0] {
            let g = analytic_mapped_grid(&MappingSpec::power(spec, beta).unwrap(), 40).unwrap();
            let sys = assemble_scheme(&g, &spec);
            assert!(sys.is_strictly_diagonally_dominant());
            assert!(sys.has_m_matrix_sign_pattern());
        }
    }

    #[test]
    fn boundary_values_imposed_exactly() {
        let spec = ProblemSpec::new(10.0, 1.0).unwrap();
        let sol = solve_bvp(&Grid::uniform(1.0, 20).unwrap(), &spec).unwrap();
        assert_eq!(sol.values()[0], spec.left_bc());
        assert_eq!(sol.values()[20], 1.0);
        assert!(sol.values().iter().all(|&u| u > 0.0 && u <= 1.0 + 1e-10));
    }

    #[test]
    fn table_values_at_n20() {
        let spec = ProblemSpec::new(10.0, 1.0).unwrap();
        let cases = [(0.0, 0.375e-2), (0.25, 0.883e-6), (2.0, 0.137)];
        for (beta, expected) in cases {
            let g = analytic_mapped_grid(&MappingSpec::power(spec, beta).unwrap(), 20).unwrap();
            let e = max_err(&solve_bvp(&g, &spec).unwrap());
            assert!(
                ((e - expected) / expected).abs() < 0.01,
                "beta={beta}: {e:e}"
            );
        }
    }

    #[test]
    fn uniform_errors_decrease_under_refinement() {
        let spec = ProblemSpec::new(10.0, 1.0).unwrap();
        let errs: Vec<f64> = [10, 20, 40, 80, 160, 320, 640]
            .iter()
            .map(|&n| max_err(&solve_bvp(&Grid::uniform(1.0, n).unwrap(), &spec).unwrap()))
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]));
    }

    fn random_grid() -> impl Strategy<Value = Grid> {
        proptest::collection::vec(0.05f64..1.0, 2..60).prop_map(|w| {
            let total: f64 = w.iter().sum();
            let mut x = 0.0;
            let mut nodes = vec![0.0];
            for s in &w[..w.len() - 1] {
                x += s / total;
                nodes.push(x);
            }
            nodes.push(1.0);
            Grid::from_nodes(nodes, 1.0).unwrap()
        })
    }

    proptest! {
        #[test]
        fn discrete_maximum_principle(g in random_grid(), lambda in 0.1f64..50.0) {
            let spec = ProblemSpec::new(lambda, 1.0).unwrap();
            let sol = solve_bvp(&g, &spec).unwrap();
            let lo = spec.left_bc().min(spec.right_bc());
            let hi = spec.left_bc().max(spec.right_bc());
            for &u in sol.values() {
                prop_assert!(u >= lo - 1e-12 && u <= hi + 1e-12);
            }
        }

        #[test]
        fn affine_exactness(g in random_grid(), a in -5.0f64..5.0, b in -5.0f64..5.0) {
            let u = solve_dirichlet(&g, 0.0, a, b).unwrap();
            for (&x, &v) in g.nodes().iter().zip(&u) {
                prop_assert!((v - (a + (b - a) * x)).abs() <= 1e-12);
            }
        }
    }
}
