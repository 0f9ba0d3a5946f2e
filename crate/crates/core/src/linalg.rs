//! Tridiagonal systems and the Thomas algorithm.

use crate::error::{Error, Result};

/// Pivots smaller than this in magnitude abort the elimination.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// `A x = rhs` with `A` tridiagonal.
///
/// Row `i` reads `lower[i-1] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let sys = Self {
            lower,
            diag,
            upper,
            rhs,
        };
        sys.check_shape()?;
        Ok(sys)
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.diag.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty system".into()));
        }
        if self.lower.len() != n - 1 || self.upper.len() != n - 1 || self.rhs.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "n = {n}, lower = {}, upper = {}, rhs = {}",
                self.lower.len(),
                self.upper.len(),
                self.rhs.len()
            )));
        }
        Ok(())
    }

    /// `A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Max row sum of `|A|`.
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.lower[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.upper[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Per-row margin `|diag_i| - |lower_{i-1}| - |upper_i|`.
    pub fn dominance_margins(&self) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut off = 0.0;
                if i > 0 {
                    off += self.lower[i - 1].abs();
                }
                if i + 1 < n {
                    off += self.upper[i].abs();
                }
                self.diag[i].abs() - off
            })
            .collect()
    }

    pub fn is_strictly_diagonally_dominant(&self) -> bool {
        self.dominance_margins().iter().all(|&m| m > 0.0)
    }

    /// Weakly dominant in every row, strictly in at least one, with no zero
    /// off-diagonal (irreducible). Such matrices are nonsingular and the
    /// Thomas algorithm runs without pivoting.
    pub fn is_irreducibly_diagonally_dominant(&self) -> bool {
        let margins = self.dominance_margins();
        let scale = self.norm_inf();
        margins.iter().all(|&m| m >= -1e-14 * scale)
            && margins.iter().any(|&m| m > 0.0)
            && self.lower.iter().chain(&self.upper).all(|&v| v != 0.0)
    }

    /// Positive diagonal and non-positive off-diagonals.
    pub fn has_m_matrix_sign_pattern(&self) -> bool {
        self.diag.iter().all(|&d| d > 0.0)
            && self.lower.iter().chain(&self.upper).all(|&v| v <= 0.0)
    }

    /// Thomas algorithm. Does not modify `self`.
    pub fn solve(&self) -> Result<Vec<f64>> {
        self.check_shape()?;
        let n = self.n();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];

        let mut pivot = self.diag[0];
        if pivot.abs() < PIVOT_FLOOR {
            return Err(Error::PivotFailure { index: 0, pivot });
        }
        if n > 1 {
            c[0] = self.upper[0] / pivot;
        }
        d[0] = self.rhs[0] / pivot;
        for i in 1..n {
            let a = self.lower[i - 1];
            pivot = self.diag[i] - a * c[i - 1];
            if pivot.abs() < PIVOT_FLOOR || !pivot.is_finite() {
                return Err(Error::PivotFailure { index: i, pivot });
            }
            if i + 1 < n {
                c[i] = self.upper[i] / pivot;
            }
            d[i] = (self.rhs[i] - a * d[i - 1]) / pivot;
        }

        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        Ok(d)
    }
}

/// Convenience wrapper around [`TridiagonalSystem::solve`].
pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    sys.solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Dense Gaussian elimination with partial pivoting.
    fn dense_solve(sys: &TridiagonalSystem) -> Vec<f64> {
        let n = sys.n();
        let mut a = vec![vec![0.0; n + 1]; n];
        for i in 0..n {
            a[i][i] = sys.diag[i];
            if i > 0 {
                a[i][i - 1] = sys.lower[i - 1];
            }
            if i + 1 < n {
                a[i][i + 1] = sys.upper[i];
            }
            a[i][n] = sys.rhs[i];
        }
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
                .unwrap();
            a.swap(k, p);
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..=n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
            x[i] = (a[i][n] - s) / a[i][i];
        }
        x
    }

    fn residual_ok(sys: &TridiagonalSystem, x: &[f64]) -> bool {
        let ax = sys.apply(x);
        let r = ax
            .iter()
            .zip(&sys.rhs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let xn = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let bn = sys.rhs.iter().map(|v| v.abs()).fold(0.0, f64::max);
        r <= 1e-12 * (sys.norm_inf() * xn + bn)
    }

    #[test]
    fn identity() {
        let sys = TridiagonalSystem::new(
            vec![0.0; 2],
            vec![1.0; 3],
            vec![0.0; 2],
            vec![3.0, 5.0, 7.0],
        )
        .unwrap();
        assert_eq!(sys.solve().unwrap(), vec![3.0, 5.0, 7.0]);
    }

    #[test]
    fn symmetric_two_by_two() {
        let sys =
            TridiagonalSystem::new(vec![1.0], vec![2.0, 2.0], vec![1.0], vec![3.0, 3.0]).unwrap();
        let x = sys.solve().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_unknown() {
        let sys = TridiagonalSystem::new(vec![], vec![4.0], vec![], vec![2.0]).unwrap();
        assert_eq!(sys.solve().unwrap(), vec![0.5]);
    }

    #[test]
    fn shape_errors() {
        assert!(TridiagonalSystem::new(vec![], vec![], vec![], vec![]).is_err());
        assert!(TridiagonalSystem::new(vec![1.0], vec![1.0, 1.0], vec![], vec![1.0, 1.0]).is_err());
        assert!(TridiagonalSystem::new(vec![1.0], vec![1.0, 1.0], vec![1.0], vec![1.0]).is_err());
    }

    #[test]
    fn zero_pivot_reports_index() {
        let sys = TridiagonalSystem::new(
            vec![1.0, 1.0],
            vec![1.0, 1.0, 1.0],
            vec![1.0, 1.0],
            vec![1.0; 3],
        )
        .unwrap();
        match sys.solve() {
            Err(Error::PivotFailure { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected pivot failure, got {other:?}"),
        }
        let sys = TridiagonalSystem::new(vec![], vec![0.0], vec![], vec![1.0]).unwrap();
        assert!(matches!(
            sys.solve(),
            Err(Error::PivotFailure { index: 0, .. })
        ));
    }

    #[test]
    fn solve_leaves_input_untouched() {
        let sys = TridiagonalSystem::new(
            vec![-1.0; 3],
            vec![3.0; 4],
            vec![-1.0; 3],
            vec![1.0, 2.0, 3.0, 4.0],
        )
        .unwrap();
        let copy = sys.clone();
        let _ = sys.solve().unwrap();
        assert_eq!(sys, copy);
    }

    fn dominant_system() -> impl Strategy<Value = TridiagonalSystem> {
        (1usize..=32).prop_flat_map(|n| {
            let m = n.saturating_sub(1);
            (
                proptest::collection::vec(-1.0f64..1.0, m),
                proptest::collection::vec(-1.0f64..1.0, m),
                proptest::collection::vec(0.01f64..2.0, n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(-10.0f64..10.0, n),
            )
                .prop_map(move |(lower, upper, margin, neg, rhs)| {
                    let diag = (0..n)
                        .map(|i| {
                            let off = if i > 0 { lower[i - 1].abs() } else { 0.0 }
                                + if i + 1 < n { upper[i].abs() } else { 0.0 };
                            let d = off + margin[i];
                            if neg[i] {
                                -d
                            } else {
                                d
                            }
                        })
                        .collect();
                    TridiagonalSystem {
                        lower: lower.clone(),
                        diag,
                        upper: upper.clone(),
                        rhs,
                    }
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn matches_dense_elimination(sys in dominant_system()) {
            prop_assert!(sys.is_strictly_diagonally_dominant());
            let x = sys.solve().unwrap();
            let y = dense_solve(&sys);
            let diff = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            prop_assert!(diff <= 1e-11, "diff = {diff:e}");
            prop_assert!(residual_ok(&sys, &x));
        }
    }
}
