//! The model boundary-layer problem `-u'' + λ²u = 0` on `[0, ℓ]` with
//! `u(0) = e^{-λℓ}`, `u(ℓ) = 1`, and its closed-form solution
//! `u(x) = e^{λ(x-ℓ)}`.

use crate::error::{Error, Result};

/// Highest derivative order the exact-solution oracle serves.
pub const MAX_DERIVATIVE_ORDER: u32 = 5;

/// Parameters of the boundary-layer problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    lambda: f64,
    ell: f64,
    left_bc: f64,
    right_bc: f64,
}

impl ProblemSpec {
    pub fn new(lambda: f64, ell: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be finite and > 0",
            });
        }
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::InvalidParameter {
                name: "ell",
                value: ell,
                reason: "must be finite and > 0",
            });
        }
        Ok(Self {
            lambda,
            ell,
            left_bc: (-lambda * ell).exp(),
            right_bc: 1.0,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn left_bc(&self) -> f64 {
        self.left_bc
    }

    pub fn right_bc(&self) -> f64 {
        self.right_bc
    }

    /// Small parameter of the singularly perturbed form `-ε u'' + u = 0`.
    pub fn epsilon(&self) -> f64 {
        1.0 / (self.lambda * self.lambda)
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if (0.0..=self.ell).contains(&x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x, ell: self.ell })
        }
    }

    /// `u(x) = e^{λ(x-ℓ)}`.
    pub fn exact_solution(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        if x == self.ell {
            return Ok(self.right_bc);
        }
        if x == 0.0 {
            return Ok(self.left_bc);
        }
        Ok((self.lambda * (x - self.ell)).exp())
    }

    /// `d^k u / dx^k = λ^k e^{λ(x-ℓ)}` for `1 <= k <= 5`.
    pub fn exact_derivative(&self, x: f64, order: u32) -> Result<f64> {
        if order == 0 || order > MAX_DERIVATIVE_ORDER {
            return Err(Error::InvalidParameter {
                name: "order",
                value: order as f64,
                reason: "derivative order must lie in 1..=5",
            });
        }
        Ok(self.lambda.powi(order as i32) * self.exact_solution(x)?)
    }
}
