//! One-dimensional grids on `[0, ℓ]` and the closed-form equidistributed
//! mappings `x(q)` from the reference interval `[0, 1]`.

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

/// Strictly increasing nodes `x_0 = 0 < x_1 < ... < x_N = ℓ`.
///
/// Step notation: `h_{j+1/2} = x_{j+1} - x_j`, `h_j = (h_{j-1/2} + h_{j+1/2}) / 2`,
/// and the reference step is `h = 1/N`. Jacobian proxies are `J_{j+1/2} = h_{j+1/2} / h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
}

impl Grid {
    /// Validates and takes ownership of `nodes`. The endpoints must equal
    /// `0` and `ell` exactly.
    pub fn from_nodes(nodes: Vec<f64>, ell: f64) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes[0] != 0.0 || *nodes.last().unwrap() != ell {
            return Err(Error::InvalidGrid(format!(
                "endpoints must be 0 and {ell}, got {} and {}",
                nodes[0],
                nodes.last().unwrap()
            )));
        }
        if let Some(j) = nodes.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(format!(
                "non-positive step on interval {j}"
            )));
        }
        Ok(Self { nodes })
    }

    /// `x_j = j ℓ / N`.
    pub fn uniform(ell: f64, n: usize) -> Result<Self> {
        check_n(n)?;
        let mut nodes: Vec<f64> = (0..=n).map(|j| j as f64 * ell / n as f64).collect();
        nodes[n] = ell;
        Self::from_nodes(nodes, ell)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of intervals `N`.
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn ell(&self) -> f64 {
        self.nodes[self.n()]
    }

    /// Reference step `h = 1/N`.
    pub fn h(&self) -> f64 {
        1.0 / self.n() as f64
    }

    /// `h_{j+1/2}` for `j = 0..N-1`.
    pub fn steps(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `h_{j+1/2}`.
    pub fn step(&self, j: usize) -> f64 {
        self.nodes[j + 1] - self.nodes[j]
    }

    /// `h_j` for an interior node `1 <= j <= N-1`.
    pub fn node_step(&self, j: usize) -> f64 {
        0.5 * (self.step(j - 1) + self.step(j))
    }

    /// Interval midpoints `x_{j+1/2}`.
    pub fn midpoints(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// `J_{j+1/2}` for `j = 0..N-1`.
    pub fn half_jacobians(&self) -> Vec<f64> {
        let n = self.n() as f64;
        self.steps().into_iter().map(|s| s * n).collect()
    }

    /// `J_j` at interior node `j`.
    pub fn jacobian(&self, j: usize) -> f64 {
        self.node_step(j) * self.n() as f64
    }

    pub fn h_max(&self) -> f64 {
        self.steps().into_iter().fold(0.0, f64::max)
    }

    pub fn h_min(&self) -> f64 {
        self.steps().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_node_distance(&self, other: &Grid) -> f64 {
        self.nodes
            .iter()
            .zip(&other.nodes)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: n as f64,
            reason: "need at least 2 intervals",
        });
    }
    Ok(())
}

/// Uniform grid for the problem's domain.
pub fn uniform_grid(spec: &ProblemSpec, n: usize) -> Result<Grid> {
    Grid::uniform(spec.ell(), n)
}

/// Family of closed-form mappings produced by equidistributing `(u_x)^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MappingKind {
    Uniform,
    PowerMonitor { beta: f64 },
}

/// A closed-form mapping `x(q)` attached to a problem.
///
/// For `β > 0`: `x(q) = ℓ + ln[q + (1-q) e^{-βλℓ}] / (βλ)`; for `β = 0` it is `qℓ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingSpec {
    pub kind: MappingKind,
    pub spec: ProblemSpec,
}

impl MappingSpec {
    pub fn uniform(spec: ProblemSpec) -> Self {
        Self {
            kind: MappingKind::Uniform,
            spec,
        }
    }

    pub fn power(spec: ProblemSpec, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "must be finite and >= 0",
            });
        }
        Ok(Self {
            kind: MappingKind::PowerMonitor { beta },
            spec,
        })
    }

    /// `βλ`, or `None` for the linear mapping.
    fn rate(&self) -> Option<f64> {
        match self.kind {
            MappingKind::PowerMonitor { beta } if beta > 0.0 => Some(beta * self.spec.lambda()),
            _ => None,
        }
    }

    /// `1 - e^{-βλℓ}`.
    fn span(&self, rate: f64) -> f64 {
        -(-rate * self.spec.ell()).exp_m1()
    }

    /// `g(q) = q + (1-q) e^{-βλℓ}`.
    fn g(&self, rate: f64, q: f64) -> f64 {
        1.0 - (1.0 - q) * self.span(rate)
    }

    pub fn x(&self, q: f64) -> f64 {
        let ell = self.spec.ell();
        match self.rate() {
            None => q * ell,
            Some(rate) => ell + (-(1.0 - q) * self.span(rate)).ln_1p() / rate,
        }
    }

    /// `J(q) = dx/dq`.
    pub fn x_q(&self, q: f64) -> f64 {
        match self.rate() {
            None => self.spec.ell(),
            Some(rate) => self.span(rate) / (rate * self.g(rate, q)),
        }
    }

    /// `d²x/dq²`.
    pub fn x_qq(&self, q: f64) -> f64 {
        match self.rate() {
            None => 0.0,
            Some(rate) => {
                let g = self.g(rate, q);
                let s = self.span(rate);
                -s * s / (rate * g * g)
            }
        }
    }

    /// Jacobian bounds `(J_m, J_M)` over `q ∈ [0, 1]`.
    pub fn jacobian_bounds(&self) -> (f64, f64) {
        match self.rate() {
            None => (self.spec.ell(), self.spec.ell()),
            Some(_) => (self.x_q(1.0), self.x_q(0.0)),
        }
    }
}

/// Nodes `x_j = x(j/N)` with endpoints pinned to `0` and `ℓ`.
pub fn analytic_mapped_grid(map: &MappingSpec, n: usize) -> Result<Grid> {
    check_n(n)?;
    if let Some(rate) = map.rate() {
        if (-rate * map.spec.ell()).exp() == 0.0 {
            log::warn!(
                "e^(-beta*lambda*ell) underflows for beta*lambda*ell = {}",
                rate * map.spec.ell()
            );
        }
    }
    let ell = map.spec.ell();
    let mut nodes: Vec<f64> = (0..=n).map(|j| map.x(j as f64 / n as f64)).collect();
    nodes[0] = 0.0;
    nodes[n] = ell;
    Grid::from_nodes(nodes, ell)
}
