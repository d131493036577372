//! Shared numerical-integration engine: adaptive Gauss-Kronrod quadrature,
//! Gauss-Jacobi rules for the spherical weight, the angular kernels that
//! reduce every n-dimensional integral to one dimension, and the fold
//! regularization of principal-value integrals.

mod adaptive;
pub(crate) mod hemisphere;
mod jacobi;
pub(crate) mod kernel;
mod pv;

pub use adaptive::{integrate_adaptive, Quadrature};
pub use jacobi::gauss_jacobi_nodes;
pub use kernel::{angular_kernel, riesz_angular};
pub use pv::pv_symmetrized;

pub(crate) use jacobi::{jacobi_rule_unit, Rule};
pub(crate) use kernel::{kernel_near_amplitude, sphere_kernel_eps, sphere_kernel_shifted};
pub(crate) use pv::{folded_kernel_integral, ErrCapture};

use crate::error::{Error, Result};

/// Tolerances, node budgets and singularity policy shared by all quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    /// Absolute tolerance (may be 0 if `rel_tol` > 0).
    pub abs_tol: f64,
    /// Relative tolerance (may be 0 if `abs_tol` > 0).
    pub rel_tol: f64,
    /// Subdivision budget of the adaptive engine.
    pub max_subdivisions: usize,
    /// Node count of fixed Gauss-Jacobi rules.
    pub jacobi_nodes: usize,
    /// Fallback half-width of a symmetric excision around a principal-value
    /// singularity, in the scale-invariant variable. The fold regularization
    /// normally makes it unnecessary.
    pub pv_window: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
            jacobi_nodes: 64,
            pv_window: 0.125,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0 && self.abs_tol + self.rel_tol > 0.0) {
            return Err(Error::domain("QuadSpec: need abs_tol + rel_tol > 0"));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::domain("QuadSpec: max_subdivisions must be >= 8"));
        }
        if self.jacobi_nodes < 16 {
            return Err(Error::domain("QuadSpec: jacobi_nodes must be >= 16"));
        }
        if !(self.pv_window > 0.0 && self.pv_window < 0.5) {
            return Err(Error::domain("QuadSpec: pv_window must lie in (0, 1/2)"));
        }
        Ok(())
    }

    /// Tolerance actually requested for a value of the given magnitude.
    pub(crate) fn tolerance_for(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude.abs())
    }

    /// A copy with tolerances tightened by `factor` (used for inner
    /// integrals so nested error budgets compose).
    pub(crate) fn tightened(&self, factor: f64) -> QuadSpec {
        QuadSpec {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}
