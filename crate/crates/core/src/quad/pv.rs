//! Fold regularization of principal-value integrals.
//!
//! Using the reflection identity Ψ(1/t) = t^{n+2s} Ψ(t), every P.V. integral
//! ∫₀^∞ of this crate folds onto (1, ∞) with an absolutely integrable
//! endpoint of local order |t-1|^{1-2s}. For s close to 1 that endpoint mass
//! concentrates below the resolution of f64 subtraction around t = 1, so the
//! kernel-aware variant integrates in the offset variable ε = t - 1 on
//! geometric panels and closes with the exact leading asymptote of the
//! kernel.

use std::cell::RefCell;

use crate::error::{Error, Result};

use super::adaptive::integrate_adaptive;
use super::kernel::{kernel_near_amplitude, sphere_kernel_eps};
use super::QuadSpec;

/// Captures an error raised inside an integrand closure so it can be
/// re-thrown after the engine returns.
pub(crate) struct ErrCapture(RefCell<Option<Error>>);

impl ErrCapture {
    pub fn new() -> Self {
        ErrCapture(RefCell::new(None))
    }

    pub fn wrap(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    pub fn rethrow<T>(&self, r: Result<T>) -> Result<T> {
        if let Some(e) = self.0.borrow_mut().take() {
            return Err(e);
        }
        r
    }
}

/// Generic fold: maps ∫₀^∞ f(t) dt with the cancellation structure of the
/// paper's kernels around t = 1 to ∫₁^∞ [f(t) + f(1/t)/t²] dt and integrates
/// adaptively with the singular endpoint declared.
pub fn pv_symmetrized<F: Fn(f64) -> f64>(f: F, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    let folded = |t: f64| f(t) + f(1.0 / t) / (t * t);
    Ok(integrate_adaptive(folded, 1.0, f64::INFINITY, spec)?.value)
}

/// ∫₁^∞ Ψ_q(t) g(t) dt where `g_eps(ε) = g(1 + ε)` is supplied in a form
/// stable for ε → 0 and vanishes quadratically there (the folded structure
/// of all P.V. integrands in this crate).
pub(crate) fn folded_kernel_integral<G: Fn(f64) -> f64>(
    n: u32,
    q: f64,
    g_eps: G,
    spec: &QuadSpec,
) -> Result<f64> {
    spec.validate()?;
    const SPLIT: f64 = 0.5;
    const EPS_MIN: f64 = 1e-9;

    let cap = ErrCapture::new();
    // regular zone t ∈ [1 + SPLIT, ∞)
    let far = cap.rethrow(integrate_adaptive(
        |t| cap.wrap(sphere_kernel_eps(n, q, t - 1.0, spec)) * g_eps(t - 1.0),
        1.0 + SPLIT,
        f64::INFINITY,
        spec,
    ))?;

    // geometric panels in ε = t - 1 down to EPS_MIN
    let mut value = far.value;
    let mut hi = SPLIT;
    while hi > EPS_MIN {
        let lo = (hi * 0.5).max(EPS_MIN);
        let panel = cap.rethrow(integrate_adaptive(
            |e| cap.wrap(sphere_kernel_eps(n, q, e, spec)) * g_eps(e),
            lo,
            hi,
            spec,
        ))?;
        value += panel.value;
        hi = lo;
    }

    // analytic tail below EPS_MIN from Ψ_q(1+ε) = K ε^{n-1-q} (1 + O(ε)) and
    // g(1+ε) = g₂ ε² (1 + O(ε))
    let g2 = g_eps(1e-6) / 1e-12;
    let k = kernel_near_amplitude(n, q);
    let tail_exp = n as f64 + 2.0 - q;
    debug_assert!(tail_exp > 0.0);
    value += k * g2 * EPS_MIN.powf(tail_exp) / tail_exp;

    Ok(value)
}
