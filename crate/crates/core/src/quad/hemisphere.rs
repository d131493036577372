//! Graded composite quadrature for weighted hemisphere integrals.
//!
//! Energy integrands live on ∫_0^1 u^α F(u) du with u = 1 - cos ϑ, where the
//! exponent α comes from the degenerate weight t^{1-2s} (α = -s) possibly
//! combined with the t^{2s} boundary expansion of the extension (α = s - 1
//! for the squared angular gradient). The mesh is dyadic toward u = 0 with
//! Gauss-Legendre on interior cells; the endpoint cell absorbs the weight
//! into a one-sided Jacobi rule so the singularity is never sampled.

use crate::error::Result;

use super::jacobi::jacobi_rule_unit;

/// Number of dyadic levels toward the endpoint; 2^-48 ≈ 3.6e-15 leaves the
/// matched endpoint cell a negligible Hölder variation.
const LEVELS: usize = 48;

/// ∫_0^1 u^alpha F(u) du for alpha > -1, F smooth on (0, 1] and at worst
/// Hölder at u = 0.
pub(crate) fn graded_unit_integral<F: Fn(f64) -> f64>(
    alpha: f64,
    order: usize,
    f: F,
) -> Result<f64> {
    let order = order.clamp(8, 64);
    let gl = jacobi_rule_unit(0.0, order)?;
    let endpoint = jacobi_rule_unit(alpha, order)?;

    let mut total = 0.0;
    let mut hi = 1.0f64;
    for _ in 0..LEVELS {
        let lo = hi * 0.5;
        let width = hi - lo;
        total += width
            * gl.integrate(|v| {
                let u = lo + width * v;
                u.powf(alpha) * f(u)
            });
        hi = lo;
    }
    // endpoint cell [0, hi] with the weight in the rule
    let delta = hi;
    total += delta.powf(alpha + 1.0) * endpoint.integrate(|v| f(delta * v));
    Ok(total)
}
