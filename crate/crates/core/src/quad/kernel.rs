//! The angular kernel Ψ_q(t) = ∫_{S^{n-1}} (t² + 1 - 2t⟨θ,ω⟩)^{-q/2} dω and
//! its relatives. Every n-dimensional kernel integral in the crate reduces
//! to this one-dimensional family via the Gegenbauer weight (1-μ²)^{(n-3)/2}.

use crate::constants::sphere_area;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::special::beta_fn;

use super::adaptive::integrate_adaptive;
use super::jacobi::jacobi_rule;
use super::QuadSpec;

/// Relative squared distance of the kernel singularity beyond μ = 1; above
/// this the fixed Gauss-Jacobi rule converges spectrally (Bernstein
/// parameter ≥ 1.96, error below 1e-30 at 64 nodes).
const NEAR_THRESHOLD: f64 = 0.25;

/// Ψ_q(n, τ) for τ > 0, τ ≠ 1. `q` is the kernel exponent: n + 2s for the
/// fractional-Laplacian kernel, n - 2s for the Riesz kernel.
pub(crate) fn sphere_kernel(n: u32, q: f64, tau: f64, spec: &QuadSpec) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::domain(format!("sphere kernel needs tau > 0, got {tau}")));
    }
    sphere_kernel_eps(n, q, tau - 1.0, spec)
}

/// Same as [`sphere_kernel`] with the offset ε = τ - 1 supplied directly, so
/// callers close to the singularity avoid forming the cancelled difference.
pub(crate) fn sphere_kernel_eps(n: u32, q: f64, eps: f64, spec: &QuadSpec) -> Result<f64> {
    if eps == 0.0 {
        return Err(Error::Singularity(
            "angular kernel diverges at t = 1; callers must excise".into(),
        ));
    }
    if !(eps > -1.0) {
        return Err(Error::domain(format!("sphere kernel needs tau > 0, got eps {eps}")));
    }
    let tau = 1.0 + eps;
    if n == 1 {
        return Ok(eps.abs().powf(-q) + (2.0 + eps).powf(-q));
    }
    let surface = sphere_area(n - 1).expect("n >= 2");
    let xi = eps * eps / (2.0 * tau);
    if xi >= NEAR_THRESHOLD {
        let beta = (n as f64 - 3.0) / 2.0;
        let rule = jacobi_rule(beta, beta, spec.jacobi_nodes)?;
        let val = rule.integrate(|mu| (eps * eps + 2.0 * tau * (1.0 - mu)).powf(-q / 2.0));
        return Ok(surface * val);
    }
    // Near regime: t² + 1 - 2τμ = ε² + 2τv with v = 1 - μ; split at v = 1 and
    // flatten the endpoint weights v^β, (2-v)^β by exact power substitutions.
    let beta = (n as f64 - 3.0) / 2.0;
    let p = beta + 1.0; // = (n-1)/2 > 0
    let d = eps * eps;
    let inner = spec.tightened(0.3);
    let gamma = q / 2.0;
    // v in (0,1): v = w^{1/p}
    let i1 = integrate_adaptive(
        |w: f64| {
            let v = w.powf(1.0 / p);
            (2.0 - v).powf(beta) * (d + 2.0 * tau * v).powf(-gamma)
        },
        0.0,
        1.0,
        &inner,
    )?
    .value;
    // v in (1,2): reflect v -> 2 - v, then flatten at the new origin
    let i2 = integrate_adaptive(
        |z: f64| {
            let v = z.powf(1.0 / p);
            (2.0 - v).powf(beta) * (d + 2.0 * tau * (2.0 - v)).powf(-gamma)
        },
        0.0,
        1.0,
        &inner,
    )?
    .value;
    Ok(surface * (i1 + i2) / p)
}

/// Leading amplitude K of Ψ_q(1 + ε) = K |ε|^{n-1-q} (1 + O(ε)) as ε → 0.
/// Requires q > n - 1 (otherwise the kernel is not singular at τ = 1).
pub(crate) fn kernel_near_amplitude(n: u32, q: f64) -> f64 {
    debug_assert!(q > n as f64 - 1.0);
    if n == 1 {
        return 1.0;
    }
    let surface = sphere_area(n - 1).expect("n >= 2");
    let half = (n as f64 - 1.0) / 2.0;
    surface * beta_fn(half, (q - n as f64 + 1.0) / 2.0) / 2.0
}

/// ∫_{S^{n-1}} (c0 - c1 μ)^{-q/2} dω with c0 > c1 ≥ 0, reduced to Ψ_q.
/// `c0_minus_c1` is taken separately so callers near the singularity can
/// supply it cancellation-free.
pub(crate) fn sphere_kernel_shifted(
    n: u32,
    q: f64,
    c0_minus_c1: f64,
    c1: f64,
    spec: &QuadSpec,
) -> Result<f64> {
    debug_assert!(c0_minus_c1 >= 0.0 && c1 >= 0.0);
    let c0 = c0_minus_c1 + c1;
    if c1 <= c0 * 1e-14 {
        // kernel constant over the sphere
        let surface = if n == 1 { 2.0 } else { sphere_area(n).expect("n >= 1") };
        return Ok(surface * c0.powf(-q / 2.0));
    }
    // write c0 - c1 μ = (c1 / 2τ)(τ² + 1 - 2τμ) with τ² + 1 = 2τ c0/c1
    let xi_minus_1 = c0_minus_c1 / c1;
    let eps = xi_minus_1 + (xi_minus_1 * (xi_minus_1 + 2.0)).sqrt(); // τ - 1
    let tau = 1.0 + eps;
    let prefactor = (c1 / (2.0 * tau)).powf(-q / 2.0);
    Ok(prefactor * sphere_kernel_eps(n, q, eps, spec)?)
}

/// Ψ_{n,s}(t): the angular kernel with the fractional-Laplacian exponent
/// q = n + 2s. Diverges like |t-1|^{-1-2s} at t = 1.
pub fn angular_kernel(p: Params, t: f64, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if !(t > 0.0) {
        return Err(Error::domain(format!("angular_kernel needs t > 0, got {t}")));
    }
    if t == 1.0 {
        return Err(Error::Singularity(
            "angular kernel diverges at t = 1; callers must excise".into(),
        ));
    }
    sphere_kernel(p.n(), p.nf() + 2.0 * p.s(), t, spec)
}

/// ∫_{S^{n-1}} |a e₁ - b ω|^{2s-n} dω = b^{2s-n} Ψ_{n-2s}(a/b).
pub fn riesz_angular(p: Params, a: f64, b: f64, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain("riesz_angular needs a, b > 0"));
    }
    if a == b {
        return Err(Error::Singularity(
            "riesz kernel focal point a = b; callers must excise".into(),
        ));
    }
    let q = p.nf() - 2.0 * p.s();
    Ok(b.powf(2.0 * p.s() - p.nf()) * sphere_kernel(p.n(), q, a / b, spec)?)
}
