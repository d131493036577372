//! Internal special-function kernels: log-Gamma on the positive axis and
//! the regularized incomplete beta function.

/// ln(2π)/2
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_74;

/// Stirling-series coefficients `B_{2k} / (2k (2k-1))` for k = 1..=7.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// ln Γ(x) for x > 0 by upward recurrence into the Stirling regime.
///
/// The asymptotic series at x ≥ 10 is accurate to ~1e-16 relative; the
/// recurrence shift adds a few ulp per factor, keeping the total relative
/// error well below 1e-13 on [1e-3, 300].
pub(crate) fn lgamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0, "lgamma_pos requires x > 0, got {x}");
    let mut shift = 0.0;
    let mut z = x;
    while z < 10.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series - shift
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b) for a, b > 0.
pub(crate) fn beta_fn(a: f64, b: f64) -> f64 {
    (lgamma_pos(a) + lgamma_pos(b) - lgamma_pos(a + b)).exp()
}

/// Continued fraction for the incomplete beta function (Lentz's method).
/// Converges for x below the switch point (a+1)/(a+b+2), and acceptably a
/// little beyond it.
fn betacf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 400;
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        // even step
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        // odd step
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Scaled lower incomplete beta: `B_x(a, b) / x^a = ∫_0^x u^{a-1}(1-u)^{b-1}du / x^a`,
/// computed without forming `x^a` (stable for x → 0). Requires x below or
/// near the continued-fraction switch point.
pub(crate) fn beta_inc_scaled(a: f64, b: f64, x: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&x));
    if x == 0.0 {
        return 1.0 / a;
    }
    (1.0 - x).powf(b) * betacf(a, b, x) / a
}

/// Lower incomplete beta `B_x(a, b)`, valid on all of x ∈ [0, 1] via the
/// complement identity past the switch point.
pub(crate) fn beta_inc(a: f64, b: f64, x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return beta_fn(a, b);
    }
    let switch = (a + 1.0) / (a + b + 2.0);
    if x <= switch {
        x.powf(a) * beta_inc_scaled(a, b, x)
    } else {
        beta_fn(a, b) - (1.0 - x).powf(b) * beta_inc_scaled(b, a, 1.0 - x)
    }
}
