//! Test-only oracles, independent of the implementation paths they check.

/// ln Γ(x) by Spouge's approximation (a = 20). A different algorithm from
/// the library's Stirling-recurrence route; good to ~1e-13 relative.
pub fn spouge_log_gamma(x: f64) -> f64 {
    const A: usize = 20;
    let z = x - 1.0;
    let mut acc = (2.0 * std::f64::consts::PI).sqrt();
    let mut fact = 1.0f64;
    for k in 1..A {
        let kf = k as f64;
        if k > 1 {
            fact *= -(kf - 1.0);
        }
        let c = (A as f64 - kf).powf(kf - 0.5) * (A as f64 - kf).exp() / fact;
        acc += c / (z + kf);
    }
    (z + 0.5) * (z + A as f64).ln() - (z + A as f64) + acc.ln()
}

/// B(a, b) from the Spouge oracle.
pub fn spouge_beta(a: f64, b: f64) -> f64 {
    (spouge_log_gamma(a) + spouge_log_gamma(b) - spouge_log_gamma(a + b)).exp()
}

/// Composite-Simpson integration on [a, b]; brute-force oracle quality.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels * 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
