//! Stability classification of the singular solution and the boundary root
//! in s for each dimension.

use crate::constants::{log_hardy_constant, log_lambda_ns};
use crate::error::{Error, Result};
use crate::params::Params;

/// Verdict of the stability comparison A_{n,s} vs Λ_{n,s}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SingularStable,
    SingularUnstable,
    Boundary,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SingularStable => "stable",
            Verdict::SingularUnstable => "unstable",
            Verdict::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StabilityVerdict {
    /// ln A_{n,s} - ln Λ_{n,s}
    pub margin: f64,
    pub verdict: Verdict,
}

/// Outcome of the boundary scan in s at fixed n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryOutcome {
    AllUnstable,
    AllStable,
    Root(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct BoundaryResult {
    pub n: u32,
    pub outcome: BoundaryOutcome,
}

/// One cell of the phase diagram.
#[derive(Debug, Clone, Copy)]
pub struct PhaseCell {
    pub n: u32,
    pub s: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

/// ln A_{n,s} - ln Λ_{n,s}: positive exactly when the instability condition
/// holds. Compared on logarithms for robustness near the boundary root.
pub fn stability_margin(p: Params) -> f64 {
    log_lambda_ns(p) - log_hardy_constant(p)
}

/// Maps the margin through the tie band. With `tie_tol = 0` an exact zero
/// classifies as stable (the comparison in the source inequality is ≤).
pub fn classify(p: Params, tie_tol: f64) -> Result<StabilityVerdict> {
    if !(tie_tol >= 0.0) {
        return Err(Error::domain("tie_tol must be nonnegative"));
    }
    let margin = stability_margin(p);
    let verdict = if margin > tie_tol {
        Verdict::SingularUnstable
    } else if margin >= -tie_tol && tie_tol > 0.0 {
        Verdict::Boundary
    } else {
        Verdict::SingularStable
    };
    Ok(StabilityVerdict { margin, verdict })
}

const SCAN_POINTS: usize = 512;
const SCAN_EDGE: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;

/// Scans the margin over s ∈ (ε, min(1, n/2) - ε) and brackets the single
/// sign change, if any, to |s_hi - s_lo| ≤ root_tol.
pub fn stability_boundary(n: u32, root_tol: f64) -> Result<BoundaryResult> {
    if n < 3 {
        return Err(Error::domain("stability_boundary requires n >= 3"));
    }
    if !(root_tol > 0.0 && root_tol <= 1e-3) {
        return Err(Error::domain("root_tol must lie in (0, 1e-3]"));
    }
    let s_hi = 1.0f64.min(n as f64 / 2.0) - SCAN_EDGE;
    let s_lo = SCAN_EDGE;
    let margin_at = |s: f64| stability_margin(Params::new(n, s).expect("scan stays in domain"));

    let mut brackets = Vec::new();
    let mut prev_s = s_lo;
    let mut prev_m = margin_at(s_lo);
    for i in 1..SCAN_POINTS {
        let s = s_lo + (s_hi - s_lo) * (i as f64) / ((SCAN_POINTS - 1) as f64);
        let m = margin_at(s);
        if prev_m == 0.0 || prev_m.signum() != m.signum() {
            brackets.push((prev_s, s));
        }
        prev_s = s;
        prev_m = m;
    }

    match brackets.len() {
        0 => {
            let outcome = if margin_at(0.5 * (s_lo + s_hi)) > 0.0 {
                BoundaryOutcome::AllUnstable
            } else {
                BoundaryOutcome::AllStable
            };
            Ok(BoundaryResult { n, outcome })
        }
        1 => {
            let (mut lo, mut hi) = brackets[0];
            let mut m_lo = margin_at(lo);
            for _ in 0..MAX_BISECTIONS {
                if hi - lo <= root_tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let m_mid = margin_at(mid);
                if m_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if m_lo.signum() == m_mid.signum() {
                    lo = mid;
                    m_lo = m_mid;
                } else {
                    hi = mid;
                }
            }
            Ok(BoundaryResult {
                n,
                outcome: BoundaryOutcome::Root(0.5 * (lo + hi)),
            })
        }
        k => Err(Error::Structure(format!(
            "margin changed sign {k} times in s for n = {n}; expected at most one"
        ))),
    }
}

/// Row-major table over the grid n ∈ [n_lo, n_hi], s_j = j/(s_steps+1),
/// skipping cells with n ≤ 2s.
pub fn phase_diagram(n_lo: u32, n_hi: u32, s_steps: usize) -> Result<Vec<PhaseCell>> {
    if !(3 <= n_lo && n_lo <= n_hi && n_hi <= 60) {
        return Err(Error::domain("need 3 <= n_lo <= n_hi <= 60"));
    }
    if s_steps < 2 {
        return Err(Error::domain("s_steps must be at least 2"));
    }
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        for j in 1..=s_steps {
            let s = j as f64 / (s_steps as f64 + 1.0);
            let Ok(p) = Params::new(n, s) else { continue };
            let v = classify(p, 0.0)?;
            rows.push(PhaseCell {
                n,
                s,
                margin: v.margin,
                verdict: v.verdict,
            });
        }
    }
    Ok(rows)
}
