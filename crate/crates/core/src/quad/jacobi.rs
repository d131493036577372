//! Gauss-Jacobi rules by the Golub-Welsch algorithm (symmetric tridiagonal
//! eigenproblem of the three-term recurrence).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::special::beta_fn;

/// A fixed quadrature rule: nodes and matching weights.
#[derive(Debug, Clone)]
pub(crate) struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

static RULE_CACHE: Lazy<Mutex<HashMap<(u64, u64, usize), Arc<Rule>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Recurrence coefficients of the Jacobi weight (1-x)^a (1+x)^b.
fn jacobi_recurrence(a: f64, b: f64, k: usize) -> (f64, f64) {
    // returns (diag_k, offdiag_{k}^2) with offdiag indexed from k = 1
    let kf = k as f64;
    let denom = 2.0 * kf + a + b;
    let diag = if k == 0 {
        (b - a) / (a + b + 2.0)
    } else {
        (b * b - a * a) / (denom * (denom + 2.0))
    };
    let off2 = if k == 0 {
        f64::NAN // unused
    } else if k == 1 {
        // the (1 + a + b) factor cancels against the generic denominator;
        // written cancelled so a + b = -1 stays finite
        4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
    } else {
        4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
            / (denom * denom * (denom + 1.0) * (denom - 1.0))
    };
    (diag, off2)
}

fn build_rule(a: f64, b: f64, m: usize) -> Rule {
    let mut mat = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let (diag, _) = jacobi_recurrence(a, b, k);
        mat[(k, k)] = diag;
        if k > 0 {
            let (_, off2) = jacobi_recurrence(a, b, k);
            let off = off2.sqrt();
            mat[(k, k - 1)] = off;
            mat[(k - 1, k)] = off;
        }
    }
    let mu0 = 2.0f64.powf(a + b + 1.0) * beta_fn(a + 1.0, b + 1.0);
    let eig = mat.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    if a == b {
        // enforce the exact symmetry of the even weight
        let mlen = pairs.len();
        for i in 0..mlen / 2 {
            let j = mlen - 1 - i;
            let x = 0.5 * (pairs[j].0 - pairs[i].0);
            let w = 0.5 * (pairs[i].1 + pairs[j].1);
            pairs[i] = (-x, w);
            pairs[j] = (x, w);
        }
        if mlen % 2 == 1 {
            pairs[mlen / 2].0 = 0.0;
        }
    }

    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Cached m-point rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
pub(crate) fn jacobi_rule(alpha: f64, beta: f64, m: usize) -> Result<Arc<Rule>> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::domain(format!(
            "Jacobi weight exponent must exceed -1, got alpha = {alpha}"
        )));
    }
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "Jacobi weight exponent must exceed -1, got beta = {beta}"
        )));
    }
    if m == 0 {
        return Err(Error::domain("node count must be at least 1"));
    }
    let key = (alpha.to_bits(), beta.to_bits(), m);
    if let Some(rule) = RULE_CACHE.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_rule(alpha, beta, m));
    RULE_CACHE.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Cached m-point rule for ∫_0^1 v^{exponent} g(v) dv (weight singular or
/// degenerate at v = 0; plain Gauss-Legendre mapped to [0,1] when the
/// exponent is 0).
pub(crate) fn jacobi_rule_unit(exponent: f64, m: usize) -> Result<Arc<Rule>> {
    let base = jacobi_rule(0.0, exponent, m)?;
    let key = (f64::to_bits(-4.0 - exponent), exponent.to_bits(), m);
    if let Some(rule) = RULE_CACHE.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let scale = 2.0f64.powf(-exponent - 1.0);
    let rule = Arc::new(Rule {
        nodes: base.nodes.iter().map(|x| 0.5 * (1.0 + x)).collect(),
        weights: base.weights.iter().map(|w| w * scale).collect(),
    });
    RULE_CACHE.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// The m-point Gauss-Jacobi rule for the symmetric weight (1-μ²)^alpha on
/// [-1, 1]: exact for polynomials of degree ≤ 2m - 1.
pub fn gauss_jacobi_nodes(alpha: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = jacobi_rule(alpha, alpha, m)?;
    Ok((rule.nodes.clone(), rule.weights.clone()))
}
