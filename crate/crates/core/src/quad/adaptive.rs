//! Globally adaptive Gauss-Kronrod (G7, K15) quadrature with bisection of
//! the worst interval, in the style of QUADPACK's QAG.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

use super::QuadSpec;

/// Kronrod-15 abscissae on [0, 1] (non-negative half; symmetric rule).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_27,
    0.0,
];

/// Kronrod-15 weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss-7 weights for the odd-indexed abscissae of `XGK` plus the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Estimated error bound actually achieved.
    pub error: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // splittable segments first, then by error
        (self.splittable, self.error)
            .partial_cmp(&(other.splittable, other.error))
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// One G7/K15 panel. Returns (value, error estimate).
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut samples = [(0.0f64, 0.0f64); 7];
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        if !f1.is_finite() || !f2.is_finite() {
            return Err(Error::domain(format!(
                "integrand returned a non-finite value near x = {}",
                if f1.is_finite() { c + x } else { c - x }
            )));
        }
        samples[j] = (f1, f2);
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    if !fc.is_finite() {
        return Err(Error::domain(format!(
            "integrand returned a non-finite value at x = {c}"
        )));
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((samples[j].0 - reskh).abs() + (samples[j].1 - reskh).abs());
    }
    resasc *= h.abs();
    let value = resk * h;
    let raw = ((resk - resg) * h).abs();
    let mut err = raw;
    if resasc != 0.0 && raw != 0.0 {
        err = resasc * (200.0 * raw / resasc).powf(1.5).min(1.0);
    }
    Ok((value, err))
}

fn eval_segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let (value, error) = kronrod15(f, a, b)?;
    let mid = 0.5 * (a + b);
    Ok(Segment {
        a,
        b,
        value,
        error,
        splittable: mid > a && mid < b,
    })
}

/// Adaptive integration over the finite interval [a, b].
fn adaptive_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadSpec) -> Result<Quadrature> {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 15usize;
    heap.push(eval_segment(f, a, b)?);
    let mut subdivisions = 0usize;

    loop {
        let total_value: f64 = heap.iter().map(|s| s.value).sum();
        let total_error: f64 = heap.iter().map(|s| s.error).sum();
        let tol = spec.tolerance_for(total_value);
        if total_error <= tol {
            return Ok(Quadrature {
                value: total_value,
                error: total_error,
                evaluations,
                subdivisions,
            });
        }
        let worst = *heap.peek().expect("heap never empty");
        if subdivisions >= spec.max_subdivisions || !worst.splittable {
            return Err(Error::Accuracy {
                estimate: total_value,
                error_bound: total_error,
                requested: tol,
            });
        }
        heap.pop();
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(eval_segment(f, worst.a, mid)?);
        heap.push(eval_segment(f, mid, worst.b)?);
        evaluations += 30;
        subdivisions += 1;
    }
}

/// Integrate `f` over (a, b), where `b` may be `f64::INFINITY`.
///
/// Endpoint singularities are admissible as long as they are integrable: the
/// Kronrod rule never evaluates interval endpoints. An infinite upper limit
/// is mapped by t -> 1/t onto a finite interval, preserving algebraic tail
/// decay exactly.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    if !a.is_finite() {
        return Err(Error::domain("lower integration limit must be finite"));
    }
    if b.is_finite() {
        if b <= a {
            return Err(Error::domain("need b > a"));
        }
        return adaptive_finite(&f, a, b, spec);
    }
    if b != f64::INFINITY {
        return Err(Error::domain("upper limit must be finite or +infinity"));
    }
    if a < 0.0 {
        return Err(Error::domain(
            "infinite upper limit requires a nonnegative lower limit",
        ));
    }
    // Tail via t -> 1/t. For a = 0 split at 1 so the transform stays finite.
    let split = if a > 0.0 { a } else { 1.0 };
    let tail = |u: f64| {
        let t = 1.0 / u;
        f(t) * t * t
    };
    if a > 0.0 {
        adaptive_finite(&tail, 0.0, 1.0 / split, spec)
    } else {
        let inner = adaptive_finite(&f, 0.0, 1.0, spec)?;
        let outer = adaptive_finite(&tail, 0.0, 1.0, spec)?;
        Ok(Quadrature {
            value: inner.value + outer.value,
            error: inner.error + outer.error,
            evaluations: inner.evaluations + outer.evaluations,
            subdivisions: inner.subdivisions + outer.subdivisions,
        })
    }
}
