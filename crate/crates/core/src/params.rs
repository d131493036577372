//! The `(n, s)` parameter pair carried by every dimensional constant.

use crate::error::{Error, Result};

/// Space dimension `n` and fractional order `s` with the domain constraints
/// `n ≥ 1`, `0 < s < 1`, `n > 2s`. Construction validates the invariants, so
/// a `Params` value is always usable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    n: u32,
    s: f64,
}

impl Params {
    pub fn new(n: u32, s: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("n must satisfy n >= 1"));
        }
        if !s.is_finite() || s <= 0.0 || s >= 1.0 {
            return Err(Error::domain(format!("s must lie in (0,1), got {s}")));
        }
        if (n as f64) <= 2.0 * s {
            return Err(Error::domain(format!(
                "need n > 2s, got n = {n}, 2s = {}",
                2.0 * s
            )));
        }
        Ok(Params { n, s })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension as a float, for formula assembly.
    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// The homogeneity exponent `(n - 2s)/2` of the Hardy test function.
    pub fn half_gap(&self) -> f64 {
        (self.nf() - 2.0 * self.s) / 2.0
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n = {}, s = {})", self.n, self.s)
    }
}
