//! Numerical verification laboratory for the fractional Gelfand-Liouville
//! equation `(-Δ)^s u = e^u` on `R^n`.
//!
//! The crate evaluates every closed-form Gamma constant attached to the
//! equation, classifies stability of the explicit singular solution
//! `u_{n,s} = -2s log|x| + log λ_{n,s}`, locates the stability boundary in
//! `s` for each dimension, and re-derives the key identities (singular
//! solution, Hardy constant, monotonicity energy, Riesz representation)
//! by independent principal-value quadrature.

pub mod constants;
pub mod energy;
pub mod error;
pub mod extension;
pub mod fraclap;
pub mod params;
pub mod quad;
pub mod representation;
pub mod stability;

pub(crate) mod special;

pub use error::{Error, Result};
pub use params::Params;
pub use quad::QuadSpec;
