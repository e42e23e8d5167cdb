//! Numerical laboratory for a structurally damped wave equation driven by a
//! weakly singular memory term.
//!
//! The crate bundles five cooperating pieces:
//!
//! * [`frac_time`] — Riemann–Liouville fractional integrals/derivatives on a
//!   finite horizon, the power-law cut-off weight and its closed-form
//!   fractional derivatives, and quadrature certification of the calculus
//!   identities they satisfy.
//! * [`frac_laplacian`] — a radial C² cut-off profile, its gradient and
//!   Laplacian in closed form, singular-integral and Fourier-multiplier
//!   evaluations of the fractional Laplacian, and the scaling laws relating
//!   them.
//! * [`exponents`] — the critical exponent of the model and the classifier
//!   that sorts parameter tuples into blow-up regimes.
//! * [`solver`] — a pseudo-spectral simulator on a periodic box with exact
//!   per-mode linear propagation, product-integration memory quadrature and
//!   blow-up detection.
//! * [`certificate`] — evaluators for the weighted space-time functionals
//!   and inequalities that drive the blow-up argument at desk scale.
//!
//! [`scenario`] wires everything into reproducible runs (reports, CSV
//! tables) behind the `fracwave` command line interface. Each major
//! capability also has a runnable demo under `examples/`.

pub mod certificate;
pub mod error;
pub(crate) mod quadrature;
pub mod exponents;
pub mod frac_laplacian;
pub mod frac_time;
pub mod scenario;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
