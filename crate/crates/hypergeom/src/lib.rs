//! Engine for hypergeometric data in three aspects: complex periods and
//! special L-values, finite-field character sums, and p-adic congruences,
//! together with the eta-quotient q-expansion machinery tying them to
//! Hecke eigenform coefficients.
//!
//! The crate is organized around five backends plus a harness:
//!
//! - [`datum`]: exact-rational hypergeometric data and the parameter
//!   families used throughout.
//! - [`charsum`]: multiplicative characters of prime fields via a
//!   primitive root, Gauss/Jacobi sums (exact in `Z[zeta_M]` and complex
//!   with certified error), and the finite-field period/H functions.
//! - [`padic`]: Morita's p-adic Gamma, Teichmueller lifts, truncated
//!   hypergeometric sums with valuation tracking, and congruence checks.
//! - [`qseries`]: formal q-expansions on fractional grids, eta quotients,
//!   the weight-2/weight-3 eta families, and Hecke operators.
//! - [`numeric`]: configurable-precision complex analysis (Gamma/Beta,
//!   AGM, tanh-sinh quadrature, series acceleration, eta L-values).
//! - [`report`], [`cache`], [`suites`]: verification records, the
//!   expansion cache, and the batch suite runners behind the CLI.

pub mod cache;
pub mod charsum;
pub mod datum;
pub mod error;
pub mod numeric;
pub mod padic;
pub mod qseries;
pub mod report;
pub mod suites;

pub use error::{Error, Result};

// re-exported for downstream crates that exchange exact values
pub use num;
