//! Verification lab for the classical Kantorovich operators
//! `K_n(f;x) = (n+1) Σ_k p_{n,k}(x) ∫_{k/(n+1)}^{(k+1)/(n+1)} f(t) dt` on `[0,1]`.
//!
//! The crate evaluates `K_n f` and its derivatives in floating point and in
//! exact rational arithmetic, computes moduli of smoothness and least concave
//! majorants, and turns the quantitative inequalities satisfied by these
//! operators (pointwise and uniform error bounds, Voronovskaya-type residuals,
//! Chebyshev-Grüss non-multiplicativity bounds, Grüss-Voronovskaya rate
//! classes) into executable checks over a built-in function corpus.
//!
//! The `klab` binary exposes the individual operations and a suite runner
//! that emits CSV/JSON reports.

pub mod bernstein;
pub mod bounds;
pub mod corpus;
pub mod error;
pub mod kantorovich;
pub mod moduli;
pub mod quadrature;
pub mod rat;
pub mod report;
pub mod suite;

pub use error::{Error, Result};

/// Default number of equispaced evaluation points for sup-norm estimates.
/// Power-of-two-plus-one so refined grids nest under doubling.
pub const DEFAULT_GRID: usize = 257;

/// Default Gauss-Legendre order per subinterval; integrates polynomials of
/// degree 15 exactly.
pub const DEFAULT_QUADRATURE_ORDER: usize = 8;

/// Absolute tolerance for `lhs <= rhs` bound checks in float mode.
pub const BOUND_TOL: f64 = 1e-10;
