//! Exact coefficients of the Dyson product
//! `F_n(x; a) = ∏_{i<j} (1 - x_i/x_j)^{a_j} (1 - x_j/x_i)^{a_i}` and its
//! q-analogue, by three independent routes:
//!
//! * [`laurent`]: direct sparse expansion (full, or pruned to one monomial);
//! * [`closedform`]: product formulas for the constant term and the
//!   `x_r/x_s`, `x_r^2/(x_s x_t)`, `x_r x_s/(x_t x_u)` coefficients;
//! * [`goodrec`]: Good's interpolation recurrence with boundary reduction.
//!
//! [`qdixon`] holds the three-variable single-sum formula and the perturbed
//! q-Dixon identities.

pub mod closedform;
pub mod error;
pub mod goodrec;
pub mod laurent;
pub mod qdixon;
pub mod ring;

pub use error::{Error, Result};
pub use laurent::{AVec, ExpVec, LaurentPoly};
pub use ring::{QPoly, QProductForm};
