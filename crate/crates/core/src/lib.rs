//! Algebraic-geometry evaluation codes on surfaces over small finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: arithmetic in `F_q` (`q <= 2^16`), polynomials and factorization.
//! * [`linalg`]: dense matrices over `F_q` and bit-packed matrices over `F_2`.
//! * [`surface`]: catalog surfaces as Néron–Severi lattices with intersection forms.
//! * [`codes`]: generator matrices `C_L(X, P, G)` and exhaustive minimum distance.
//! * [`bounds`]: minimum-distance and dimension bounds, comparison reports, lifting.
//! * [`tower`]: Frobenius modules on Jacobian 2-torsion and the Golod–Shafarevich check.
//! * [`asymptotic`]: exact rational maps from surface invariants to code parameters.

pub mod asymptotic;
pub mod bounds;
pub mod codes;
pub mod error;
pub mod field;
pub mod linalg;
pub mod surface;
pub mod tower;

pub use error::{Error, ErrorClass, Result};
pub use field::{FieldElement, FieldSpec, Polynomial};
