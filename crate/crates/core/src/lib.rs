//! Exact q-series toolkit.
//!
//! Scalars are arbitrary-precision rationals throughout. Polynomial families
//! are evaluated at rational points, generating functions are compared as
//! truncated power series, and convergent infinite sums are truncated by an
//! explicit threshold rule rather than rounded.

pub mod error;
pub mod hyper;
pub mod polyfam;
pub mod qdiff;
pub mod scalar;
pub mod tseries;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, Mode, QContext};
