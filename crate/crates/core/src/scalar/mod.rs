//! Exact rational scalars and the elementary q-calculus built on them.

mod context;
mod exact;
mod pochhammer;

pub use context::{Mode, QContext, DEFAULT_BIT_LIMIT, DEFAULT_EPSILON_BITS};
pub use exact::{cmp_abs, ExactScalar};
pub use pochhammer::{
    binom2, bracket, qbinom, qbinom_row, qfactorials, qpoch, qpoch_inf, qpoch_inf_limited, qpoch_multi, qpoch_shift, InfiniteProduct,
};
