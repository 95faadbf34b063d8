//! Truncated summation of convergent series with exact partial sums.

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, QContext};
use crate::tseries::ScalarSeries;

pub const DEFAULT_K_MIN: usize = 8;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Stopping rule for numeric sums.
///
/// Summation stops at the first index `k >= k_min` for which both
/// `|term_k|` and `|term_{k+1}|` are below `epsilon`; both terms are included
/// in the partial sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPolicy {
    pub epsilon: ExactScalar,
    pub k_min: usize,
    pub max_terms: usize,
    pub bit_limit: u64,
}

impl SumPolicy {
    pub fn new(epsilon: ExactScalar) -> Self {
        SumPolicy { epsilon, k_min: DEFAULT_K_MIN, max_terms: DEFAULT_MAX_TERMS, bit_limit: crate::scalar::DEFAULT_BIT_LIMIT }
    }

    pub fn from_bits(bits: u32) -> Self {
        Self::new(ExactScalar::pow2(-(bits as i64)))
    }

    pub fn from_context(ctx: &QContext) -> Self {
        SumPolicy { bit_limit: ctx.bit_limit(), ..Self::new(ctx.epsilon().clone()) }
    }
}

/// Partial sum together with the number of terms used and an estimate of
/// the neglected tail, `|last term| * rho / (1 - rho)` with `rho` the last
/// observed term ratio capped at 9/10.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSum<T> {
    pub value: T,
    pub terms: usize,
    pub tail_bound: ExactScalar,
}

/// Values that can be accumulated by [`sum_until_small`].
pub trait Summand: Clone {
    fn accumulate(&mut self, other: &Self);
    fn magnitude(&self) -> ExactScalar;
    fn check_bits(&self, limit: u64) -> Result<()>;
}

impl Summand for ExactScalar {
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn magnitude(&self) -> ExactScalar {
        self.abs()
    }
    fn check_bits(&self, limit: u64) -> Result<()> {
        ExactScalar::check_bits(self, limit)
    }
}

impl Summand for ScalarSeries {
    fn accumulate(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn magnitude(&self) -> ExactScalar {
        self.max_abs()
    }
    fn check_bits(&self, limit: u64) -> Result<()> {
        ScalarSeries::check_bits(self, limit)
    }
}

/// Sums `term(0) + term(1) + ...` until the stopping rule of `policy` fires.
pub fn sum_until_small<T: Summand>(policy: &SumPolicy, mut term: impl FnMut(usize) -> Result<T>) -> Result<NumericSum<T>> {
    let mut value = term(0)?;
    let mut prev_mag = value.magnitude();
    for k in 1..policy.max_terms {
        let t = term(k)?;
        let mag = t.magnitude();
        value.accumulate(&t);
        value.check_bits(policy.bit_limit)?;
        if k > policy.k_min && mag < policy.epsilon && prev_mag < policy.epsilon {
            let cap = ExactScalar::ratio(9, 10);
            let tail_bound = if mag.is_zero() {
                ExactScalar::zero()
            } else {
                let rho = if prev_mag.is_zero() { cap.clone() } else { (&mag / &prev_mag).min(cap.clone()) };
                let tail = &mag * &rho / (ExactScalar::one() - &rho);
                round_up(&tail)
            };
            return Ok(NumericSum { value, terms: k + 1, tail_bound });
        }
        prev_mag = mag;
    }
    Err(Error::NoConvergence(policy.max_terms))
}

/// Smallest power of two that is at least `x` (for `x > 0`), keeping the
/// reported bound compact.
fn round_up(x: &ExactScalar) -> ExactScalar {
    let mut e = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let mut p = ExactScalar::pow2(e);
    while p < *x {
        e += 1;
        p = ExactScalar::pow2(e);
    }
    while e > i64::MIN + 1 && ExactScalar::pow2(e - 1) >= *x {
        e -= 1;
        p = ExactScalar::pow2(e);
    }
    p
}
