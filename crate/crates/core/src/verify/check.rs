//! Side-by-side comparison of identity sides.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::scalar::{ExactScalar, Mode};

/// Numeric pass threshold, `2^-40`.
pub fn numeric_tolerance() -> ExactScalar {
    ExactScalar::pow2(-40)
}

/// Significant bits kept when reporting a numeric deviation.
const REPORT_BITS: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub pass: bool,
    pub deviation: ExactScalar,
    /// Index of the component with the largest deviation.
    pub worst: Option<usize>,
}

/// Formal comparison: exact equality of every component. The deviation is
/// the largest `|l - r|`.
pub fn check_formal(lhs: &[ExactScalar], rhs: &[ExactScalar]) -> Comparison {
    let (deviation, worst) = max_deviation(lhs, rhs, |l, r| (l - r).abs());
    let pass = lhs.len() == rhs.len() && deviation.is_zero();
    Comparison { pass, deviation, worst }
}

/// Numeric comparison: each component must satisfy
/// `|l - r| / max(1, |l|) <= 2^-40`. The reported deviation is the largest
/// relative difference rounded up to 24 significant bits.
pub fn check_numeric(lhs: &[ExactScalar], rhs: &[ExactScalar]) -> Comparison {
    let one = ExactScalar::one();
    let (deviation, worst) = max_deviation(lhs, rhs, |l, r| {
        let scale = std::cmp::max(l.abs(), one.clone());
        (l - r).abs() / scale
    });
    let pass = lhs.len() == rhs.len() && deviation <= numeric_tolerance();
    Comparison { pass, deviation: round_up_significant(&deviation, REPORT_BITS), worst }
}

pub fn compare(mode: Mode, lhs: &[ExactScalar], rhs: &[ExactScalar]) -> Comparison {
    match mode {
        Mode::Formal => check_formal(lhs, rhs),
        Mode::Numeric => check_numeric(lhs, rhs),
    }
}

fn max_deviation(
    lhs: &[ExactScalar],
    rhs: &[ExactScalar],
    dev: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar,
) -> (ExactScalar, Option<usize>) {
    let mut best = ExactScalar::zero();
    let mut worst = None;
    for (i, (l, r)) in lhs.iter().zip(rhs).enumerate() {
        let d = dev(l, r);
        if d > best {
            best = d;
            worst = Some(i);
        }
    }
    (best, worst)
}

/// Smallest dyadic `m 2^e >= x` with `m < 2^bits`; exact for zero.
pub fn round_up_significant(x: &ExactScalar, bits: u64) -> ExactScalar {
    if x.is_zero() {
        return ExactScalar::zero();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let mag = a.numer().bits() as i64 - a.denom().bits() as i64;
    let shift = bits as i64 - mag;
    let scaled = &a * ExactScalar::pow2(shift);
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let m = if rem == BigInt::from(0) { quot } else { quot + 1 };
    let out = ExactScalar::from_bigints(m, BigInt::from(1)).expect("unit denominator") * ExactScalar::pow2(-shift);
    if neg {
        -out
    } else {
        out
    }
}
