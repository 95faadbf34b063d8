//! q-shifted factorials, Gaussian binomials and the shift identity.

use super::ExactScalar;
use crate::error::{Error, Result};

/// `n(n-1)/2`.
pub fn binom2(n: u64) -> i64 {
    (n as i64) * (n as i64 - 1) / 2
}

/// `(a;q)_n = prod_{k<n} (1 - a q^k)`.
pub fn qpoch(a: &ExactScalar, q: &ExactScalar, n: usize) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc *= ExactScalar::one() - &aq;
        if acc.is_zero() {
            return acc;
        }
        aq *= q;
    }
    acc
}

/// `(a_1, ..., a_r; q)_n`; the empty list gives 1.
pub fn qpoch_multi(params: &[ExactScalar], q: &ExactScalar, n: usize) -> ExactScalar {
    params.iter().map(|a| qpoch(a, q, n)).product()
}

/// Truncated infinite product `(a;q)_inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteProduct {
    pub value: ExactScalar,
    /// Number of factors multiplied in.
    pub factors: usize,
}

/// Partial product `prod_{k<K} (1 - a q^k)` where `K` is the first index with
/// `|a q^K| < eps`. The neglected factors change the value by a relative
/// amount of order `|a| |q|^K / (1 - |q|)`.
pub fn qpoch_inf(a: &ExactScalar, q: &ExactScalar, eps: &ExactScalar) -> Result<InfiniteProduct> {
    qpoch_inf_limited(a, q, eps, super::DEFAULT_BIT_LIMIT)
}

pub fn qpoch_inf_limited(a: &ExactScalar, q: &ExactScalar, eps: &ExactScalar, bit_limit: u64) -> Result<InfiniteProduct> {
    if q.abs() >= ExactScalar::one() {
        return Err(Error::InvalidQ(format!("infinite product needs |q| < 1, got {q}")));
    }
    if eps.signum() <= 0 {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let mut value = ExactScalar::one();
    let mut aq = a.clone();
    let mut factors = 0;
    while aq.abs() >= *eps {
        value *= ExactScalar::one() - &aq;
        value.check_bits(bit_limit)?;
        aq *= q;
        factors += 1;
    }
    Ok(InfiniteProduct { value, factors })
}

/// `(q;q)_j` for `j = 0..=n`.
pub fn qfactorials(q: &ExactScalar, n: usize) -> Result<Vec<ExactScalar>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ExactScalar::one();
    let mut qj = ExactScalar::one();
    out.push(acc.clone());
    for j in 1..=n {
        qj *= q;
        acc *= ExactScalar::one() - &qj;
        if acc.is_zero() {
            return Err(Error::InvalidQ(format!("q = {q} is a root of unity: (q;q)_{j} = 0")));
        }
        out.push(acc.clone());
    }
    Ok(out)
}

/// Gaussian binomial `[n k]_q`; zero when `k > n`.
pub fn qbinom(n: usize, k: usize, q: &ExactScalar) -> Result<ExactScalar> {
    if k > n {
        return Ok(ExactScalar::zero());
    }
    let f = qfactorials(q, n)?;
    Ok(&f[n] / (&f[k] * &f[n - k]))
}

/// Row `[n 0]_q, ..., [n n]_q` built from the ratio
/// `[n k+1] = [n k] (1 - q^{n-k}) / (1 - q^{k+1})`.
pub fn qbinom_row(n: usize, q: &ExactScalar) -> Result<Vec<ExactScalar>> {
    let mut powers = Vec::with_capacity(n + 1);
    let mut p = ExactScalar::one();
    for _ in 0..=n {
        powers.push(p.clone());
        p *= q;
    }
    let one = ExactScalar::one();
    let mut row = Vec::with_capacity(n + 1);
    let mut cur = ExactScalar::one();
    row.push(cur.clone());
    for k in 0..n {
        let den = &one - &powers[k + 1];
        if den.is_zero() {
            return Err(Error::InvalidQ(format!("q = {q} is a root of unity")));
        }
        cur = cur * (&one - &powers[n - k]) / den;
        row.push(cur.clone());
    }
    Ok(row)
}

/// Both sides of `(a q^{-n};q)_n = (q/a;q)_n (-a)^n q^{-n-binom(n,2)}`.
pub fn qpoch_shift(a: &ExactScalar, q: &ExactScalar, n: usize) -> Result<(ExactScalar, ExactScalar)> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("shift identity needs a != 0".into()));
    }
    let nn = n as i64;
    let lhs = qpoch(&(a * q.pow(-nn)?), q, n);
    let rhs = qpoch(&q.checked_div(a)?, q, n) * (-a).powu(n as u64) * q.pow(-nn - binom2(n as u64))?;
    Ok((lhs, rhs))
}

/// `[(-1)^k q^{binom(k,2)}]^e`, the bracket carried by generalized series
/// terms; `e` may be negative.
pub fn bracket(k: usize, e: i64, q: &ExactScalar) -> Result<ExactScalar> {
    let sign = if (k as i64 * e).rem_euclid(2) == 0 { ExactScalar::one() } else { ExactScalar::from_int(-1) };
    Ok(sign * q.pow(binom2(k as u64) * e)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn finite_products() {
        let q = r(1, 2);
        assert_eq!(qpoch(&r(7, 3), &q, 0), ExactScalar::one());
        assert_eq!(qpoch(&ExactScalar::from_int(2), &q, 2), ExactScalar::zero());
        assert_eq!(qpoch(&r(1, 2), &q, 2), r(3, 8));
        assert_eq!(qpoch_multi(&[], &q, 5), ExactScalar::one());
        assert_eq!(qpoch_multi(&[ExactScalar::from_int(2), r(1, 2)], &q, 2), ExactScalar::zero());
    }

    #[test]
    fn gaussian_binomials() {
        let q = r(1, 2);
        assert_eq!(qbinom(5, 0, &q).unwrap(), ExactScalar::one());
        assert_eq!(qbinom(2, 1, &q).unwrap(), r(3, 2));
        assert_eq!(qbinom(3, 4, &q).unwrap(), ExactScalar::zero());
        // [4 2] = 1 + q + 2q^2 + q^3 + q^4 at q = 1/2
        let expanded = r(1, 1) + r(1, 2) + r(2, 4) + r(1, 8) + r(1, 16);
        assert_eq!(qbinom(4, 2, &q).unwrap(), expanded);
        let brute = qpoch(&q, &q, 4) / (qpoch(&q, &q, 2) * qpoch(&q, &q, 2));
        assert_eq!(brute, expanded);
        assert_eq!(expanded, r(35, 16));
        assert!(qbinom(3, 1, &ExactScalar::from_int(-1)).is_err());
    }

    #[test]
    fn row_matches_direct() {
        let q = r(-2, 7);
        let row = qbinom_row(9, &q).unwrap();
        for (k, v) in row.iter().enumerate() {
            assert_eq!(*v, qbinom(9, k, &q).unwrap());
        }
    }

    #[test]
    fn shift_identity_examples() {
        let (l, rr) = qpoch_shift(&r(5, 3), &r(1, 2), 0).unwrap();
        assert_eq!((l, rr), (ExactScalar::one(), ExactScalar::one()));
        let (l, rr) = qpoch_shift(&ExactScalar::from_int(2), &r(1, 2), 1).unwrap();
        assert_eq!(l, ExactScalar::from_int(-3));
        assert_eq!(rr, ExactScalar::from_int(-3));
        // a = 3, q = 1/3, n = 2: (27;1/3)_2 = (-26)(-8), (1/9;1/3)_2 (-3)^2 3^3 = (8/9)(26/27) 243
        let (l, rr) = qpoch_shift(&ExactScalar::from_int(3), &r(1, 3), 2).unwrap();
        assert_eq!(l, ExactScalar::from_int(208));
        assert_eq!(rr, r(8, 9) * r(26, 27) * ExactScalar::from_int(243));
        assert!(qpoch_shift(&ExactScalar::zero(), &r(1, 2), 1).is_err());
    }

    #[test]
    fn infinite_product_truncation() {
        let eps = ExactScalar::pow2(-40);
        let q = r(1, 2);
        let zero = qpoch_inf(&ExactScalar::zero(), &q, &eps).unwrap();
        assert_eq!(zero.value, ExactScalar::one());
        assert_eq!(zero.factors, 0);

        let p40 = qpoch_inf(&r(1, 2), &q, &eps).unwrap();
        assert_eq!(p40.factors, 40);
        let p80 = qpoch_inf(&r(1, 2), &q, &ExactScalar::pow2(-80)).unwrap();
        assert_eq!(p80.factors, 80);
        assert!((p40.value - p80.value).abs() < ExactScalar::pow2(-38));
        assert!(qpoch_inf(&r(1, 2), &ExactScalar::one(), &eps).is_err());
    }

    #[test]
    fn infinite_product_telescopes() {
        let eps = ExactScalar::pow2(-80);
        let q = r(1, 3);
        let a = q.powu(2);
        for n in 0..6 {
            let full = qpoch_inf(&a, &q, &eps).unwrap().value;
            let tail = qpoch_inf(&(&a * q.powu(n as u64)), &q, &eps).unwrap().value;
            let ratio = full / tail;
            let exact = qpoch(&a, &q, n);
            assert!((ratio - &exact).abs() < ExactScalar::pow2(-70), "n = {n}");
        }
    }

    #[test]
    fn bracket_signs() {
        let q = r(1, 2);
        assert_eq!(bracket(0, 3, &q).unwrap(), ExactScalar::one());
        assert_eq!(bracket(2, 1, &q).unwrap(), r(1, 2));
        assert_eq!(bracket(2, -1, &q).unwrap(), ExactScalar::from_int(2));
        assert_eq!(bracket(3, 1, &q).unwrap(), r(-1, 8));
        assert_eq!(bracket(3, 0, &q).unwrap(), ExactScalar::one());
    }
}
