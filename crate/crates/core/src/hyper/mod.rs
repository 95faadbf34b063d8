//! Basic hypergeometric series `rPhi_s` in three regimes: terminating sums,
//! formal series in `t`, and convergent numeric sums.
//!
//! Term `k` is `W_k(a,b) z^k / (q;q)_k * [(-1)^k q^{binom(k,2)}]^{1+s-r}`. The
//! same generator drives all three regimes and the operator series in
//! [`crate::qdiff`].

pub mod sum;

pub use sum::{sum_until_small, NumericSum, SumPolicy, Summand};

use crate::error::{Error, Result};
use crate::polyfam::ParamVector;
use crate::scalar::ExactScalar;
use crate::tseries::{ScalarSeries, TruncSeries};

/// Yields `c_k = W_k [(-1)^k q^{binom(k,2)}]^{1+s-r} / (q;q)_k` for
/// `k = 0, 1, ...`, updating incrementally.
pub struct TermGenerator<'a> {
    pv: &'a ParamVector,
    q: &'a ExactScalar,
    exponent: i64,
    k: usize,
    qk: ExactScalar,
    current: ExactScalar,
}

impl<'a> TermGenerator<'a> {
    pub fn new(pv: &'a ParamVector, q: &'a ExactScalar) -> Self {
        TermGenerator { pv, q, exponent: pv.bracket_exponent(), k: 0, qk: ExactScalar::one(), current: ExactScalar::one() }
    }

    /// Returns `c_k` and advances to `k + 1`.
    pub fn next_coeff(&mut self) -> Result<ExactScalar> {
        let out = self.current.clone();
        let one = ExactScalar::one();
        let mut num = ExactScalar::one();
        for a in &self.pv.upper {
            num *= &one - a * &self.qk;
        }
        let mut den = ExactScalar::one();
        for b in &self.pv.lower {
            let f = &one - b * &self.qk;
            if f.is_zero() {
                return Err(Error::VanishingDenominator { param: b.to_string(), index: self.k + 1 });
            }
            den *= f;
        }
        let next_qk = &self.qk * self.q;
        let fact = &one - &next_qk;
        if fact.is_zero() {
            return Err(Error::InvalidQ(format!("q = {} is a root of unity", self.q)));
        }
        den *= fact;
        // bracket_{k+1} / bracket_k = (-q^k)^e
        let step = -&self.qk;
        let bracket = step.pow(self.exponent)?;
        if !out.is_zero() {
            self.current = &out * num * bracket / den;
        }
        self.qk = next_qk;
        self.k += 1;
        Ok(out)
    }
}

/// `c_0, ..., c_n` as produced by [`TermGenerator`].
pub fn hyper_coeffs(pv: &ParamVector, q: &ExactScalar, n: usize) -> Result<Vec<ExactScalar>> {
    let mut g = TermGenerator::new(pv, q);
    (0..=n).map(|_| g.next_coeff()).collect()
}

/// `rPhi_s[a; b; q; c t]` as a truncated series in `t`.
pub fn rphis_series_in_t(pv: &ParamVector, q: &ExactScalar, c: &ExactScalar, order: usize) -> Result<ScalarSeries> {
    let coeffs = hyper_coeffs(pv, q, order)?;
    let mut cp = ExactScalar::one();
    Ok(TruncSeries::from_fn(order, |k| {
        let v = &coeffs[k] * &cp;
        cp *= c;
        v
    }))
}

/// Smallest `n <= limit` such that some upper parameter equals `q^{-n}`.
pub fn terminating_degree(pv: &ParamVector, q: &ExactScalar, limit: usize) -> Option<usize> {
    let qinv = q.inv().ok()?;
    let mut p = ExactScalar::one();
    for n in 0..=limit {
        if pv.upper.contains(&p) {
            return Some(n);
        }
        p *= &qinv;
    }
    None
}

const TERMINATION_SEARCH: usize = 512;

/// Exact value of a terminating series (some upper parameter `q^{-n}`).
pub fn rphis_terminating(pv: &ParamVector, q: &ExactScalar, z: &ExactScalar) -> Result<ExactScalar> {
    let n = terminating_degree(pv, q, TERMINATION_SEARCH)
        .ok_or_else(|| Error::InvalidArgument(format!("no upper parameter of the form q^-n in {}", pv.describe())))?;
    let coeffs = hyper_coeffs(pv, q, n)?;
    let mut zk = ExactScalar::one();
    let mut sum = ExactScalar::zero();
    for c in coeffs {
        sum += c * &zk;
        zk *= z;
    }
    Ok(sum)
}

/// Numeric value of `rPhi_s[a; b; q; z]`.
///
/// Terminating inputs are summed exactly. Otherwise the series must converge:
/// `|q| < 1`, and either `r <= s` or `r = s + 1` with `|z| < 1`.
pub fn rphis_numeric(pv: &ParamVector, q: &ExactScalar, z: &ExactScalar, policy: &SumPolicy) -> Result<NumericSum<ExactScalar>> {
    if z.is_zero() {
        return Ok(NumericSum { value: ExactScalar::one(), terms: 1, tail_bound: ExactScalar::zero() });
    }
    if let Some(n) = terminating_degree(pv, q, TERMINATION_SEARCH) {
        return Ok(NumericSum { value: rphis_terminating(pv, q, z)?, terms: n + 1, tail_bound: ExactScalar::zero() });
    }
    if q.abs() >= ExactScalar::one() {
        return Err(Error::InvalidQ(format!("numeric summation needs |q| < 1, got {q}")));
    }
    if pv.r() > pv.s() + 1 {
        return Err(Error::Divergent(format!("{}Phi{} with r > s + 1 does not terminate", pv.r(), pv.s())));
    }
    if pv.r() == pv.s() + 1 && z.abs() >= ExactScalar::one() {
        return Err(Error::Divergent(format!("{}Phi{} needs |z| < 1, got {z}", pv.r(), pv.s())));
    }
    let mut g = TermGenerator::new(pv, q);
    let mut zk = ExactScalar::one();
    sum_until_small(policy, |_| {
        let t = g.next_coeff()? * &zk;
        zk *= z;
        Ok(t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qpoch, qpoch_inf};
    use crate::tseries::{euler_inverse_series, euler_product_series};

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn terminating_small_cases() {
        let q = r(1, 3);
        let (a, c) = (r(2, 5), r(-3, 7));
        let one = ExactScalar::one();
        let pv = ParamVector::new(vec![one.clone(), a.clone()], vec![c.clone()]);
        assert_eq!(rphis_terminating(&pv, &q, &q).unwrap(), one);
        let pv = ParamVector::new(vec![q.inv().unwrap(), a.clone()], vec![c.clone()]);
        let expected = (&a - &c) / (&one - &c);
        assert_eq!(rphis_terminating(&pv, &q, &q).unwrap(), expected);
        let pv = ParamVector::new(vec![a.clone()], vec![c]);
        assert!(rphis_terminating(&pv, &q, &q).is_err());
    }

    #[test]
    fn chu_vandermonde_second_form() {
        let q = r(2, 7);
        let (a, c) = (r(3, 5), r(-4, 9));
        for n in 0..=12usize {
            let pv = ParamVector::new(vec![q.pow(-(n as i64)).unwrap(), a.clone()], vec![c.clone()]);
            let z = &c * q.powu(n as u64) / &a;
            let lhs = rphis_terminating(&pv, &q, &z).unwrap();
            assert_eq!(lhs, qpoch(&(&c / &a), &q, n) / qpoch(&c, &q, n), "n = {n}");
        }
    }

    #[test]
    fn series_matches_binomial_theorem_and_euler() {
        let q = r(1, 4);
        let (a, c) = (r(5, 3), r(-2, 3));
        let n = 10;
        let lhs = rphis_series_in_t(&ParamVector::new(vec![a.clone()], vec![]), &q, &c, n).unwrap();
        let rhs = euler_product_series(&(&a * &c), &q, n).unwrap().mul(&euler_inverse_series(&c, &q, n).unwrap());
        assert_eq!(lhs, rhs);
        // r = s = 0: the bracket to the first power makes this (c t; q)_inf.
        let lhs = rphis_series_in_t(&ParamVector::empty(), &q, &c, n).unwrap();
        assert_eq!(lhs, euler_product_series(&c, &q, n).unwrap());
        let zero = rphis_series_in_t(&ParamVector::new(vec![a], vec![]), &q, &ExactScalar::zero(), n).unwrap();
        assert_eq!(zero, ScalarSeries::one(n));
    }

    #[test]
    fn numeric_binomial_theorem() {
        let q = r(1, 3);
        let (a, z) = (r(3, 4), r(2, 5));
        let eps = ExactScalar::pow2(-80);
        let s = rphis_numeric(&ParamVector::new(vec![a.clone()], vec![]), &q, &z, &SumPolicy::new(eps.clone())).unwrap();
        let num = qpoch_inf(&(&a * &z), &q, &eps).unwrap().value;
        let den = qpoch_inf(&z, &q, &eps).unwrap().value;
        assert!((s.value - num / den).abs() < ExactScalar::pow2(-70));
    }

    #[test]
    fn numeric_guards() {
        let q = r(1, 3);
        let policy = SumPolicy::from_bits(60);
        let three = ParamVector::new(vec![r(1, 2), r(1, 5), r(1, 7)], vec![r(1, 9)]);
        assert!(matches!(rphis_numeric(&three, &q, &r(1, 2), &policy), Err(Error::Divergent(_))));
        let one = ParamVector::new(vec![r(1, 2)], vec![]);
        assert!(matches!(rphis_numeric(&one, &q, &r(3, 2), &policy), Err(Error::Divergent(_))));
        assert_eq!(rphis_numeric(&three, &q, &ExactScalar::zero(), &policy).unwrap().value, ExactScalar::one());
        let term = ParamVector::new(vec![q.pow(-3).unwrap(), r(1, 5), r(1, 7)], vec![r(1, 9)]);
        let exact = rphis_terminating(&term, &q, &r(5, 2)).unwrap();
        assert_eq!(rphis_numeric(&term, &q, &r(5, 2), &policy).unwrap().value, exact);
    }

    #[test]
    fn series_evaluation_agrees_with_numeric_sum() {
        let q = r(-1, 4);
        let pv = ParamVector::new(vec![r(1, 3), r(2, 5)], vec![r(-1, 6)]);
        let (c, t0) = (r(3, 4), r(1, 8));
        let series = rphis_series_in_t(&pv, &q, &c, 40).unwrap();
        let numeric = rphis_numeric(&pv, &q, &(&c * &t0), &SumPolicy::from_bits(80)).unwrap();
        assert!((series.evaluate(&t0) - numeric.value).abs() < ExactScalar::pow2(-70));
    }
}
