//! Polynomial families evaluated exactly at rational points.
//!
//! Every family is implemented from its own defining finite sum. None of them
//! is expressed through [`psi_general`], so the reductions in [`reduction`]
//! compare genuinely independent computations.

mod families;
pub mod reduction;

pub use families::*;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binom2, ExactScalar};

/// Upper parameters `a_1..a_r` and lower parameters `b_1..b_s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamVector {
    pub upper: Vec<ExactScalar>,
    pub lower: Vec<ExactScalar>,
}

impl ParamVector {
    pub fn new(upper: Vec<ExactScalar>, lower: Vec<ExactScalar>) -> Self {
        ParamVector { upper, lower }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn r(&self) -> usize {
        self.upper.len()
    }

    pub fn s(&self) -> usize {
        self.lower.len()
    }

    /// Exponent `1 + s - r` of the bracket `(-1)^k q^{binom(k,2)}`.
    pub fn bracket_exponent(&self) -> i64 {
        1 + self.s() as i64 - self.r() as i64
    }

    /// Label used in error messages and notes.
    pub fn describe(&self) -> String {
        let join = |v: &[ExactScalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("({}; {})", join(&self.upper), join(&self.lower))
    }
}

/// Arguments `(x, y, z)` and degree `n` of a trivariate family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    pub n: usize,
    pub x: ExactScalar,
    pub y: ExactScalar,
    pub z: ExactScalar,
}

impl FamilyPoint {
    pub fn new(n: usize, x: ExactScalar, y: ExactScalar, z: ExactScalar) -> Self {
        FamilyPoint { n, x, y, z }
    }
}

/// Cauchy polynomial `P_n(x,y) = (x - y)(x - qy)...(x - q^{n-1} y)`.
pub fn cauchy_p(n: usize, x: &ExactScalar, y: &ExactScalar, q: &ExactScalar) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut qy = y.clone();
    for _ in 0..n {
        acc *= x - &qy;
        qy *= q;
    }
    acc
}

/// `P_0(x,y), ..., P_n(x,y)`.
pub fn cauchy_p_table(n: usize, x: &ExactScalar, y: &ExactScalar, q: &ExactScalar) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ExactScalar::one();
    let mut qy = y.clone();
    out.push(acc.clone());
    for _ in 0..n {
        acc *= x - &qy;
        qy *= q;
        out.push(acc.clone());
    }
    out
}

/// `W_0, ..., W_n` where `W_k = (a_1..a_r;q)_k / (b_1..b_s;q)_k`.
pub fn w_table(n: usize, pv: &ParamVector, q: &ExactScalar) -> Result<Vec<ExactScalar>> {
    let one = ExactScalar::one();
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = ExactScalar::one();
    let mut qk = ExactScalar::one();
    out.push(cur.clone());
    for k in 0..n {
        let mut den = ExactScalar::one();
        for b in &pv.lower {
            let f = &one - b * &qk;
            if f.is_zero() {
                return Err(Error::VanishingDenominator { param: b.to_string(), index: k + 1 });
            }
            den *= f;
        }
        for a in &pv.upper {
            cur *= &one - a * &qk;
        }
        cur = cur / den;
        out.push(cur.clone());
        qk *= q;
    }
    Ok(out)
}

/// `W_k(a, b)`; fails naming the lower parameter whose Pochhammer vanishes.
pub fn w_coeff(k: usize, pv: &ParamVector, q: &ExactScalar) -> Result<ExactScalar> {
    Ok(w_table(k, pv, q)?.pop().expect("table is nonempty"))
}

/// `(-1)^n q^{-binom(n,2)}`.
pub fn psi_prefactor(n: usize, q: &ExactScalar) -> Result<ExactScalar> {
    Ok(ExactScalar::sign_power(n as u64) * q.pow(-binom2(n as u64))?)
}

/// The generalized polynomial
/// `Psi_n(x,y,z) = (-1)^n q^{-binom(n,2)} sum_k [n k] [(-1)^k q^{binom(k,2)}]^{1+s-r} W_k P_{n-k}(y,x) z^k`.
pub fn psi_general(pt: &FamilyPoint, pv: &ParamVector, q: &ExactScalar) -> Result<ExactScalar> {
    let n = pt.n;
    let binoms = crate::scalar::qbinom_row(n, q)?;
    let w = w_table(n, pv, q)?;
    let p = cauchy_p_table(n, &pt.y, &pt.x, q);
    let e = pv.bracket_exponent();
    let mut sum = ExactScalar::zero();
    let mut zk = ExactScalar::one();
    for k in 0..=n {
        if !w[k].is_zero() && !p[n - k].is_zero() {
            sum += &binoms[k] * crate::scalar::bracket(k, e, q)? * &w[k] * &p[n - k] * &zk;
        }
        zk *= &pt.z;
    }
    Ok(psi_prefactor(n, q)? * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qpoch;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn cauchy_two_forms() {
        let q = r(2, 5);
        let (x, y) = (r(-3, 7), r(5, 2));
        assert_eq!(cauchy_p(0, &x, &y, &q), ExactScalar::one());
        assert_eq!(cauchy_p(2, &x, &y, &q), (&x - &y) * (&x - &q * &y));
        for n in 0..=10 {
            let alt = qpoch(&(&y / &x), &q, n) * x.powu(n as u64);
            assert_eq!(cauchy_p(n, &x, &y, &q), alt);
            assert_eq!(cauchy_p_table(10, &x, &y, &q)[n], alt);
        }
    }

    #[test]
    fn w_coefficients() {
        let q = r(1, 2);
        let pv = ParamVector::new(vec![q.pow(-3).unwrap()], vec![]);
        assert_eq!(w_coeff(0, &pv, &q).unwrap(), ExactScalar::one());
        assert_eq!(w_coeff(4, &pv, &q).unwrap(), ExactScalar::zero());
        let a = r(3, 11);
        let same = ParamVector::new(vec![a.clone()], vec![a]);
        for k in 0..6 {
            assert_eq!(w_coeff(k, &same, &q).unwrap(), ExactScalar::one());
        }
        let bad = ParamVector::new(vec![r(1, 3)], vec![ExactScalar::from_int(4)]);
        match w_coeff(3, &bad, &q) {
            Err(Error::VanishingDenominator { param, index }) => {
                assert_eq!(param, "4");
                assert_eq!(index, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn psi_small_cases() {
        let q = r(1, 2);
        let pv = ParamVector::empty();
        let pt = FamilyPoint::new(0, r(7, 3), r(1, 9), r(-4, 5));
        assert_eq!(psi_general(&pt, &pv, &q).unwrap(), ExactScalar::one());
        let pt = FamilyPoint::new(1, r(2, 1), r(1, 1), r(3, 1));
        assert_eq!(psi_general(&pt, &pv, &q).unwrap(), r(4, 1));
    }
}
