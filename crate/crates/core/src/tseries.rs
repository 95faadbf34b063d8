//! Truncated power series in one formal variable `t`.
//!
//! A [`TruncSeries`] of order `N` stores the coefficients of `t^0..=t^N`.
//! All arithmetic is exact modulo `t^{N+1}`; combining series of different
//! orders truncates to the smaller one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{binom2, qfactorials, ExactScalar};

/// Coefficients that can be added and scaled by exact rationals.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &ExactScalar) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// Coefficients that also multiply, which is what series products need.
pub trait Ring: Coefficient {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coefficient for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        self * c
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Ring for ExactScalar {
    fn one() -> Self {
        ExactScalar::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Clone, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

pub type ScalarSeries = TruncSeries<ExactScalar>;

impl<R: Coefficient> TruncSeries<R> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients beyond `t^order`.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![R::zero(); order + 1] }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn try_from_fn<E>(order: usize, f: impl FnMut(usize) -> Result<R, E>) -> Result<Self, E> {
        Ok(TruncSeries { coeffs: (0..=order).map(f).collect::<Result<_, E>>()? })
    }

    /// `c t^k`.
    pub fn monomial(order: usize, k: usize, c: R) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order()), self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| self.coeffs[i].add(&other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| self.coeffs[i].sub(&other.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(Coefficient::neg).collect() }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Multiplication by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| if i >= k { self.coeffs[i - k].clone() } else { R::zero() })
    }

    /// `F(c t)`: coefficient `n` scaled by `c^n`.
    pub fn dilate(&self, c: &ExactScalar) -> Self {
        let mut p = ExactScalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x.scale(&p));
            p *= c;
        }
        TruncSeries { coeffs: out }
    }

    /// Product with a series of scalars, for coefficient types that are not
    /// closed under multiplication.
    pub fn mul_scalar_series(&self, other: &ScalarSeries) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| {
            let mut acc = R::zero();
            for i in 0..=k {
                let s = &other.coeffs[k - i];
                if !s.is_zero() && !self.coeffs[i].is_zero() {
                    acc = acc.add(&self.coeffs[i].scale(s));
                }
            }
            acc
        })
    }

    pub fn map<S: Coefficient>(&self, f: impl FnMut(&R) -> S) -> TruncSeries<S> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<R: Ring> TruncSeries<R> {
    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, R::one())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| {
            let mut acc = R::zero();
            for i in 0..=k {
                if !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero() {
                    acc = acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]));
                }
            }
            acc
        })
    }
}

impl ScalarSeries {
    /// Polynomial `c_0 + c_1 t + ...` truncated at `order`.
    pub fn poly(order: usize, coeffs: &[ExactScalar]) -> Self {
        let mut v: Vec<_> = coeffs.iter().take(order + 1).cloned().collect();
        v.resize(order + 1, ExactScalar::zero());
        TruncSeries { coeffs: v }
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero("series inverse needs a nonzero constant term".into()));
        }
        let inv0 = c0.inv()?;
        let n = self.order();
        let mut out: Vec<ExactScalar> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = ExactScalar::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `1 / (c0 + c1 t)` expanded geometrically.
    pub fn linear_inverse(order: usize, c0: &ExactScalar, c1: &ExactScalar) -> Result<Self> {
        let inv0 = c0.inv()?;
        let ratio = -(c1 * &inv0);
        let mut p = inv0;
        Ok(Self::from_fn(order, |_| {
            let v = p.clone();
            p *= &ratio;
            v
        }))
    }

    /// Horner evaluation at `t = t0`.
    pub fn evaluate(&self, t0: &ExactScalar) -> ExactScalar {
        self.coeffs.iter().rev().fold(ExactScalar::zero(), |acc, c| acc * t0 + c)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> ExactScalar {
        self.coeffs.iter().map(ExactScalar::abs).max().unwrap_or_default()
    }

    pub fn check_bits(&self, limit: u64) -> Result<()> {
        self.coeffs.iter().try_for_each(|c| c.check_bits(limit))
    }
}

impl<R: Coefficient> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: Coefficient> Add for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn add(self, rhs: Self) -> TruncSeries<R> {
        TruncSeries::add(self, rhs)
    }
}

impl<R: Coefficient> Sub for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn sub(self, rhs: Self) -> TruncSeries<R> {
        TruncSeries::sub(self, rhs)
    }
}

impl<R: Coefficient> Neg for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn neg(self) -> TruncSeries<R> {
        TruncSeries::neg(self)
    }
}

impl<R: Ring> Mul for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn mul(self, rhs: Self) -> TruncSeries<R> {
        TruncSeries::mul(self, rhs)
    }
}

/// `(c t; q)_inf` as a series: coefficient `k` is `(-1)^k q^{binom(k,2)} c^k / (q;q)_k`.
pub fn euler_product_series(c: &ExactScalar, q: &ExactScalar, order: usize) -> Result<ScalarSeries> {
    let fact = qfactorials(q, order)?;
    TruncSeries::try_from_fn(order, |k| {
        let sign = ExactScalar::sign_power(k as u64);
        Ok(sign * q.pow(binom2(k as u64))? * c.powu(k as u64) / &fact[k])
    })
}

/// `1 / (c t; q)_inf` as a series: coefficient `k` is `c^k / (q;q)_k`.
pub fn euler_inverse_series(c: &ExactScalar, q: &ExactScalar, order: usize) -> Result<ScalarSeries> {
    let fact = qfactorials(q, order)?;
    Ok(TruncSeries::from_fn(order, |k| c.powu(k as u64) / &fact[k]))
}

/// `(y t; q)_inf / (x t; q)_inf`, built as the product of the two Euler
/// expansions. Its coefficient of `t^n` is `P_n(x, y) / (q;q)_n`.
pub fn cauchy_ratio_series(x: &ExactScalar, y: &ExactScalar, q: &ExactScalar, order: usize) -> Result<ScalarSeries> {
    Ok(euler_product_series(y, q, order)?.mul(&euler_inverse_series(x, q, order)?))
}

/// `(c t; q)_j` as a polynomial series in `t`.
pub fn finite_product_series(c: &ExactScalar, q: &ExactScalar, j: usize, order: usize) -> ScalarSeries {
    let mut acc = ScalarSeries::one(order);
    let mut cq = c.clone();
    for _ in 0..j {
        let factor = ScalarSeries::poly(order, &[ExactScalar::one(), -&cq]);
        acc = acc.mul(&factor);
        cq *= q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn additive_identity_and_difference_of_squares() {
        let f = ScalarSeries::poly(4, &[r(1, 2), r(-3, 1), r(2, 7)]);
        assert_eq!(&f + &ScalarSeries::zero(4), f);
        let a = ScalarSeries::poly(4, &[r(1, 1), r(1, 1)]);
        let b = ScalarSeries::poly(4, &[r(1, 1), r(-1, 1)]);
        assert_eq!(&a * &b, ScalarSeries::poly(4, &[r(1, 1), r(0, 1), r(-1, 1)]));
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = ScalarSeries::poly(2, &[r(1, 1), r(1, 1), r(1, 1)]);
        let b = ScalarSeries::poly(5, &[r(1, 1), r(1, 1)]);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn inverse_of_one_minus_t() {
        assert_eq!(ScalarSeries::one(6).inverse().unwrap(), ScalarSeries::one(6));
        let f = ScalarSeries::poly(6, &[r(1, 1), r(-1, 1)]);
        let inv = f.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| c.is_one()));
        assert_eq!(inv, ScalarSeries::linear_inverse(6, &r(1, 1), &r(-1, 1)).unwrap());
        assert!(ScalarSeries::poly(3, &[r(0, 1), r(1, 1)]).inverse().is_err());
    }

    #[test]
    fn euler_first_coefficients() {
        let q = r(1, 2);
        let e = euler_product_series(&ExactScalar::one(), &q, 3).unwrap();
        assert_eq!(*e.coeff(1), r(-2, 1));
        let ei = euler_inverse_series(&ExactScalar::one(), &q, 3).unwrap();
        assert_eq!(*ei.coeff(1), r(2, 1));
        assert_eq!(euler_product_series(&ExactScalar::zero(), &q, 5).unwrap(), ScalarSeries::one(5));
        assert_eq!(euler_inverse_series(&ExactScalar::zero(), &q, 5).unwrap(), ScalarSeries::one(5));
    }

    #[test]
    fn cauchy_ratio_special_cases() {
        let q = r(1, 4);
        let x = r(1, 2);
        assert_eq!(cauchy_ratio_series(&x, &x, &q, 6).unwrap(), ScalarSeries::one(6));
        let y = r(1, 3);
        let s = cauchy_ratio_series(&x, &y, &q, 2).unwrap();
        assert_eq!(*s.coeff(1), (&x - &y) / (r(1, 1) - &q));
        assert_eq!(*s.coeff(2), r(8, 81));
    }

    #[test]
    fn shift_dilate_evaluate() {
        let f = ScalarSeries::poly(3, &[r(1, 1), r(2, 1), r(3, 1), r(4, 1)]);
        assert_eq!(f.shift(2), ScalarSeries::poly(3, &[r(0, 1), r(0, 1), r(1, 1), r(2, 1)]));
        assert_eq!(f.dilate(&r(1, 2)), ScalarSeries::poly(3, &[r(1, 1), r(1, 1), r(3, 4), r(1, 2)]));
        assert_eq!(f.evaluate(&r(1, 2)), r(1, 1) + r(1, 1) + r(3, 4) + r(1, 2));
    }

    #[test]
    fn finite_product_is_polynomial() {
        let q = r(1, 3);
        let s = finite_product_series(&r(2, 1), &q, 2, 4);
        // (1 - 2t)(1 - 2t/3) = 1 - 8t/3 + 4t^2/3
        assert_eq!(s, ScalarSeries::poly(4, &[r(1, 1), r(-8, 3), r(4, 3)]));
    }
}
