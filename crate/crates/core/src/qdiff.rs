//! The homogeneous q-difference operator `Theta_xy` and the operator series
//! `rPhi_s[a; b; q; -z Theta_xy]`.
//!
//! Polynomials are kept in the basis `P_m(y, x)`, on which
//! `Theta^k P_n(y,x) = (-1)^k (q;q)_n / (q;q)_{n-k} P_{n-k}(y,x)`. The
//! pointwise difference quotient is provided as an independent check.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hyper::TermGenerator;
use crate::polyfam::{cauchy_p_table, ParamVector};
use crate::scalar::{qfactorials, ExactScalar};
use crate::tseries::{Coefficient, ScalarSeries, TruncSeries};

/// Finite combination `sum_m c_m P_m(y, x)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CauchyPoly {
    coeffs: BTreeMap<usize, ExactScalar>,
}

pub type CauchySeries = TruncSeries<CauchyPoly>;

impl CauchyPoly {
    /// The basis element `P_m(y, x)`.
    pub fn basis(m: usize) -> Self {
        Self::monomial(m, ExactScalar::one())
    }

    /// `c P_m(y, x)`.
    pub fn monomial(m: usize, c: ExactScalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(m, c);
        }
        CauchyPoly { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (usize, ExactScalar)>) -> Self {
        let mut out = CauchyPoly::default();
        for (m, c) in pairs {
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: usize, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m).or_insert_with(ExactScalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeff(&self, m: usize) -> ExactScalar {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    /// Highest basis index present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `(x0, y0)`: `sum_m c_m P_m(y0, x0)`.
    pub fn evaluate(&self, x0: &ExactScalar, y0: &ExactScalar, q: &ExactScalar) -> ExactScalar {
        let Some(deg) = self.degree() else {
            return ExactScalar::zero();
        };
        let p = cauchy_p_table(deg, y0, x0, q);
        self.coeffs.iter().map(|(m, c)| c * &p[*m]).sum()
    }
}

impl fmt::Debug for CauchyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("({c})P{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Coefficient for CauchyPoly {
    fn zero() -> Self {
        CauchyPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c);
        }
        out
    }
    fn neg(&self) -> Self {
        CauchyPoly { coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect() }
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return CauchyPoly::default();
        }
        CauchyPoly { coeffs: self.coeffs.iter().map(|(m, v)| (*m, v * c)).collect() }
    }
}

/// `Theta^k f` via the basis rule; basis terms with `m < k` vanish.
pub fn theta_basis(f: &CauchyPoly, k: usize, q: &ExactScalar) -> Result<CauchyPoly> {
    let Some(deg) = f.degree() else {
        return Ok(CauchyPoly::default());
    };
    let fact = qfactorials(q, deg)?;
    let sign = ExactScalar::sign_power(k as u64);
    Ok(CauchyPoly::from_coeffs(f.terms().filter(|(m, _)| *m >= k).map(|(m, c)| (m - k, c * &sign * &fact[m] / &fact[m - k]))))
}

/// Black-box bivariate function used by the pointwise operator.
pub type Evaluator<'a> = dyn Fn(&ExactScalar, &ExactScalar) -> Result<ExactScalar> + 'a;

/// `[f(x0/q, y0) - f(x0, q y0)] / (x0/q - y0)`.
pub fn theta_pointwise(f: &Evaluator<'_>, x0: &ExactScalar, y0: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let xq = x0.checked_div(q)?;
    let den = &xq - y0;
    if den.is_zero() {
        return Err(Error::Singular(format!("x/q = y at (x, y) = ({x0}, {y0})")));
    }
    let num = f(&xq, y0)? - f(x0, &(q * y0))?;
    Ok(num / den)
}

/// `k`-fold nested difference quotient; uses `2^k` evaluations of `f`.
pub fn theta_pointwise_power(f: &Evaluator<'_>, k: usize, x0: &ExactScalar, y0: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    if k == 0 {
        return f(x0, y0);
    }
    let inner = |x: &ExactScalar, y: &ExactScalar| theta_pointwise_power(f, k - 1, x, y, q);
    theta_pointwise(&inner, x0, y0, q)
}

/// `rPhi_s[a; b; q; -z Theta] f = sum_k W_k (-z)^k / (q;q)_k [(-1)^k q^{binom(k,2)}]^{1+s-r} Theta^k f`.
/// The sum stops at the degree of `f`, beyond which `Theta^k f = 0`.
pub fn op_apply_poly(pv: &ParamVector, z: &ExactScalar, f: &CauchyPoly, q: &ExactScalar) -> Result<CauchyPoly> {
    let Some(deg) = f.degree() else {
        return Ok(CauchyPoly::default());
    };
    let mut gen = TermGenerator::new(pv, q);
    let minus_z = -z;
    let mut zk = ExactScalar::one();
    let mut out = CauchyPoly::default();
    for k in 0..=deg {
        let c = gen.next_coeff()? * &zk;
        if !c.is_zero() {
            out = out.add(&theta_basis(f, k, q)?.scale(&c));
        }
        zk *= &minus_z;
    }
    Ok(out)
}

/// Applies the operator series to every `t`-coefficient.
pub fn op_apply_series(pv: &ParamVector, z: &ExactScalar, f: &CauchySeries, q: &ExactScalar) -> Result<CauchySeries> {
    TruncSeries::try_from_fn(f.order(), |n| op_apply_poly(pv, z, f.coeff(n), q))
}

/// `Theta^k` applied to every `t`-coefficient.
pub fn theta_series(f: &CauchySeries, k: usize, q: &ExactScalar) -> Result<CauchySeries> {
    TruncSeries::try_from_fn(f.order(), |n| theta_basis(f.coeff(n), k, q))
}

/// `sum_n P_{n+k}(y,x) t^n / (q;q)_n`; for `k = 0` this is the expansion of
/// `(xt;q)_inf / (yt;q)_inf`.
pub fn shifted_cauchy_series(k: usize, q: &ExactScalar, order: usize) -> Result<CauchySeries> {
    let fact = qfactorials(q, order)?;
    Ok(TruncSeries::from_fn(order, |n| CauchyPoly::monomial(n + k, fact[n].inv().expect("nonzero factorial"))))
}

/// Evaluates every coefficient at `(x0, y0)`.
pub fn evaluate_series(f: &CauchySeries, x0: &ExactScalar, y0: &ExactScalar, q: &ExactScalar) -> ScalarSeries {
    f.map(|c| c.evaluate(x0, y0, q))
}
