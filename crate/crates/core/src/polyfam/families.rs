use super::{cauchy_p_table, ParamVector};
use crate::error::{Error, Result};
use crate::scalar::{binom2, qbinom_row, qpoch, qpoch_multi, ExactScalar};

fn powers(x: &ExactScalar, n: usize) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = ExactScalar::one();
    for _ in 0..=n {
        out.push(p.clone());
        p *= x;
    }
    out
}

fn lower_poch(lower: &[ExactScalar], q: &ExactScalar, k: usize) -> Result<ExactScalar> {
    let mut den = ExactScalar::one();
    for b in lower {
        let v = qpoch(b, q, k);
        if v.is_zero() {
            return Err(Error::VanishingDenominator { param: b.to_string(), index: k });
        }
        den *= v;
    }
    Ok(den)
}

/// `phi_n^{(a)}(x) = sum_k [n k] (a;q)_k x^k`.
pub fn asc_phi(n: usize, a: &ExactScalar, x: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let b = qbinom_row(n, q)?;
    let xp = powers(x, n);
    Ok((0..=n).map(|k| &b[k] * qpoch(a, q, k) * &xp[k]).sum())
}

/// `psi_n^{(a)}(x) = sum_k [n k] q^{k(k-n)} (a q^{1-k};q)_k x^k`.
pub fn asc_psi(n: usize, a: &ExactScalar, x: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let b = qbinom_row(n, q)?;
    let xp = powers(x, n);
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let (ki, ni) = (k as i64, n as i64);
        let shifted = a * q.pow(1 - ki)?;
        sum += &b[k] * q.pow(ki * (ki - ni))? * qpoch(&shifted, q, k) * &xp[k];
    }
    Ok(sum)
}

/// `phi_n^{(a,b,c)}(x,y) = sum_k [n k] (a,b;q)_k/(c;q)_k x^k y^{n-k}`.
pub fn cao_phi3(
    n: usize,
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    x: &ExactScalar,
    y: &ExactScalar,
    q: &ExactScalar,
) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let num = qpoch(a, q, k) * qpoch(b, q, k);
        sum += &bin[k] * num / lower_poch(std::slice::from_ref(c), q, k)? * &xp[k] * &yp[n - k];
    }
    Ok(sum)
}

/// `psi_n^{(a,b,c)}(x,y) = sum_k [n k] (-1)^k q^{binom(k+1,2) - nk} (a,b;q)_k/(c;q)_k x^k y^{n-k}`.
pub fn cao_psi3(
    n: usize,
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    x: &ExactScalar,
    y: &ExactScalar,
    q: &ExactScalar,
) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let e = binom2(k as u64 + 1) - (n * k) as i64;
        let num = ExactScalar::sign_power(k as u64) * q.pow(e)? * qpoch(a, q, k) * qpoch(b, q, k);
        sum += &bin[k] * num / lower_poch(std::slice::from_ref(c), q, k)? * &xp[k] * &yp[n - k];
    }
    Ok(sum)
}

/// `phi_n^{abc/de}(x,y) = sum_k [n k] (a,b,c;q)_k/(d,e;q)_k x^{n-k} y^k`.
pub fn ext_phi5(
    n: usize,
    upper: &[ExactScalar; 3],
    lower: &[ExactScalar; 2],
    x: &ExactScalar,
    y: &ExactScalar,
    q: &ExactScalar,
) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let ratio = qpoch_multi(upper, q, k) / lower_poch(lower, q, k)?;
        sum += &bin[k] * ratio * &xp[n - k] * &yp[k];
    }
    Ok(sum)
}

/// `psi_n^{abc/de}(x,y) = sum_k [n k] (-1)^k q^{k(k-n)} (a,b,c;q)_k/(d,e;q)_k x^{n-k} y^k`.
pub fn ext_psi5(
    n: usize,
    upper: &[ExactScalar; 3],
    lower: &[ExactScalar; 2],
    x: &ExactScalar,
    y: &ExactScalar,
    q: &ExactScalar,
) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let (ki, ni) = (k as i64, n as i64);
        let ratio = qpoch_multi(upper, q, k) / lower_poch(lower, q, k)?;
        sum += &bin[k] * ExactScalar::sign_power(k as u64) * q.pow(ki * (ki - ni))? * ratio * &xp[n - k] * &yp[k];
    }
    Ok(sum)
}

fn check_sa_arity(pv: &ParamVector) -> Result<()> {
    if pv.r() != pv.s() + 1 {
        return Err(Error::Arity(format!("expected {} upper parameters for {} lower, got {}", pv.s() + 1, pv.s(), pv.r())));
    }
    Ok(())
}

/// `phi_n^{(a,b)}(x,y) = sum_k [n k] (a_1..a_{r+1};q)_k/(b_1..b_r;q)_k x^k y^{n-k}`.
pub fn sa_phi(n: usize, pv: &ParamVector, x: &ExactScalar, y: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    check_sa_arity(pv)?;
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let ratio = qpoch_multi(&pv.upper, q, k) / lower_poch(&pv.lower, q, k)?;
        sum += &bin[k] * ratio * &xp[k] * &yp[n - k];
    }
    Ok(sum)
}

/// `psi_n^{(a,b)}(x,y) = sum_k [n k] (a_1..a_{r+1};q)_k/(b_1..b_r;q)_k q^{binom(k+1,2) - nk} x^k y^{n-k}`.
pub fn sa_psi(n: usize, pv: &ParamVector, x: &ExactScalar, y: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    check_sa_arity(pv)?;
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let e = binom2(k as u64 + 1) - (n * k) as i64;
        let ratio = qpoch_multi(&pv.upper, q, k) / lower_poch(&pv.lower, q, k)?;
        sum += &bin[k] * ratio * q.pow(e)? * &xp[k] * &yp[n - k];
    }
    Ok(sum)
}

/// `V_n(x,y,z) = sum_k [n k] (a;q)_k/(c;q)_k P_{n-k}(x,y) z^k`.
pub fn v_poly(n: usize, pv: &ParamVector, x: &ExactScalar, y: &ExactScalar, z: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let zp = powers(z, n);
    let p = cauchy_p_table(n, x, y, q);
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let ratio = qpoch_multi(&pv.upper, q, k) / lower_poch(&pv.lower, q, k)?;
        sum += &bin[k] * ratio * &p[n - k] * &zp[k];
    }
    Ok(sum)
}

/// Generalized Hahn polynomial `h_n(x,y,a,b) = sum_k [n k] (a;q)_k b^k P_{n-k}(x,y)`.
pub fn hahn_h(n: usize, x: &ExactScalar, y: &ExactScalar, a: &ExactScalar, b: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let bp = powers(b, n);
    let p = cauchy_p_table(n, x, y, q);
    Ok((0..=n).map(|k| &bin[k] * qpoch(a, q, k) * &bp[k] * &p[n - k]).sum())
}

/// Homogeneous Hahn polynomial `phi_n^{(a)}(x,y) = sum_k [n k] (a;q)_k x^k y^{n-k}`.
pub fn hahn2_phi(n: usize, a: &ExactScalar, x: &ExactScalar, y: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    Ok((0..=n).map(|k| &bin[k] * qpoch(a, q, k) * &xp[k] * &yp[n - k]).sum())
}

/// Homogeneous Hahn polynomial
/// `psi_n^{(a)}(x,y) = sum_k [n k] q^{k(k-n)} (a q^{1-k};q)_k x^k y^{n-k}`.
pub fn hahn2_psi(n: usize, a: &ExactScalar, x: &ExactScalar, y: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let (xp, yp) = (powers(x, n), powers(y, n));
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        let (ki, ni) = (k as i64, n as i64);
        let shifted = a * q.pow(1 - ki)?;
        sum += &bin[k] * q.pow(ki * (ki - ni))? * qpoch(&shifted, q, k) * &xp[k] * &yp[n - k];
    }
    Ok(sum)
}

/// Trivariate polynomial
/// `F_n(x,y,z) = (-1)^n q^{-binom(n,2)} sum_k [n k] (-1)^k q^{binom(k,2)} z^k P_{n-k}(y,x)`.
pub fn trivariate_f(n: usize, x: &ExactScalar, y: &ExactScalar, z: &ExactScalar, q: &ExactScalar) -> Result<ExactScalar> {
    let bin = qbinom_row(n, q)?;
    let zp = powers(z, n);
    let p = cauchy_p_table(n, y, x, q);
    let mut sum = ExactScalar::zero();
    for k in 0..=n {
        sum += &bin[k] * ExactScalar::sign_power(k as u64) * q.pow(binom2(k as u64))? * &zp[k] * &p[n - k];
    }
    Ok(ExactScalar::sign_power(n as u64) * q.pow(-binom2(n as u64))? * sum)
}
