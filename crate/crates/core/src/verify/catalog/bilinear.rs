//! Bilinear generating functions and the transformation built from them.
//!
//! Left sides are exact polynomial coefficients in `t`; right sides contain
//! convergent sums over an auxiliary index and infinite products, so most of
//! these compare coefficientwise in numeric mode.

use super::{coeffs, draw_pv, poch_inf, r};
use crate::error::Result;
use crate::hyper::{rphis_series_in_t, sum_until_small, SumPolicy};
use crate::polyfam::{asc_phi, asc_psi};
use crate::polyfam::{cauchy_p, psi_general, FamilyPoint, ParamVector};
use crate::scalar::{binom2, qfactorials, qpoch, ExactScalar, Mode};
use crate::tseries::{euler_inverse_series, euler_product_series, finite_product_series, ScalarSeries};
use crate::verify::sample::off_lattice;
use crate::verify::{Constraint, IdentitySpec, ParamSample, RunConfig, Sampler};

/// Numeric sums reject lower parameters with a vanishing `(b;q)_k` up to here.
const NUMERIC_POLE_SPAN: usize = 200;

fn alpha_constraint() -> Vec<Constraint> {
    vec![Constraint::new(&[("alpha", 1), ("q", 1)])]
}

/// `q`, `alpha` and `x` for the bilinear sums; `x` stays off the lattice
/// `q^j` so that `(q/x;q)_m` never vanishes.
fn draw_core(s: &mut Sampler) -> Option<ParamSample> {
    let q = s.q_numeric();
    let alpha = s.bounded(&r(1, 2));
    let x = s.annulus(&r(1, 8), &ExactScalar::one());
    if !off_lattice(&x, &ExactScalar::one(), &q, 64) {
        return None;
    }
    Some(ParamSample::new().with("q", q).with("alpha", alpha).with("x", x))
}

fn lemma2_draw(s: &mut Sampler, _: &RunConfig) -> Option<ParamSample> {
    let p = ParamSample::new().with("q", s.q_formal());
    Some(p.with("alpha", s.rational()).with("x", s.rational()).with("lambda", s.rational()))
}

/// `sum_n phi_n^{(alpha)}(x) (l;q)_n t^n/(q;q)_n
///  = (l t;q)_inf/(t;q)_inf 2Phi1[l, alpha; l t; q; x t]`.
pub fn lemma2_phi() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "lemma2-phi",
        Mode::Formal,
        lemma2_draw,
        |p, cfg| {
            let (q, a, x, l) = (p.q(), p.get("alpha"), p.get("x"), p.get("lambda"));
            let fact = qfactorials(q, cfg.order)?;
            (0..=cfg.order).map(|n| Ok(asc_phi(n, a, x, q)? * qpoch(l, q, n) / &fact[n])).collect()
        },
        |p, cfg| {
            let (q, a, x, l) = (p.q(), p.get("alpha"), p.get("x"), p.get("lambda"));
            let n = cfg.order;
            let fact = qfactorials(q, n)?;
            let mut sum = ScalarSeries::zero(n);
            for (k, fk) in fact.iter().enumerate() {
                let c = qpoch(l, q, k) * qpoch(a, q, k) * x.powu(k as u64) / fk;
                let term = finite_product_series(l, q, k, n).inverse()?.shift(k).scale(&c);
                sum = sum.add(&term);
            }
            let one = ExactScalar::one();
            let outer = euler_product_series(l, q, n)?.mul(&euler_inverse_series(&one, q, n)?);
            Ok(coeffs(outer.mul(&sum)))
        },
    )]
}

/// `sum_n psi_n^{(alpha)}(x) (1/l;q)_n (l q)^n t^n/(q;q)_n
///  = (x q t;q)_inf/(l x q t;q)_inf
///    sum_k (1/l;q)_k (1/(alpha x);q)_k (alpha q)^k/(q;q)_k prod_{j<k} l x t/(l x t - q^j)`.
///
/// Every summand starts at `t^k`, so the sum is finite at any truncation
/// order and the identity is checked exactly.
pub fn lemma2_psi() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "lemma2-psi",
        Mode::Formal,
        lemma2_draw,
        |p, cfg| {
            let (q, a, x, l) = (p.q(), p.get("alpha"), p.get("x"), p.get("lambda"));
            let fact = qfactorials(q, cfg.order)?;
            let linv = l.inv()?;
            let lq = l * q;
            (0..=cfg.order).map(|n| Ok(asc_psi(n, a, x, q)? * qpoch(&linv, q, n) * lq.powu(n as u64) / &fact[n])).collect()
        },
        |p, cfg| {
            let (q, a, x, l) = (p.q(), p.get("alpha"), p.get("x"), p.get("lambda"));
            let n = cfg.order;
            let fact = qfactorials(q, n)?;
            let (linv, axinv) = (l.inv()?, (a * x).inv()?);
            let lx = l * x;
            let aq = a * q;
            let mut prod = ScalarSeries::one(n);
            let mut sum = ScalarSeries::zero(n);
            for (k, fk) in fact.iter().enumerate() {
                let c = qpoch(&linv, q, k) * qpoch(&axinv, q, k) * aq.powu(k as u64) / fk;
                sum = sum.add(&prod.scale(&c));
                // l x t / (l x t - q^k)
                let qk = q.powu(k as u64);
                let factor = ScalarSeries::linear_inverse(n, &-&qk, &lx)?.shift(1).scale(&lx);
                prod = prod.mul(&factor);
            }
            let outer = euler_product_series(&(x * q), q, n)?.mul(&euler_inverse_series(&(&lx * q), q, n)?);
            Ok(coeffs(outer.mul(&sum)))
        },
    )]
}

/// Parameters of the bilinear sum
/// `sum_n psi_n^{(alpha)}(x) Psi_n(u,v,z) (-1)^n q^{binom(n+1,2)} t^n/(q;q)_n`.
struct Bilinear<'a> {
    pv: &'a ParamVector,
    u: &'a ExactScalar,
    v: &'a ExactScalar,
    z: &'a ExactScalar,
    x: &'a ExactScalar,
    alpha: &'a ExactScalar,
    q: &'a ExactScalar,
}

impl Bilinear<'_> {
    fn lhs(&self, order: usize) -> Result<Vec<ExactScalar>> {
        let q = self.q;
        let fact = qfactorials(q, order)?;
        (0..=order)
            .map(|n| {
                let pt = FamilyPoint::new(n, self.u.clone(), self.v.clone(), self.z.clone());
                let sign = ExactScalar::sign_power(n as u64);
                Ok(asc_psi(n, self.alpha, self.x, q)? * psi_general(&pt, self.pv, q)? * sign * q.pow(binom2(n as u64 + 1))? / &fact[n])
            })
            .collect()
    }

    /// `(q/x;q)_inf/(alpha q;q)_inf (u x q t;q)_inf/(v x q t;q)_inf
    ///  sum_m (-1)^m q^{binom(m,2)} (1/(alpha x);q)_m (alpha q)^m / ((q/x;q)_m (q;q)_m)
    ///        prod_{j<m} (q^j - u x t)/(q^j - v x t) rPhi_s[a;b;q; x z q^{1-m} t]`.
    fn rhs(&self, cfg: &RunConfig) -> Result<ScalarSeries> {
        let (q, x, n) = (self.q, self.x, cfg.order);
        let one = ExactScalar::one();
        let axinv = (self.alpha * x).inv()?;
        let qx = q / x;
        let aq = self.alpha * q;
        let ux = self.u * x;
        let vx = self.v * x;
        let xz = x * self.z;
        let mut coef = ExactScalar::one();
        let mut prod = ScalarSeries::one(n);
        let mut qm = ExactScalar::one();
        let sum = sum_until_small(&cfg.policy(), |m| {
            let phi = rphis_series_in_t(self.pv, q, &(&xz * q.pow(1 - m as i64)?), n)?;
            let term = prod.mul(&phi).scale(&coef);
            let next_qm = &qm * q;
            coef = &coef * -&qm * (&one - &qm * &axinv) * &aq / ((&one - &qm * &qx) * (&one - &next_qm));
            let factor = ScalarSeries::poly(n, &[qm.clone(), -&ux]).mul(&ScalarSeries::linear_inverse(n, &qm, &-&vx)?);
            prod = prod.mul(&factor);
            qm = next_qm;
            Ok(term)
        })?;
        let pref = poch_inf(&qx, q, cfg)? / poch_inf(&aq, q, cfg)?;
        let outer = euler_product_series(&(&ux * q), q, n)?.mul(&euler_inverse_series(&(&vx * q), q, n)?);
        Ok(outer.mul(&sum.value).scale(&pref))
    }
}

fn draw_thm3(s: &mut Sampler, _: &RunConfig) -> Option<ParamSample> {
    let mut p = draw_core(s)?;
    let q = p.q().clone();
    let (r_, s_) = (s.index(0, 3), s.index(0, 3));
    let pv = draw_pv(s, &q, r_, s_, Some(&ExactScalar::one()), NUMERIC_POLE_SPAN)?;
    let one = ExactScalar::one();
    p.set("u", s.bounded(&one));
    p.set("v", s.bounded(&one));
    p.set("z", s.bounded(&one));
    Some(p.with_pv(pv))
}

fn thm3_of(p: &ParamSample) -> Bilinear<'_> {
    Bilinear { pv: &p.pv, u: p.get("u"), v: p.get("v"), z: p.get("z"), x: p.get("x"), alpha: p.get("alpha"), q: p.q() }
}

/// Bilinear generating function of `psi_n^{(alpha)}(x)` and `Psi_n(u,v,z)`.
pub fn thm3_bilinear() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "thm3-bilinear",
        Mode::Numeric,
        draw_thm3,
        |p, cfg| thm3_of(p).lhs(cfg.order),
        |p, cfg| Ok(coeffs(thm3_of(p).rhs(cfg)?)),
    )
    .constrained(alpha_constraint())]
}

fn draw_cor1(s: &mut Sampler, _: &RunConfig) -> Option<ParamSample> {
    let p = draw_core(s)?;
    let a = s.annulus(&r(1, 4), &ExactScalar::one());
    let y = s.bounded(&ExactScalar::one());
    Some(p.with("a", a).with("y", y))
}

/// `(q/x;q)_inf/(alpha q;q)_inf (x y q t;q)_inf (x q t;q)_inf/(a x y q t;q)_inf
///  sum_k (1/(alpha x);q)_k (alpha x q/a)^k / ((q/x;q)_k (q;q)_k)
///        prod_{j<k} a (x y t - q^j)(t - q^j/x)/(a x y t - q^j)`.
fn cor1_rhs(p: &ParamSample, cfg: &RunConfig) -> Result<ScalarSeries> {
    let (q, x, y, a, alpha) = (p.q(), p.get("x"), p.get("y"), p.get("a"), p.get("alpha"));
    let n = cfg.order;
    let one = ExactScalar::one();
    let axinv = (alpha * x).inv()?;
    let qx = q / x;
    let ratio = alpha * x * q / a;
    let xy = x * y;
    let axy = a * &xy;
    let mut coef = ExactScalar::one();
    let mut prod = ScalarSeries::one(n);
    let mut qk = ExactScalar::one();
    let sum = sum_until_small(&cfg.policy(), |_| {
        let term = prod.scale(&coef);
        let next_qk = &qk * q;
        coef = &coef * (&one - &qk * &axinv) * &ratio / ((&one - &qk * &qx) * (&one - &next_qk));
        let num = ScalarSeries::poly(n, &[-&qk, xy.clone()]).mul(&ScalarSeries::poly(n, &[-(&qk / x), one.clone()]));
        let factor = num.mul(&ScalarSeries::linear_inverse(n, &-&qk, &axy)?).scale(a);
        prod = prod.mul(&factor);
        qk = next_qk;
        Ok(term)
    })?;
    let pref = poch_inf(&qx, q, cfg)? / poch_inf(&(alpha * q), q, cfg)?;
    let outer =
        euler_product_series(&(&xy * q), q, n)?.mul(&euler_product_series(&(x * q), q, n)?).mul(&euler_inverse_series(&(&axy * q), q, n)?);
    Ok(outer.mul(&sum.value).scale(&pref))
}

/// Bilinear generating function of two Al-Salam–Carlitz-type polynomials,
/// `psi_n^{(alpha)}(x) psi_n^{(a)}(y)`, plus its agreement with the general
/// bilinear sum at `Psi^{(0;0)}(y, a y, 1) = psi^{(a)}(y)`.
pub fn cor1_bilinear_hahn() -> Vec<IdentitySpec> {
    let zero_pv = || ParamVector::new(vec![ExactScalar::zero()], vec![ExactScalar::zero()]);
    vec![
        IdentitySpec::sides(
            "cor1-bilinear-hahn",
            Mode::Numeric,
            draw_cor1,
            |p, cfg| {
                let (q, x, y, a, alpha) = (p.q(), p.get("x"), p.get("y"), p.get("a"), p.get("alpha"));
                let fact = qfactorials(q, cfg.order)?;
                (0..=cfg.order)
                    .map(|n| {
                        let sign = ExactScalar::sign_power(n as u64);
                        Ok(asc_psi(n, alpha, x, q)? * asc_psi(n, a, y, q)? * sign * q.pow(binom2(n as u64 + 1))? / &fact[n])
                    })
                    .collect()
            },
            |p, cfg| Ok(coeffs(cor1_rhs(p, cfg)?)),
        )
        .constrained(alpha_constraint()),
        IdentitySpec::sides(
            "cor1-bilinear-hahn/vs-thm3",
            Mode::Numeric,
            draw_cor1,
            move |p, cfg| {
                let pv = zero_pv();
                let ay = p.get("a") * p.get("y");
                let one = ExactScalar::one();
                let b = Bilinear { pv: &pv, u: p.get("y"), v: &ay, z: &one, x: p.get("x"), alpha: p.get("alpha"), q: p.q() };
                Ok(coeffs(b.rhs(cfg)?))
            },
            |p, cfg| Ok(coeffs(cor1_rhs(p, cfg)?)),
        )
        .constrained(alpha_constraint()),
    ]
}

/// `B(n) = sum_{k>=n} (1/(alpha x);q)_k (alpha q)^k/(q;q)_k (q^{-k};q)_n q^{nk}/(q;q)_n`.
///
/// `B(n)` multiplies series whose `t^N` coefficient grows like `q^{-nN}`, so
/// it is summed to within `2^-4 epsilon |q|^{nN}` and rounded to a dyadic
/// at that scale.
fn transform_weight(n: usize, alpha: &ExactScalar, x: &ExactScalar, q: &ExactScalar, cfg: &RunConfig) -> Result<ExactScalar> {
    let one = ExactScalar::one();
    let axinv = (alpha * x).inv()?;
    let aq = alpha * q;
    let qn = q.powu(n as u64);
    let eps = cfg.epsilon() * r(1, 16) * q.abs().powu((n * cfg.order) as u64);
    let qinv = q.pow(-(n as i64))?;
    let mut term = qpoch(&axinv, q, n) * aq.powu(n as u64) / qpoch(q, q, n) * qpoch(&qinv, q, n) * qn.powu(n as u64) / qpoch(q, q, n);
    let mut qk = qn.clone();
    let s = sum_until_small(&SumPolicy::new(eps.clone()), |_| {
        let out = term.clone();
        let next = &qk * q;
        let shift = (&one - next.inv()?) / (&one - &qn / &next);
        term = &term * (&one - &qk * &axinv) * &aq / (&one - &next) * &qn * shift;
        qk = next;
        Ok(out)
    })?;
    let e = eps.numer().bits() as i64 - eps.denom().bits() as i64 - 2;
    Ok(s.value.round_to_pow2(e))
}

/// `sum_n B(n) (x q^{1-n} t;q)_inf/(x l q^{1-n} t;q)_inf [rPhi_s[a;b;q;x z q^{1-n} t]]`.
fn transform_rhs(p: &ParamSample, cfg: &RunConfig, with_phi: bool) -> Result<ScalarSeries> {
    let (q, x, l, alpha) = (p.q(), p.get("x"), p.get("lambda"), p.get("alpha"));
    let n = cfg.order;
    let sum = sum_until_small(&cfg.policy(), |m| {
        let shift = q.pow(1 - m as i64)?;
        let xs = x * &shift;
        let mut term = euler_product_series(&xs, q, n)?.mul(&euler_inverse_series(&(&xs * l), q, n)?);
        if with_phi {
            term = term.mul(&rphis_series_in_t(&p.pv, q, &(&xs * p.get("z")), n)?);
        }
        Ok(term.scale(&transform_weight(m, alpha, x, q, cfg)?))
    })?;
    Ok(sum.value)
}

fn draw_thm4(s: &mut Sampler, _: &RunConfig) -> Option<ParamSample> {
    let mut p = draw_core(s)?;
    let q = p.q().clone();
    let (r_, s_) = (s.index(0, 3), s.index(0, 3));
    let pv = draw_pv(s, &q, r_, s_, Some(&ExactScalar::one()), NUMERIC_POLE_SPAN)?;
    let one = ExactScalar::one();
    p.set("lambda", s.bounded(&one));
    p.set("z", s.bounded(&one));
    Some(p.with_pv(pv))
}

/// Transformation obtained by expanding the bilinear sum at `u = 1`,
/// `v = lambda`, with and without the `rPhi_s` factor, and its agreement
/// with the bilinear closed form.
pub fn thm4_transform() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec::sides(
            "thm4-transform/cauchy",
            Mode::Numeric,
            draw_thm4,
            |p, cfg| {
                let (q, x, l, alpha) = (p.q(), p.get("x"), p.get("lambda"), p.get("alpha"));
                let fact = qfactorials(q, cfg.order)?;
                let one = ExactScalar::one();
                (0..=cfg.order).map(|n| Ok(asc_psi(n, alpha, x, q)? * q.powu(n as u64) * cauchy_p(n, l, &one, q) / &fact[n])).collect()
            },
            |p, cfg| Ok(coeffs(transform_rhs(p, cfg, false)?)),
        )
        .constrained(alpha_constraint()),
        IdentitySpec::sides(
            "thm4-transform/general",
            Mode::Numeric,
            draw_thm4,
            |p, cfg| {
                let one = ExactScalar::one();
                Bilinear { pv: &p.pv, u: &one, v: p.get("lambda"), z: p.get("z"), x: p.get("x"), alpha: p.get("alpha"), q: p.q() }
                    .lhs(cfg.order)
            },
            |p, cfg| Ok(coeffs(transform_rhs(p, cfg, true)?)),
        )
        .constrained(alpha_constraint()),
        IdentitySpec::sides(
            "thm4-transform/vs-thm3",
            Mode::Numeric,
            draw_thm4,
            |p, cfg| {
                let one = ExactScalar::one();
                let b = Bilinear { pv: &p.pv, u: &one, v: p.get("lambda"), z: p.get("z"), x: p.get("x"), alpha: p.get("alpha"), q: p.q() };
                Ok(coeffs(b.rhs(cfg)?))
            },
            |p, cfg| Ok(coeffs(transform_rhs(p, cfg, true)?)),
        )
        .constrained(alpha_constraint()),
    ]
}
