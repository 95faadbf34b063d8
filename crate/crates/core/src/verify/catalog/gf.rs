//! Exact generating-function identities, compared coefficient by coefficient.

use super::{coeffs, draw_pv, pole_span};
use crate::hyper::rphis_series_in_t;
use crate::polyfam::{cao_phi3, cao_psi3, v_poly};
use crate::polyfam::{cauchy_p, psi_general, psi_prefactor, FamilyPoint, ParamVector};
use crate::scalar::{binom2, qfactorials, qpoch, ExactScalar, Mode};
use crate::tseries::{euler_inverse_series, euler_product_series, ScalarSeries};
use crate::verify::sample::avoids_poles;
use crate::verify::{IdentitySpec, ParamSample};

fn base(s: &mut crate::verify::Sampler) -> ParamSample {
    ParamSample::new().with("q", s.q_formal())
}

/// `(a q^{-n};q)_n = (q/a;q)_n (-a)^n q^{-n - binom(n,2)}`.
pub fn shift_identity() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "shift-identity",
        Mode::Formal,
        |s, _| {
            let n = s.index(0, 20);
            Some(base(s).with("a", s.rational()).with("n", ExactScalar::from_int(n as i64)))
        },
        |p, _| {
            let (q, a, n) = (p.q(), p.get("a"), p.get_usize("n"));
            Ok(vec![qpoch(&(a * q.pow(-(n as i64))?), q, n)])
        },
        |p, _| {
            let (q, a, n) = (p.q(), p.get("a"), p.get_usize("n"));
            let closed = qpoch(&q.checked_div(a)?, q, n) * (-a).powu(n as u64) * q.pow(-(n as i64) - binom2(n as u64))?;
            Ok(vec![closed])
        },
    )]
}

/// `(c t;q)_inf / (c t;q)_inf = 1`.
pub fn euler_pair() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "euler-pair",
        Mode::Formal,
        |s, _| Some(base(s).with("c", s.rational())),
        |p, cfg| {
            let (q, c) = (p.q(), p.get("c"));
            Ok(coeffs(euler_product_series(c, q, cfg.order)?.mul(&euler_inverse_series(c, q, cfg.order)?)))
        },
        |_, cfg| Ok(coeffs(ScalarSeries::one(cfg.order))),
    )]
}

/// `sum_k (a;q)_k t^k / (q;q)_k = (a t;q)_inf / (t;q)_inf`, plus the same
/// expansion produced by the series engine.
pub fn q_binomial_theorem() -> Vec<IdentitySpec> {
    let direct = |p: &ParamSample, cfg: &crate::verify::RunConfig| -> crate::Result<Vec<ExactScalar>> {
        let (q, a) = (p.q(), p.get("a"));
        let fact = qfactorials(q, cfg.order)?;
        Ok((0..=cfg.order).map(|k| qpoch(a, q, k) / &fact[k]).collect())
    };
    vec![
        IdentitySpec::sides(
            "q-binomial-theorem",
            Mode::Formal,
            |s, _| Some(base(s).with("a", s.rational())),
            direct,
            |p, cfg| {
                let (q, a) = (p.q(), p.get("a"));
                let one = ExactScalar::one();
                Ok(coeffs(euler_product_series(a, q, cfg.order)?.mul(&euler_inverse_series(&one, q, cfg.order)?)))
            },
        ),
        IdentitySpec::sides(
            "q-binomial-theorem/series-engine",
            Mode::Formal,
            |s, _| Some(base(s).with("a", s.rational())),
            direct,
            |p, cfg| {
                let pv = ParamVector::new(vec![p.get("a").clone()], vec![]);
                Ok(coeffs(rphis_series_in_t(&pv, p.q(), &ExactScalar::one(), cfg.order)?))
            },
        ),
    ]
}

/// `sum_n P_n(x,y) t^n / (q;q)_n = (y t;q)_inf / (x t;q)_inf`.
pub fn cauchy_gf() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "cauchy-gf",
        Mode::Formal,
        |s, _| Some(base(s).with("x", s.rational()).with("y", s.rational())),
        |p, cfg| {
            let (q, x, y) = (p.q(), p.get("x"), p.get("y"));
            let fact = qfactorials(q, cfg.order)?;
            Ok((0..=cfg.order).map(|n| cauchy_p(n, x, y, q) / &fact[n]).collect())
        },
        |p, cfg| {
            let (q, x, y) = (p.q(), p.get("x"), p.get("y"));
            Ok(coeffs(euler_product_series(y, q, cfg.order)?.mul(&euler_inverse_series(x, q, cfg.order)?)))
        },
    )]
}

/// `sum_n P_n(x,y) (l;q)_n t^n / (q;q)_n = 2Phi1[l, y/x; 0; q; x t]`.
pub fn cauchy_sa_gf() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "cauchy-sa-gf",
        Mode::Formal,
        |s, _| Some(base(s).with("x", s.rational()).with("y", s.rational()).with("lambda", s.rational())),
        |p, cfg| {
            let (q, x, y, l) = (p.q(), p.get("x"), p.get("y"), p.get("lambda"));
            let fact = qfactorials(q, cfg.order)?;
            Ok((0..=cfg.order).map(|n| cauchy_p(n, x, y, q) * qpoch(l, q, n) / &fact[n]).collect())
        },
        |p, cfg| {
            let (q, x, y, l) = (p.q(), p.get("x"), p.get("y"), p.get("lambda"));
            let pv = ParamVector::new(vec![l.clone(), y / x], vec![ExactScalar::zero()]);
            Ok(coeffs(rphis_series_in_t(&pv, q, x, cfg.order)?))
        },
    )]
}

fn draw_abc(s: &mut crate::verify::Sampler, cfg: &crate::verify::RunConfig) -> Option<ParamSample> {
    let p = base(s).with("a", s.rational()).with("b", s.rational()).with("c", s.rational());
    let p = p.with("x", s.rational()).with("y", s.rational());
    avoids_poles(p.get("c"), p.q(), pole_span(cfg)).then_some(p)
}

fn abc(p: &ParamSample) -> ParamVector {
    ParamVector::new(vec![p.get("a").clone(), p.get("b").clone()], vec![p.get("c").clone()])
}

pub(super) fn cao_phi_lhs(p: &ParamSample, cfg: &crate::verify::RunConfig) -> crate::Result<Vec<ExactScalar>> {
    let q = p.q();
    let fact = qfactorials(q, cfg.order)?;
    (0..=cfg.order).map(|n| Ok(cao_phi3(n, p.get("a"), p.get("b"), p.get("c"), p.get("x"), p.get("y"), q)? / &fact[n])).collect()
}

pub(super) fn cao_psi_lhs(p: &ParamSample, cfg: &crate::verify::RunConfig) -> crate::Result<Vec<ExactScalar>> {
    let q = p.q();
    let fact = qfactorials(q, cfg.order)?;
    (0..=cfg.order)
        .map(|n| {
            let v = cao_psi3(n, p.get("a"), p.get("b"), p.get("c"), p.get("x"), p.get("y"), q)?;
            Ok(v / psi_prefactor(n, q)? / &fact[n])
        })
        .collect()
}

/// `sum_n phi_n^{(a,b,c)}(x,y) t^n/(q;q)_n = 2Phi1[a,b;c;q;x t] / (y t;q)_inf`.
pub fn cao_gf_phi() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides("cao-gf-phi", Mode::Formal, draw_abc, cao_phi_lhs, |p, cfg| {
        let q = p.q();
        let f = rphis_series_in_t(&abc(p), q, p.get("x"), cfg.order)?;
        Ok(coeffs(f.mul(&euler_inverse_series(p.get("y"), q, cfg.order)?)))
    })]
}

/// `sum_n psi_n^{(a,b,c)}(x,y) (-1)^n q^{binom(n,2)} t^n/(q;q)_n = (y t;q)_inf 2Phi1[a,b;c;q;x t]`.
pub fn cao_gf_psi() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides("cao-gf-psi", Mode::Formal, draw_abc, cao_psi_lhs, |p, cfg| {
        let q = p.q();
        let f = rphis_series_in_t(&abc(p), q, p.get("x"), cfg.order)?;
        Ok(coeffs(f.mul(&euler_product_series(p.get("y"), q, cfg.order)?)))
    })]
}

/// The printed forms with `x` and `y` exchanged on the right; these fail.
pub(super) fn cao_printed() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec::sides("cao-gf-phi/printed", Mode::Formal, draw_abc, cao_phi_lhs, |p, cfg| {
            let q = p.q();
            let f = rphis_series_in_t(&abc(p), q, p.get("y"), cfg.order)?;
            Ok(coeffs(f.mul(&euler_inverse_series(p.get("x"), q, cfg.order)?)))
        })
        .remark("expected to fail: x and y are exchanged on the right-hand side"),
        IdentitySpec::sides("cao-gf-psi/printed", Mode::Formal, draw_abc, cao_psi_lhs, |p, cfg| {
            let q = p.q();
            let f = rphis_series_in_t(&abc(p), q, p.get("y"), cfg.order)?;
            Ok(coeffs(f.mul(&euler_product_series(p.get("x"), q, cfg.order)?)))
        })
        .remark("expected to fail: x and y are exchanged on the right-hand side"),
    ]
}

fn draw_v(upper_extra: bool) -> impl Fn(&mut crate::verify::Sampler, &crate::verify::RunConfig) -> Option<ParamSample> {
    move |s, cfg| {
        let q = s.q_formal();
        let lower = s.index(0, 2);
        let upper = if upper_extra { lower + 1 } else { s.index(0, 3) };
        let pv = draw_pv(s, &q, upper, lower, None, pole_span(cfg))?;
        Some(ParamSample::new().with("q", q).with("x", s.rational()).with("y", s.rational()).with("z", s.rational()).with_pv(pv))
    }
}

fn v_lhs(p: &ParamSample, cfg: &crate::verify::RunConfig) -> crate::Result<Vec<ExactScalar>> {
    let q = p.q();
    let fact = qfactorials(q, cfg.order)?;
    (0..=cfg.order).map(|n| Ok(v_poly(n, &p.pv, p.get("x"), p.get("y"), p.get("z"), q)? / &fact[n])).collect()
}

fn v_rhs(p: &ParamSample, cfg: &crate::verify::RunConfig) -> crate::Result<Vec<ExactScalar>> {
    let q = p.q();
    let ratio = euler_product_series(p.get("y"), q, cfg.order)?.mul(&euler_inverse_series(p.get("x"), q, cfg.order)?);
    Ok(coeffs(ratio.mul(&rphis_series_in_t(&p.pv, q, p.get("z"), cfg.order)?)))
}

/// `sum_n V_n(x,y,z) t^n/(q;q)_n = (y t;q)_inf/(x t;q)_inf rPhi_s[a;b;q;z t]`
/// for `r = s + 1`.
pub fn v_gf() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides("v-gf", Mode::Formal, draw_v(true), v_lhs, v_rhs)]
}

/// The same generating function with unrestricted arity; fails once
/// `r != s + 1` because `V_n` carries no bracket factor.
pub(super) fn v_general_arity() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides("v-gf/general-arity", Mode::Formal, draw_v(false), v_lhs, v_rhs).remark("expected to fail whenever r != s + 1")]
}

/// `sum_n Psi_n(x,y,z) (-1)^n q^{binom(n,2)} t^n/(q;q)_n = (x t;q)_inf/(y t;q)_inf rPhi_s[a;b;q;z t]`.
pub fn gf_psi() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "gf-psi",
        Mode::Formal,
        |s, cfg| {
            let q = s.q_formal();
            let (r, sl) = (s.index(0, 3), s.index(0, 3));
            let pv = draw_pv(s, &q, r, sl, None, pole_span(cfg))?;
            Some(ParamSample::new().with("q", q).with("x", s.rational()).with("y", s.rational()).with("z", s.rational()).with_pv(pv))
        },
        |p, cfg| {
            let q = p.q();
            let fact = qfactorials(q, cfg.order)?;
            (0..=cfg.order)
                .map(|n| {
                    let pt = FamilyPoint::new(n, p.get("x").clone(), p.get("y").clone(), p.get("z").clone());
                    Ok(psi_general(&pt, &p.pv, q)? / psi_prefactor(n, q)? / &fact[n])
                })
                .collect()
        },
        |p, cfg| {
            let q = p.q();
            let ratio = euler_product_series(p.get("x"), q, cfg.order)?.mul(&euler_inverse_series(p.get("y"), q, cfg.order)?);
            Ok(coeffs(ratio.mul(&rphis_series_in_t(&p.pv, q, p.get("z"), cfg.order)?)))
        },
    )]
}
