//! Identities for the operator `Theta` and the terminating sums used with it.

use super::{coeffs, draw_pv, pole_span};
use crate::error::Result;
use crate::hyper::{rphis_series_in_t, rphis_terminating};
use crate::polyfam::{cauchy_p, psi_general, psi_prefactor, FamilyPoint, ParamVector};
use crate::qdiff::{
    evaluate_series, op_apply_poly, op_apply_series, shifted_cauchy_series, theta_basis, theta_pointwise_power, theta_series, CauchyPoly,
    CauchySeries,
};
use crate::scalar::{qfactorials, qpoch, ExactScalar, Mode};
use crate::tseries::{euler_inverse_series, euler_product_series, finite_product_series, ScalarSeries};
use crate::verify::sample::{avoids_poles, off_lattice};
use crate::verify::{IdentitySpec, ParamSample, RunConfig, Sampler};

const CHU_MAX: usize = 20;
const LEMMA_DEGREE: usize = 8;
const CROSSVAL_DEGREE: usize = 8;
const EXTENDED_SHIFTS: usize = 3;

fn draw_chu(s: &mut Sampler, _: &RunConfig) -> Option<ParamSample> {
    let p = ParamSample::new().with("q", s.q_formal()).with("a", s.rational()).with("c", s.rational());
    avoids_poles(p.get("c"), p.q(), CHU_MAX + 1).then_some(p)
}

fn chu_pv(p: &ParamSample, n: usize) -> Result<ParamVector> {
    Ok(ParamVector::new(vec![p.q().pow(-(n as i64))?, p.get("a").clone()], vec![p.get("c").clone()]))
}

/// `2Phi1[q^{-n}, a; c; q; q] = (c/a;q)_n a^n / (c;q)_n` for `n <= 20`.
pub fn chu_vandermonde_first() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "chu-vandermonde-II6",
        Mode::Formal,
        draw_chu,
        |p, _| (0..=CHU_MAX).map(|n| rphis_terminating(&chu_pv(p, n)?, p.q(), p.q())).collect(),
        |p, _| {
            let (q, a, c) = (p.q(), p.get("a"), p.get("c"));
            Ok((0..=CHU_MAX).map(|n| qpoch(&(c / a), q, n) * a.powu(n as u64) / qpoch(c, q, n)).collect())
        },
    )]
}

/// `2Phi1[q^{-n}, a; c; q; c q^n / a] = (c/a;q)_n / (c;q)_n` for `n <= 20`.
pub fn chu_vandermonde_second() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "chu-vandermonde-II7",
        Mode::Formal,
        draw_chu,
        |p, _| {
            let (q, a, c) = (p.q(), p.get("a"), p.get("c"));
            (0..=CHU_MAX).map(|n| rphis_terminating(&chu_pv(p, n)?, q, &(c * q.powu(n as u64) / a))).collect()
        },
        |p, _| {
            let (q, a, c) = (p.q(), p.get("a"), p.get("c"));
            Ok((0..=CHU_MAX).map(|n| qpoch(&(c / a), q, n) / qpoch(c, q, n)).collect())
        },
    )]
}

fn draw_op(s: &mut Sampler, cfg: &RunConfig) -> Option<ParamSample> {
    let q = s.q_formal();
    let (r, sl) = (s.index(0, 3), s.index(0, 3));
    let pv = draw_pv(s, &q, r, sl, None, pole_span(cfg))?;
    Some(ParamSample::new().with("q", q).with("x", s.rational()).with("y", s.rational()).with("z", s.rational()).with_pv(pv))
}

fn point(p: &ParamSample, n: usize) -> FamilyPoint {
    FamilyPoint::new(n, p.get("x").clone(), p.get("y").clone(), p.get("z").clone())
}

/// `Psi_m (-1)^m q^{binom(m,2)}` for `m = k..=k+N`, divided by `(q;q)_{m-k}`.
fn shifted_psi_coeffs(p: &ParamSample, k: usize, order: usize) -> Result<ScalarSeries> {
    let q = p.q();
    let fact = qfactorials(q, order)?;
    ScalarSeries::try_from_fn(order, |n| Ok(psi_general(&point(p, n + k), &p.pv, q)? / psi_prefactor(n + k, q)? / &fact[n]))
}

/// `(x t;q)_inf/(y t;q)_inf sum_{j<=k} (q^{-k};q)_j (y t;q)_j q^j / ((q;q)_j (x t;q)_j) rPhi_s[a;b;q;z q^j t]`.
fn extended_rhs(p: &ParamSample, k: usize, order: usize) -> Result<ScalarSeries> {
    let (q, x, y, z) = (p.q(), p.get("x"), p.get("y"), p.get("z"));
    let qk = q.pow(-(k as i64))?;
    let fact = qfactorials(q, k)?;
    let mut sum = ScalarSeries::zero(order);
    for (j, fj) in fact.iter().enumerate() {
        let c = qpoch(&qk, q, j) * q.powu(j as u64) / fj;
        let ratio = finite_product_series(y, q, j, order).mul(&finite_product_series(x, q, j, order).inverse()?);
        let phi = rphis_series_in_t(&p.pv, q, &(z * q.powu(j as u64)), order)?;
        sum = sum.add(&ratio.mul(&phi).scale(&c));
    }
    let outer = euler_product_series(x, q, order)?.mul(&euler_inverse_series(y, q, order)?);
    Ok(outer.mul(&sum))
}

/// Operator form of the generating function for `Psi_n`:
/// on single basis polynomials, on the full Cauchy series, and on its
/// shifted versions.
pub fn lemma1() -> Vec<IdentitySpec> {
    let mut v = vec![
        IdentitySpec::sides(
            "lemma1-a",
            Mode::Formal,
            draw_op,
            |p, _| {
                let q = p.q();
                (0..=LEMMA_DEGREE)
                    .map(|n| {
                        let f = CauchyPoly::monomial(n, psi_prefactor(n, q)?);
                        Ok(op_apply_poly(&p.pv, p.get("z"), &f, q)?.evaluate(p.get("x"), p.get("y"), q))
                    })
                    .collect()
            },
            |p, _| (0..=LEMMA_DEGREE).map(|n| psi_general(&point(p, n), &p.pv, p.q())).collect(),
        ),
        IdentitySpec::sides(
            "lemma1-b",
            Mode::Formal,
            draw_op,
            |p, cfg| {
                let q = p.q();
                let f = op_apply_series(&p.pv, p.get("z"), &shifted_cauchy_series(0, q, cfg.order)?, q)?;
                Ok(coeffs(evaluate_series(&f, p.get("x"), p.get("y"), q)))
            },
            |p, cfg| {
                let (q, x, y) = (p.q(), p.get("x"), p.get("y"));
                let outer = euler_product_series(x, q, cfg.order)?.mul(&euler_inverse_series(y, q, cfg.order)?);
                Ok(coeffs(outer.mul(&rphis_series_in_t(&p.pv, q, p.get("z"), cfg.order)?)))
            },
        ),
    ];
    for k in 0..=EXTENDED_SHIFTS {
        v.push(IdentitySpec::sides(
            format!("lemma1-c/k={k}"),
            Mode::Formal,
            draw_op,
            move |p, cfg| {
                let q = p.q();
                let f = op_apply_series(&p.pv, p.get("z"), &shifted_cauchy_series(k, q, cfg.order)?, q)?;
                Ok(coeffs(evaluate_series(&f, p.get("x"), p.get("y"), q).shift(k)))
            },
            move |p, cfg| Ok(coeffs(extended_rhs(p, k, cfg.order)?)),
        ));
    }
    v
}

/// `t^k sum_n Psi_{n+k} (-1)^{n+k} q^{binom(n+k,2)} t^n/(q;q)_n` against its
/// finite-sum closed form, `k = 0..=3`.
pub fn thm1_extended_gf() -> Vec<IdentitySpec> {
    (0..=EXTENDED_SHIFTS)
        .map(|k| {
            IdentitySpec::sides(
                format!("thm1-extended-gf/k={k}"),
                Mode::Formal,
                draw_op,
                move |p, cfg| Ok(coeffs(shifted_psi_coeffs(p, k, cfg.order)?.shift(k))),
                move |p, cfg| Ok(coeffs(extended_rhs(p, k, cfg.order)?)),
            )
        })
        .collect()
}

fn flatten(f: &CauchySeries, width: usize) -> Vec<ExactScalar> {
    f.coeffs().iter().flat_map(|c| (0..=width).map(move |m| c.coeff(m))).collect()
}

/// `Theta^k` acting on `(x t;q)_inf/(y t;q)_inf` multiplies it by `(-t)^k`.
pub fn theta_eigen() -> Vec<IdentitySpec> {
    (0..=EXTENDED_SHIFTS)
        .map(|k| {
            IdentitySpec::sides(
                format!("theta-eigen/k={k}"),
                Mode::Formal,
                |s, _| Some(ParamSample::new().with("q", s.q_formal())),
                move |p, cfg| {
                    let f = shifted_cauchy_series(0, p.q(), cfg.order)?;
                    Ok(flatten(&theta_series(&f, k, p.q())?, cfg.order))
                },
                move |p, cfg| {
                    let f = shifted_cauchy_series(0, p.q(), cfg.order)?;
                    let sign = ExactScalar::sign_power(k as u64);
                    Ok(flatten(&f.shift(k).scale(&sign), cfg.order))
                },
            )
        })
        .collect()
}

/// Basis rule against the nested difference quotient at random points,
/// every `k <= n <= 8`.
pub fn theta_crossval() -> Vec<IdentitySpec> {
    vec![IdentitySpec::sides(
        "theta-crossval",
        Mode::Formal,
        |s, _| {
            let q = s.q_formal();
            let (x, y) = (s.rational(), s.rational());
            let span = 2 * CROSSVAL_DEGREE as i64 + 2;
            off_lattice(&x, &y, &q, span).then(|| ParamSample::new().with("q", q).with("x", x).with("y", y))
        },
        |p, _| {
            let (q, x, y) = (p.q(), p.get("x"), p.get("y"));
            let mut out = Vec::new();
            for n in 0..=CROSSVAL_DEGREE {
                for k in 0..=n {
                    out.push(theta_basis(&CauchyPoly::basis(n), k, q)?.evaluate(x, y, q));
                }
            }
            Ok(out)
        },
        |p, _| {
            let (q, x, y) = (p.q(), p.get("x"), p.get("y"));
            let mut out = Vec::new();
            for n in 0..=CROSSVAL_DEGREE {
                let f = |a: &ExactScalar, b: &ExactScalar| Ok(cauchy_p(n, b, a, q));
                for k in 0..=n {
                    out.push(theta_pointwise_power(&f, k, x, y, q)?);
                }
            }
            Ok(out)
        },
    )]
}
