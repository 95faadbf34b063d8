//! Hand-derived values for the building blocks.

use qhyper::hyper::{rphis_series_in_t, rphis_terminating};
use qhyper::polyfam::{asc_phi, asc_psi, cauchy_p, psi_general, FamilyPoint, ParamVector};
use qhyper::qdiff::{theta_basis, CauchyPoly};
use qhyper::scalar::{qbinom, qpoch, qpoch_inf};
use qhyper::tseries::{cauchy_ratio_series, euler_inverse_series, euler_product_series};
use qhyper::ExactScalar;

fn r(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

#[test]
fn pochhammer_values() {
    // (1/2;1/3)_2 = (1 - 1/2)(1 - 1/6)
    assert_eq!(qpoch(&r(1, 2), &r(1, 3), 2), r(5, 12));
    assert_eq!(qpoch(&r(7, 3), &r(1, 3), 0), r(1, 1));
    // (q^{-2};q)_3 contains the factor 1 - q^{-2} q^2
    assert!(qpoch(&r(4, 1), &r(1, 2), 3).is_zero());
}

#[test]
fn gaussian_binomials() {
    // [4 2]_q = (1 + q^2)(1 + q + q^2)
    assert_eq!(qbinom(4, 2, &r(2, 1)).unwrap(), r(35, 1));
    assert_eq!(qbinom(4, 2, &r(1, 2)).unwrap(), r(5, 4) * r(7, 4));
    assert!(qbinom(2, 3, &r(1, 2)).unwrap().is_zero());
}

#[test]
fn infinite_product_converges_to_known_value() {
    // (0;q)_inf = 1 and (a;q)_inf / (aq;q)_inf = 1 - a
    let eps = ExactScalar::pow2(-60);
    let q = r(1, 3);
    assert_eq!(qpoch_inf(&ExactScalar::zero(), &q, &eps).unwrap().value, r(1, 1));
    let a = r(2, 5);
    let full = qpoch_inf(&a, &q, &eps).unwrap().value;
    let tail = qpoch_inf(&(&a * &q), &q, &eps).unwrap().value;
    let ratio = full / tail;
    assert!((ratio - r(3, 5)).abs() < ExactScalar::pow2(-50));
}

#[test]
fn cauchy_polynomial() {
    assert_eq!(cauchy_p(2, &r(1, 1), &r(1, 2), &r(1, 3)), r(5, 12));
    assert_eq!(cauchy_p(0, &r(9, 1), &r(4, 1), &r(1, 3)), r(1, 1));
}

#[test]
fn euler_expansions() {
    let q = r(1, 2);
    let e = euler_product_series(&r(1, 1), &q, 2).unwrap();
    assert_eq!(e.coeffs(), &[r(1, 1), r(-2, 1), r(4, 3)]);
    let inv = euler_inverse_series(&r(1, 1), &q, 2).unwrap();
    assert_eq!(inv.coeffs(), &[r(1, 1), r(2, 1), r(8, 3)]);
    let zero = euler_product_series(&ExactScalar::zero(), &q, 4).unwrap();
    assert_eq!(zero.coeffs(), &[r(1, 1), r(0, 1), r(0, 1), r(0, 1), r(0, 1)]);
}

#[test]
fn cauchy_ratio_coefficients() {
    // P_n(x,y)/(q;q)_n at x = 1/2, y = 1/3, q = 1/4
    let s = cauchy_ratio_series(&r(1, 2), &r(1, 3), &r(1, 4), 2).unwrap();
    assert_eq!(s.coeffs(), &[r(1, 1), r(2, 9), r(8, 81)]);
}

#[test]
fn general_polynomial_low_degrees() {
    let pv = ParamVector::empty();
    let q = r(1, 2);
    let at = |n| psi_general(&FamilyPoint::new(n, r(2, 1), r(1, 1), r(3, 1)), &pv, &q).unwrap();
    assert_eq!(at(0), r(1, 1));
    // Psi_1 = x + z - y
    assert_eq!(at(1), r(4, 1));
    // Psi_2 = q^{-1}[(y - x)(y - qx) - (1 + q)(y - x) z + q z^2]
    assert_eq!(at(2), r(18, 1));
}

#[test]
fn theta_on_low_basis_elements() {
    let q = r(1, 3);
    // Theta (y - x) = -(1 - q)
    let t = theta_basis(&CauchyPoly::basis(1), 1, &q).unwrap();
    assert_eq!(t, CauchyPoly::monomial(0, r(-2, 3)));
    // Theta^2 P_2 = (1 - q)(1 - q^2)
    let t = theta_basis(&CauchyPoly::basis(2), 2, &q).unwrap();
    assert_eq!(t, CauchyPoly::monomial(0, r(16, 27)));
    assert_eq!(theta_basis(&CauchyPoly::basis(1), 2, &q).unwrap(), CauchyPoly::default());
}

#[test]
fn one_phi_zero_is_a_cauchy_ratio() {
    // 1phi0(a;-;q;ct) = (act;q)_inf / (ct;q)_inf
    let (q, a, c) = (r(1, 3), r(5, 7), r(2, 9));
    let lhs = rphis_series_in_t(&ParamVector::new(vec![a.clone()], vec![]), &q, &c, 6).unwrap();
    let rhs = cauchy_ratio_series(&c, &(&a * &c), &q, 6).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn terminating_sum_is_q_chu_vandermonde() {
    // 2phi1(q^{-n}, b; c; q; q) = (c/b;q)_n b^n / (c;q)_n
    let (q, b, c) = (r(1, 2), r(3, 5), r(7, 4));
    let n = 4;
    let pv = ParamVector::new(vec![q.pow(-n).unwrap(), b.clone()], vec![c.clone()]);
    let lhs = rphis_terminating(&pv, &q, &q).unwrap();
    let rhs = qpoch(&(&c / &b), &q, n as usize) * b.powu(n as u64) / qpoch(&c, &q, n as usize);
    assert_eq!(lhs, rhs);
}

#[test]
fn al_salam_carlitz_values() {
    let (a, x, q) = (r(2, 3), r(5, 2), r(1, 4));
    // 1 + (1 + q)(1 - a) x + (1 - a)(1 - aq) x^2
    assert_eq!(asc_phi(2, &a, &x, &q).unwrap(), r(34, 9));
    // 1 + (1 - a) x
    assert_eq!(asc_psi(1, &a, &x, &q).unwrap(), r(11, 6));
    // 1 + (1 + q) q^{-1} (1 - a) x + (1 - a/q)(1 - a) x^2
    assert_eq!(asc_psi(2, &a, &x, &q).unwrap(), r(61, 36));
}
