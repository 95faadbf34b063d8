use proptest::prelude::*;

use qhyper::polyfam::{psi_general, FamilyPoint, ParamVector};
use qhyper::qdiff::{theta_basis, theta_pointwise_power, CauchyPoly};
use qhyper::scalar::{qbinom, qbinom_row, qpoch, qpoch_shift};
use qhyper::tseries::{euler_inverse_series, euler_product_series, ScalarSeries};
use qhyper::verify::check::round_up_significant;
use qhyper::verify::sample::derive_seed;
use qhyper::verify::{sample_params, Constraint, Sampler};
use qhyper::ExactScalar;

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| ExactScalar::ratio(n, d))
}

fn nonzero() -> impl Strategy<Value = ExactScalar> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn base() -> impl Strategy<Value = ExactScalar> {
    nonzero().prop_filter("|q| != 1", |q| q.abs() != ExactScalar::one())
}

fn series(order: usize) -> impl Strategy<Value = ScalarSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(move |c| ScalarSeries::new(order, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_splits(a in rational(), q in base(), m in 0usize..6, n in 0usize..6) {
        let whole = qpoch(&a, &q, m + n);
        let split = qpoch(&a, &q, m) * qpoch(&(&a * q.powu(m as u64)), &q, n);
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn shift_identity_holds(a in nonzero(), q in base(), n in 0usize..8) {
        let (l, r) = qpoch_shift(&a, &q, n).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn gaussian_symmetry_and_pascal(q in base(), n in 1usize..10, k in 0usize..10) {
        prop_assume!(k <= n);
        prop_assert_eq!(qbinom(n, k, &q).unwrap(), qbinom(n, n - k, &q).unwrap());
        let lower = if k == 0 { ExactScalar::zero() } else { qbinom(n - 1, k - 1, &q).unwrap() };
        let pascal = lower + q.powu(k as u64) * qbinom(n - 1, k, &q).unwrap();
        prop_assert_eq!(qbinom(n, k, &q).unwrap(), pascal);
        prop_assert_eq!(&qbinom_row(n, &q).unwrap()[k], &qbinom(n, k, &q).unwrap());
    }

    #[test]
    fn series_ring_laws(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn series_inverse(a in series(7)) {
        prop_assume!(!a.coeff(0).is_zero());
        prop_assert_eq!(a.mul(&a.inverse().unwrap()), ScalarSeries::one(7));
    }

    #[test]
    fn euler_pair_is_inverse(c in rational(), q in base()) {
        let p = euler_product_series(&c, &q, 8).unwrap();
        let i = euler_inverse_series(&c, &q, 8).unwrap();
        prop_assert_eq!(p.mul(&i), ScalarSeries::one(8));
    }

    #[test]
    fn theta_rule_matches_difference_quotient(
        coeffs in prop::collection::vec(rational(), 1..5),
        k in 0usize..4,
        x in nonzero(),
        y in nonzero(),
        q in base(),
    ) {
        // the nested quotient divides by x q^{-j} - y q^i, so keep x off that lattice
        let lattice = (-6i64..=6).any(|j| x == &y * q.pow(j).unwrap());
        prop_assume!(!lattice);
        let f = CauchyPoly::from_coeffs(coeffs.into_iter().enumerate());
        let basis = theta_basis(&f, k, &q).unwrap().evaluate(&x, &y, &q);
        let eval = |x0: &ExactScalar, y0: &ExactScalar| Ok(f.evaluate(x0, y0, &q));
        let pointwise = theta_pointwise_power(&eval, k, &x, &y, &q).unwrap();
        prop_assert_eq!(basis, pointwise);
    }

    #[test]
    fn general_polynomial_has_degree_n_in_z(
        n in 0usize..6,
        x in rational(),
        y in rational(),
        q in base(),
        upper in prop::collection::vec(rational(), 0..3),
        lower in prop::collection::vec(rational(), 0..2),
    ) {
        let pv = ParamVector::new(upper, lower);
        // (n+1)-th finite difference in z at z = 0, 1, ..., n+1 vanishes
        let mut values = Vec::new();
        for j in 0..=(n + 1) {
            let pt = FamilyPoint::new(n, x.clone(), y.clone(), ExactScalar::from_int(j as i64));
            match psi_general(&pt, &pv, &q) {
                Ok(v) => values.push(v),
                Err(_) => return Ok(()),
            }
        }
        for _ in 0..=n {
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        prop_assert!(values[0].is_zero());
    }

    #[test]
    fn seeds_are_deterministic(trial in 0usize..50, master in any::<u64>()) {
        prop_assert_eq!(derive_seed("s", "id", trial, master), derive_seed("s", "id", trial, master));
        prop_assert_ne!(derive_seed("s", "id", trial, master), derive_seed("s", "id", trial + 1, master));
        let a = Sampler::for_trial("s", "id", trial, master).rationals(4);
        let b = Sampler::for_trial("s", "id", trial, master).rationals(4);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sampled_points_meet_their_constraints(seed in any::<u64>()) {
        let cons = vec![Constraint::new(&[("x", 1), ("y", 1)]), Constraint::new(&[("z", 2)])];
        let p = sample_params(&cons, &["x", "y", "z"], seed).unwrap();
        for c in &cons {
            prop_assert!(c.value(&p).unwrap().abs() <= Constraint::margin());
        }
    }

    #[test]
    fn reported_deviation_rounds_up(n in 1i64..1_000_000, d in 1i64..1_000_000) {
        let x = ExactScalar::ratio(n, d);
        let y = round_up_significant(&x, 24);
        prop_assert!(y >= x);
        prop_assert!((&y - &x) <= &x * ExactScalar::pow2(-23));
    }
}
