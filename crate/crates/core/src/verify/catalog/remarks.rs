//! Reductions of `Psi_n` to classical families, and diagnostics for printed
//! statements that do not hold as written.

use super::{gf, pole_span, rogers};
use crate::polyfam::reduction::{reduction_check, ReductionParams, ITEM_COUNT};
use crate::polyfam::{asc_phi, asc_psi, cao_phi3, cao_psi3};
use crate::scalar::{ExactScalar, Mode};
use crate::verify::sample::{avoids_poles, off_lattice};
use crate::verify::{IdentitySpec, ParamSample, RunConfig, Sampler, Verdict};

const REDUCTION_DEGREE: usize = 8;

fn draw_ax(s: &mut Sampler, _: &RunConfig) -> Option<ParamSample> {
    Some(ParamSample::new().with("q", s.q_formal()).with("a", s.rational()).with("x", s.rational()))
}

/// `phi^{(a,0,0)}(x,1)` is `phi_n^{(a)}(x)`, and `psi^{(1/a,0,0)}(a x, 1)`
/// is `psi_n^{(a)}(x)`.
pub fn remark1() -> Vec<IdentitySpec> {
    let zero = ExactScalar::zero;
    vec![
        IdentitySpec::sides(
            "remark1-phi",
            Mode::Formal,
            draw_ax,
            move |p, _| {
                let (q, a, x) = (p.q(), p.get("a"), p.get("x"));
                (0..=REDUCTION_DEGREE).map(|n| cao_phi3(n, a, &zero(), &zero(), x, &ExactScalar::one(), q)).collect()
            },
            |p, _| (0..=REDUCTION_DEGREE).map(|n| asc_phi(n, p.get("a"), p.get("x"), p.q())).collect(),
        ),
        IdentitySpec::sides(
            "remark1-psi",
            Mode::Formal,
            draw_ax,
            move |p, _| {
                let (q, a, x) = (p.q(), p.get("a"), p.get("x"));
                let ainv = a.inv()?;
                (0..=REDUCTION_DEGREE).map(|n| cao_psi3(n, &ainv, &zero(), &zero(), &(a * x), &ExactScalar::one(), q)).collect()
            },
            |p, _| (0..=REDUCTION_DEGREE).map(|n| asc_psi(n, p.get("a"), p.get("x"), p.q())).collect(),
        )
        .remark("argument rescaled to a*x"),
    ]
}

fn remark1_printed() -> IdentitySpec {
    IdentitySpec::sides(
        "remark1-psi/printed",
        Mode::Formal,
        draw_ax,
        |p, _| {
            let (q, a, x) = (p.q(), p.get("a"), p.get("x"));
            let (ainv, zero) = (a.inv()?, ExactScalar::zero());
            (0..=REDUCTION_DEGREE).map(|n| cao_psi3(n, &ainv, &zero, &zero, x, &ExactScalar::one(), q)).collect()
        },
        |p, _| (0..=REDUCTION_DEGREE).map(|n| asc_psi(n, p.get("a"), p.get("x"), p.q())).collect(),
    )
    .remark("expected to fail: the argument must be rescaled to a*x")
}

fn draw_reduction(s: &mut Sampler, cfg: &RunConfig) -> Option<ParamSample> {
    let q = s.q_formal();
    let lower = s.index(0, 2);
    let pv = super::draw_pv(s, &q, lower + 1, lower, None, pole_span(cfg))?;
    let mut p = ParamSample::new().with("q", q).with_pv(pv);
    for name in ["a", "b", "c", "d", "e", "x", "y", "z"] {
        p.set(name, s.rational());
    }
    let span = pole_span(cfg);
    let ok = ["d", "e"].iter().all(|n| avoids_poles(p.get(n), p.q(), span));
    // Values on the lattice +-q^j truncate the hypergeometric sums and make
    // unrelated candidates agree.
    let lattice = REDUCTION_DEGREE as i64 + 2;
    let (one, q) = (ExactScalar::one(), p.q());
    let generic = ["a", "b", "c", "d", "e", "x", "y", "z"]
        .iter()
        .all(|n| off_lattice(p.get(n), &one, q, lattice) && off_lattice(p.get(n), &-&one, q, lattice))
        && off_lattice(p.get("x"), p.get("y"), q, lattice)
        && off_lattice(p.get("x"), &-p.get("y"), q, lattice);
    let ok = ok && generic;
    p.set("zeros", ExactScalar::from_int(s.index(1, 3) as i64));
    ok.then_some(p)
}

/// Each printed specialization of `Psi_n` to a known family. Items whose
/// printed form fails report the corrected form found by search.
pub fn remark2() -> Vec<IdentitySpec> {
    (1..=ITEM_COUNT)
        .map(|item| {
            IdentitySpec::verdict(format!("remark2/item{item:02}"), Mode::Formal, draw_reduction, move |p, _| {
                let params = ReductionParams {
                    a: p.get("a").clone(),
                    b: p.get("b").clone(),
                    c: p.get("c").clone(),
                    d: p.get("d").clone(),
                    e: p.get("e").clone(),
                    x: p.get("x").clone(),
                    y: p.get("y").clone(),
                    z: p.get("z").clone(),
                    upper: p.pv.upper.clone(),
                    lower: p.pv.lower.clone(),
                    zeros: p.get_usize("zeros"),
                };
                let out = reduction_check(item, REDUCTION_DEGREE, &params, p.q())?;
                Ok(Verdict { pass: out.pass(), deviation: out.deviation(), notes: out.notes() })
            })
        })
        .collect()
}

/// Literal readings of statements that fail; each report is expected red.
pub fn diagnostics() -> Vec<IdentitySpec> {
    let mut v = gf::cao_printed();
    v.extend(gf::v_general_arity());
    v.extend(rogers::thm2_pointwise());
    v.push(remark1_printed());
    v
}
