//! `eval` and `expand` subcommands.

use anyhow::{anyhow, bail, Context};
use clap::Args;
use qhyper::hyper::rphis_series_in_t;
use qhyper::polyfam::{self, FamilyPoint, ParamVector};
use qhyper::scalar::{qfactorials, ExactScalar};
use qhyper::tseries::{cauchy_ratio_series, euler_inverse_series, euler_product_series, ScalarSeries};

const DECIMAL_DIGITS: usize = 20;

fn scalar(s: &str) -> Result<ExactScalar, String> {
    s.parse::<ExactScalar>().map_err(|e| e.to_string())
}

/// Named arguments shared by `eval` and `expand`. Parameter vectors are
/// comma-separated rationals, e.g. `--upper 1/2,3 --lower -1/5`.
#[derive(Args, Clone, Debug, Default)]
pub struct Params {
    #[arg(long, value_parser = scalar)]
    pub q: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub x: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub y: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub z: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub a: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub b: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub c: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub d: Option<ExactScalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub e: Option<ExactScalar>,
    /// Number of upper parameters; checked against `--upper`.
    #[arg(long)]
    pub r: Option<usize>,
    /// Number of lower parameters; checked against `--lower`.
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, value_parser = scalar, value_delimiter = ',', allow_hyphen_values = true)]
    pub upper: Option<Vec<ExactScalar>>,
    #[arg(long, value_parser = scalar, value_delimiter = ',', allow_hyphen_values = true)]
    pub lower: Option<Vec<ExactScalar>>,
}

fn need<'a>(v: &'a Option<ExactScalar>, name: &str) -> anyhow::Result<&'a ExactScalar> {
    v.as_ref().ok_or_else(|| anyhow!("missing --{name}"))
}

impl Params {
    fn pv(&self) -> anyhow::Result<ParamVector> {
        let pick = |list: &Option<Vec<ExactScalar>>, count: Option<usize>, name: &str| -> anyhow::Result<Vec<ExactScalar>> {
            match (list, count) {
                (Some(v), Some(n)) if v.len() != n => bail!("arity mismatch: --{name} has {} entries, expected {n}", v.len()),
                (Some(v), _) => Ok(v.clone()),
                (None, Some(0) | None) => Ok(Vec::new()),
                (None, Some(n)) => bail!("arity mismatch: {n} {name} parameters declared but --{name} not given"),
            }
        };
        Ok(ParamVector::new(pick(&self.upper, self.r, "upper")?, pick(&self.lower, self.s, "lower")?))
    }
}

#[derive(Args)]
pub struct EvalArgs {
    /// One of P, phi_asc, psi_asc, cao_phi3, cao_psi3, ext_phi5, ext_psi5,
    /// sa_phi, sa_psi, V, Psi.
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: Params,
}

pub fn evaluate(args: &EvalArgs) -> anyhow::Result<ExactScalar> {
    let p = &args.params;
    let n = args.n;
    let q = need(&p.q, "q")?;
    let v = match args.family.as_str() {
        "P" => polyfam::cauchy_p(n, need(&p.x, "x")?, need(&p.y, "y")?, q),
        "phi_asc" => polyfam::asc_phi(n, need(&p.a, "a")?, need(&p.x, "x")?, q)?,
        "psi_asc" => polyfam::asc_psi(n, need(&p.a, "a")?, need(&p.x, "x")?, q)?,
        "cao_phi3" | "cao_psi3" => {
            let f = if args.family == "cao_phi3" { polyfam::cao_phi3 } else { polyfam::cao_psi3 };
            f(n, need(&p.a, "a")?, need(&p.b, "b")?, need(&p.c, "c")?, need(&p.x, "x")?, need(&p.y, "y")?, q)?
        }
        "ext_phi5" | "ext_psi5" => {
            let upper = [need(&p.a, "a")?.clone(), need(&p.b, "b")?.clone(), need(&p.c, "c")?.clone()];
            let lower = [need(&p.d, "d")?.clone(), need(&p.e, "e")?.clone()];
            let f = if args.family == "ext_phi5" { polyfam::ext_phi5 } else { polyfam::ext_psi5 };
            f(n, &upper, &lower, need(&p.x, "x")?, need(&p.y, "y")?, q)?
        }
        "sa_phi" => polyfam::sa_phi(n, &p.pv()?, need(&p.x, "x")?, need(&p.y, "y")?, q)?,
        "sa_psi" => polyfam::sa_psi(n, &p.pv()?, need(&p.x, "x")?, need(&p.y, "y")?, q)?,
        "V" => polyfam::v_poly(n, &p.pv()?, need(&p.x, "x")?, need(&p.y, "y")?, need(&p.z, "z")?, q)?,
        "Psi" => {
            let pt = FamilyPoint::new(n, need(&p.x, "x")?.clone(), need(&p.y, "y")?.clone(), need(&p.z, "z")?.clone());
            polyfam::psi_general(&pt, &p.pv()?, q)?
        }
        other => bail!(
            "unknown family {other:?}; expected one of P, phi_asc, psi_asc, cao_phi3, cao_psi3, ext_phi5, ext_psi5, sa_phi, sa_psi, V, Psi"
        ),
    };
    Ok(v)
}

/// Exact value on the first line, decimal approximation on the second.
pub fn cmd_eval(args: &EvalArgs) -> anyhow::Result<String> {
    let v = evaluate(args)?;
    Ok(format!("{v}\n{}\n", v.to_decimal(DECIMAL_DIGITS)))
}

#[derive(Args)]
pub struct ExpandArgs {
    /// One of cauchy-ratio, euler, euler-inv, rphis-t, gf-psi-lhs, gf-psi-rhs.
    pub target: String,
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    #[command(flatten)]
    pub params: Params,
}

/// Base used by `expand` when `--q` is omitted.
pub fn default_q() -> ExactScalar {
    ExactScalar::ratio(1, 2)
}

pub fn expand(args: &ExpandArgs) -> anyhow::Result<ScalarSeries> {
    let p = &args.params;
    let n = args.order;
    if n > crate::config::MAX_ORDER {
        bail!("order must be at most {}", crate::config::MAX_ORDER);
    }
    let q = p.q.clone().unwrap_or_else(default_q);
    let one = ExactScalar::one();
    let s = match args.target.as_str() {
        "cauchy-ratio" => cauchy_ratio_series(need(&p.x, "x")?, need(&p.y, "y")?, &q, n)?,
        "euler" => euler_product_series(need(&p.c, "c")?, &q, n)?,
        "euler-inv" => euler_inverse_series(need(&p.c, "c")?, &q, n)?,
        "rphis-t" => rphis_series_in_t(&p.pv()?, &q, p.c.as_ref().unwrap_or(&one), n)?,
        "gf-psi-lhs" => {
            let fact = qfactorials(&q, n)?;
            let (x, y, z) = (need(&p.x, "x")?, need(&p.y, "y")?, need(&p.z, "z")?);
            let pv = p.pv()?;
            ScalarSeries::try_from_fn(n, |k| -> anyhow::Result<ExactScalar> {
                let pt = FamilyPoint::new(k, x.clone(), y.clone(), z.clone());
                Ok(polyfam::psi_general(&pt, &pv, &q)? / polyfam::psi_prefactor(k, &q)? / &fact[k])
            })?
        }
        "gf-psi-rhs" => {
            let (x, y, z) = (need(&p.x, "x")?, need(&p.y, "y")?, need(&p.z, "z")?);
            let ratio = euler_product_series(x, &q, n)?.mul(&euler_inverse_series(y, &q, n)?);
            ratio.mul(&rphis_series_in_t(&p.pv()?, &q, z, n)?)
        }
        other => bail!("unknown target {other:?}; expected one of cauchy-ratio, euler, euler-inv, rphis-t, gf-psi-lhs, gf-psi-rhs"),
    };
    Ok(s)
}

/// One line per coefficient: `k<TAB>value`.
pub fn cmd_expand(args: &ExpandArgs) -> anyhow::Result<String> {
    let s = expand(args).context("expanding series")?;
    Ok(s.coeffs().iter().enumerate().map(|(k, c)| format!("{k}\t{c}\n")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn cauchy_value() {
        let args = EvalArgs {
            family: "P".into(),
            n: 2,
            params: Params { x: Some(r(1, 1)), y: Some(r(1, 2)), q: Some(r(1, 3)), ..Params::default() },
        };
        assert_eq!(evaluate(&args).unwrap(), r(5, 12));
    }

    #[test]
    fn arity_checks() {
        let p = Params { r: Some(2), upper: Some(vec![r(1, 2)]), ..Params::default() };
        assert!(p.pv().is_err());
        let p = Params { r: Some(1), ..Params::default() };
        assert!(p.pv().is_err());
        let p = Params { r: Some(0), s: Some(0), ..Params::default() };
        assert_eq!(p.pv().unwrap(), ParamVector::empty());
    }

    #[test]
    fn list_parsing() {
        use clap::Parser;
        #[derive(Parser)]
        struct T {
            #[command(flatten)]
            p: Params,
        }
        let t = T::try_parse_from(["t", "--upper", "1/2,-3", "--lower", "-1/5"]).unwrap();
        assert_eq!(t.p.upper, Some(vec![r(1, 2), r(-3, 1)]));
        assert_eq!(t.p.lower, Some(vec![r(-1, 5)]));
        assert!(T::try_parse_from(["t", "--upper", "1/0"]).is_err());
    }
}
