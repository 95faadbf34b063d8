//! Randomized verification of identities.
//!
//! Each identity draws parameters from a per-trial deterministic stream,
//! builds both sides from the same sample and compares them exactly
//! ([`Mode::Formal`]) or to a relative tolerance of `2^-40`
//! ([`Mode::Numeric`]).

pub mod catalog;
pub mod check;
pub mod sample;

use crate::error::{Error, Result};
use crate::hyper::SumPolicy;
use crate::scalar::{ExactScalar, Mode};

pub use check::{check_formal, check_numeric, numeric_tolerance, Comparison};
pub use sample::{sample_params, sample_with, Constraint, ParamSample, Sampler};

/// Options shared by every identity in a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Truncation order `N` for series in `t`.
    pub order: usize,
    /// Numeric sums stop below `2^-epsilon_bits`.
    pub epsilon_bits: u32,
    pub trials: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 42, order: 12, epsilon_bits: 80, trials: 10 }
    }
}

impl RunConfig {
    pub fn policy(&self) -> SumPolicy {
        SumPolicy::from_bits(self.epsilon_bits)
    }

    pub fn epsilon(&self) -> ExactScalar {
        ExactScalar::pow2(-(self.epsilon_bits as i64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: String,
    pub mode: Mode,
    pub seed: u64,
    pub trial: usize,
    pub pass: bool,
    pub deviation: ExactScalar,
    pub notes: String,
    /// `name=value` listing of the sample, empty if sampling failed.
    pub sample: String,
}

/// Final verdict produced directly by identities that are not a plain
/// two-sided comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub deviation: ExactScalar,
    pub notes: String,
}

pub type DrawFn = Box<dyn Fn(&mut Sampler, &RunConfig) -> Option<ParamSample> + Send + Sync>;
pub type SideFn = Box<dyn Fn(&ParamSample, &RunConfig) -> Result<Vec<ExactScalar>> + Send + Sync>;
pub type VerdictFn = Box<dyn Fn(&ParamSample, &RunConfig) -> Result<Verdict> + Send + Sync>;

pub enum Evaluation {
    Sides { lhs: SideFn, rhs: SideFn },
    Verdict(VerdictFn),
}

pub struct IdentitySpec {
    pub id: String,
    pub mode: Mode,
    pub constraints: Vec<Constraint>,
    pub draw: DrawFn,
    pub eval: Evaluation,
    /// Fixed remark appended to every report.
    pub remark: Option<String>,
    /// Overrides `RunConfig::trials` (deterministic cross-checks need fewer).
    pub trials: Option<usize>,
}

impl IdentitySpec {
    pub fn sides(
        id: impl Into<String>,
        mode: Mode,
        draw: impl Fn(&mut Sampler, &RunConfig) -> Option<ParamSample> + Send + Sync + 'static,
        lhs: impl Fn(&ParamSample, &RunConfig) -> Result<Vec<ExactScalar>> + Send + Sync + 'static,
        rhs: impl Fn(&ParamSample, &RunConfig) -> Result<Vec<ExactScalar>> + Send + Sync + 'static,
    ) -> Self {
        IdentitySpec {
            id: id.into(),
            mode,
            constraints: Vec::new(),
            draw: Box::new(draw),
            eval: Evaluation::Sides { lhs: Box::new(lhs), rhs: Box::new(rhs) },
            remark: None,
            trials: None,
        }
    }

    pub fn verdict(
        id: impl Into<String>,
        mode: Mode,
        draw: impl Fn(&mut Sampler, &RunConfig) -> Option<ParamSample> + Send + Sync + 'static,
        verdict: impl Fn(&ParamSample, &RunConfig) -> Result<Verdict> + Send + Sync + 'static,
    ) -> Self {
        IdentitySpec {
            id: id.into(),
            mode,
            constraints: Vec::new(),
            draw: Box::new(draw),
            eval: Evaluation::Verdict(Box::new(verdict)),
            remark: None,
            trials: None,
        }
    }

    pub fn constrained(mut self, c: Vec<Constraint>) -> Self {
        self.constraints = c;
        self
    }

    pub fn remark(mut self, r: impl Into<String>) -> Self {
        self.remark = Some(r.into());
        self
    }

    pub fn trials(mut self, n: usize) -> Self {
        self.trials = Some(n);
        self
    }

    /// Runs one trial; errors become failing reports.
    pub fn run_trial(&self, suite: &str, trial: usize, config: &RunConfig) -> IdentityReport {
        let mut sampler = Sampler::for_trial(suite, &self.id, trial, config.seed);
        let seed = sampler.seed();
        let mut report = IdentityReport {
            id: self.id.clone(),
            mode: self.mode,
            seed,
            trial,
            pass: false,
            deviation: ExactScalar::zero(),
            notes: String::new(),
            sample: String::new(),
        };
        let outcome = sample_with(&mut sampler, &self.constraints, |s| (self.draw)(s, config)).and_then(|sample| {
            report.sample = sample.summary();
            self.evaluate(&sample, config)
        });
        let mut notes = Vec::new();
        match outcome {
            Ok(v) => {
                report.pass = v.pass;
                report.deviation = v.deviation;
                if !v.notes.is_empty() {
                    notes.push(v.notes);
                }
            }
            Err(e) => notes.push(format!("error: {e}")),
        }
        if let Some(r) = &self.remark {
            notes.push(r.clone());
        }
        report.notes = notes.join("; ");
        report
    }

    fn evaluate(&self, sample: &ParamSample, config: &RunConfig) -> Result<Verdict> {
        match &self.eval {
            Evaluation::Verdict(f) => f(sample, config),
            Evaluation::Sides { lhs, rhs } => {
                let l = lhs(sample, config)?;
                let r = rhs(sample, config)?;
                let c = check::compare(self.mode, &l, &r);
                let notes = if c.pass {
                    String::new()
                } else if l.len() != r.len() {
                    format!("side lengths differ: {} vs {}", l.len(), r.len())
                } else {
                    format!("largest deviation at component {}", c.worst.unwrap_or(0))
                };
                Ok(Verdict { pass: c.pass, deviation: c.deviation, notes })
            }
        }
    }
}

/// Names accepted by [`run_suite`], group names first.
pub fn suite_names() -> Vec<&'static str> {
    let mut v = vec!["all", "formal", "numeric"];
    v.extend(catalog::SUITES.iter().map(|(name, _, _)| *name));
    v
}

/// Identities registered under `suite` (a single suite or a group).
pub fn suite_identities(suite: &str) -> Result<Vec<(&'static str, IdentitySpec)>> {
    let pick = |f: &dyn Fn(Mode) -> bool| -> Vec<(&'static str, IdentitySpec)> {
        catalog::SUITES
            .iter()
            .filter(|(_, group, _)| f(*group))
            .flat_map(|(name, _, build)| build().into_iter().map(move |s| (*name, s)))
            .collect()
    };
    match suite {
        "all" => Ok(catalog::SUITES.iter().flat_map(|(name, _, build)| build().into_iter().map(move |s| (*name, s))).collect()),
        "formal" => {
            Ok(pick(&|g| g == Mode::Formal).into_iter().filter(|(name, _)| !catalog::EXCLUDED_FROM_GROUPS.contains(name)).collect())
        }
        "numeric" => {
            Ok(pick(&|g| g == Mode::Numeric).into_iter().filter(|(name, _)| !catalog::EXCLUDED_FROM_GROUPS.contains(name)).collect())
        }
        _ => {
            let (name, _, build) =
                catalog::SUITES.iter().find(|(name, _, _)| *name == suite).ok_or_else(|| Error::UnknownSuite(suite.to_string()))?;
            Ok(build().into_iter().map(|s| (*name, s)).collect())
        }
    }
}

/// Runs every identity of `suite` for the configured number of trials.
/// Reports are sorted by `(id, trial)`.
pub fn run_suite(suite: &str, config: &RunConfig) -> Result<Vec<IdentityReport>> {
    let specs = suite_identities(suite)?;
    let mut reports = Vec::new();
    for (name, spec) in &specs {
        let trials = spec.trials.unwrap_or(config.trials);
        for trial in 0..trials {
            reports.push(spec.run_trial(name, trial, config));
        }
    }
    reports.sort_by(|a, b| a.id.cmp(&b.id).then(a.trial.cmp(&b.trial)));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &RunConfig::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn every_named_suite_resolves() {
        for name in suite_names() {
            assert!(!suite_identities(name).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn identity_ids_are_unique() {
        let all = suite_identities("all").unwrap();
        let mut ids: Vec<&str> = all.iter().map(|(_, s)| s.id.as_str()).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn errors_become_failing_reports() {
        let spec = IdentitySpec::sides(
            "always-errors",
            Mode::Formal,
            |_, _| Some(ParamSample::new()),
            |_, _| Err(Error::Singular("boom".into())),
            |_, _| Ok(vec![]),
        );
        let r = spec.run_trial("x", 0, &RunConfig::default());
        assert!(!r.pass);
        assert!(r.notes.starts_with("error: "));
    }
}
