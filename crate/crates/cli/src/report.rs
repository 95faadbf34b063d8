//! Report serialization: JSON (default), TSV and an aligned human table.

use qhyper::verify::{IdentityReport, RunConfig};
use qhyper::Mode;
use serde::Serialize;

#[derive(Serialize)]
struct JsonConfig {
    trials: usize,
    order: usize,
    epsilon_bits: u32,
    seed: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    id: &'a str,
    mode: Mode,
    seed: u64,
    trial: usize,
    pass: bool,
    deviation_num: String,
    deviation_den: String,
    notes: &'a str,
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    suite: &'a str,
    config: JsonConfig,
    reports: Vec<JsonReport<'a>>,
}

pub fn to_json(suite: &str, config: &RunConfig, reports: &[IdentityReport]) -> String {
    let doc = JsonDocument {
        suite,
        config: JsonConfig { trials: config.trials, order: config.order, epsilon_bits: config.epsilon_bits, seed: config.seed },
        reports: reports
            .iter()
            .map(|r| JsonReport {
                id: &r.id,
                mode: r.mode,
                seed: r.seed,
                trial: r.trial,
                pass: r.pass,
                deviation_num: r.deviation.numer_string(),
                deviation_den: r.deviation.denom_string(),
                notes: &r.notes,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Formal => "formal",
        Mode::Numeric => "numeric",
    }
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

pub fn to_tsv(reports: &[IdentityReport]) -> String {
    let mut out = String::from("id\tmode\tseed\ttrial\tpass\tdeviation_num\tdeviation_den\tnotes\n");
    for r in reports {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            tsv_field(&r.id),
            mode_name(r.mode),
            r.seed,
            r.trial,
            r.pass,
            r.deviation.numer_string(),
            r.deviation.denom_string(),
            tsv_field(&r.notes)
        ));
    }
    out
}

/// Short decimal rendering of a deviation: `0`, or `~2^-e` style.
fn deviation_summary(r: &IdentityReport) -> String {
    if r.deviation.is_zero() {
        return "0".into();
    }
    let d = r.deviation.to_f64();
    if d.is_finite() && d > 0.0 {
        format!("{d:.3e}")
    } else {
        r.deviation.to_string()
    }
}

pub fn to_human(suite: &str, config: &RunConfig, reports: &[IdentityReport]) -> String {
    let id_w = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut out =
        format!("suite {suite}: seed {} order {} epsilon 2^-{} trials {}\n", config.seed, config.order, config.epsilon_bits, config.trials);
    out.push_str(&format!("  {:<id_w$}  {:>5}  {:<7}  {:>10}  notes\n", "id", "trial", "mode", "deviation"));
    for r in reports {
        let glyph = if r.pass { "✓" } else { "✗" };
        out.push_str(&format!(
            "{glyph} {:<id_w$}  {:>5}  {:<7}  {:>10}  {}\n",
            r.id,
            r.trial,
            mode_name(r.mode),
            deviation_summary(r),
            r.notes
        ));
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} passed, {} failed\n", reports.len() - failed, failed));
    out
}
