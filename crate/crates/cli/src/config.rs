//! Layered run configuration: defaults, then `QHYPER_SEED`, then a JSON
//! config file, then command-line flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use qhyper::verify::RunConfig;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "QHYPER_SEED";
pub const MAX_ORDER: usize = 64;
pub const MAX_TRIALS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Human,
}

/// Every field optional so that layers can be merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub suite: Option<String>,
    pub trials: Option<usize>,
    pub order: Option<usize>,
    pub epsilon_bits: Option<u32>,
    pub seed: Option<u64>,
    pub report_path: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Layer {
    fn over(self, base: Layer) -> Layer {
        Layer {
            suite: self.suite.or(base.suite),
            trials: self.trials.or(base.trials),
            order: self.order.or(base.order),
            epsilon_bits: self.epsilon_bits.or(base.epsilon_bits),
            seed: self.seed.or(base.seed),
            report_path: self.report_path.or(base.report_path),
            format: self.format.or(base.format),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub suite: String,
    pub run: RunConfig,
    pub report_path: Option<PathBuf>,
    pub format: Format,
}

pub fn load_file(path: &Path) -> anyhow::Result<Layer> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config file {}", path.display()))
}

fn env_layer(value: Option<String>) -> anyhow::Result<Layer> {
    let Some(v) = value else {
        return Ok(Layer::default());
    };
    let seed = v.trim().parse().with_context(|| format!("{SEED_ENV} must be an unsigned 64-bit integer, got {v:?}"))?;
    Ok(Layer { seed: Some(seed), ..Layer::default() })
}

/// Merges the layers in precedence order and validates the result.
pub fn resolve(flags: Layer, file: Option<Layer>, env_seed: Option<String>) -> anyhow::Result<CheckConfig> {
    let d = RunConfig::default();
    let defaults = Layer {
        suite: None,
        trials: Some(d.trials),
        order: Some(d.order),
        epsilon_bits: Some(d.epsilon_bits),
        seed: Some(d.seed),
        report_path: None,
        format: Some(Format::Json),
    };
    let merged = flags.over(file.unwrap_or_default().over(env_layer(env_seed)?.over(defaults)));
    let Some(suite) = merged.suite else {
        bail!("no suite given (use --suite or the config file)");
    };
    let (trials, order, epsilon_bits) = (merged.trials.unwrap(), merged.order.unwrap(), merged.epsilon_bits.unwrap());
    if trials == 0 || trials > MAX_TRIALS {
        bail!("trials must be in 1..={MAX_TRIALS}, got {trials}");
    }
    if order == 0 || order > MAX_ORDER {
        bail!("order must be in 1..={MAX_ORDER}, got {order}");
    }
    if epsilon_bits == 0 {
        bail!("epsilon_bits must be positive");
    }
    Ok(CheckConfig {
        suite,
        run: RunConfig { seed: merged.seed.unwrap(), order, epsilon_bits, trials },
        report_path: merged.report_path,
        format: merged.format.unwrap(),
    })
}
