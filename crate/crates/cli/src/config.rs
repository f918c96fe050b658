//! Run configuration: a JSON file merged with command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;
use virial_core::potentials::{ModelSpec, PotentialSpec};
use virial_core::PairPotential;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every command. Each one overrides the matching field of
/// the `--config` file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON run configuration
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Inverse temperature(s), comma separated
    #[arg(long, global = true, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub beta: Option<Vec<f64>>,
    /// Particle number(s), comma separated; the largest n for `verify`
    #[arg(long, global = true, value_delimiter = ',', num_args = 1..)]
    pub n: Option<Vec<usize>>,
    /// Side of the cubic box for `mayer`
    #[arg(long, global = true)]
    pub box_side: Option<f64>,
    /// Monte Carlo samples (`mayer`) or random checks (`stability`)
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random optimizer starts per n for `stability`
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    /// Random trials per n for `verify`
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Dimension for `stability` (defaults to the potential's)
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Output file; stdout when absent
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; 0 or absent uses every core
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

/// One value or a list.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            Self::One(x) => vec![x],
            Self::Many(v) => v,
        }
    }
}

/// β values in a config file: a number, a list, or an evenly spaced range
/// (geometric when `log` is set).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    Values(OneOrMany<f64>),
    Range {
        from: f64,
        to: f64,
        steps: usize,
        #[serde(default)]
        log: bool,
    },
}

impl BetaSpec {
    fn expand(self) -> Result<Vec<f64>, CliError> {
        match self {
            Self::Values(v) => Ok(v.into_vec()),
            Self::Range { from, to, steps, log } => {
                if steps < 2 {
                    return Err(CliError::validation("beta range needs steps >= 2"));
                }
                if log && !(from > 0.0 && to > 0.0) {
                    return Err(CliError::validation("a log beta range needs positive ends"));
                }
                let t = |k: usize| k as f64 / (steps - 1) as f64;
                Ok((0..steps)
                    .map(|k| {
                        if log {
                            (from.ln() + t(k) * (to.ln() - from.ln())).exp()
                        } else {
                            from + t(k) * (to - from)
                        }
                    })
                    .collect())
            }
        }
    }
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub potential: Option<PotentialSpec>,
    pub beta: Option<BetaSpec>,
    pub n: Option<OneOrMany<usize>>,
    pub box_side: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub starts: Option<usize>,
    pub trials: Option<usize>,
    pub dim: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("bad config {}: {e}", path.display())))
    }
}

/// Flags merged over the file, with the potential built. Command-specific
/// defaults are applied by the commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub potential: PairPotential,
    pub betas: Option<Vec<f64>>,
    pub ns: Option<Vec<usize>>,
    pub box_side: Option<f64>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub starts: Option<usize>,
    pub trials: Option<usize>,
    pub dim: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: usize,
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let spec = file
            .potential
            .unwrap_or_else(|| PotentialSpec::new(ModelSpec::LennardJones));
        let potential = spec.build().map_err(CliError::from_core)?;
        let betas = match &flags.beta {
            Some(b) => Some(b.clone()),
            None => file.beta.map(BetaSpec::expand).transpose()?,
        };
        if let Some(b) = &betas {
            if b.is_empty() {
                return Err(CliError::validation("empty beta list"));
            }
            if let Some(bad) = b.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
                return Err(CliError::validation(format!("beta must be positive and finite, got {bad}")));
            }
        }
        let ns = flags.n.clone().or(file.n.map(OneOrMany::into_vec));
        if ns.as_ref().is_some_and(Vec::is_empty) {
            return Err(CliError::validation("empty n list"));
        }
        let samples = flags.samples.or(file.samples);
        if samples.is_some_and(|s| s < 2) {
            return Err(CliError::validation("samples must be >= 2"));
        }
        let box_side = flags.box_side.or(file.box_side);
        if box_side.is_some_and(|l| !(l > 0.0 && l.is_finite())) {
            return Err(CliError::validation("box side must be positive and finite"));
        }
        let dim = flags.dim.or(file.dim);
        if dim == Some(0) {
            return Err(CliError::validation("dimension must be >= 1"));
        }
        Ok(Self {
            potential,
            betas,
            ns,
            box_side,
            samples,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            starts: flags.starts.or(file.starts),
            trials: flags.trials.or(file.trials),
            dim,
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format),
            workers: flags.workers.or(file.workers).unwrap_or(0),
        })
    }
}
