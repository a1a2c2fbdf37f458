//! Job configuration: command-line flags layered over an optional JSON file.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;

pub const CAP_ENV: &str = "CM_WEIGHT_CAP";
const DEFAULT_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Normalize a hypersurface jet.
    Normalize,
    /// Integrate a chain of the hyperquadric and write a CSV trajectory.
    Chain,
    /// Check the (alpha, beta) normal-form conditions.
    Check,
    /// Write the jet of a hyperquadric automorphism.
    QuadricAuto,
}

#[derive(Debug, Parser)]
#[command(name = "cmnf", version, about = "Chern-Moser normal forms of real hypersurfaces")]
pub struct Args {
    /// Command to run; may instead be given as "command" in the config file.
    pub command: Option<Command>,
    /// JSON file with any of the options below; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Hypersurface jet (normalize, check) or normalization result (check).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Isotropy element {C, a, rho, r}; the identity when absent.
    #[arg(long)]
    pub sigma: Option<PathBuf>,
    /// Weight cap [default: $CM_WEIGHT_CAP, else 8].
    #[arg(long)]
    pub cap: Option<u32>,
    /// Rational alpha for check, e.g. 0 or 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Rational beta for check, e.g. 0 or 1/6.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Initial direction p'(0) for chain, comma-separated complex numbers like 1.0 or 0.5-0.2i.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// End of the chain parameter interval.
    #[arg(long)]
    pub mu_max: Option<f64>,
    /// RK4 step size.
    #[arg(long)]
    pub h: Option<f64>,
    /// Dimension for chain and quadric-auto.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of positive Levi eigenvalues for chain and quadric-auto.
    #[arg(long)]
    pub e: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<Command>,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    sigma: Option<PathBuf>,
    weight_cap: Option<u32>,
    alpha: Option<String>,
    beta: Option<String>,
    a: Option<String>,
    mu_max: Option<f64>,
    h: Option<f64>,
    n: Option<usize>,
    e: Option<usize>,
}

/// A fully resolved job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub sigma: Option<PathBuf>,
    pub weight_cap: u32,
    pub alpha: String,
    pub beta: String,
    pub a: String,
    pub mu_max: f64,
    pub h: f64,
    pub n: Option<usize>,
    pub e: Option<usize>,
}

impl JobConfig {
    /// Resolves flags over the config file over `CM_WEIGHT_CAP` over defaults.
    pub fn resolve(args: Args, env_cap: Option<String>) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let env_cap = env_cap
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| CliError::Parse(format!("{CAP_ENV} is not a weight cap: `{s}`")))
            })
            .transpose()?;
        let command = args
            .command
            .or(file.command)
            .ok_or_else(|| CliError::Parse("no command given".into()))?;
        Ok(JobConfig {
            command,
            input: args.input.or(file.input),
            output: args.output.or(file.output),
            sigma: args.sigma.or(file.sigma),
            weight_cap: args.cap.or(file.weight_cap).or(env_cap).unwrap_or(DEFAULT_CAP),
            alpha: args.alpha.or(file.alpha).unwrap_or_else(|| "0".into()),
            beta: args.beta.or(file.beta).unwrap_or_else(|| "0".into()),
            a: args.a.or(file.a).unwrap_or_else(|| "1".into()),
            mu_max: args.mu_max.or(file.mu_max).unwrap_or(0.5),
            h: args.h.or(file.h).unwrap_or(1e-3),
            n: args.n.or(file.n),
            e: args.e.or(file.e),
        })
    }
}
