use std::io::Write;
use std::path::Path;

use serde::Deserialize;

use cmnf::chains::integrate_chain;
use cmnf::hyperquadric::{GroupElement, GroupElementJson};
use cmnf::levi::Signature;
use cmnf::normal_forms::{check_conditions, NormalFormSpec};
use cmnf::normalize::{normalize, HypersurfaceJet};
use cmnf::series::BigradedSeries;

use crate::config::{Command, JobConfig};
use crate::error::CliError;
use crate::parse;

/// Hypersurface file contents before validation, so that a well-formed file
/// describing an inadmissible surface is a precondition error, not a parse error.
#[derive(Deserialize)]
struct SurfaceFile {
    signature: Signature,
    #[serde(rename = "F")]
    f: BigradedSeries,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn required<'a>(p: &'a Option<std::path::PathBuf>, what: &str) -> Result<&'a Path, CliError> {
    p.as_deref().ok_or_else(|| CliError::Parse(format!("--{what} is required")))
}

/// Reads a hypersurface jet, or the normal surface of a normalization result.
fn read_surface(path: &Path) -> Result<HypersurfaceJet, CliError> {
    let mut value: serde_json::Value = serde_json::from_str(&read(path)?)?;
    if let Some(inner) = value.get_mut("normal_surface") {
        value = inner.take();
    }
    let raw: SurfaceFile = serde_json::from_value(value)?;
    Ok(HypersurfaceJet::new(raw.signature, raw.f)?)
}

fn read_sigma(path: &Path, sig: Signature) -> Result<GroupElement, CliError> {
    let raw: GroupElementJson = serde_json::from_str(&read(path)?)?;
    Ok(raw.to_element(sig)?)
}

/// `(n, e)` from flags, falling back to the shape of the sigma file and `e = n`.
fn signature(cfg: &JobConfig, fallback_n: Option<usize>) -> Result<Signature, CliError> {
    let n = cfg.n.or(fallback_n).unwrap_or(1);
    Ok(Signature::new(n, cfg.e.unwrap_or(n))?)
}

fn emit(cfg: &JobConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(cfg: &JobConfig, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(cfg, text.as_bytes())
}

pub fn run(cfg: &JobConfig) -> Result<(), CliError> {
    match cfg.command {
        Command::Normalize => {
            if cfg.weight_cap < 4 {
                return Err(CliError::Precondition(format!(
                    "normalize needs a weight cap of at least 4, got {}",
                    cfg.weight_cap
                )));
            }
            let f = read_surface(required(&cfg.input, "input")?)?;
            let sigma = match &cfg.sigma {
                Some(p) => read_sigma(p, f.sig)?,
                None => GroupElement::identity(f.sig),
            };
            let result = normalize(&f, &sigma, cfg.weight_cap)?;
            emit_json(cfg, &result)
        }
        Command::Check => {
            let f = read_surface(required(&cfg.input, "input")?)?;
            let spec = NormalFormSpec {
                alpha: parse::rational(&cfg.alpha)?,
                beta: parse::rational(&cfg.beta)?,
            };
            emit_json(cfg, &check_conditions(&f, &spec)?)
        }
        Command::Chain => {
            let a = parse::complex_vector(&cfg.a)?;
            let sig = signature(cfg, Some(a.len()))?;
            let traj = integrate_chain(&sig, &a, cfg.mu_max, cfg.h)?;
            let mut csv = Vec::new();
            traj.write_csv(&mut csv)?;
            emit(cfg, &csv)?;
            match traj.singular_at {
                Some(mu) => Err(CliError::Singular(format!("chain equation singular near mu = {mu}"))),
                None => Ok(()),
            }
        }
        Command::QuadricAuto => {
            let path = required(&cfg.sigma, "sigma")?;
            let raw: GroupElementJson = serde_json::from_str(&read(path)?)?;
            let sig = signature(cfg, Some(raw.c.len()))?;
            let sigma = raw.to_element(sig)?;
            emit_json(cfg, &sigma.jet_of(cfg.weight_cap)?)
        }
    }
}
