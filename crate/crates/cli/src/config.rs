//! Run configuration: command-line flags over an optional JSON file over
//! built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use cubic_rings::census::{CheckpointPolicy, Population, Sign};
use cubic_rings::densities::{BaseFieldData, QConstants, Real};
use cubic_rings::SplittingSymbol;

use crate::error::CliError;

/// Largest `--max-disc` accepted without `--force`.
pub const HARD_CAP: u64 = 100_000_000;
/// Largest prime accepted in a condition.
pub const MAX_CONDITION_PRIME: u64 = 1_000_000;

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// JSON file with any of the run settings; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Base field: "Q" or a JSON file of field invariants
    #[arg(long)]
    pub field: Option<String>,
    /// Discriminant sign: + or -
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Bound X on |disc|
    #[arg(long = "max-disc")]
    pub max_disc: Option<u64>,
    /// Local condition p:symbol, symbol one of 111, 21, 3, 121r, 13r
    #[arg(long = "cond")]
    pub conditions: Vec<String>,
    /// Weight each class by 1/#Aut
    #[arg(long)]
    pub weighted: bool,
    /// irreducible, reducible, all or w-orbits
    #[arg(long)]
    pub population: Option<String>,
    /// Output directory for tables
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    /// geometric or linear
    #[arg(long)]
    pub checkpoints: Option<String>,
    /// Allow bounds above the hard cap
    #[arg(long)]
    pub force: bool,
    /// Real places of type R^3 (general base fields only)
    #[arg(long)]
    pub real3: Option<u32>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    field: Option<String>,
    sign: Option<String>,
    max_disc: Option<u64>,
    conditions: Option<Vec<String>>,
    weighted: Option<bool>,
    population: Option<String>,
    out_dir: Option<PathBuf>,
    checkpoints: Option<String>,
    threads: Option<usize>,
    force: Option<bool>,
    real3: Option<u32>,
}

/// Fully resolved settings. Serialized into every output header; the
/// thread count is left out since it never changes results.
#[derive(Serialize, Debug, Clone)]
pub struct RunConfig {
    pub field: String,
    pub sign: String,
    pub max_disc: u64,
    pub conditions: Vec<String>,
    pub weighted: bool,
    pub population: String,
    pub checkpoints: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real3: Option<u32>,
    #[serde(skip)]
    pub out_dir: PathBuf,
    #[serde(skip)]
    pub threads: Option<usize>,
}

pub fn parse_condition(s: &str) -> Result<(u64, SplittingSymbol), CliError> {
    let (p, sym) = s
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("condition {s:?} is not of the form p:symbol")))?;
    let p: u64 = p.trim().parse().map_err(|_| CliError::Config(format!("bad prime in condition {s:?}")))?;
    if p > MAX_CONDITION_PRIME {
        return Err(CliError::Config(format!("condition prime {p} exceeds {MAX_CONDITION_PRIME}")));
    }
    Ok((p, sym.parse()?))
}

impl RunConfig {
    /// `threads` is the `-j` value; the environment variable beats it and
    /// the file value loses to both.
    pub fn resolve(args: &RunArgs, threads: Option<usize>, default_max_disc: Option<u64>) -> Result<Self, CliError> {
        let file: FileConfig = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let sign = args.sign.clone().or(file.sign).unwrap_or_else(|| "+".into());
        let sign: Sign = sign.parse()?;
        let max_disc = args
            .max_disc
            .or(file.max_disc)
            .or(default_max_disc)
            .ok_or_else(|| CliError::Config("--max-disc is required".into()))?;
        let force = args.force || file.force.unwrap_or(false);
        if max_disc == 0 {
            return Err(CliError::Config("--max-disc must be at least 1".into()));
        }
        if max_disc > HARD_CAP && !force {
            return Err(CliError::Config(format!("--max-disc {max_disc} exceeds {HARD_CAP}; pass --force")));
        }
        let conditions = if args.conditions.is_empty() { file.conditions.unwrap_or_default() } else { args.conditions.clone() };
        let parsed = conditions.iter().map(|c| parse_condition(c)).collect::<Result<Vec<_>, _>>()?;
        let population: Population =
            args.population.clone().or(file.population).unwrap_or_else(|| "irreducible".into()).parse()?;
        let checkpoints = args.checkpoints.clone().or(file.checkpoints).unwrap_or_else(|| "geometric".into());
        if checkpoints != "geometric" && checkpoints != "linear" {
            return Err(CliError::Config(format!("unknown checkpoint grid {checkpoints:?}")));
        }
        Ok(RunConfig {
            field: args.field.clone().or(file.field).unwrap_or_else(|| "Q".into()),
            sign: sign.to_string(),
            max_disc,
            conditions: parsed.iter().map(|(p, s)| format!("{p}:{s}")).collect(),
            weighted: args.weighted || file.weighted.unwrap_or(false),
            population: population.to_string(),
            checkpoints,
            out_dir: args.out_dir.clone().or(file.out_dir).unwrap_or_else(|| PathBuf::from(".")),
            real3: args.real3.or(file.real3),
            threads: env_threads()?.or(threads).or(file.threads),
        })
    }

    pub fn sign(&self) -> Sign {
        self.sign.parse().expect("validated")
    }

    pub fn population(&self) -> Population {
        self.population.parse().expect("validated")
    }

    pub fn conditions(&self) -> Vec<(u64, SplittingSymbol)> {
        self.conditions.iter().map(|c| parse_condition(c).expect("validated")).collect()
    }

    pub fn checkpoint_policy(&self) -> CheckpointPolicy {
        if self.checkpoints == "linear" {
            CheckpointPolicy::Linear
        } else {
            CheckpointPolicy::Geometric
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.field == "Q"
    }

    /// Number of real places carrying R^3; over Q set by the sign.
    pub fn real3_places(&self, base: &BaseFieldData) -> Result<u32, CliError> {
        if base.is_rationals() {
            return Ok(u32::from(self.sign() == Sign::Positive));
        }
        self.real3.ok_or_else(|| CliError::Config("--real3 is required for a general base field".into()))
    }

    /// Sizes the global rayon pool once.
    pub fn install_threads(&self) -> Result<(), CliError> {
        init_pool(self.threads)
    }

    pub fn header(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string(self)?)
    }
}

pub const THREADS_ENV: &str = "CUBIC_CENSUS_THREADS";

pub fn env_threads() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Config(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        _ => Ok(None),
    }
}

pub fn init_pool(threads: Option<usize>) -> Result<(), CliError> {
    if threads == Some(0) {
        return Err(CliError::Config("thread count must be positive".into()));
    }
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    // a second build only fails when the pool already exists
    let _ = b.build_global();
    Ok(())
}

fn real_field(v: &Value, key: &str, bits: u32) -> Result<Real, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(CliError::Config(format!("field value {key} must be a number or decimal string"))),
    };
    Ok(Real::parse(&text, bits)?)
}

/// Loads "Q" or a JSON file of field invariants.
pub fn load_field(field: &str, k: &QConstants) -> Result<BaseFieldData, CliError> {
    if field == "Q" {
        return Ok(BaseFieldData::rationals(k));
    }
    let text = fs::read_to_string(Path::new(field))
        .map_err(|e| CliError::Config(format!("cannot read field file {field}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{field}: {e}")))?;
    let get = |key: &str| v.get(key).ok_or_else(|| CliError::Config(format!("field file lacks {key:?}")));
    let uint = |key: &str| -> Result<u64, CliError> {
        get(key)?.as_u64().ok_or_else(|| CliError::Config(format!("{key} must be a nonnegative integer")))
    };
    let small = |key: &str| -> Result<u32, CliError> {
        u32::try_from(uint(key)?).map_err(|_| CliError::Config(format!("{key} out of range")))
    };
    let disc: BigInt = match get("discriminant")? {
        Value::Number(n) => n.to_string().parse().map_err(|_| CliError::Config("discriminant must be an integer".into()))?,
        Value::String(s) => s.parse().map_err(|_| CliError::Config("discriminant must be an integer".into()))?,
        _ => return Err(CliError::Config("discriminant must be an integer".into())),
    };
    let zetas = get("zeta_values")?;
    let zeta = |s: &str| -> Result<Real, CliError> {
        let val = zetas.get(s).ok_or_else(|| CliError::Config(format!("zeta_values lacks {s:?}")))?;
        real_field(val, s, k.bits)
    };
    Ok(BaseFieldData::new(
        small("degree")?,
        disc,
        small("r1")?,
        small("r2")?,
        uint("class_number")?,
        uint("three_torsion")?,
        real_field(get("residue_zeta_at_1")?, "residue_zeta_at_1", k.bits)?,
        zeta("2")?,
        zeta("4")?,
        zeta("1/3")?,
    )?)
}
