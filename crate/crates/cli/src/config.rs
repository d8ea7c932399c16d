//! Run configuration: command-line flags layered over an optional
//! `key=value` file.

use std::path::PathBuf;

use clap::Args;

use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Group file (`degree: n`, one generator per line, optional `subgroup NAME: gens`).
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// p-adic precision for idempotent computations.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Degree bound for invariant-ring computations.
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u32>,
    /// Subgroup by name from the group file, or generators in cycle notation.
    #[arg(long, global = true)]
    pub subgroup: Option<String>,
    /// Matrix generators (invariants, coh-check) or automorphism generators
    /// (cohomology, idempotent).
    #[arg(long = "W", global = true)]
    pub w: Option<PathBuf>,
    /// Rank of `V`; inferred from the matrices when omitted.
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long = "order-bound", global = true)]
    pub order_bound: Option<usize>,
    /// `key=value` lines supplying defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

/// Resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: Option<PathBuf>,
    pub prime: Option<u32>,
    pub precision: u32,
    pub max_degree: u32,
    pub subgroup: Option<String>,
    pub w: Option<PathBuf>,
    pub rank: Option<usize>,
    pub out: Option<PathBuf>,
    pub order_bound: usize,
    pub sequential: bool,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Input(format!("config: bad value {value:?} for {key}")))
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let mut file = Flags::default();
        if let Some(path) = &flags.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap().trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| CliError::Input(format!("config line {}: expected key=value", lineno + 1)))?;
                let (key, value) = (key.trim().replace('-', "_"), value.trim());
                match key.as_str() {
                    "group" => file.group = Some(value.into()),
                    "prime" => file.prime = Some(parse_value(&key, value)?),
                    "precision" => file.precision = Some(parse_value(&key, value)?),
                    "max_degree" => file.max_degree = Some(parse_value(&key, value)?),
                    "subgroup" => file.subgroup = Some(value.to_string()),
                    "W" | "w" => file.w = Some(value.into()),
                    "rank" => file.rank = Some(parse_value(&key, value)?),
                    "out" => file.out = Some(value.into()),
                    "order_bound" => file.order_bound = Some(parse_value(&key, value)?),
                    "sequential" => file.sequential = parse_value(&key, value)?,
                    _ => return Err(CliError::Input(format!("config line {}: unknown key {key:?}", lineno + 1))),
                }
            }
        }
        let cfg = RunConfig {
            group: flags.group.clone().or(file.group),
            prime: flags.prime.or(file.prime),
            precision: flags.precision.or(file.precision).unwrap_or(fusionkit::burnside::DEFAULT_PRECISION),
            max_degree: flags.max_degree.or(file.max_degree).unwrap_or(fusionkit::steenrod::DEFAULT_MAX_DEGREE),
            subgroup: flags.subgroup.clone().or(file.subgroup),
            w: flags.w.clone().or(file.w),
            rank: flags.rank.or(file.rank),
            out: flags.out.clone().or(file.out),
            order_bound: flags.order_bound.or(file.order_bound).unwrap_or(fusionkit::group::DEFAULT_ORDER_BOUND),
            sequential: flags.sequential || file.sequential,
        };
        if cfg.precision == 0 {
            return Err(CliError::Input("precision must be at least 1".into()));
        }
        if cfg.order_bound == 0 {
            return Err(CliError::Input("order bound must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn prime(&self) -> Result<u32, CliError> {
        let p = self.prime.ok_or_else(|| CliError::Input("--prime is required".into()))?;
        if !fusionkit::group::is_prime(p) {
            return Err(CliError::Input(format!("{p} is not prime")));
        }
        Ok(p)
    }

    pub fn group_path(&self) -> Result<&PathBuf, CliError> {
        self.group.as_ref().ok_or_else(|| CliError::Input("--group is required".into()))
    }

    pub fn w_path(&self) -> Result<&PathBuf, CliError> {
        self.w.as_ref().ok_or_else(|| CliError::Input("--W is required".into()))
    }
}
