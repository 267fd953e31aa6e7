//! Parameter resolution: command-line flags override an optional key=value
//! config file, which overrides built-in defaults.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::Args;

use crate::CliError;

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Deployment model: grid | random
    #[arg(long)]
    pub scenario: Option<String>,
    /// bounds: coverage | connectivity; simulate: k-covered | connected |
    /// disconnected | k-connected
    #[arg(long)]
    pub property: Option<String>,
    /// Node count (perfect square for grids)
    #[arg(long)]
    pub n: Option<u64>,
    /// Activation probability (grid) or link success probability (random)
    #[arg(long)]
    pub p: Option<f64>,
    /// Coverage or connectivity order
    #[arg(long)]
    pub k: Option<u32>,
    /// Explicit radius or comma-separated radius list
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<f64>>,
    /// Sweep start radius
    #[arg(long = "r-start")]
    pub r_start: Option<f64>,
    /// Sweep stop radius (inclusive)
    #[arg(long = "r-stop")]
    pub r_stop: Option<f64>,
    /// Sweep step
    #[arg(long = "r-step")]
    pub r_step: Option<f64>,
    /// Virtual grid size override (perfect square)
    #[arg(long)]
    pub l: Option<u64>,
    /// Trials per sweep point
    #[arg(long)]
    pub trials: Option<u64>,
    /// Master seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Absolute quadrature tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Monte Carlo samples for the pair integrals
    #[arg(long = "pair-samples")]
    pub pair_samples: Option<u64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file with key=value lines matching these flag names
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved parameters.
#[derive(Debug, Clone)]
pub struct Params {
    pub scenario: String,
    pub property: String,
    pub n: u64,
    pub p: f64,
    pub k: u32,
    pub radii: Vec<f64>,
    pub l: Option<u64>,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub pair_samples: u64,
    pub out: Option<PathBuf>,
}

fn parse_config(path: &PathBuf) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config {}:{}: expected key=value, got {line:?}",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn conf<T: std::str::FromStr>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {raw:?}"))),
    }
}

impl ParamArgs {
    /// Flags beat config beats defaults.
    pub fn resolve(&self, default_property: &str) -> Result<Params, CliError> {
        let map = match &self.config {
            Some(path) => parse_config(path)?,
            None => HashMap::new(),
        };
        let scenario = self
            .scenario
            .clone()
            .or(map.get("scenario").cloned())
            .unwrap_or_else(|| "grid".to_string());
        if scenario != "grid" && scenario != "random" {
            return Err(CliError::Usage(format!("unknown scenario {scenario:?}; use grid or random")));
        }
        let property = self
            .property
            .clone()
            .or(map.get("property").cloned())
            .unwrap_or_else(|| default_property.to_string());

        let radii = self.resolve_radii(&map)?;
        Ok(Params {
            scenario,
            property,
            n: self.n.or(conf(&map, "n")?).unwrap_or(100),
            p: self.p.or(conf(&map, "p")?).unwrap_or(1.0),
            k: self.k.or(conf(&map, "k")?).unwrap_or(1),
            radii,
            l: self.l.or(conf(&map, "l")?),
            trials: self.trials.or(conf(&map, "trials")?).unwrap_or(10_000),
            seed: self.seed.or(conf(&map, "seed")?).unwrap_or(42),
            tol: self.tol.or(conf(&map, "tol")?).unwrap_or(1e-6),
            pair_samples: self.pair_samples.or(conf(&map, "pair-samples")?).unwrap_or(1_000_000),
            out: self.out.clone().or_else(|| map.get("out").map(PathBuf::from)),
        })
    }

    fn resolve_radii(&self, map: &HashMap<String, String>) -> Result<Vec<f64>, CliError> {
        let explicit: Option<Vec<f64>> = match &self.r {
            Some(list) => Some(list.clone()),
            None => match map.get("r") {
                Some(raw) => Some(
                    raw.split(',')
                        .map(|s| {
                            s.trim().parse::<f64>().map_err(|_| {
                                CliError::Usage(format!("config key r: cannot parse {s:?}"))
                            })
                        })
                        .collect::<Result<Vec<f64>, CliError>>()?,
                ),
                None => None,
            },
        };
        if let Some(list) = explicit {
            if list.is_empty() {
                return Err(CliError::Usage("empty radius list".into()));
            }
            return Ok(list);
        }
        let start = self.r_start.or(conf(map, "r-start")?);
        let stop = self.r_stop.or(conf(map, "r-stop")?);
        let step = self.r_step.or(conf(map, "r-step")?);
        match (start, stop, step) {
            (Some(start), Some(stop), Some(step)) => {
                if !(step > 0.0) {
                    return Err(CliError::Usage(format!("r-step must be positive, got {step}")));
                }
                if stop < start - 1e-12 {
                    return Err(CliError::Usage(format!(
                        "empty sweep range: r-stop {stop} below r-start {start}"
                    )));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok((0..count).map(|i| start + step * i as f64).collect())
            }
            (None, None, None) => Err(CliError::Usage(
                "no radius given: pass --r or --r-start/--r-stop/--r-step".into(),
            )),
            _ => Err(CliError::Usage(
                "incomplete sweep: --r-start, --r-stop, and --r-step are all required".into(),
            )),
        }
    }
}
