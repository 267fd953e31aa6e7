//! The four subcommands.

use std::path::{Path, PathBuf};

use sensornet::grid::{
    asymptotic_klb_thresholds, grid_bound_report, grid_breakpoints, GridSpec, VirtualGrid,
};
use sensornet::random::{
    asymptotic_disc, disc_report, kdisc_estimate, rand_cov_lower, rand_cov_upper, RandSpec,
};
use sensornet::sim::{successes_in_range, wilson_interval, Property, Scenario, Z95};
use sensornet::Error;

use crate::output::{num, opt, Csv};
use crate::params::Params;
use crate::CliError;

pub const BOUNDS_HEADER: &str = "r,lower,upper,estimate,a1,a2,asymptotic,klb_r_low,klb_r_high,provenance";
pub const SIM_HEADER: &str = "r,trials,successes,estimate,ci_low,ci_high,seed,provenance";
pub const BREAKPOINTS_HEADER: &str = "index,distance,sum_squares";

fn lib_err(e: Error) -> CliError {
    match e {
        Error::QuadratureNotConverged { .. } => CliError::NonConvergence(e.to_string()),
        other => CliError::Precondition(other.to_string()),
    }
}

/// Step thresholds of the asymptotic coverage prediction, when defined.
fn klb_columns(n: u64, p: f64) -> (Option<f64>, Option<f64>) {
    match asymptotic_klb_thresholds(n, p, 0.1) {
        Ok((lo, hi)) => (Some(lo), Some(hi)),
        Err(_) => (None, None),
    }
}

fn coverage_baseline(r: f64, thresholds: (Option<f64>, Option<f64>)) -> Option<f64> {
    match thresholds {
        (Some(lo), Some(hi)) => {
            if r <= lo {
                Some(0.0)
            } else if r >= hi {
                Some(1.0)
            } else {
                None
            }
        }
        _ => None,
    }
}

pub fn cmd_bounds(params: &Params) -> Result<(), CliError> {
    let mut csv = Csv::new(BOUNDS_HEADER);
    match (params.scenario.as_str(), params.property.as_str()) {
        ("grid", "coverage") => {
            let thresholds = klb_columns(params.n, params.p);
            for &r in &params.radii {
                let spec = GridSpec::new(params.n, params.p, r).map_err(lib_err)?;
                let rep = grid_bound_report(&spec, params.k, params.l).map_err(lib_err)?;
                let mut provenance = format!(
                    "lower={};upper={};baseline={}",
                    rep.lower_source, rep.upper_source, rep.baseline_source
                );
                if rep.clamped_exponents {
                    provenance.push_str(";clamped-exponents");
                }
                csv.row(&[
                    num(r),
                    num(rep.lower),
                    num(rep.upper),
                    String::new(),
                    String::new(),
                    String::new(),
                    opt(rep.baseline),
                    opt(thresholds.0),
                    opt(thresholds.1),
                    provenance,
                ]);
            }
        }
        ("random", "coverage") => {
            let thresholds = klb_columns(params.n, params.p);
            for &r in &params.radii {
                let vg = match params.l {
                    Some(l) => VirtualGrid::new(l, r),
                    None => VirtualGrid::for_radius(r),
                }
                .map_err(lib_err)?;
                let lower = rand_cov_lower(params.n, &vg).map_err(lib_err)?;
                let upper = rand_cov_upper(params.n, r);
                let mut provenance =
                    "lower=union-bound-virtual-grid;upper=spaced-point-packing;baseline=asymptotic-coverage-threshold"
                        .to_string();
                if r >= 0.5 {
                    provenance.push_str(";clamped-exponents");
                }
                csv.row(&[
                    num(r),
                    num(lower),
                    num(upper),
                    String::new(),
                    String::new(),
                    String::new(),
                    opt(coverage_baseline(r, thresholds)),
                    opt(thresholds.0),
                    opt(thresholds.1),
                    provenance,
                ]);
            }
        }
        ("random", "connectivity") => {
            if params.k == 1 {
                for &r in &params.radii {
                    let rep =
                        disc_report(params.n, r, params.p, params.tol, params.pair_samples, params.seed)
                            .map_err(lib_err)?;
                    csv.row(&[
                        num(r),
                        num(rep.clamp_lower()),
                        num(rep.clamp_upper()),
                        num(rep.clamp_estimate()),
                        num(rep.a1),
                        num(rep.a2),
                        num(asymptotic_disc(params.n, r)),
                        String::new(),
                        String::new(),
                        "lower=isolated-vertex-inclusion-exclusion;upper=component-sum-truncated;\
                         estimate=isolated-vertex-integral;baseline=double-exponential-limit"
                            .to_string(),
                    ]);
                }
            } else {
                if (params.p - 1.0).abs() > 1e-12 {
                    return Err(CliError::Precondition(format!(
                        "the k-disconnectivity estimate assumes perfect links; got p = {}",
                        params.p
                    )));
                }
                for &r in &params.radii {
                    let est = kdisc_estimate(params.n, r, params.k, params.tol).map_err(lib_err)?;
                    csv.row(&[
                        num(r),
                        String::new(),
                        String::new(),
                        num(est.value.clamp(0.0, 1.0)),
                        String::new(),
                        String::new(),
                        num(asymptotic_disc(params.n, r)),
                        String::new(),
                        String::new(),
                        "estimate=low-degree-vertex-integral;baseline=double-exponential-limit".to_string(),
                    ]);
                }
            }
        }
        ("grid", "connectivity") => {
            return Err(CliError::Usage(
                "no analytic connectivity bounds for grids; use `simulate --property connected`".into(),
            ));
        }
        (_, prop) => {
            return Err(CliError::Usage(format!(
                "unknown bounds property {prop:?}; use coverage or connectivity"
            )));
        }
    }
    csv.write(&params.out)
}

fn parse_sim_property(params: &Params) -> Result<Property, CliError> {
    match params.property.as_str() {
        "k-covered" | "covered" => Ok(Property::KCovered { k: params.k }),
        "connected" => Ok(Property::Connected),
        "disconnected" => Ok(Property::Disconnected),
        "k-connected" => Ok(Property::KConnected { k: params.k }),
        other => Err(CliError::Usage(format!(
            "unknown simulate property {other:?}; use k-covered, connected, disconnected, or k-connected"
        ))),
    }
}

fn scenario_for(params: &Params, r: f64) -> Result<Scenario, CliError> {
    match params.scenario.as_str() {
        "grid" => Ok(Scenario::Grid(GridSpec::new(params.n, params.p, r).map_err(lib_err)?)),
        "random" => Ok(Scenario::Random(RandSpec::new(params.n, r, params.p).map_err(lib_err)?)),
        other => Err(CliError::Usage(format!("unknown scenario {other:?}"))),
    }
}

const CHECKPOINT_BLOCK: u64 = 10_000;

struct Checkpoint {
    path: PathBuf,
    fingerprint: String,
    /// per sweep row: (trials done, successes so far)
    rows: Vec<(u64, u64)>,
}

impl Checkpoint {
    fn fingerprint(params: &Params, property: &Property) -> String {
        let radii: Vec<String> = params.radii.iter().map(|r| format!("{r:.17e}")).collect();
        format!(
            "scenario={};property={:?};n={};p={:.17e};k={};trials={};seed={};r={}",
            params.scenario,
            property,
            params.n,
            params.p,
            params.k,
            params.trials,
            params.seed,
            radii.join("|")
        )
    }

    fn load(out: &Path, params: &Params, property: &Property) -> Self {
        let path = PathBuf::from(format!("{}.ckpt", out.display()));
        let fingerprint = Self::fingerprint(params, property);
        let mut rows = vec![(0u64, 0u64); params.radii.len()];
        if let Ok(text) = std::fs::read_to_string(&path) {
            let mut lines = text.lines();
            if lines.next() == Some(&format!("fingerprint={fingerprint}")) {
                for line in lines {
                    let mut row = None;
                    let mut done = None;
                    let mut successes = None;
                    for field in line.split_whitespace() {
                        if let Some((k, v)) = field.split_once('=') {
                            match k {
                                "row" => row = v.parse::<usize>().ok(),
                                "done" => done = v.parse::<u64>().ok(),
                                "successes" => successes = v.parse::<u64>().ok(),
                                _ => {}
                            }
                        }
                    }
                    if let (Some(i), Some(d), Some(s)) = (row, done, successes) {
                        if i < rows.len() && d <= params.trials && s <= d {
                            rows[i] = (d, s);
                        }
                    }
                }
                eprintln!("resuming from checkpoint {}", path.display());
            }
        }
        Checkpoint { path, fingerprint, rows }
    }

    fn save(&self) {
        let mut text = format!("fingerprint={}\n", self.fingerprint);
        for (i, (done, successes)) in self.rows.iter().enumerate() {
            if *done > 0 {
                text.push_str(&format!("row={i} done={done} successes={successes}\n"));
            }
        }
        let tmp = PathBuf::from(format!("{}.tmp", self.path.display()));
        if std::fs::write(&tmp, text).and_then(|_| std::fs::rename(&tmp, &self.path)).is_err() {
            log::warn!("could not persist checkpoint {}", self.path.display());
        }
    }

    fn remove(&self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

pub fn cmd_simulate(params: &Params) -> Result<(), CliError> {
    if params.trials == 0 {
        return Err(CliError::Usage("need at least one trial".into()));
    }
    let property = parse_sim_property(params)?;
    let mut ckpt = params
        .out
        .as_ref()
        .map(|out| Checkpoint::load(out, params, &property));

    let mut csv = Csv::new(SIM_HEADER);
    for (i, &r) in params.radii.iter().enumerate() {
        let scenario = scenario_for(params, r)?;
        let (mut done, mut successes) = ckpt.as_ref().map_or((0, 0), |c| c.rows[i]);
        while done < params.trials {
            let hi = (done + CHECKPOINT_BLOCK).min(params.trials);
            successes += successes_in_range(&scenario, property, done..hi, params.seed);
            done = hi;
            if let Some(c) = ckpt.as_mut() {
                c.rows[i] = (done, successes);
                c.save();
            }
        }
        eprintln!(
            "r={r:.4}: {successes}/{} {}",
            params.trials,
            property.label()
        );
        let estimate = successes as f64 / params.trials as f64;
        let (ci_low, ci_high) = wilson_interval(successes, params.trials, Z95);
        csv.row(&[
            num(r),
            params.trials.to_string(),
            successes.to_string(),
            num(estimate),
            num(ci_low),
            num(ci_high),
            params.seed.to_string(),
            format!("simulation:{}", property.label()),
        ]);
    }
    csv.write(&params.out)?;
    if let Some(c) = ckpt {
        c.remove();
    }
    Ok(())
}

pub fn cmd_breakpoints(n: u64, out: &Option<PathBuf>) -> Result<(), CliError> {
    let set = grid_breakpoints(n).map_err(lib_err)?;
    let mut csv = Csv::new(BREAKPOINTS_HEADER);
    for (i, bp) in set.as_slice().iter().enumerate() {
        csv.row(&[(i + 1).to_string(), num(bp.distance), bp.sum_squares.to_string()]);
    }
    csv.write(out)
}

/// Canned sweep recipes that regenerate the data behind the figure-style
/// comparisons: analytic bounds or baselines next to ground-truth
/// simulation, one CSV per curve family plus a manifest.
pub fn cmd_reproduce(id: &str, out_dir: &Path, trials: Option<u64>, seed: u64) -> Result<(), CliError> {
    let recipes: &[(&str, &str)] = &[
        ("fig2", "grid coverage, k=1: asymptotic threshold prediction vs simulation (n=100, p=0.2)"),
        ("fig3", "grid coverage, k=2: asymptotic threshold prediction vs simulation (n=100, p=0.2)"),
        ("fig5", "grid coverage, k=1: product/packing bounds vs simulation (n=100, p=0.2)"),
        ("fig6", "grid coverage, k=2: product/packing bounds vs simulation (n=100, p=0.2)"),
        ("fig8", "random connectivity: double-exponential baseline vs simulated disconnectivity (n=100, p=1)"),
        ("fig9", "random connectivity: isolated-vertex term a1 vs isolated-pair term a2 (n=100, p=0.5)"),
        ("fig10", "random disconnectivity: lower/upper bounds and estimate vs simulation (n=100, p=0.5)"),
    ];
    let Some((_, description)) = recipes.iter().find(|(name, _)| *name == id) else {
        let names: Vec<&str> = recipes.iter().map(|(name, _)| *name).collect();
        return Err(CliError::Usage(format!(
            "unknown figure id {id:?}; valid ids: {}",
            names.join(", ")
        )));
    };
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    let dense: Vec<f64> = (0..31).map(|i| 0.15 + 0.01 * i as f64).collect();
    let coarse: Vec<f64> = (0..13).map(|i| 0.15 + 0.025 * i as f64).collect();
    let trials = trials.unwrap_or(20_000);

    let base = |scenario: &str, property: &str, p: f64, k: u32, radii: &[f64]| Params {
        scenario: scenario.into(),
        property: property.into(),
        n: 100,
        p,
        k,
        radii: radii.to_vec(),
        l: None,
        trials,
        seed,
        tol: 1e-6,
        pair_samples: 1_000_000,
        out: None,
    };

    let mut manifest = vec![format!("{id}: {description}"), String::new()];
    let mut emit = |name: &str, params: &Params, run: &dyn Fn(&Params) -> Result<(), CliError>, what: &str|
     -> Result<(), CliError> {
        let path = out_dir.join(name);
        let mut with_out = params.clone();
        with_out.out = Some(path.clone());
        run(&with_out)?;
        manifest.push(format!("{name}: {what}"));
        Ok(())
    };

    match id {
        "fig2" | "fig3" | "fig5" | "fig6" => {
            let k = if id == "fig3" || id == "fig6" { 2 } else { 1 };
            let b = base("grid", "coverage", 0.2, k, &dense);
            emit(
                "bounds.csv",
                &b,
                &cmd_bounds,
                "columns lower/upper: virtual-grid product and spaced-point packing bounds; \
                 asymptotic/klb_*: threshold prediction",
            )?;
            let s = base("grid", "k-covered", 0.2, k, &dense);
            emit("simulation.csv", &s, &cmd_simulate, "exact k-coverage frequency with Wilson 95% interval")?;
        }
        "fig8" => {
            let b = base("random", "connectivity", 1.0, 1, &coarse);
            emit(
                "bounds.csv",
                &b,
                &cmd_bounds,
                "column asymptotic: double-exponential disconnectivity baseline; estimate/a1/a2: finite-size terms",
            )?;
            let s = base("random", "disconnected", 1.0, 1, &coarse);
            emit("simulation.csv", &s, &cmd_simulate, "simulated disconnectivity frequency")?;
        }
        "fig9" | "fig10" => {
            let b = base("random", "connectivity", 0.5, 1, &coarse);
            emit(
                "bounds.csv",
                &b,
                &cmd_bounds,
                "columns a1/a2: isolated-vertex and isolated-pair terms; lower/upper/estimate: disconnectivity bounds",
            )?;
            let s = base("random", "disconnected", 0.5, 1, &coarse);
            emit("simulation.csv", &s, &cmd_simulate, "simulated disconnectivity frequency")?;
        }
        _ => unreachable!("id validated above"),
    }

    manifest.push(String::new());
    manifest.push(format!("common: n=100, trials={trials}, seed={seed}; raise --trials for tighter intervals"));
    let manifest_path = out_dir.join("manifest.txt");
    std::fs::write(&manifest_path, manifest.join("\n") + "\n")
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", manifest_path.display())))?;
    Ok(())
}
