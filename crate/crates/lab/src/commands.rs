use std::path::{Path, PathBuf};

use reduction_core::dynamics::{
    compare_trajectories, projected_trajectory, sutherland_integrate, ComparisonReport, Method,
    Trajectory, WallStop,
};
use reduction_core::lax::{invariant_drift, lax_partner, Side, LAX_FD_STEP};
use reduction_core::lie::{build_root_system, Signature};
use serde::Serialize;

use crate::checks;
use crate::config::{set_number, RunConfig};
use crate::output::{self, CheckEntry, Manifest, StopEntry};
use crate::LabError;

/// Output directory plus the bookkeeping for its manifest.
struct Session {
    command: String,
    config: serde_json::Value,
    dir: PathBuf,
    started: f64,
}

impl Session {
    fn open(command: String, cfg: &RunConfig) -> Result<Self, LabError> {
        let dir = cfg.output_dir();
        std::fs::create_dir_all(&dir).map_err(|e| LabError::io(&dir, e))?;
        let config = serde_json::to_value(cfg).expect("config serializes");
        Ok(Self {
            command,
            config,
            dir,
            started: output::unix_now(),
        })
    }

    /// Writes the manifest and returns the exit code: 3 if a run stopped at
    /// a wall, else 0 iff every check passed.
    fn close(self, checks: Vec<CheckEntry>, stop: Option<WallStop>) -> Result<i32, LabError> {
        let exit_code = if stop.is_some() {
            3
        } else if checks.iter().all(|c| c.pass) {
            0
        } else {
            1
        };
        let manifest = Manifest {
            artifact: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            config: self.config,
            started_unix: self.started,
            finished_unix: output::unix_now(),
            files: output::list_files(&self.dir)?,
            checks,
            stop: stop.map(StopEntry::from),
            exit_code,
        };
        output::write_json(&self.dir, output::MANIFEST, &manifest)?;
        Ok(exit_code)
    }
}

fn check(name: impl Into<String>, pass: bool) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootRow {
    pub root: String,
    pub formula: String,
    pub multiplicity: usize,
}

pub fn root_table(m: usize, n: usize) -> Result<Vec<RootRow>, LabError> {
    let sig = Signature::new(m, n).map_err(|e| LabError::Usage(format!("roots: {e}")))?;
    Ok(build_root_system(sig)
        .roots()
        .iter()
        .map(|r| RootRow {
            root: r.kind.to_string(),
            formula: r.kind.formula(),
            multiplicity: r.multiplicity,
        })
        .collect())
}

pub fn render_root_table(rows: &[RootRow]) -> String {
    let mut out = format!("{:<8} {:<12} {}\n", "root", "alpha(q)", "multiplicity");
    for r in rows {
        out.push_str(&format!(
            "{:<8} {:<12} {}\n",
            r.root, r.formula, r.multiplicity
        ));
    }
    out
}

pub fn verify(cfg: &RunConfig) -> Result<i32, LabError> {
    let session = Session::open("verify".into(), cfg)?;
    let run = checks::run(cfg)?;
    output::write_json(&session.dir, "verify.json", &run.report)?;
    for c in run.report.checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "check failed: {} = {:e} (tolerance {:e})",
            c.name, c.value, c.tolerance
        );
    }
    let entries = run
        .report
        .checks
        .iter()
        .map(|c| check(c.name, c.pass))
        .collect();
    session.close(entries, run.stop)
}

fn run_method(cfg: &RunConfig, method: Method) -> Result<Trajectory, LabError> {
    let setup = cfg.setup()?;
    let icfg = cfg.integrator_config();
    Ok(match method {
        Method::Projection => {
            let pt = setup.point(&cfg.init.q, &cfg.init.p)?;
            projected_trajectory(&pt, &icfg, &setup.rsd, Some(&setup.cc))?
        }
        Method::Direct => sutherland_integrate(&cfg.init.q, &cfg.init.p, &setup.cc, &icfg)?,
    })
}

pub fn simulate(cfg: &RunConfig, method: Method) -> Result<i32, LabError> {
    let session = Session::open(format!("simulate --method {}", method.name()), cfg)?;
    let traj = run_method(cfg, method)?;
    let name = format!("trajectory_{}.csv", method.name());
    output::write_file(
        &session.dir,
        &name,
        output::trajectory_csv(&traj).as_bytes(),
    )?;
    if let Some(stop) = traj.stop {
        eprintln!(
            "{} run stopped at t = {} before wall {} (margin {:e})",
            method.name(),
            stop.time,
            stop.root,
            stop.margin
        );
    }
    session.close(
        vec![check(
            format!("{} run completed", method.name()),
            traj.stop.is_none(),
        )],
        traj.stop,
    )
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct CompareJson {
    pub max_dq: f64,
    pub max_dp: f64,
    pub energy_drift_a: f64,
    pub energy_drift_b: f64,
    pub stop_time: Option<f64>,
}

impl From<ComparisonReport> for CompareJson {
    fn from(r: ComparisonReport) -> Self {
        Self {
            max_dq: r.max_dq,
            max_dp: r.max_dp,
            energy_drift_a: r.energy_drift_a,
            energy_drift_b: r.energy_drift_b,
            stop_time: r.stop_time,
        }
    }
}

/// Projection (a) against direct (b) on the configured grid.
fn compare_runs(cfg: &RunConfig) -> Result<(CompareJson, Option<WallStop>), LabError> {
    let a = run_method(cfg, Method::Projection)?;
    let b = run_method(cfg, Method::Direct)?;
    let report = compare_trajectories(&a, &b)?;
    Ok((report.into(), a.stop.or(b.stop)))
}

fn compare_into(cfg: &RunConfig, dir: &Path) -> Result<(CompareJson, Option<WallStop>), LabError> {
    let (report, stop) = compare_runs(cfg)?;
    output::write_json(dir, "compare.json", &report)?;
    Ok((report, stop))
}

pub fn compare(cfg: &RunConfig) -> Result<i32, LabError> {
    let session = Session::open("compare".into(), cfg)?;
    let (report, stop) = compare_into(cfg, &session.dir)?;
    let tol = cfg.tolerances.compare;
    if report.max_dq > tol {
        eprintln!(
            "max_dq = {:e} exceeds tolerances.compare = {tol:e}",
            report.max_dq
        );
    }
    session.close(
        vec![check(format!("max_dq <= {tol:e}"), report.max_dq <= tol)],
        stop,
    )
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct LaxJson {
    pub v: f64,
    pub side: &'static str,
    pub max_drift: f64,
    pub fit_residual: f64,
}

pub const LAX_TOLERANCE: f64 = 1e-6;

pub fn lax(cfg: &RunConfig, v: f64, side: Side) -> Result<i32, LabError> {
    let session = Session::open(format!("lax --v {v} --side {}", side.name()), cfg)?;
    let setup = cfg.setup()?;
    let pt = setup.point(&cfg.init.q, &cfg.init.p)?;
    let drift = invariant_drift(
        &pt,
        &cfg.integrator_config(),
        v,
        side,
        &setup.rsd,
        Some(&setup.cc),
    )?;
    let fit = lax_partner(&pt, side, &setup.rsd, LAX_FD_STEP)?;
    let report = LaxJson {
        v,
        side: side.name(),
        max_drift: drift.max_drift,
        fit_residual: fit.residual,
    };
    output::write_json(&session.dir, "lax.json", &report)?;
    let entries = vec![
        check("max_drift <= 1e-6", report.max_drift <= LAX_TOLERANCE),
        check("fit_residual <= 1e-6", report.fit_residual <= LAX_TOLERANCE),
    ];
    session.close(entries, drift.stop)
}

#[derive(Clone, Debug)]
struct SweepRow {
    value: f64,
    result: Result<(CompareJson, bool), String>,
}

/// Runs `compare` once per value of the dotted key `param`, in parallel.
///
/// Each child writes `sweep/<param>=<value>/compare.json`; the rows of
/// `sweep.csv` are sorted by value.
pub fn sweep(base: &toml::Table, param: &str, values: &[f64]) -> Result<i32, LabError> {
    if values.is_empty() {
        return Err(LabError::Usage("sweep: --values is empty".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(LabError::Usage("sweep: values must be finite".into()));
    }
    let cfg = RunConfig::from_table(base.clone())?;
    set_number(&mut base.clone(), param, values[0])?;
    let session = Session::open(format!("sweep --param {param}"), &cfg)?;
    let dir = session.dir.clone();

    let child = |value: f64| -> SweepRow {
        let run = || -> Result<(CompareJson, bool), LabError> {
            let mut table = base.clone();
            set_number(&mut table, param, value)?;
            let child_cfg = RunConfig::from_table(table)?;
            let (report, stop) = compare_into(
                &child_cfg,
                &dir.join("sweep").join(format!("{param}={value}")),
            )?;
            Ok((
                report,
                stop.is_none() && report.max_dq <= child_cfg.tolerances.compare,
            ))
        };
        SweepRow {
            value,
            result: run().map_err(|e| e.to_string()),
        }
    };
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(values.len());
    let mut rows: Vec<SweepRow> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let child = &child;
                s.spawn(move || {
                    values
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|&v| child(v))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));

    let mut csv = String::from("value,max_dq,max_dp,energy_drift\n");
    let mut entries = Vec::new();
    for row in &rows {
        match &row.result {
            Ok((r, pass)) => {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    output::num(row.value),
                    output::num(r.max_dq),
                    output::num(r.max_dp),
                    output::num(r.energy_drift_b)
                ));
                entries.push(check(format!("{param}={}", row.value), *pass));
            }
            Err(msg) => {
                eprintln!("sweep child {param}={} failed: {msg}", row.value);
                csv.push_str(&format!("{},nan,nan,nan\n", output::num(row.value)));
                entries.push(check(format!("{param}={}", row.value), false));
            }
        }
    }
    output::write_file(&session.dir, "sweep.csv", csv.as_bytes())?;
    // a child that hit a wall is a failed child, not a stopped sweep
    session.close(entries, None)
}
