use super::Trajectory;
use crate::error::{Error, Result};

/// Differences over the common prefix of two trajectories on one grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonReport {
    pub max_dq: f64,
    pub max_dp: f64,
    pub energy_drift_a: f64,
    pub energy_drift_b: f64,
    /// Earlier of the two truncation times, if either run stopped at a wall.
    pub stop_time: Option<f64>,
    pub samples: usize,
}

pub fn compare_trajectories(a: &Trajectory, b: &Trajectory) -> Result<ComparisonReport> {
    let common = a.len().min(b.len());
    if common == 0 || a.times[..common] != b.times[..common] {
        return Err(Error::GridMismatch);
    }
    // A shorter run must have stopped at a wall; otherwise the grids differ.
    let shorter = if a.len() < b.len() {
        Some(a)
    } else if b.len() < a.len() {
        Some(b)
    } else {
        None
    };
    if shorter.is_some_and(|t| t.stop.is_none()) {
        return Err(Error::GridMismatch);
    }
    let inf = |x: &[f64], y: &[f64]| {
        x.iter()
            .zip(y)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max)
    };
    let mut max_dq: f64 = 0.0;
    let mut max_dp: f64 = 0.0;
    for i in 0..common {
        max_dq = max_dq.max(inf(&a.q[i], &b.q[i]));
        max_dp = max_dp.max(inf(&a.p[i], &b.p[i]));
    }
    let prefix = |t: &Trajectory| Trajectory {
        times: t.times[..common].to_vec(),
        q: t.q[..common].to_vec(),
        p: t.p[..common].to_vec(),
        energy: t.energy[..common].to_vec(),
        ..t.clone()
    };
    let stop_time = match (a.stop, b.stop) {
        (Some(x), Some(y)) => Some(x.time.min(y.time)),
        (Some(x), None) | (None, Some(x)) => Some(x.time),
        (None, None) => None,
    };
    Ok(ComparisonReport {
        max_dq,
        max_dp,
        energy_drift_a: prefix(a).energy_drift(),
        energy_drift_b: prefix(b).energy_drift(),
        stop_time,
        samples: common,
    })
}
