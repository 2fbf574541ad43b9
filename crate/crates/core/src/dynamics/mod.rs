//! Two routes to the reduced dynamics: the exact geodesic `e^{tJ} g(0)`
//! projected to the chamber, and Störmer–Verlet integration of the `BC_n`
//! Sutherland Hamiltonian.

mod compare;
mod geodesic;
mod sutherland;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lie::RootKind;
use crate::reduction::CouplingConstants;

pub use compare::{compare_trajectories, ComparisonReport};
pub use geodesic::{
    geodesic_evolve, initial_state, project_slice, project_to_reduced, projected_trajectory,
    GeodesicState,
};
pub use sutherland::{bcn_root_margin, sutherland_integrate, verlet_step};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Projection,
    Direct,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Projection => "projection",
            Method::Direct => "direct",
        }
    }
}

/// Step size, horizon and wall policy.
///
/// Samples are taken every `sample_every` steps, so runs with `dt` and
/// `dt/2, sample_every·2` share a time grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// Smallest `min_α |α(q)|` allowed along the flow.
    pub regularity_floor: f64,
    pub sample_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_max: 5.0,
            regularity_floor: 1e-4,
            sample_every: 1,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.t_max > 0.0 && self.dt.is_finite() && self.t_max.is_finite()) {
            return Err(Error::Domain("dt and t_max must be positive".into()));
        }
        if self.sample_every == 0 || self.regularity_floor.is_nan() || self.regularity_floor < 0.0 {
            return Err(Error::Domain(
                "sample_every must be positive and the regularity floor nonnegative".into(),
            ));
        }
        Ok(())
    }

    /// Number of integration steps covering `[0, t_max]`.
    pub fn steps(&self) -> usize {
        let raw = libm::round(self.t_max / self.dt) as usize;
        raw - raw % self.sample_every
    }

    pub fn sample_spacing(&self) -> f64 {
        self.dt * self.sample_every as f64
    }

    /// `t_i = i · dt · sample_every`, computed without accumulation.
    pub fn sample_time(&self, i: usize) -> f64 {
        (i * self.sample_every) as f64 * self.dt
    }
}

/// Where and why a trajectory was truncated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WallStop {
    /// Time of the last retained sample.
    pub time: f64,
    pub root: RootKind,
    pub margin: f64,
}

/// Sampled `(q, p, energy)`; truncated before a chamber wall if `stop` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub method: Method,
    pub times: Vec<f64>,
    pub q: Vec<Vec<f64>>,
    pub p: Vec<Vec<f64>>,
    pub energy: Vec<f64>,
    pub stop: Option<WallStop>,
}

impl Trajectory {
    fn new(method: Method) -> Self {
        Self {
            method,
            times: Vec::new(),
            q: Vec::new(),
            p: Vec::new(),
            energy: Vec::new(),
            stop: None,
        }
    }

    fn push(&mut self, t: f64, q: Vec<f64>, p: Vec<f64>, e: f64) {
        self.times.push(t);
        self.q.push(q);
        self.p.push(p);
        self.energy.push(e);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `max_i |E_i − E_0| / max(1, |E_0|)`.
    pub fn energy_drift(&self) -> f64 {
        let Some(&e0) = self.energy.first() else {
            return 0.0;
        };
        let scale = e0.abs().max(1.0);
        self.energy
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0, f64::max)
            / scale
    }
}

/// Wall test shared by both routes, over walls that are singular for `cc`
/// (all walls when `cc` is `None`): the current margin is below `floor`, or
/// the straight line `q + h p` crosses the wall within the next sample.
pub(crate) fn wall_ahead(
    q: &[f64],
    p: &[f64],
    h: f64,
    floor: f64,
    cc: Option<&CouplingConstants>,
) -> Option<(RootKind, f64)> {
    let ahead: Vec<f64> = q.iter().zip(p).map(|(a, b)| a + h * b).collect();
    let singular = |r: &RootKind| cc.is_none_or(|cc| !cc.is_transparent(*r));
    chamber_roots(q.len())
        .filter(singular)
        .find(|r| r.value(q).abs() < floor || r.value(q) * r.value(&ahead) <= 0.0)
        .map(|r| (r, r.value(q).abs()))
}

/// Applies to a chamber point the signed permutation that carries the
/// chamber onto the Weyl chamber of `predicted`, the straight-line guess
/// from the previous sample.
pub(crate) fn unfold(
    chamber_q: &[f64],
    chamber_p: &[f64],
    predicted: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let n = predicted.len();
    let mut slot: Vec<usize> = (0..n).collect();
    slot.sort_by(|&a, &b| predicted[b].abs().total_cmp(&predicted[a].abs()));
    let mut q = alloc::vec![0.0; n];
    let mut p = alloc::vec![0.0; n];
    for (j, &s) in slot.iter().enumerate() {
        let sign = if predicted[s] < 0.0 { -1.0 } else { 1.0 };
        q[s] = sign * chamber_q[j];
        p[s] = sign * chamber_p[j];
    }
    (q, p)
}

/// Weyl-group representative in the closed chamber `q¹ ≥ … ≥ qⁿ ≥ 0`,
/// with `p` moved by the same signed permutation.
pub fn to_chamber(q: &[f64], p: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut idx: Vec<usize> = (0..q.len()).collect();
    idx.sort_by(|&a, &b| q[b].abs().total_cmp(&q[a].abs()));
    let sign = |k: usize| if q[k] < 0.0 { -1.0 } else { 1.0 };
    (
        idx.iter().map(|&k| sign(k) * q[k]).collect(),
        idx.iter().map(|&k| sign(k) * p[k]).collect(),
    )
}

/// The roots `e_j − e_k`, `e_j + e_k`, `e_k` that are positive on the
/// chamber `q¹ > … > qⁿ > 0`.
pub(crate) fn chamber_roots(n: usize) -> impl Iterator<Item = RootKind> {
    let diff = (0..n).flat_map(move |j| (j + 1..n).map(move |k| RootKind::Diff(j, k)));
    let sum = (0..n).flat_map(move |j| (j + 1..n).map(move |k| RootKind::Sum(j, k)));
    diff.chain(sum).chain((0..n).map(RootKind::Short))
}
