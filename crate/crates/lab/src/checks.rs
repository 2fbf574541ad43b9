//! The property suite behind `verify`.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reduction_core::dynamics::{
    bcn_root_margin, compare_trajectories, projected_trajectory, sutherland_integrate,
    IntegratorConfig, WallStop,
};
use reduction_core::kak::{kak_decompose, random_compact, GroupElement};
use reduction_core::kernel::standard_normal;
use reduction_core::lax::{invariant_drift, lax_partner, Side, LAX_FD_STEP};
use reduction_core::lie::{build_root_system, embed_cartan, RootKind, RootSystemData};
use reduction_core::reduction::{
    bcn_force, bcn_hamiltonian, momentum_map, random_spin_point, reduced_hamiltonian,
    solve_constraint, Setup,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::LabError;

const SAMPLES: usize = 100;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn at_most(name: &'static str, value: f64, tolerance: f64) -> Check {
    Check {
        name,
        value,
        tolerance,
        pass: value <= tolerance,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub case: String,
    pub m: usize,
    pub n: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

pub struct VerifyRun {
    pub report: VerifyReport,
    pub stop: Option<WallStop>,
}

/// Sorted chamber point with every root value at least `margin`.
fn random_regular_q(rsd: &RootSystemData, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut q: Vec<f64> = (0..rsd.sig().n())
            .map(|_| 1.5 * standard_normal(rng).abs())
            .collect();
        q.sort_by(|a, b| b.total_cmp(a));
        if rsd.min_root_margin(&q).1 >= 0.05 && bcn_root_margin(&q).1 >= 0.05 {
            return q;
        }
    }
}

fn structure(rsd: &RootSystemData) -> Vec<Check> {
    let (m, n) = (rsd.sig().m(), rsd.sig().n());
    let mut wrong = 0usize;
    for r in rsd.roots() {
        let expect = match r.kind {
            RootKind::Diff(..) | RootKind::Sum(..) => 2,
            RootKind::Long(_) => 1,
            RootKind::Short(_) => 2 * (m - n),
        };
        wrong += usize::from(r.multiplicity != expect);
    }
    wrong += usize::from(rsd.multiplicity_sum() != 2 * m * n - n);
    let v = rsd.vectors();
    let mut gram: f64 = 0.0;
    for (i, a) in v.iter().enumerate() {
        gram = gram
            .max(a.plus.theta().dist(&a.plus))
            .max(a.minus.theta().dist(&a.minus.scale(-1.0)));
        for (j, b) in v.iter().enumerate() {
            let d = if i == j { 1.0 } else { 0.0 };
            gram = gram
                .max((a.plus.pairing(&b.plus) + d).abs())
                .max((a.minus.pairing(&b.minus) - d).abs())
                .max(a.plus.pairing(&b.minus).abs());
        }
    }
    vec![
        at_most("root_multiplicities", wrong as f64, 0.0),
        at_most("basis_orthonormality", gram, 1e-12),
    ]
}

fn kak_round_trip(rsd: &RootSystemData, rng: &mut ChaCha8Rng) -> Result<Check, LabError> {
    let sig = rsd.sig();
    let mut worst: f64 = 0.0;
    for _ in 0..SAMPLES {
        let q = random_regular_q(rsd, rng);
        let g = random_compact(sig, rng)
            .mul(&GroupElement::exp(&embed_cartan(sig, &q))?)
            .mul(&random_compact(sig, rng));
        let f = kak_decompose(&g, rsd, 1e-6)?;
        worst = worst.max(f.reconstruct()?.dist(g.mat()) / g.mat().frobenius_norm());
    }
    Ok(at_most("kak_round_trip", worst, 1e-10))
}

fn reduction(setup: &Setup, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, LabError> {
    let rsd = &setup.rsd;
    let (mut zero_level, mut coupling): (f64, f64) = (0.0, 0.0);
    for _ in 0..SAMPLES {
        let q = random_regular_q(rsd, rng);
        let p: Vec<f64> = (0..q.len()).map(|_| standard_normal(rng)).collect();
        let pt = setup.point(&q, &p)?;
        let l = solve_constraint(&pt, rsd)?;
        let g = GroupElement::exp(&embed_cartan(rsd.sig(), &q))?;
        let (a, b) = momentum_map(&g, &l, &pt.xi_l, &pt.xi_r);
        zero_level = zero_level.max(a.norm() + b.norm());
        let half = 0.5 * reduced_hamiltonian(&pt, rsd)?;
        let gap = half - bcn_hamiltonian(&q, &p, &setup.cc)? - setup.cc.energy_shift;
        coupling = coupling.max(gap.abs() / (1.0 + half.abs()));
    }
    let mut identity: f64 = 0.0;
    for _ in 0..SAMPLES {
        let pt = random_spin_point(rsd, rng);
        let l = solve_constraint(&pt, rsd)?;
        let half = 0.5 * l.pairing(&l);
        identity = identity.max((reduced_hamiltonian(&pt, rsd)? - half).abs() / (1.0 + half.abs()));
    }
    Ok(vec![
        at_most("momentum_map_zero_level", zero_level, 1e-10),
        at_most("coupling_identity", coupling, 1e-10),
        at_most("hamiltonian_identity", identity, 1e-10),
    ])
}

/// Analytic force against central differences of `H_{BC_n}` at `q`.
fn force_check(q: &[f64], setup: &Setup) -> Result<Check, LabError> {
    let f = bcn_force(q, &setup.cc);
    let p = vec![0.0; q.len()];
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for k in 0..q.len() {
        let (mut a, mut b) = (q.to_vec(), q.to_vec());
        a[k] += h;
        b[k] -= h;
        let grad =
            (bcn_hamiltonian(&a, &p, &setup.cc)? - bcn_hamiltonian(&b, &p, &setup.cc)?) / (2.0 * h);
        worst = worst.max((f[k] + grad).abs() / (1.0 + grad.abs()));
    }
    Ok(at_most("force_matches_gradient", worst, 1e-6))
}

pub fn run(cfg: &RunConfig) -> Result<VerifyRun, LabError> {
    let setup = cfg.setup()?;
    let rsd = build_root_system(setup.sig());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = structure(&rsd);
    checks.push(kak_round_trip(&rsd, &mut rng)?);
    checks.extend(reduction(&setup, &mut rng)?);

    let (q0, p0) = (&cfg.init.q, &cfg.init.p);
    checks.push(force_check(q0, &setup)?);
    let pt = setup.point(q0, p0)?;
    let icfg = cfg.integrator_config();
    let proj = projected_trajectory(&pt, &icfg, &setup.rsd, Some(&setup.cc))?;
    let mut stop = proj.stop;
    checks.push(at_most(
        "projection_energy_drift",
        proj.energy_drift(),
        1e-9,
    ));

    // order check on the sample grid of a 2x coarser run
    let coarse_cfg = IntegratorConfig {
        sample_every: 2 * icfg.sample_every,
        ..icfg
    };
    let fine_cfg = IntegratorConfig {
        dt: 0.5 * icfg.dt,
        sample_every: 4 * icfg.sample_every,
        ..icfg
    };
    let grid = projected_trajectory(&pt, &coarse_cfg, &setup.rsd, Some(&setup.cc))?;
    let coarse = sutherland_integrate(q0, p0, &setup.cc, &coarse_cfg)?;
    let fine = sutherland_integrate(q0, p0, &setup.cc, &fine_cfg)?;
    stop = stop.or(coarse.stop).or(fine.stop);
    let ratio =
        compare_trajectories(&grid, &coarse)?.max_dq / compare_trajectories(&grid, &fine)?.max_dq;
    checks.push(Check {
        name: "verlet_order_ratio",
        value: ratio,
        tolerance: 0.5,
        pass: (ratio - 4.0).abs() <= 0.5,
    });

    let (mut drift, mut fit): (f64, f64) = (0.0, 0.0);
    for side in [Side::Left, Side::Right] {
        for v in [0.0, 0.7, -1.3] {
            let rep = invariant_drift(&pt, &icfg, v, side, &setup.rsd, Some(&setup.cc))?;
            stop = stop.or(rep.stop);
            drift = drift.max(rep.max_drift);
        }
        fit = fit.max(lax_partner(&pt, side, &setup.rsd, LAX_FD_STEP)?.residual);
    }
    checks.push(at_most("lax_isospectral_drift", drift, 1e-6));
    checks.push(at_most("lax_partner_fit", fit, 1e-6));

    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        case: setup.case.name().into(),
        m: setup.sig().m(),
        n: setup.sig().n(),
        pass,
        checks,
    };
    Ok(VerifyRun { report, stop })
}
