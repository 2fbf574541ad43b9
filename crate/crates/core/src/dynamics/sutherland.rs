use super::{chamber_roots, wall_ahead, IntegratorConfig, Method, Trajectory, WallStop};
use crate::error::{Error, Result};
use crate::lie::RootKind;
use crate::reduction::{bcn_force, bcn_hamiltonian, CouplingConstants};

/// `min |α(q)|` over `e_j ± e_k` and `e_k`, with the minimizing root.
pub fn bcn_root_margin(q: &[f64]) -> (RootKind, f64) {
    chamber_roots(q.len())
        .map(|r| (r, r.value(q).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((RootKind::Short(0), f64::INFINITY))
}

/// One leapfrog step: half kick, drift, half kick.
pub fn verlet_step(q: &mut [f64], p: &mut [f64], dt: f64, cc: &CouplingConstants) {
    let f = bcn_force(q, cc);
    for k in 0..q.len() {
        p[k] += 0.5 * dt * f[k];
        q[k] += dt * p[k];
    }
    let f = bcn_force(q, cc);
    for k in 0..q.len() {
        p[k] += 0.5 * dt * f[k];
    }
}

fn force_self_check(q: &[f64], cc: &CouplingConstants) -> Result<()> {
    let f = bcn_force(q, cc);
    let zero = alloc::vec![0.0; q.len()];
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for k in 0..q.len() {
        let mut a = q.to_vec();
        let mut b = q.to_vec();
        a[k] += h;
        b[k] -= h;
        let fd = -(bcn_hamiltonian(&a, &zero, cc)? - bcn_hamiltonian(&b, &zero, cc)?) / (2.0 * h);
        worst = worst.max((fd - f[k]).abs() / (1.0 + f[k].abs()));
    }
    if worst > 1e-6 {
        return Err(Error::ForceCheck { deviation: worst });
    }
    Ok(())
}

/// Störmer–Verlet for `H_{BC_n}`; the energy column is `H_{BC_n} + s`.
///
/// Runs stop before walls where the potential is singular. Walls with a
/// vanishing coefficient are crossed, so `q` may leave the chamber.
pub fn sutherland_integrate(
    q0: &[f64],
    p0: &[f64],
    cc: &CouplingConstants,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    if q0.len() != p0.len() {
        return Err(Error::Dimension {
            expected: (q0.len(), 1),
            found: (p0.len(), 1),
        });
    }
    let floor = cfg.regularity_floor.max(crate::lie::EPS_REG);
    if let Some(root) = chamber_roots(q0.len()).find(|r| r.value(q0).abs() < floor) {
        return Err(Error::Regularity {
            root,
            value: root.value(q0).abs(),
        });
    }
    force_self_check(q0, cc)?;

    let mut q = q0.to_vec();
    let mut p = p0.to_vec();
    let samples = cfg.steps() / cfg.sample_every;
    let h = cfg.sample_spacing();
    let mut traj = Trajectory::new(Method::Direct);
    for i in 0..=samples {
        let t = cfg.sample_time(i);
        let energy = bcn_hamiltonian(&q, &p, cc)? + cc.energy_shift;
        let wall = wall_ahead(&q, &p, h, cfg.regularity_floor, Some(cc));
        traj.push(t, q.clone(), p.clone(), energy);
        if let Some((root, margin)) = wall {
            if i < samples {
                traj.stop = Some(WallStop {
                    time: t,
                    root,
                    margin,
                });
            }
            break;
        }
        if i < samples {
            for _ in 0..cfg.sample_every {
                verlet_step(&mut q, &mut p, cfg.dt, cc);
            }
        }
    }
    Ok(traj)
}
