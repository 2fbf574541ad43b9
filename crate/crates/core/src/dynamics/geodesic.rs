use alloc::vec::Vec;

use super::{unfold, wall_ahead, IntegratorConfig, Method, Trajectory, WallStop};
use crate::error::{Error, Result};
use crate::kak::{exp_cartan, kak_decompose, GroupElement, KAKFactors};
use crate::kernel::expm;
use crate::lie::{embed_cartan, AlgebraElement, RootSystemData};
use crate::reduction::{
    bcn_hamiltonian, momentum_map, reduced_hamiltonian, solve_constraint, CouplingConstants,
    OrbitPoint, ReducedPoint,
};

/// A point `(g, J^l, ξ^l, ξ^r)` of the extended phase space.
#[derive(Clone, Debug)]
pub struct GeodesicState {
    pub g: GroupElement,
    pub jl: AlgebraElement,
    pub xi_l: OrbitPoint,
    pub xi_r: OrbitPoint,
}

impl GeodesicState {
    /// `‖Ψ^l‖ + ‖Ψ^r‖`.
    pub fn momentum_residual(&self) -> f64 {
        let (a, b) = momentum_map(&self.g, &self.jl, &self.xi_l, &self.xi_r);
        a.norm() + b.norm()
    }
}

/// `(e^q, 𝓛(q, p, ξ^l, ξ^r), ξ^l, ξ^r)`.
pub fn initial_state(pt: &ReducedPoint, rsd: &RootSystemData) -> Result<GeodesicState> {
    let jl = solve_constraint(pt, rsd)?;
    let g = GroupElement::exp(&embed_cartan(pt.q.sig, &pt.q.q))?;
    let state = GeodesicState {
        g,
        jl,
        xi_l: pt.xi_l.clone(),
        xi_r: pt.xi_r.clone(),
    };
    let residual = state.momentum_residual();
    if residual > 1e-10 * (1.0 + state.jl.norm()) {
        return Err(Error::Constraint { residual });
    }
    Ok(state)
}

/// `e^{tJ^l} g(0)`.
pub fn geodesic_evolve(s0: &GeodesicState, t: f64) -> Result<GroupElement> {
    let e = expm(&s0.jl.mat().scale_re(t))?;
    Ok(GroupElement::from_matrix_unchecked(
        s0.g.sig(),
        e.matmul(s0.g.mat()),
    ))
}

/// Gauge-transforms `(g, J^l, ξ^l, ξ^r)` by `(g₊⁻¹, h₊)` onto the slice
/// `g = e^q` and reads off the reduced point.
pub fn project_slice(
    g: &GroupElement,
    s0: &GeodesicState,
    rsd: &RootSystemData,
    eps_reg: f64,
) -> Result<(ReducedPoint, KAKFactors)> {
    let f = kak_decompose(g, rsd, eps_reg)?;
    let k1 = f.g_plus.inverse();
    let j = k1.adjoint_action(&s0.jl);
    let p = rsd.a_coefficients(&j);
    let xi_l = OrbitPoint {
        xi: k1.adjoint_action(&s0.xi_l.xi),
    };
    let xi_r = OrbitPoint {
        xi: f.h_plus.adjoint_action(&s0.xi_r.xi),
    };
    Ok((
        ReducedPoint {
            q: f.q.clone(),
            p,
            xi_l,
            xi_r,
        },
        f,
    ))
}

/// `(q, p)` of `g` with `p` the `A` coefficients of `g₊⁻¹ J^l g₊`.
pub fn project_to_reduced(
    g: &GroupElement,
    s0: &GeodesicState,
    rsd: &RootSystemData,
    eps_reg: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (pt, _) = project_slice(g, s0, rsd, eps_reg)?;
    Ok((pt.q.q, pt.p))
}

/// Projects the geodesic through `I(pt)` on the sample grid.
///
/// The group element is carried in factored form `g(t_i) = K e^{q} H`, and
/// `g(t_{i+1}) = K (e^{hJ'} e^{q}) H` with `J' = K⁻¹ J^l K`, so each sample
/// decomposes a well-conditioned matrix times `e^q` instead of a matrix
/// with entries of size `e^{q¹}`. This is the same curve as
/// [`geodesic_evolve`] without losing the small singular values.
///
/// The energy column is `H_{BC_n} + s` when couplings are given, otherwise
/// `½ H_red` evaluated on the gauge-transformed spins. With couplings, the
/// chamber point is continued by the Weyl group through walls where the
/// potential vanishes, matching [`super::sutherland_integrate`].
pub fn projected_trajectory(
    pt: &ReducedPoint,
    cfg: &IntegratorConfig,
    rsd: &RootSystemData,
    cc: Option<&CouplingConstants>,
) -> Result<Trajectory> {
    cfg.validate()?;
    let s0 = initial_state(pt, rsd)?;
    let sig = pt.q.sig;
    let samples = cfg.steps() / cfg.sample_every;
    let h = cfg.sample_spacing();
    let step = expm(&s0.jl.mat().scale_re(h))?;
    let eps = cfg.regularity_floor.min(crate::lie::EPS_REG);

    let mut k = GroupElement::identity(sig);
    let mut right = GroupElement::identity(sig);
    let mut q = pt.q.clone();
    let mut traj = Trajectory::new(Method::Projection);
    for i in 0..=samples {
        let t = cfg.sample_time(i);
        if i > 0 {
            let x = k.mat().adjoint().matmul(&step).matmul(k.mat());
            let g = GroupElement::from_matrix_unchecked(sig, x.matmul(&exp_cartan(sig, &q.q)));
            let f = match kak_decompose(&g, rsd, eps) {
                Ok(f) => f,
                Err(Error::Regularity { root, value }) => {
                    traj.stop = Some(WallStop {
                        time: traj.times[i - 1],
                        root,
                        margin: value,
                    });
                    break;
                }
                Err(e) => return Err(e),
            };
            k = k.mul(&f.g_plus);
            right = f.h_plus.mul(&right);
            q = f.q;
        }
        let kinv = k.inverse();
        let p = rsd.a_coefficients(&kinv.adjoint_action(&s0.jl));
        let energy = match cc {
            Some(cc) => bcn_hamiltonian(&q.q, &p, cc)? + cc.energy_shift,
            None => {
                let red = ReducedPoint {
                    q: q.clone(),
                    p: p.clone(),
                    xi_l: OrbitPoint {
                        xi: kinv.adjoint_action(&s0.xi_l.xi),
                    },
                    xi_r: OrbitPoint {
                        xi: right.adjoint_action(&s0.xi_r.xi),
                    },
                };
                0.5 * reduced_hamiltonian(&red, rsd)?
            }
        };
        // continue through walls that are transparent for `cc`
        let (q_out, p_out) = match (cc, traj.q.last()) {
            (Some(_), Some(prev_q)) => {
                let prev_p = traj.p.last().expect("q and p are pushed together");
                let predicted: Vec<f64> =
                    prev_q.iter().zip(prev_p).map(|(a, b)| a + h * b).collect();
                unfold(&q.q, &p, &predicted)
            }
            _ => (q.q.clone(), p),
        };
        let wall = wall_ahead(&q_out, &p_out, h, cfg.regularity_floor, cc);
        traj.push(t, q_out, p_out, energy);
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
    }
    Ok(traj)
}
