//! Lax matrices `L^λ(v) = (J^λ)₋ − v ξ^λ` on the slice `g = e^q`, their
//! partners, spectral invariants and finite-difference Poisson brackets.

use alloc::vec::Vec;

use crate::dynamics::{
    geodesic_evolve, initial_state, project_slice, projected_trajectory, to_chamber,
    IntegratorConfig, Trajectory, WallStop,
};
use crate::error::{Error, Result};
use crate::kak::{nearest_centralizer_element, KAKFactors};
use crate::kernel::{eigh, svd};
use crate::lie::{
    apply_spectral_function, embed_cartan, AlgebraElement, CartanVector, RootSystemData,
    SpectralFunction, EPS_REG,
};
use crate::matrix::{ComplexMatrix, C64, I};
use crate::reduction::{solve_constraint, CouplingConstants, OrbitPoint, ReducedPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "l",
            Side::Right => "r",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "l" | "left" => Some(Side::Left),
            "r" | "right" => Some(Side::Right),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LaxMatrix {
    pub side: Side,
    pub v: f64,
    pub mat: AlgebraElement,
}

/// `L^l(v) = (𝓛)₋ − v ξ^l` and `L^r(v) = (−e^{−q} 𝓛 e^{q})₋ − v ξ^r`.
///
/// The right-hand matrix is evaluated as
/// `−embed(p) + w(ad_q) ξ^l_{M⊥} + F(ad_q) ξ^r_{M⊥}`, which is what
/// `Ad_{e^{−q}} = cosh(ad_q) − sinh(ad_q)` gives on the constraint surface;
/// conjugating by `e^{±q}` directly cancels entries of size `e^{2|q|}`.
pub fn lax_matrix(
    pt: &ReducedPoint,
    v: f64,
    side: Side,
    rsd: &RootSystemData,
) -> Result<LaxMatrix> {
    let jl = solve_constraint(pt, rsd)?;
    let mat = match side {
        Side::Left => jl.minus_part().sub(&pt.xi_l.xi.scale(v)),
        Side::Right => {
            let l_perp = rsd.project_m_perp(&pt.xi_l.xi);
            let r_perp = rsd.project_m_perp(&pt.xi_r.xi);
            let w = apply_spectral_function(SpectralFunction::Csch, &pt.q, &l_perp, rsd)?;
            let f = apply_spectral_function(SpectralFunction::Coth, &pt.q, &r_perp, rsd)?;
            w.add(&f)
                .sub(&embed_cartan(pt.q.sig, &pt.p))
                .sub(&pt.xi_r.xi.scale(v))
        }
    };
    Ok(LaxMatrix { side, v, mat })
}

/// `y^λ` with its `M` component fitted, plus fit diagnostics.
#[derive(Clone, Debug)]
pub struct LaxPartner {
    pub side: Side,
    pub y: AlgebraElement,
    /// Fitted coefficients of `y_M` along [`RootSystemData::m_basis`].
    pub y_m: Vec<f64>,
    /// Directions of `M` commuting with `L` that the fit leaves at zero.
    pub null_directions: usize,
    /// `max_v ‖L̇ − [y, L]‖ / (1 + ‖L̇‖)` over `v ∈ {0, 1}`.
    pub residual: f64,
}

/// Default step of the central difference in [`lax_partner`]. The fit
/// residual is dominated by the `O(h²)` truncation error.
pub const LAX_FD_STEP: f64 = 1e-4;

/// The reduced point of `g(t)`, regauged so the `G₊` factor is as close to the
/// identity as the centralizer of `A` allows. This makes the data smooth
/// in `t` near `t = 0`.
fn slice_point_at(pt: &ReducedPoint, t: f64, rsd: &RootSystemData) -> Result<ReducedPoint> {
    let s0 = initial_state(pt, rsd)?;
    let g = geodesic_evolve(&s0, t)?;
    let (_, f) = project_slice(&g, &s0, rsd, EPS_REG)?;
    let near = nearest_centralizer_element(rsd.sig(), f.g_plus.mat())?;
    let KAKFactors { g_plus, q, h_plus } = f.regauge(&near);
    let k_inv = g_plus.mat().adjoint();
    let p = rsd.a_coefficients(&s0.jl.conjugate_by(&k_inv, g_plus.mat()));
    let xi_l = s0.xi_l.xi.conjugate_by(&k_inv, g_plus.mat());
    let xi_r = s0
        .xi_r
        .xi
        .conjugate_by(h_plus.mat(), &h_plus.mat().adjoint());
    Ok(ReducedPoint {
        q,
        p,
        xi_l: OrbitPoint { xi: xi_l },
        xi_r: OrbitPoint { xi: xi_r },
    })
}

/// `y^l = y_M + ½ξ^l_M − w²(ad_q)ξ^l_{M⊥} − (wF)(ad_q)ξ^r_{M⊥}` and the
/// mirrored `y^r`, with `y_M ∈ M` fitted by least squares so that
/// `L̇ = [y, L]` holds against a central difference of `L` along the flow
/// with step `h`.
pub fn lax_partner(
    pt: &ReducedPoint,
    side: Side,
    rsd: &RootSystemData,
    h: f64,
) -> Result<LaxPartner> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(
            "finite-difference step must be positive".into(),
        ));
    }
    let (own, other) = match side {
        Side::Left => (&pt.xi_l.xi, &pt.xi_r.xi),
        Side::Right => (&pt.xi_r.xi, &pt.xi_l.xi),
    };
    let own_m = rsd.project_m(own);
    let w2 = apply_spectral_function(
        SpectralFunction::CschSq,
        &pt.q,
        &rsd.project_m_perp(own),
        rsd,
    )?;
    let wf = apply_spectral_function(
        SpectralFunction::CothCsch,
        &pt.q,
        &rsd.project_m_perp(other),
        rsd,
    )?;
    let y0 = own_m.scale(0.5).sub(&w2).sub(&wf);

    let fwd = slice_point_at(pt, h, rsd)?;
    let bwd = slice_point_at(pt, -h, rsd)?;

    // rows: real and imaginary parts of every entry, for v = 0 and v = 1
    let basis = rsd.m_basis();
    let mut targets = Vec::new();
    let mut columns: Vec<Vec<f64>> = alloc::vec![Vec::new(); basis.len()];
    let mut pairs = Vec::new();
    for v in [0.0, 1.0] {
        let l0 = lax_matrix(pt, v, side, rsd)?.mat;
        let lp = lax_matrix(&fwd, v, side, rsd)?.mat;
        let lm = lax_matrix(&bwd, v, side, rsd)?.mat;
        let ldot = lp.sub(&lm).scale(0.5 / h);
        let rhs = ldot.sub(&y0.bracket(&l0));
        push_entries(&mut targets, rhs.mat());
        for (col, mb) in columns.iter_mut().zip(basis) {
            push_entries(col, mb.bracket(&l0).mat());
        }
        pairs.push((ldot, l0));
    }
    let (y_m, null_directions) = least_squares(&columns, &targets)?;
    let mut y = y0;
    for (c, mb) in y_m.iter().zip(basis) {
        y.axpy(*c, mb);
    }
    let residual = pairs
        .iter()
        .map(|(ldot, l)| ldot.sub(&y.bracket(l)).norm() / (1.0 + ldot.norm()))
        .fold(0.0, f64::max);
    Ok(LaxPartner {
        side,
        y,
        y_m,
        null_directions,
        residual,
    })
}

fn push_entries(out: &mut Vec<f64>, m: &ComplexMatrix) {
    out.extend(m.as_slice().iter().map(|z| z.re));
    out.extend(m.as_slice().iter().map(|z| z.im));
}

/// Minimum-norm least squares by SVD, dropping singular values below
/// `1e-10 σ_max`. Returns the solution and the number of dropped directions.
fn least_squares(columns: &[Vec<f64>], target: &[f64]) -> Result<(Vec<f64>, usize)> {
    let k = columns.len();
    if k == 0 {
        return Ok((Vec::new(), 0));
    }
    let rows = target.len();
    let a = ComplexMatrix::from_fn(rows, k, |r, c| C64::new(columns[c][r], 0.0));
    let f = svd(&a)?;
    let smax = f.s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok((alloc::vec![0.0; k], k));
    }
    let keep: Vec<usize> = (0..f.s.len()).filter(|&i| f.s[i] > 1e-10 * smax).collect();
    let smin = keep.iter().map(|&i| f.s[i]).fold(f64::INFINITY, f64::min);
    if smax / smin > 1e8 {
        return Err(Error::IllConditioned {
            condition: smax / smin,
        });
    }
    let mut x = alloc::vec![0.0; k];
    for &i in &keep {
        let ub: f64 = (0..rows).map(|r| (f.u[(r, i)].conj() * target[r]).re).sum();
        for (c, xc) in x.iter_mut().enumerate() {
            *xc += f.v[(c, i)].re * ub / f.s[i];
        }
    }
    Ok((x, k - keep.len()))
}

/// Spectrum of the Hermitian matrix `i I L` (ascending) and `tr L², tr L⁴, tr L⁶`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralInvariants {
    pub eigenvalues: Vec<f64>,
    pub traces: [f64; 3],
}

pub fn spectral_invariants(l: &LaxMatrix) -> Result<SpectralInvariants> {
    let sig = l.mat.sig();
    let a = l.mat.mat();
    let h = sig.metric().matmul(a).scale(I);
    let eigenvalues = eigh(&h)?.values;
    let l2 = a.matmul(a);
    let l4 = l2.matmul(&l2);
    let l6 = l4.matmul(&l2);
    let mut traces = [0.0; 3];
    for (t, m) in traces.iter_mut().zip([&l2, &l4, &l6]) {
        let z = m.trace();
        if z.im.abs() > 1e-11 * (1.0 + z.re.abs()) {
            return Err(Error::Domain(alloc::format!(
                "trace of a Lax power is not real (imaginary part {:e})",
                z.im
            )));
        }
        *t = z.re;
    }
    Ok(SpectralInvariants {
        eigenvalues,
        traces,
    })
}

/// Spectral data of `L(v)` on a sampled trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRecord {
    pub times: Vec<f64>,
    pub invariants: Vec<SpectralInvariants>,
}

#[derive(Clone, Debug)]
pub struct DriftReport {
    pub v: f64,
    pub side: Side,
    pub max_drift: f64,
    pub max_trace_drift: f64,
    pub record: SpectralRecord,
    pub stop: Option<WallStop>,
}

/// Spectral data of `L^λ(v)` along a sampled `(q, p)` trajectory, with the
/// spins held at `xi_l`, `xi_r`. Samples past a crossed wall are mapped
/// back to the chamber first.
pub fn spectral_record(
    traj: &Trajectory,
    xi_l: &OrbitPoint,
    xi_r: &OrbitPoint,
    v: f64,
    side: Side,
    rsd: &RootSystemData,
) -> Result<SpectralRecord> {
    let sig = rsd.sig();
    let mut invariants = Vec::with_capacity(traj.len());
    for (q, p) in traj.q.iter().zip(&traj.p) {
        let (q, p) = to_chamber(q, p);
        let at = ReducedPoint {
            q: CartanVector::new(sig, q)?,
            p,
            xi_l: xi_l.clone(),
            xi_r: xi_r.clone(),
        };
        invariants.push(spectral_invariants(&lax_matrix(&at, v, side, rsd)?)?);
    }
    Ok(SpectralRecord {
        times: traj.times.clone(),
        invariants,
    })
}

impl SpectralRecord {
    /// `max_t max_k |λ_k(t) − λ_k(0)|` over the sorted spectrum.
    pub fn max_drift(&self) -> f64 {
        let Some(first) = self.invariants.first() else {
            return 0.0;
        };
        self.invariants
            .iter()
            .flat_map(|inv| {
                inv.eigenvalues
                    .iter()
                    .zip(&first.eigenvalues)
                    .map(|(a, b)| (a - b).abs())
            })
            .fold(0.0, f64::max)
    }

    /// `max_t |tr L(t)^{2j} − tr L(0)^{2j}| / (1 + |tr L(0)^{2j}|)`.
    pub fn max_trace_drift(&self) -> f64 {
        let Some(first) = self.invariants.first() else {
            return 0.0;
        };
        self.invariants
            .iter()
            .flat_map(|inv| {
                inv.traces
                    .iter()
                    .zip(&first.traces)
                    .map(|(a, b)| (a - b).abs() / (1.0 + b.abs()))
            })
            .fold(0.0, f64::max)
    }
}

/// Isospectral drift of `L^λ(v)` along the projected flow from `pt`.
///
/// The spins are held at their values in `pt`. This is only meaningful when
/// the reduced spin orbit is a point, as for the one-point setups: the flow
/// then moves the slice spins by `M`, which conjugates `L` by an element of
/// `G₊` and leaves the spectrum of `i I L` unchanged.
pub fn invariant_drift(
    pt: &ReducedPoint,
    cfg: &IntegratorConfig,
    v: f64,
    side: Side,
    rsd: &RootSystemData,
    cc: Option<&CouplingConstants>,
) -> Result<DriftReport> {
    let traj = projected_trajectory(pt, cfg, rsd, cc)?;
    let record = spectral_record(&traj, &pt.xi_l, &pt.xi_r, v, side, rsd)?;
    Ok(DriftReport {
        v,
        side,
        max_drift: record.max_drift(),
        max_trace_drift: record.max_trace_drift(),
        record,
        stop: traj.stop,
    })
}

/// Central-difference estimate of the canonical bracket
/// `{f, g} = Σ_k (∂f/∂q^k ∂g/∂p^k − ∂f/∂p^k ∂g/∂q^k)` with step `h`.
///
/// The estimate is repeated with `h/2`. If the two disagree by more than
/// `1e-6 (1 + S)`, `S` the size of the summed products, and the rounding
/// error bound at `h/2` accounts for the gap, the step is rejected.
pub fn poisson_bracket_fd<F, G>(f: F, g: G, q: &[f64], p: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64], &[f64]) -> Result<f64>,
    G: Fn(&[f64], &[f64]) -> Result<f64>,
{
    if q.len() != p.len() {
        return Err(Error::Dimension {
            expected: (q.len(), 1),
            found: (p.len(), 1),
        });
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(
            "finite-difference step must be positive".into(),
        ));
    }
    let coarse = bracket_at(&f, &g, q, p, h)?;
    let fine = bracket_at(&f, &g, q, p, 0.5 * h)?;
    let gap = (coarse.value - fine.value).abs();
    let rounding = f64::EPSILON * fine.rounding_scale / (0.5 * h);
    if gap > 1e-6 * (1.0 + coarse.size) && rounding > 0.1 * gap {
        return Err(Error::StepTooSmall { disagreement: gap });
    }
    Ok(coarse.value)
}

struct BracketEstimate {
    value: f64,
    size: f64,
    rounding_scale: f64,
}

type ScalarFn<'a> = dyn Fn(&[f64], &[f64]) -> Result<f64> + 'a;

fn bracket_at<F, G>(f: &F, g: &G, q: &[f64], p: &[f64], h: f64) -> Result<BracketEstimate>
where
    F: Fn(&[f64], &[f64]) -> Result<f64>,
    G: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let n = q.len();
    let (f0, g0) = (f(q, p)?, g(q, p)?);
    let partial = |fun: &ScalarFn, k: usize, in_p: bool| -> Result<f64> {
        let (mut qa, mut pa) = (q.to_vec(), p.to_vec());
        let (mut qb, mut pb) = (q.to_vec(), p.to_vec());
        if in_p {
            pa[k] += h;
            pb[k] -= h;
        } else {
            qa[k] += h;
            qb[k] -= h;
        }
        Ok((fun(&qa, &pa)? - fun(&qb, &pb)?) / (2.0 * h))
    };
    let (mut value, mut size, mut grad_f, mut grad_g) = (0.0, 0.0, 0.0_f64, 0.0_f64);
    for k in 0..n {
        let (fq, fp) = (partial(f, k, false)?, partial(f, k, true)?);
        let (gq, gp) = (partial(g, k, false)?, partial(g, k, true)?);
        value += fq * gp - fp * gq;
        size += (fq * gp).abs() + (fp * gq).abs();
        grad_f = grad_f.max(fq.abs()).max(fp.abs());
        grad_g = grad_g.max(gq.abs()).max(gp.abs());
    }
    let rounding_scale = n as f64 * (f0.abs() * grad_g + g0.abs() * grad_f);
    Ok(BracketEstimate {
        value,
        size,
        rounding_scale,
    })
}
