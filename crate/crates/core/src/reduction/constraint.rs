use alloc::vec::Vec;

use rand_core::Rng;

use super::orbits::OrbitPoint;
use crate::error::{Error, Result};
use crate::kak::GroupElement;
use crate::kernel::{standard_complex_normal, standard_normal};
use crate::lie::{
    apply_spectral_function, embed_cartan, AlgebraElement, CartanVector, RootSystemData,
    SpectralFunction,
};
use crate::matrix::{ComplexMatrix, C64};

/// Accepted `‖ξ^l_M + ξ^r_M‖`, relative to `1 + ‖ξ^l‖ + ‖ξ^r‖`.
pub const CONSTRAINT_TOL: f64 = 1e-9;

/// `(q, p, ξ^l, ξ^r)` with `J^l_A = embed(p)`.
#[derive(Clone, Debug)]
pub struct ReducedPoint {
    pub q: CartanVector,
    pub p: Vec<f64>,
    pub xi_l: OrbitPoint,
    pub xi_r: OrbitPoint,
}

/// `‖ξ^l_M + ξ^r_M‖`.
pub fn constraint_residual(xi_l: &OrbitPoint, xi_r: &OrbitPoint, rsd: &RootSystemData) -> f64 {
    rsd.project_m(&xi_l.xi.add(&xi_r.xi)).norm()
}

/// `Ψ^l = (J^l)₊ + ξ^l`, `Ψ^r = −(g⁻¹ J^l g)₊ + ξ^r`.
pub fn momentum_map(
    g: &GroupElement,
    jl: &AlgebraElement,
    xi_l: &OrbitPoint,
    xi_r: &OrbitPoint,
) -> (AlgebraElement, AlgebraElement) {
    let psi_l = jl.plus_part().add(&xi_l.xi);
    let jr = g.inverse().adjoint_action(jl);
    let psi_r = xi_r.xi.sub(&jr.plus_part());
    (psi_l, psi_r)
}

fn check_point(pt: &ReducedPoint, rsd: &RootSystemData) -> Result<()> {
    if pt.p.len() != pt.q.q.len() {
        return Err(Error::Dimension {
            expected: (pt.q.q.len(), 1),
            found: (pt.p.len(), 1),
        });
    }
    let residual = constraint_residual(&pt.xi_l, &pt.xi_r, rsd);
    if residual > CONSTRAINT_TOL * (1.0 + pt.xi_l.xi.norm() + pt.xi_r.xi.norm()) {
        return Err(Error::Constraint { residual });
    }
    rsd.check_regular(&pt.q.q, crate::lie::EPS_REG)
}

/// `𝓛 = embed(p) − F(ad_q) ξ^l_{M⊥} − w(ad_q) ξ^r_{M⊥} − ξ^l`, the value of
/// `J^l` on the zero level of the momentum map over `g = e^q`.
pub fn solve_constraint(pt: &ReducedPoint, rsd: &RootSystemData) -> Result<AlgebraElement> {
    check_point(pt, rsd)?;
    let sig = pt.q.sig;
    let l_perp = rsd.project_m_perp(&pt.xi_l.xi);
    let r_perp = rsd.project_m_perp(&pt.xi_r.xi);
    let f = apply_spectral_function(SpectralFunction::Coth, &pt.q, &l_perp, rsd)?;
    let w = apply_spectral_function(SpectralFunction::Csch, &pt.q, &r_perp, rsd)?;
    Ok(embed_cartan(sig, &pt.p).sub(&f).sub(&w).sub(&pt.xi_l.xi))
}

/// The reduced Hamiltonian evaluated term by term:
///
/// `½⟨p,p⟩ − ½⟨ξˡ⊥, w²ξˡ⊥⟩ − ½⟨ξʳ⊥, w²ξʳ⊥⟩ + ½⟨ξˡ_M, ξˡ_M⟩
///  + ⟨ξʳ⊥, w²ξˡ⊥⟩ − ½⟨ξʳ⊥, w²(½ad_q)ξˡ⊥⟩`, with `w² = w²(ad_q)`.
pub fn reduced_hamiltonian(pt: &ReducedPoint, rsd: &RootSystemData) -> Result<f64> {
    check_point(pt, rsd)?;
    let sig = pt.q.sig;
    let p = embed_cartan(sig, &pt.p);
    let l_m = rsd.project_m(&pt.xi_l.xi);
    let l_perp = rsd.project_m_perp(&pt.xi_l.xi);
    let r_perp = rsd.project_m_perp(&pt.xi_r.xi);
    let w2 = |x: &AlgebraElement| apply_spectral_function(SpectralFunction::CschSq, &pt.q, x, rsd);
    let w2_l = w2(&l_perp)?;
    let w2_r = w2(&r_perp)?;
    let w2_half_l = apply_spectral_function(SpectralFunction::CschSqHalf, &pt.q, &l_perp, rsd)?;
    Ok(
        0.5 * p.pairing(&p) - 0.5 * l_perp.pairing(&w2_l) - 0.5 * r_perp.pairing(&w2_r)
            + 0.5 * l_m.pairing(&l_m)
            + r_perp.pairing(&w2_l)
            - 0.5 * r_perp.pairing(&w2_half_l),
    )
}

/// Random element of `G₊ ∩ su(m,n)` with Gaussian entries.
fn random_compact_algebra<R: Rng + ?Sized>(
    sig: crate::lie::Signature,
    rng: &mut R,
) -> AlgebraElement {
    let (m, dim) = (sig.m(), sig.dim());
    let mut x = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in r..dim {
            if (r < m) != (c < m) {
                continue;
            }
            if r == c {
                x[(r, r)] = C64::new(0.0, standard_normal(rng));
            } else {
                let z = standard_complex_normal(rng);
                x[(r, c)] = z;
                x[(c, r)] = -z.conj();
            }
        }
    }
    let shift = x.trace() / dim as f64;
    for k in 0..dim {
        x[(k, k)] -= shift;
    }
    AlgebraElement::from_matrix_unchecked(sig, x)
}

/// A point with generic spins: `ξ^l`, `ξ^r` random in `G₊` with the `M`
/// part of `ξ^r` replaced by `−ξ^l_M`, and `q` drawn until `min |α(q)| ≥ 0.1`.
pub fn random_spin_point<R: Rng + ?Sized>(rsd: &RootSystemData, rng: &mut R) -> ReducedPoint {
    let sig = rsd.sig();
    let xi_l = random_compact_algebra(sig, rng);
    let mut xi_r = random_compact_algebra(sig, rng);
    xi_r = xi_r.sub(&rsd.project_m(&xi_r)).sub(&rsd.project_m(&xi_l));
    let q = loop {
        let q: Vec<f64> = (0..sig.n()).map(|_| 2.0 * standard_normal(rng)).collect();
        if rsd.min_root_margin(&q).1 >= 0.1 {
            break q;
        }
    };
    let p = (0..sig.n()).map(|_| standard_normal(rng)).collect();
    ReducedPoint {
        q: CartanVector { sig, q },
        p,
        xi_l: OrbitPoint { xi: xi_l },
        xi_r: OrbitPoint { xi: xi_r },
    }
}
