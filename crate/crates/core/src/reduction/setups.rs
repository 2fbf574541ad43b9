use alloc::vec::Vec;

use super::bcn::CouplingConstants;
use super::constraint::{constraint_residual, ReducedPoint, CONSTRAINT_TOL};
use super::orbits::{minimal_orbit_point, MinimalOrbit, OrbitBlock, OrbitPoint, OrbitSign};
use crate::error::{Error, Result};
use crate::lie::{
    build_root_system, central_character, AlgebraElement, BasisLabel, CartanVector, RootKind,
    RootSystemData, Signature,
};
use crate::matrix::{ComplexMatrix, C64};

/// The three one-point reduced orbit families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `SU(n,n)`, three couplings.
    Sunn,
    /// `SU(n+1,n)`, three couplings.
    Sun1n,
    /// `SU(m,n)` with `m > n`, two couplings.
    Sumn,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::Sunn => "sunn",
            Case::Sun1n => "sun1n",
            Case::Sumn => "sumn",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sunn" => Some(Case::Sunn),
            "sun1n" => Some(Case::Sun1n),
            "sumn" => Some(Case::Sumn),
            _ => None,
        }
    }
}

/// Spin representatives `(ξ^l, ξ^r)` and the resulting couplings.
#[derive(Clone, Debug)]
pub struct Setup {
    pub case: Case,
    pub rsd: RootSystemData,
    pub xi_l: OrbitPoint,
    pub xi_r: OrbitPoint,
    pub cc: CouplingConstants,
    /// The minimal orbit carrying `ξ^l − x C`.
    pub orbit: MinimalOrbit,
    pub x: f64,
}

impl Setup {
    pub fn sig(&self) -> Signature {
        self.rsd.sig()
    }

    pub fn point(&self, q: &[f64], p: &[f64]) -> Result<ReducedPoint> {
        let q = CartanVector::new(self.sig(), q.to_vec())?;
        if p.len() != q.q.len() {
            return Err(Error::Dimension {
                expected: (q.q.len(), 1),
                found: (p.len(), 1),
            });
        }
        Ok(ReducedPoint {
            q,
            p: p.to_vec(),
            xi_l: self.xi_l.clone(),
            xi_r: self.xi_r.clone(),
        })
    }

    /// `ξ^l − x C`, which should lie on the minimal orbit.
    pub fn minimal_part(&self) -> AlgebraElement {
        self.xi_l
            .xi
            .sub(&central_character(self.sig()).scale(self.x))
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa > 0.0 && kappa.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!(
            "kappa must be positive, got {kappa}"
        )))
    }
}

fn sum_plus(
    rsd: &RootSystemData,
    roots: impl Iterator<Item = (RootKind, BasisLabel)>,
) -> AlgebraElement {
    let mut out = AlgebraElement::zero(rsd.sig());
    for (root, label) in roots {
        out.axpy(1.0, rsd.plus(root, label));
    }
    out
}

fn pair_roots(n: usize) -> Vec<(RootKind, BasisLabel)> {
    let mut v = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            v.push((RootKind::Sum(j, k), BasisLabel::Imag));
            v.push((RootKind::Diff(j, k), BasisLabel::Imag));
        }
    }
    v
}

fn long_roots(n: usize) -> impl Iterator<Item = (RootKind, BasisLabel)> {
    (0..n).map(|k| (RootKind::Long(k), BasisLabel::Imag))
}

fn finish(
    case: Case,
    rsd: RootSystemData,
    xi_l: AlgebraElement,
    xi_r: AlgebraElement,
    cc: CouplingConstants,
    orbit: MinimalOrbit,
    x: f64,
) -> Result<Setup> {
    let xi_l = OrbitPoint::new(xi_l)?;
    let xi_r = OrbitPoint::new(xi_r)?;
    let residual = constraint_residual(&xi_l, &xi_r, &rsd);
    if residual > CONSTRAINT_TOL {
        return Err(Error::Constraint { residual });
    }
    Ok(Setup {
        case,
        rsd,
        xi_l,
        xi_r,
        cc,
        orbit,
        x,
    })
}

/// `SU(n,n)`: minimal orbit in the upper `su(n)` block shifted by `x C`,
/// `ξ^r = y C`.
pub fn sunn_setup(n: usize, kappa: f64, x: f64, y: f64) -> Result<Setup> {
    check_kappa(kappa)?;
    let sig = Signature::new(n, n)?;
    let rsd = build_root_system(sig);
    let nf = n as f64;
    let long = sum_plus(&rsd, long_roots(n));
    let xi_l = sum_plus(&rsd, pair_roots(n).into_iter())
        .scale(kappa)
        .add(&long.scale(core::f64::consts::SQRT_2 * x * nf));
    let xi_r = long.scale(core::f64::consts::SQRT_2 * y * nf);
    let cc = CouplingConstants {
        g_sq: kappa * kappa / 4.0,
        g1_sq: x * y * nf * nf / 2.0,
        g2_sq: (x - y) * (x - y) * nf * nf / 2.0,
        energy_shift: 0.0,
    };
    let orbit = MinimalOrbit {
        block: OrbitBlock::Upper,
        kappa,
        sign: OrbitSign::Plus,
    };
    finish(Case::Sunn, rsd, xi_l, xi_r, cc, orbit, x)
}

/// `SU(n+1,n)`: minimal orbit in the `su(n+1)` block shifted by `x C`,
/// `ξ^r = y C`. Requires `κ + x + y ≥ 0` and `κ − n(x + y) ≥ 0`.
pub fn sun1n_setup(n: usize, kappa: f64, x: f64, y: f64) -> Result<Setup> {
    check_kappa(kappa)?;
    let nf = n as f64;
    // Rounding slack so that the boundary `κ = n(x + y)` is accepted.
    let slack = 1e-12 * (kappa + nf * (x.abs() + y.abs()));
    let a_sq = kappa + x + y;
    let b_sq = kappa - nf * (x + y);
    if a_sq.is_nan() || a_sq < -slack {
        return Err(Error::Consistency {
            inequality: alloc::format!("kappa + x + y >= 0 (got {a_sq})"),
        });
    }
    if b_sq.is_nan() || b_sq < -slack {
        return Err(Error::Consistency {
            inequality: alloc::format!("kappa - n(x + y) >= 0 (got {b_sq})"),
        });
    }
    let (a_sq, b_sq) = (a_sq.max(0.0), b_sq.max(0.0));
    let sig = Signature::new(n + 1, n)?;
    let rsd = build_root_system(sig);
    let g = a_sq / 2.0;
    let h1 = libm::sqrt(a_sq * b_sq) / core::f64::consts::SQRT_2;
    let sqrt8 = libm::sqrt(8.0);
    let h2 = (2.0 * (nf + 1.0) * x + y) / sqrt8;
    let h2t = y * (2.0 * nf + 1.0) / sqrt8;

    let mut diag: Vec<C64> = alloc::vec![C64::new(0.0, -y / 2.0); 2 * n + 1];
    diag[n] = C64::new(0.0, y * nf);
    let xi_r_m = AlgebraElement::from_matrix_unchecked(sig, ComplexMatrix::diag(&diag));
    let long = sum_plus(&rsd, long_roots(n));
    let short = sum_plus(
        &rsd,
        (0..n).map(|k| (RootKind::Short(k), BasisLabel::ImagD(1))),
    );
    let xi_l = xi_r_m
        .scale(-1.0)
        .add(&sum_plus(&rsd, pair_roots(n).into_iter()).scale(2.0 * g))
        .add(&short.scale(2.0 * h1))
        .add(&long.scale(2.0 * h2));
    let xi_r = xi_r_m.add(&long.scale(2.0 * h2t));
    let cc = CouplingConstants {
        g_sq: g * g,
        g1_sq: h1 * h1 + h2 * h2t,
        g2_sq: (h2 - h2t) * (h2 - h2t),
        energy_shift: -y * y * (2.0 * nf * nf + nf) / 8.0,
    };
    let orbit = MinimalOrbit {
        block: OrbitBlock::Upper,
        kappa,
        sign: OrbitSign::Plus,
    };
    finish(Case::Sun1n, rsd, xi_l, xi_r, cc, orbit, x)
}

/// `SU(m,n)`, `m > n`: minimal orbit in the lower `su(n)` block shifted by
/// `x C` with `x = −y`, and `ξ^r = y C`.
pub fn sumn_setup(m: usize, n: usize, kappa: f64, y: f64) -> Result<Setup> {
    check_kappa(kappa)?;
    if m <= n {
        return Err(Error::Domain(alloc::format!(
            "sumn requires m > n, got m = {m}, n = {n}"
        )));
    }
    let sig = Signature::new(m, n)?;
    let rsd = build_root_system(sig);
    let x = -y;
    let u = alloc::vec![C64::new(libm::sqrt(kappa), 0.0); n];
    let eta = minimal_orbit_point(sig, OrbitBlock::Lower, &u, OrbitSign::Plus)?;
    let c = central_character(sig);
    let xi_l = eta.xi.add(&c.scale(x));
    let xi_r = c.scale(y);
    let (mf, nf) = (m as f64, n as f64);
    let g1_sq = -y * y * (mf + nf) * (mf + nf) / 8.0;
    let cc = CouplingConstants {
        g_sq: kappa * kappa / 4.0,
        g1_sq,
        g2_sq: -4.0 * g1_sq,
        energy_shift: -y * y * (mf * mf - nf * nf) * nf / 8.0,
    };
    let orbit = MinimalOrbit {
        block: OrbitBlock::Lower,
        kappa,
        sign: OrbitSign::Plus,
    };
    finish(Case::Sumn, rsd, xi_l, xi_r, cc, orbit, x)
}
