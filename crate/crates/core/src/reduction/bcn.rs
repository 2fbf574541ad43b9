use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lie::RootKind;

/// Coupling squares of the `BC_n` Sutherland Hamiltonian and the shift `s`
/// with `½ H_red = H_{BC_n} + s`. `g1_sq` may be negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingConstants {
    pub g_sq: f64,
    pub g1_sq: f64,
    pub g2_sq: f64,
    pub energy_shift: f64,
}

impl CouplingConstants {
    pub const FREE: Self = Self {
        g_sq: 0.0,
        g1_sq: 0.0,
        g2_sq: 0.0,
        energy_shift: 0.0,
    };

    /// Coefficient of `sinh⁻²(qᵏ)` once the `e_k` and `2e_k` terms are combined:
    /// `g₁² sinh⁻² q + g₂² sinh⁻² 2q = (g₁² + g₂²/4) sinh⁻² q − (g₂²/4) cosh⁻² q`.
    pub fn short_wall_strength(&self) -> f64 {
        self.g1_sq + 0.25 * self.g2_sq
    }

    /// Whether the potential is regular across the wall of `root`, so the
    /// flow crosses it like free motion does.
    pub fn is_transparent(&self, root: RootKind) -> bool {
        match root {
            RootKind::Diff(..) | RootKind::Sum(..) => self.g_sq == 0.0,
            RootKind::Long(_) | RootKind::Short(_) => {
                self.short_wall_strength().abs() <= 1e-14 * (self.g1_sq.abs() + self.g2_sq.abs())
            }
        }
    }
}

fn csch_sq(z: f64) -> f64 {
    let s = libm::sinh(z);
    1.0 / (s * s)
}

/// `d/dz sinh⁻²(z) = −2 cosh z / sinh³ z`.
fn d_csch_sq(z: f64) -> f64 {
    let s = libm::sinh(z);
    -2.0 * libm::cosh(z) / (s * s * s)
}

fn check_configuration(q: &[f64]) -> Result<()> {
    for (j, &a) in q.iter().enumerate() {
        if a == 0.0 {
            return Err(Error::Domain(alloc::format!(
                "q{} = 0 lies on a wall",
                j + 1
            )));
        }
        for &b in &q[j + 1..] {
            if a == b || a == -b {
                return Err(Error::Domain("coincident coordinates lie on a wall".into()));
            }
        }
    }
    Ok(())
}

/// `½Σp² + Σ_{j<k} g²(sinh⁻²(qʲ−qᵏ) + sinh⁻²(qʲ+qᵏ)) + Σ_k (g₁² sinh⁻²(qᵏ) + g₂² sinh⁻²(2qᵏ))`.
pub fn bcn_hamiltonian(q: &[f64], p: &[f64], cc: &CouplingConstants) -> Result<f64> {
    if q.len() != p.len() {
        return Err(Error::Dimension {
            expected: (q.len(), 1),
            found: (p.len(), 1),
        });
    }
    check_configuration(q)?;
    let kinetic: f64 = 0.5 * p.iter().map(|x| x * x).sum::<f64>();
    let mut pot = 0.0;
    for j in 0..q.len() {
        for k in j + 1..q.len() {
            pot += cc.g_sq * (csch_sq(q[j] - q[k]) + csch_sq(q[j] + q[k]));
        }
        pot += cc.g1_sq * csch_sq(q[j]) + cc.g2_sq * csch_sq(2.0 * q[j]);
    }
    Ok(kinetic + pot)
}

/// `−∂V/∂q`.
pub fn bcn_force(q: &[f64], cc: &CouplingConstants) -> Vec<f64> {
    let n = q.len();
    let mut grad = alloc::vec![0.0; n];
    for j in 0..n {
        for k in j + 1..n {
            let d = cc.g_sq * d_csch_sq(q[j] - q[k]);
            let s = cc.g_sq * d_csch_sq(q[j] + q[k]);
            grad[j] += d + s;
            grad[k] += s - d;
        }
        // combined form, free of the cancellation near qʲ = 0 when the
        // sinh⁻² q coefficient vanishes
        let (sh, ch) = (libm::sinh(q[j]), libm::cosh(q[j]));
        let wall = cc.short_wall_strength();
        if wall != 0.0 {
            grad[j] += wall * d_csch_sq(q[j]);
        }
        grad[j] += 0.5 * cc.g2_sq * sh / (ch * ch * ch);
    }
    grad.iter().map(|g| -g).collect()
}
