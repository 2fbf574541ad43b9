use alloc::vec::Vec;

use rand_core::Rng;

use crate::error::{Error, Result};
use crate::kernel::{eigh, standard_complex_normal};
use crate::lie::{central_character, AlgebraElement, Signature};
use crate::matrix::{ComplexMatrix, C64, I};

/// Which `su(k)` factor of `G₊` carries a minimal orbit: the upper
/// `m×m` block or the lower `n×n` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitBlock {
    Upper,
    Lower,
}

impl OrbitBlock {
    /// `(offset, k)`.
    pub fn range(self, sig: Signature) -> (usize, usize) {
        match self {
            OrbitBlock::Upper => (0, sig.m()),
            OrbitBlock::Lower => (sig.m(), sig.n()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitSign {
    Plus,
    Minus,
}

impl OrbitSign {
    fn value(self) -> f64 {
        match self {
            OrbitSign::Plus => 1.0,
            OrbitSign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimalOrbit {
    pub block: OrbitBlock,
    pub kappa: f64,
    pub sign: OrbitSign,
}

/// Either `O_{k,κ,±} + {x C}` (when `minimal` is set) or the one-point
/// orbit `{y C}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitSpec {
    pub sig: Signature,
    pub minimal: Option<MinimalOrbit>,
    pub x: f64,
    pub y: f64,
}

/// A point `ξ` of a coadjoint orbit of `G₊`, so `θ(ξ) = ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPoint {
    pub xi: AlgebraElement,
}

impl OrbitPoint {
    pub fn new(xi: AlgebraElement) -> Result<Self> {
        let tol = 1e-12 * (1.0 + xi.norm());
        if !xi.is_compact(tol) {
            return Err(Error::Domain("orbit point must be block diagonal".into()));
        }
        Ok(Self { xi })
    }

    pub fn zero(sig: Signature) -> Self {
        Self {
            xi: AlgebraElement::zero(sig),
        }
    }

    pub fn character(sig: Signature, y: f64) -> Self {
        Self {
            xi: central_character(sig).scale(y),
        }
    }
}

/// `η_±(u) = ±i(u u† − (u†u/k) 1_k)` placed in `block`, zero elsewhere.
pub fn minimal_orbit_point(
    sig: Signature,
    block: OrbitBlock,
    u: &[C64],
    sign: OrbitSign,
) -> Result<OrbitPoint> {
    let (off, k) = block.range(sig);
    if u.len() != k {
        return Err(Error::Dimension {
            expected: (k, 1),
            found: (u.len(), 1),
        });
    }
    let norm_sq: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::Domain(
            "minimal orbit vector u must be nonzero".into(),
        ));
    }
    let s = I * sign.value();
    let mut mat = ComplexMatrix::zeros(sig.dim(), sig.dim());
    for r in 0..k {
        for c in 0..k {
            let mut v = u[r] * u[c].conj();
            if r == c {
                v -= C64::new(norm_sq / k as f64, 0.0);
            }
            mat[(off + r, off + c)] = s * v;
        }
    }
    Ok(OrbitPoint {
        xi: AlgebraElement::from_matrix_unchecked(sig, mat),
    })
}

/// Largest eigenvalue mismatch between `ξ` and the spectrum of
/// `η_±(u)` with `u†u = kκ`, i.e. `{±iκ(k−1)}` once and `{∓iκ}` `(k−1)` times.
/// Entries outside the block must vanish and count toward the defect.
pub fn minimal_orbit_spectrum_defect(xi: &AlgebraElement, orbit: &MinimalOrbit) -> Result<f64> {
    let sig = xi.sig();
    let (off, k) = orbit.block.range(sig);
    let mut outside = xi.mat().clone();
    outside.set_block(off, off, &ComplexMatrix::zeros(k, k));
    let block = xi.mat().block(off, off, k, k);
    // −i·η is Hermitian with real spectrum ±κ(k−1), ∓κ.
    let herm = block.scale(-I);
    let vals = eigh(&herm)?.values;
    let kappa = orbit.kappa;
    let mut expect: Vec<f64> = (0..k)
        .map(|j| {
            if j == 0 {
                kappa * (k as f64 - 1.0)
            } else {
                -kappa
            }
        })
        .map(|v| v * orbit.sign.value())
        .collect();
    expect.sort_by(|a, b| a.total_cmp(b));
    let defect = vals
        .iter()
        .zip(&expect)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(defect.max(outside.max_abs()))
}

/// `η_+(u) + x C` with `u` uniform on the sphere `u†u = kκ`, or `y C` for a
/// character-only spec.
pub fn sample_orbit_point<R: Rng + ?Sized>(spec: &OrbitSpec, rng: &mut R) -> Result<OrbitPoint> {
    let Some(orbit) = spec.minimal else {
        return Ok(OrbitPoint::character(spec.sig, spec.y));
    };
    if orbit.kappa.is_nan() || orbit.kappa <= 0.0 {
        return Err(Error::Domain("kappa must be positive".into()));
    }
    let (_, k) = orbit.block.range(spec.sig);
    let mut u: Vec<C64> = (0..k).map(|_| standard_complex_normal(rng)).collect();
    let nrm = libm::sqrt(u.iter().map(|z| z.norm_sqr()).sum::<f64>());
    let target = libm::sqrt(k as f64 * orbit.kappa);
    for z in &mut u {
        *z *= target / nrm;
    }
    let eta = minimal_orbit_point(spec.sig, orbit.block, &u, orbit.sign)?;
    Ok(OrbitPoint {
        xi: eta.xi.add(&central_character(spec.sig).scale(spec.x)),
    })
}

/// `(ξ^l − yC, ξ^r + yC)`.
pub fn shift_orbits(
    xi_l: &OrbitPoint,
    xi_r: &OrbitPoint,
    y: f64,
    sig: Signature,
) -> (OrbitPoint, OrbitPoint) {
    let c = central_character(sig).scale(y);
    (
        OrbitPoint {
            xi: xi_l.xi.sub(&c),
        },
        OrbitPoint {
            xi: xi_r.xi.add(&c),
        },
    )
}
