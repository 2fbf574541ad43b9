use alloc::vec::Vec;

use super::{AlgebraElement, CartanVector, RootSystemData};
use crate::error::{Error, Result};

/// Scalar functions applied to `ad_q` through the root decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralFunction {
    /// `F(z) = coth z` (odd).
    Coth,
    /// `w(z) = 1/sinh z` (odd).
    Csch,
    /// `w²(z)` (even).
    CschSq,
    /// `w²(z/2)` (even).
    CschSqHalf,
    /// `(wF)(z) = cosh z / sinh² z` (even).
    CothCsch,
}

impl SpectralFunction {
    pub fn eval(self, z: f64) -> f64 {
        match self {
            SpectralFunction::Coth => 1.0 / libm::tanh(z),
            SpectralFunction::Csch => 1.0 / libm::sinh(z),
            SpectralFunction::CschSq => {
                let s = libm::sinh(z);
                1.0 / (s * s)
            }
            SpectralFunction::CschSqHalf => {
                let s = libm::sinh(0.5 * z);
                1.0 / (s * s)
            }
            SpectralFunction::CothCsch => {
                let s = libm::sinh(z);
                libm::cosh(z) / (s * s)
            }
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, SpectralFunction::Coth | SpectralFunction::Csch)
    }
}

/// `f(ad_q) X` for `X ∈ M⊥` or `X ∈ A⊥`.
///
/// On `span{E⁺_α, E⁻_α}` the operator `ad_q` is `α(q)` times the swap, so odd
/// functions exchange `M⊥ ↔ A⊥` and even functions preserve each subspace.
pub fn apply_spectral_function(
    f: SpectralFunction,
    q: &CartanVector,
    x: &AlgebraElement,
    rsd: &RootSystemData,
) -> Result<AlgebraElement> {
    rsd.check_regular(&q.q, super::EPS_REG)?;
    let tol = 1e-9 * (1.0 + x.norm());
    let plus = rsd.plus_coefficients(x);
    let from_plus = rsd.combine_plus(&plus);
    let (coeffs, in_m_perp) = if from_plus.dist(x) <= tol {
        (plus, true)
    } else {
        let minus = rsd.minus_coefficients(x);
        if rsd.combine_minus(&minus).dist(x) > tol {
            return Err(Error::Domain(
                "argument of f(ad_q) must lie in M-perp or A-perp".into(),
            ));
        }
        (minus, false)
    };
    let scaled = scale_coefficients(f, &coeffs, &rsd.vector_root_values(&q.q));
    let to_plus = in_m_perp != f.is_odd();
    Ok(if to_plus {
        rsd.combine_plus(&scaled)
    } else {
        rsd.combine_minus(&scaled)
    })
}

/// `f(ad_q)` on `M⊥` coefficient vectors, without the domain checks.
pub(crate) fn scale_coefficients(f: SpectralFunction, coeffs: &[f64], alphas: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .zip(alphas)
        .map(|(c, &a)| c * f.eval(a))
        .collect()
}
