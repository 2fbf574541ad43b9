//! Dense complex matrix primitives: exponential, HPD logarithm, SVD,
//! Hermitian eigensolver and Haar-random unitaries.
//!
//! Every routine is a pure function of its inputs. Randomness enters only
//! through an explicitly passed generator.

mod eigh;
mod expm;
mod haar;
mod logm;
mod svd;

pub use eigh::{eigh, HermitianEigen};
pub use expm::expm;
pub use haar::{haar_unitary, standard_complex_normal, standard_normal, uniform};
pub use logm::logm_hpd;
pub use svd::{svd, svd_full, Svd};

/// Relative tolerance with the absolute floor used across the kernel.
pub(crate) fn rel_tol(tol: f64, scale: f64) -> f64 {
    (tol * scale).max(1e-14)
}
