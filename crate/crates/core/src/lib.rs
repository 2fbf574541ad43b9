//! Hamiltonian reduction of free geodesic motion on `SU(m,n)` under the
//! `G₊ × G₊` symmetry, down to (spin) Calogero–Sutherland models.
//!
//! The crate is `no_std` with `alloc`. It provides:
//!
//! * [`kernel`]: dense complex linear algebra (exponential, HPD log, SVD,
//!   Hermitian eigensolver, Haar sampling);
//! * [`lie`]: the `su(m,n)` structure, restricted roots and root-vector basis;
//! * [`kak`]: the regular decomposition `g = g₊ e^q h₊`;
//! * [`reduction`]: coadjoint orbits, momentum map, constraint solution,
//!   reduced Hamiltonian and the three one-point-orbit setups;
//! * [`dynamics`]: projected geodesics versus direct Störmer–Verlet
//!   integration of the `BC_n` Sutherland Hamiltonian;
//! * [`lax`]: Lax matrices, fitted Lax partners, isospectral drift and
//!   finite-difference Poisson brackets.
#![no_std]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod kak;
pub mod kernel;
pub mod lax;
pub mod lie;
pub mod matrix;
pub mod reduction;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
