//! Coadjoint orbits of `G₊`, the momentum map and its zero level, the
//! reduced Hamiltonian, and the one-point-orbit setups yielding the
//! spinless `BC_n` Sutherland model.

mod bcn;
mod constraint;
mod orbits;
mod setups;

pub use bcn::{bcn_force, bcn_hamiltonian, CouplingConstants};
pub use constraint::{
    constraint_residual, momentum_map, random_spin_point, reduced_hamiltonian, solve_constraint,
    ReducedPoint, CONSTRAINT_TOL,
};
pub use orbits::{
    minimal_orbit_point, minimal_orbit_spectrum_defect, sample_orbit_point, shift_orbits,
    MinimalOrbit, OrbitBlock, OrbitPoint, OrbitSign, OrbitSpec,
};
pub use setups::{sumn_setup, sun1n_setup, sunn_setup, Case, Setup};
