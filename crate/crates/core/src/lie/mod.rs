//! The `su(m,n)` structure: Cartan involution, the four-way decomposition
//! `A ⊕ A⊥ ⊕ M ⊕ M⊥`, restricted roots with an explicit root-vector basis,
//! and operator functions of `ad_q`.

mod algebra;
mod roots;
mod signature;
mod spectral;

pub use algebra::{central_character, embed_cartan, AlgebraElement, CartanVector};
pub use roots::{
    build_root_system, centralizer_basis, BasisLabel, FourWay, RestrictedRoot, RootKind,
    RootSystemData, RootVector,
};
pub use signature::Signature;
pub use spectral::{apply_spectral_function, SpectralFunction};

/// Default regularity threshold for `|α(q)|`.
pub const EPS_REG: f64 = 1e-6;
