use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::algebra::{embed_cartan, AlgebraElement};
use super::Signature;
use crate::matrix::{ComplexMatrix, C64, I};

/// A positive restricted root of `su(m,n)`. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// `e_j - e_k`, `j < k`.
    Diff(usize, usize),
    /// `e_j + e_k`, `j < k`.
    Sum(usize, usize),
    /// `2 e_k`.
    Long(usize),
    /// `e_k`, present only for `m > n`.
    Short(usize),
}

impl RootKind {
    /// `α(q)`.
    pub fn value(&self, q: &[f64]) -> f64 {
        match *self {
            RootKind::Diff(j, k) => q[j] - q[k],
            RootKind::Sum(j, k) => q[j] + q[k],
            RootKind::Long(k) => 2.0 * q[k],
            RootKind::Short(k) => q[k],
        }
    }

    /// `α(q)` written in the coordinates, e.g. `q1 - q2`.
    pub fn formula(&self) -> String {
        match *self {
            RootKind::Diff(j, k) => alloc::format!("q{} - q{}", j + 1, k + 1),
            RootKind::Sum(j, k) => alloc::format!("q{} + q{}", j + 1, k + 1),
            RootKind::Long(k) => alloc::format!("2 q{}", k + 1),
            RootKind::Short(k) => alloc::format!("q{}", k + 1),
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootKind::Diff(j, k) => write!(f, "e{}-e{}", j + 1, k + 1),
            RootKind::Sum(j, k) => write!(f, "e{}+e{}", j + 1, k + 1),
            RootKind::Long(k) => write!(f, "2e{}", k + 1),
            RootKind::Short(k) => write!(f, "e{}", k + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RestrictedRoot {
    pub kind: RootKind,
    pub multiplicity: usize,
}

/// Real/imaginary label of a root vector; `d` runs over `1..=m-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    Real,
    Imag,
    RealD(usize),
    ImagD(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::Real => write!(f, "r"),
            BasisLabel::Imag => write!(f, "i"),
            BasisLabel::RealD(d) => write!(f, "r,{d}"),
            BasisLabel::ImagD(d) => write!(f, "i,{d}"),
        }
    }
}

/// The pair `E^{+,a}_α ∈ M⊥`, `E^{-,a}_α ∈ A⊥` with
/// `[q, E⁺] = α(q) E⁻` and `[q, E⁻] = α(q) E⁺`.
///
/// Normalization: `⟨E⁻, E⁻⟩ = 1` and `⟨E⁺, E⁺⟩ = -1` under the trace form.
#[derive(Clone, Debug)]
pub struct RootVector {
    pub root: RootKind,
    pub label: BasisLabel,
    pub plus: AlgebraElement,
    pub minus: AlgebraElement,
}

/// Components of `X = X_A + X_{A⊥} + X_M + X_{M⊥}`.
#[derive(Clone, Debug)]
pub struct FourWay {
    pub a: AlgebraElement,
    pub a_perp: AlgebraElement,
    pub m: AlgebraElement,
    pub m_perp: AlgebraElement,
}

/// Restricted root system of `su(m,n)` with explicit bases of
/// `A`, `M`, `M⊥` and `A⊥`. Immutable once built.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    sig: Signature,
    roots: Vec<RestrictedRoot>,
    vectors: Vec<RootVector>,
    m_basis: Vec<AlgebraElement>,
    a_basis: Vec<AlgebraElement>,
}

impl RootSystemData {
    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn roots(&self) -> &[RestrictedRoot] {
        &self.roots
    }

    /// All root vectors, grouped by root in root order.
    pub fn vectors(&self) -> &[RootVector] {
        &self.vectors
    }

    pub fn vectors_of(&self, root: RootKind) -> impl Iterator<Item = &RootVector> {
        self.vectors.iter().filter(move |v| v.root == root)
    }

    pub fn vector(&self, root: RootKind, label: BasisLabel) -> Option<&RootVector> {
        self.vectors
            .iter()
            .find(|v| v.root == root && v.label == label)
    }

    /// `E^{+,label}_root`; panics if the pair does not exist.
    pub fn plus(&self, root: RootKind, label: BasisLabel) -> &AlgebraElement {
        &self
            .vector(root, label)
            .unwrap_or_else(|| panic!("no root vector {root} / {label}"))
            .plus
    }

    /// Orthonormal basis of `M` under `-⟨·,·⟩`.
    pub fn m_basis(&self) -> &[AlgebraElement] {
        &self.m_basis
    }

    /// `embed(e_k)`, each with `⟨a_k, a_k⟩ = 2`.
    pub fn a_basis(&self) -> &[AlgebraElement] {
        &self.a_basis
    }

    /// True for `BC_n` (`m > n`), false for `C_n`.
    pub fn is_bc_type(&self) -> bool {
        self.sig.m() > self.sig.n()
    }

    pub fn multiplicity_sum(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// `α(q)` for every root vector, aligned with [`Self::vectors`].
    pub fn vector_root_values(&self, q: &[f64]) -> Vec<f64> {
        self.vectors.iter().map(|v| v.root.value(q)).collect()
    }

    /// The root with the smallest `|α(q)|` and that value.
    pub fn min_root_margin(&self, q: &[f64]) -> (RootKind, f64) {
        self.roots
            .iter()
            .map(|r| (r.kind, r.kind.value(q).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("root system is nonempty")
    }

    /// `Ok` iff `|α(q)| ≥ eps_reg` for every root; otherwise the offending root.
    pub fn check_regular(&self, q: &[f64], eps_reg: f64) -> crate::Result<()> {
        let (root, value) = self.min_root_margin(q);
        if value >= eps_reg {
            Ok(())
        } else {
            Err(crate::Error::Regularity { root, value })
        }
    }

    /// Coefficients `c` with `X_{M⊥} = Σ c_i E⁺_i`.
    pub fn plus_coefficients(&self, x: &AlgebraElement) -> Vec<f64> {
        self.vectors.iter().map(|v| -x.pairing(&v.plus)).collect()
    }

    /// Coefficients `d` with `X_{A⊥} = Σ d_i E⁻_i`.
    pub fn minus_coefficients(&self, x: &AlgebraElement) -> Vec<f64> {
        self.vectors.iter().map(|v| x.pairing(&v.minus)).collect()
    }

    /// Coefficients `p` with `X_A = embed(p)`.
    pub fn a_coefficients(&self, x: &AlgebraElement) -> Vec<f64> {
        self.a_basis.iter().map(|a| 0.5 * x.pairing(a)).collect()
    }

    pub fn m_coefficients(&self, x: &AlgebraElement) -> Vec<f64> {
        self.m_basis.iter().map(|b| -x.pairing(b)).collect()
    }

    pub fn combine_plus(&self, coeffs: &[f64]) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.sig);
        for (v, &c) in self.vectors.iter().zip(coeffs) {
            if c != 0.0 {
                out.axpy(c, &v.plus);
            }
        }
        out
    }

    pub fn combine_minus(&self, coeffs: &[f64]) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.sig);
        for (v, &c) in self.vectors.iter().zip(coeffs) {
            if c != 0.0 {
                out.axpy(c, &v.minus);
            }
        }
        out
    }

    pub fn combine_m(&self, coeffs: &[f64]) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.sig);
        for (b, &c) in self.m_basis.iter().zip(coeffs) {
            out.axpy(c, b);
        }
        out
    }

    pub fn project_m(&self, x: &AlgebraElement) -> AlgebraElement {
        self.combine_m(&self.m_coefficients(x))
    }

    pub fn project_m_perp(&self, x: &AlgebraElement) -> AlgebraElement {
        self.combine_plus(&self.plus_coefficients(x))
    }

    pub fn project_a(&self, x: &AlgebraElement) -> AlgebraElement {
        embed_cartan(self.sig, &self.a_coefficients(x))
    }

    pub fn project_a_perp(&self, x: &AlgebraElement) -> AlgebraElement {
        self.combine_minus(&self.minus_coefficients(x))
    }

    /// Each component is computed from its own basis, so the sum
    /// reproducing `X` is a completeness check, not an identity.
    pub fn split_four(&self, x: &AlgebraElement) -> FourWay {
        FourWay {
            a: self.project_a(x),
            a_perp: self.project_a_perp(x),
            m: self.project_m(x),
            m_perp: self.project_m_perp(x),
        }
    }
}

impl FourWay {
    pub fn sum(&self) -> AlgebraElement {
        self.a.add(&self.a_perp).add(&self.m).add(&self.m_perp)
    }
}

/// Builds roots, multiplicities and the root-vector basis for `su(m,n)`.
///
/// Root order: `e_j - e_k` and `e_j + e_k` lexicographic in `(j, k)`, then
/// `2e_k`, then `e_k`, each ascending in `k`.
pub fn build_root_system(sig: Signature) -> RootSystemData {
    let (m, n) = (sig.m(), sig.n());
    let mut kinds = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            kinds.push(RootKind::Diff(j, k));
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            kinds.push(RootKind::Sum(j, k));
        }
    }
    for k in 0..n {
        kinds.push(RootKind::Long(k));
    }
    if m > n {
        for k in 0..n {
            kinds.push(RootKind::Short(k));
        }
    }

    let mut roots = Vec::with_capacity(kinds.len());
    let mut vectors = Vec::new();
    for kind in kinds {
        let generators = root_space_generators(sig, kind);
        roots.push(RestrictedRoot {
            kind,
            multiplicity: generators.len(),
        });
        for (label, e) in generators {
            vectors.push(polarize(sig, kind, label, &e));
        }
    }

    let a_basis = (0..n)
        .map(|k| {
            let mut q = alloc::vec![0.0; n];
            q[k] = 1.0;
            embed_cartan(sig, &q)
        })
        .collect();

    RootSystemData {
        sig,
        roots,
        vectors,
        m_basis: centralizer_basis(sig),
        a_basis,
    }
}

/// Unit vectors `f^±_k = (e_k ± e_{m+k}) / √2`: eigenvectors of `embed(q)`
/// with eigenvalues `±q^k`.
fn f_vec(sig: Signature, k: usize, sign: f64) -> Vec<f64> {
    let mut v = alloc::vec![0.0; sig.dim()];
    let s = core::f64::consts::FRAC_1_SQRT_2;
    v[k] = s;
    v[sig.lower(k)] = sign * s;
    v
}

fn unit(sig: Signature, d: usize) -> Vec<f64> {
    let mut v = alloc::vec![0.0; sig.dim()];
    v[d] = 1.0;
    v
}

fn outer(u: &[f64], v: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.len(), v.len(), |r, c| C64::new(u[r] * v[c], 0.0))
}

/// The antilinear involution `σ(Z) = -I Z† I` whose fixed points form `su(m,n)`
/// (up to the trace condition).
fn sigma(sig: Signature, z: &ComplexMatrix) -> ComplexMatrix {
    let i = sig.metric();
    -&i.matmul(&z.adjoint()).matmul(&i)
}

/// Real-form generators `E^a_α ∈ su(m,n) ∩ G_α` for each label.
///
/// Each complex root vector `Z` of `sl(m+n, C)` yields `Z + σZ` (label r)
/// and `i(Z - σZ)` (label i); for `2e_k`, `σZ = -Z` so only the i label survives.
fn root_space_generators(sig: Signature, kind: RootKind) -> Vec<(BasisLabel, ComplexMatrix)> {
    let real_imag = |z: ComplexMatrix| -> (ComplexMatrix, ComplexMatrix) {
        let s = sigma(sig, &z);
        let re = &z + &s;
        let im = (&z - &s).scale(I);
        (re, im)
    };
    match kind {
        RootKind::Diff(j, k) => {
            let (re, im) = real_imag(outer(&f_vec(sig, j, 1.0), &f_vec(sig, k, 1.0)));
            alloc::vec![(BasisLabel::Real, re), (BasisLabel::Imag, im)]
        }
        RootKind::Sum(j, k) => {
            let (re, im) = real_imag(outer(&f_vec(sig, j, 1.0), &f_vec(sig, k, -1.0)));
            alloc::vec![(BasisLabel::Real, re), (BasisLabel::Imag, im)]
        }
        RootKind::Long(k) => {
            let (_, im) = real_imag(outer(&f_vec(sig, k, 1.0), &f_vec(sig, k, -1.0)));
            alloc::vec![(BasisLabel::Imag, im)]
        }
        RootKind::Short(k) => {
            let mut out = Vec::new();
            for (d, idx) in (sig.n()..sig.m()).enumerate() {
                let (re, im) = real_imag(outer(&f_vec(sig, k, 1.0), &unit(sig, idx)));
                out.push((BasisLabel::RealD(d + 1), re));
                out.push((BasisLabel::ImagD(d + 1), im));
            }
            out
        }
    }
}

/// `E^± = (E ± θE)/√2`, rescaled so that `⟨E⁻, E⁻⟩ = 1`.
fn polarize(sig: Signature, root: RootKind, label: BasisLabel, e: &ComplexMatrix) -> RootVector {
    let theta_e = -&e.adjoint();
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let plus = (e + &theta_e).scale_re(s);
    let minus = (e - &theta_e).scale_re(s);
    let nrm = minus.trace_product(&minus).re;
    debug_assert!(nrm > 0.0);
    let scale = 1.0 / libm::sqrt(nrm);
    RootVector {
        root,
        label,
        plus: AlgebraElement::from_matrix_unchecked(sig, plus.scale_re(scale)),
        minus: AlgebraElement::from_matrix_unchecked(sig, minus.scale_re(scale)),
    }
}

/// Orthonormal basis (under `-⟨·,·⟩`) of the centralizer
/// `M = {diag(iχ, γ, iχ) : γ ∈ u(m-n), tr γ + 2i tr χ = 0}`.
pub fn centralizer_basis(sig: Signature) -> Vec<AlgebraElement> {
    let (m, n, dim) = (sig.m(), sig.n(), sig.dim());
    let mut span: Vec<ComplexMatrix> = Vec::new();
    for k in 0..n {
        let mut x = ComplexMatrix::zeros(dim, dim);
        x[(k, k)] = I;
        x[(sig.lower(k), sig.lower(k))] = I;
        span.push(x);
    }
    for d in n..m {
        for e in n..m {
            let mut x = ComplexMatrix::zeros(dim, dim);
            match d.cmp(&e) {
                core::cmp::Ordering::Equal => x[(d, d)] = I,
                core::cmp::Ordering::Less => {
                    x[(d, e)] = C64::new(1.0, 0.0);
                    x[(e, d)] = C64::new(-1.0, 0.0);
                }
                core::cmp::Ordering::Greater => {
                    x[(d, e)] = I;
                    x[(e, d)] = I;
                }
            }
            span.push(x);
        }
    }

    // Gram-Schmidt under -Re tr(XY), seeded with i·1 so the trace condition
    // (orthogonality to i·1) is imposed by discarding the seed.
    let inner = |a: &ComplexMatrix, b: &ComplexMatrix| -a.trace_product(b).re;
    let mut seed = ComplexMatrix::identity(dim).scale(I);
    seed = seed.scale_re(1.0 / libm::sqrt(inner(&seed, &seed)));
    let mut ortho: Vec<ComplexMatrix> = alloc::vec![seed];
    for x in span {
        let mut v = x;
        for _ in 0..2 {
            for b in &ortho {
                let c = inner(&v, b);
                v.axpy_re(-c, b);
            }
        }
        let nrm = libm::sqrt(inner(&v, &v).max(0.0));
        if nrm > 1e-10 {
            ortho.push(v.scale_re(1.0 / nrm));
        }
    }
    ortho
        .into_iter()
        .skip(1)
        .map(|x| AlgebraElement::from_matrix_unchecked(sig, x))
        .collect()
}
