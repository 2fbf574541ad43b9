//! The regular decomposition `g = g₊ e^q h₊` of `SU(m,n)`.

use alloc::vec::Vec;

use rand_core::Rng;

use crate::error::{Error, Result};
use crate::kernel::{expm, haar_unitary, logm_hpd, standard_normal, svd, svd_full};
use crate::lie::{AlgebraElement, CartanVector, RootKind, RootSystemData, Signature};
use crate::matrix::{ComplexMatrix, C64};

/// `e^{embed(q)}` from `cosh`/`sinh` entries.
pub fn exp_cartan(sig: Signature, q: &[f64]) -> ComplexMatrix {
    let mut e = ComplexMatrix::identity(sig.dim());
    for (k, &x) in q.iter().enumerate() {
        let l = sig.lower(k);
        let (c, s) = (C64::new(libm::cosh(x), 0.0), C64::new(libm::sinh(x), 0.0));
        e[(k, k)] = c;
        e[(l, l)] = c;
        e[(k, l)] = s;
        e[(l, k)] = s;
    }
    e
}

/// Element of `SU(m,n)`: `g† I g = I`, `det g = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    sig: Signature,
    mat: ComplexMatrix,
}

impl GroupElement {
    /// Validates `g† I g = I` and `det g = 1` to `1e-11`, relative to
    /// `‖g‖²` once `g` is far from the compact subgroup.
    pub fn new(sig: Signature, mat: ComplexMatrix) -> Result<Self> {
        let n = mat.ensure_square()?;
        if n != sig.dim() {
            return Err(Error::Dimension {
                expected: (sig.dim(), sig.dim()),
                found: (n, n),
            });
        }
        let g = Self { sig, mat };
        let nrm = g.mat.frobenius_norm();
        let scale = (nrm * nrm).max(1.0);
        let res = g.membership_residual();
        if res > 1e-11 * scale {
            return Err(Error::Domain(alloc::format!(
                "matrix is not in SU(m,n) (residual {res:e})"
            )));
        }
        let det = g.mat.determinant()?;
        if (det - C64::new(1.0, 0.0)).norm() > 1e-11 * scale {
            return Err(Error::Domain(alloc::format!(
                "determinant {det} differs from 1"
            )));
        }
        Ok(g)
    }

    pub fn from_matrix_unchecked(sig: Signature, mat: ComplexMatrix) -> Self {
        Self { sig, mat }
    }

    pub fn identity(sig: Signature) -> Self {
        Self {
            sig,
            mat: ComplexMatrix::identity(sig.dim()),
        }
    }

    /// `e^X` for `X ∈ su(m,n)`.
    pub fn exp(x: &AlgebraElement) -> Result<Self> {
        Ok(Self {
            sig: x.sig(),
            mat: expm(x.mat())?,
        })
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// `‖g† I g − I‖`.
    pub fn membership_residual(&self) -> f64 {
        let i = self.sig.metric();
        self.mat.adjoint().matmul(&i).matmul(&self.mat).dist(&i)
    }

    /// `g⁻¹ = I g† I`, exact for group elements.
    pub fn inverse(&self) -> Self {
        let i = self.sig.metric();
        Self {
            sig: self.sig,
            mat: i.matmul(&self.mat.adjoint()).matmul(&i),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            sig: self.sig,
            mat: self.mat.matmul(&other.mat),
        }
    }

    /// `g X g⁻¹`.
    pub fn adjoint_action(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_matrix_unchecked(
            self.sig,
            self.mat.matmul(x.mat()).matmul(&self.inverse().mat),
        )
    }

    /// Whether `g ∈ G₊`, i.e. block diagonal.
    pub fn is_compact(&self, tol: f64) -> bool {
        let (m, n) = (self.sig.m(), self.sig.n());
        self.mat.block(0, m, m, n).max_abs() <= tol && self.mat.block(m, 0, n, m).max_abs() <= tol
    }
}

/// `g = g₊ e^{embed(q)} h₊` with `q` in the closed chamber `q¹ ≥ … ≥ qⁿ ≥ 0`.
#[derive(Clone, Debug)]
pub struct KAKFactors {
    pub g_plus: GroupElement,
    pub q: CartanVector,
    pub h_plus: GroupElement,
}

impl KAKFactors {
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let eq = exp_cartan(self.q.sig, &self.q.q);
        Ok(self.g_plus.mat.matmul(&eq).matmul(&self.h_plus.mat))
    }

    /// `(g₊ m, q, m⁻¹ h₊)` for `m` in the centralizer of `A` in `G₊`.
    pub fn regauge(&self, m: &ComplexMatrix) -> Self {
        let sig = self.q.sig;
        Self {
            g_plus: GroupElement::from_matrix_unchecked(sig, self.g_plus.mat.matmul(m)),
            q: self.q.clone(),
            h_plus: GroupElement::from_matrix_unchecked(sig, m.adjoint().matmul(&self.h_plus.mat)),
        }
    }
}

/// `g = e^X k` with `X = ½ log(g g†)` Hermitian in `G₋` and `k ∈ G₊`.
pub fn polar_split(g: &GroupElement) -> Result<(AlgebraElement, GroupElement)> {
    let ggh = g.mat.matmul(&g.mat.adjoint());
    let log =
        logm_hpd(&ggh).map_err(|e| Error::Factorization(alloc::format!("g g† is not HPD: {e}")))?;
    let x = AlgebraElement::from_matrix_unchecked(g.sig, log.scale_re(0.5));
    let k = expm(&x.scale(-1.0).into_mat())?.matmul(&g.mat);
    Ok((x, GroupElement::from_matrix_unchecked(g.sig, k)))
}

/// Regularity verdict with the root of smallest `|α(q)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityReport {
    pub regular: bool,
    pub weakest_root: RootKind,
    pub margin: f64,
}

pub fn is_regular(q: &CartanVector, rsd: &RootSystemData, eps_reg: f64) -> RegularityReport {
    let (weakest_root, margin) = rsd.min_root_margin(&q.q);
    RegularityReport {
        regular: margin >= eps_reg,
        weakest_root,
        margin,
    }
}

/// `g = g₊ e^{embed(q)} h₊` from the SVD of the upper-right `m×n` block.
///
/// With `g₊ = diag(U₁, V₁)` and `h₊ = diag(U₂, V₂)` the blocks of `g` are
/// `g₁₂ = U₁ [sinh Q; 0] V₂` and `g₂₂ = V₁ cosh Q V₂`, so `q = asinh(s)`.
/// Only divisions by `cosh` occur, which keeps the factors accurate when
/// `g` has entries of size `e^{q¹}`.
pub fn kak_decompose(g: &GroupElement, rsd: &RootSystemData, eps_reg: f64) -> Result<KAKFactors> {
    let sig = g.sig;
    let (m, n) = (sig.m(), sig.n());
    let g11 = g.mat.block(0, 0, m, m);
    let g12 = g.mat.block(0, m, m, n);
    let g22 = g.mat.block(m, m, n, n);

    let f = svd_full(&g12)?;
    let q: Vec<f64> = f.s.iter().map(|&s| libm::asinh(s)).collect();
    let q = CartanVector::new(sig, q)?;
    rsd.check_regular(&q.q, eps_reg)?;

    let cosh: Vec<f64> = q.q.iter().map(|&x| libm::cosh(x)).collect();
    let mut u1 = f.u;
    let mut v1 = g22.matmul(&f.v);
    for (c, &ch) in cosh.iter().enumerate() {
        for r in 0..n {
            v1[(r, c)] /= ch;
        }
    }

    orthonormalize_columns(&mut v1);

    // det(g₊) = 1: rotate the first column of both blocks, which is an M element.
    let det = u1.determinant()? * v1.determinant()?;
    if !(det.norm() > 0.5 && det.norm() < 2.0) {
        return Err(Error::Factorization(alloc::format!(
            "|det g₊| = {} far from 1",
            det.norm()
        )));
    }
    let phase = C64::from_polar(1.0, -0.5 * det.arg());
    for r in 0..m {
        u1[(r, 0)] *= phase;
    }
    for r in 0..n {
        v1[(r, 0)] *= phase;
    }

    let mut u2 = u1.adjoint().matmul(&g11);
    for (r, &ch) in cosh.iter().enumerate() {
        for c in 0..m {
            u2[(r, c)] /= ch;
        }
    }
    let mut v2 = v1.adjoint().matmul(&g22);
    for (r, &ch) in cosh.iter().enumerate() {
        for c in 0..n {
            v2[(r, c)] /= ch;
        }
    }

    let mut u2 = u2.adjoint();
    orthonormalize_columns(&mut u2);
    let mut v2 = v2.adjoint();
    orthonormalize_columns(&mut v2);
    let (u2, v2) = (u2.adjoint(), v2.adjoint());

    Ok(KAKFactors {
        g_plus: GroupElement::from_matrix_unchecked(sig, ComplexMatrix::block_diag(&u1, &v1)),
        q,
        h_plus: GroupElement::from_matrix_unchecked(sig, ComplexMatrix::block_diag(&u2, &v2)),
    })
}

/// Modified Gram–Schmidt, applied twice, in column order. Columns belonging
/// to larger `q` come first and are the most accurate, so they anchor the rest.
fn orthonormalize_columns(a: &mut ComplexMatrix) {
    let (rows, cols) = (a.rows(), a.cols());
    for c in 0..cols {
        for _ in 0..2 {
            for prev in 0..c {
                let mut dot = C64::new(0.0, 0.0);
                for r in 0..rows {
                    dot += a[(r, prev)].conj() * a[(r, c)];
                }
                for r in 0..rows {
                    let v = a[(r, prev)];
                    a[(r, c)] -= dot * v;
                }
            }
        }
        let nrm = libm::sqrt((0..rows).map(|r| a[(r, c)].norm_sqr()).sum::<f64>());
        for r in 0..rows {
            a[(r, c)] /= nrm;
        }
    }
}

/// Haar-random element of `G₊ = S(U(m) × U(n))`.
pub fn random_compact<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> GroupElement {
    let mut a = haar_unitary(sig.m(), rng);
    let b = haar_unitary(sig.n(), rng);
    let det = a.determinant().expect("unitary is invertible")
        * b.determinant().expect("unitary is invertible");
    let phase = C64::from_polar(1.0, -det.arg());
    for r in 0..sig.m() {
        a[(r, 0)] *= phase;
    }
    GroupElement::from_matrix_unchecked(sig, ComplexMatrix::block_diag(&a, &b))
}

/// Random element `e^Y` of the identity component of the centralizer of `A`
/// in `G₊`, with `Y` a standard Gaussian combination of the `M` basis.
pub fn random_centralizer_element<R: Rng + ?Sized>(
    rsd: &RootSystemData,
    rng: &mut R,
) -> ComplexMatrix {
    let coeffs: Vec<f64> = rsd.m_basis().iter().map(|_| standard_normal(rng)).collect();
    expm(rsd.combine_m(&coeffs).mat()).expect("small anti-Hermitian exponent")
}

/// The element `m` of the centralizer of `A` in `U(m) × U(n)` maximizing
/// `Re tr(k m)`, i.e. the one making `k m` closest to the identity. The
/// determinant is not normalized; only conjugation by `m` is meant.
pub fn nearest_centralizer_element(sig: Signature, k: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (m, n) = (sig.m(), sig.n());
    let mut out = ComplexMatrix::zeros(sig.dim(), sig.dim());
    for j in 0..n {
        let l = sig.lower(j);
        let z = k[(j, j)] + k[(l, l)];
        let phase = if z.norm() > 0.0 {
            z.conj() / z.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        out[(j, j)] = phase;
        out[(l, l)] = phase;
    }
    if m > n {
        let f = svd(&k.block(n, n, m - n, m - n))?;
        out.set_block(n, n, &f.v.matmul(&f.u.adjoint()));
    }
    Ok(out)
}
