use alloc::vec::Vec;

use super::Signature;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I};

/// Element of `su(m,n)`: `X† I + I X = 0`, `tr X = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    sig: Signature,
    mat: ComplexMatrix,
}

impl AlgebraElement {
    /// Validates membership to `1e-12` relative to `‖X‖` (absolute floor `1e-14`).
    pub fn new(sig: Signature, mat: ComplexMatrix) -> Result<Self> {
        let n = mat.ensure_square()?;
        if n != sig.dim() {
            return Err(Error::Dimension {
                expected: (sig.dim(), sig.dim()),
                found: (n, n),
            });
        }
        let x = Self { sig, mat };
        let res = x.membership_residual();
        if res > (1e-12 * x.mat.frobenius_norm()).max(1e-14) {
            return Err(Error::Domain(alloc::format!(
                "matrix is not in su(m,n) (residual {res:e})"
            )));
        }
        Ok(x)
    }

    /// Wraps a matrix known to lie in `su(m,n)` by construction.
    pub fn from_matrix_unchecked(sig: Signature, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(mat.rows(), sig.dim());
        Self { sig, mat }
    }

    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            mat: ComplexMatrix::zeros(sig.dim(), sig.dim()),
        }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    /// `‖X† I + I X‖ + |tr X|`.
    pub fn membership_residual(&self) -> f64 {
        let i = self.sig.metric();
        let r = &self.mat.adjoint().matmul(&i) + &i.matmul(&self.mat);
        r.frobenius_norm() + self.mat.trace().norm()
    }

    /// Cartan involution `θ(X) = -X†`.
    pub fn theta(&self) -> Self {
        Self {
            sig: self.sig,
            mat: -&self.mat.adjoint(),
        }
    }

    /// `(X₊, X₋) = ((X + θX)/2, (X - θX)/2)`.
    pub fn split_pm(&self) -> (Self, Self) {
        let t = self.theta();
        let plus = (&self.mat + &t.mat).scale_re(0.5);
        let minus = (&self.mat - &t.mat).scale_re(0.5);
        (
            Self {
                sig: self.sig,
                mat: plus,
            },
            Self {
                sig: self.sig,
                mat: minus,
            },
        )
    }

    pub fn plus_part(&self) -> Self {
        self.split_pm().0
    }

    pub fn minus_part(&self) -> Self {
        self.split_pm().1
    }

    /// Trace form `⟨X, Y⟩ = tr(XY)`; real on `su(m,n)`.
    pub fn pairing(&self, other: &Self) -> f64 {
        self.mat.trace_product(&other.mat).re
    }

    /// Whether the element is block diagonal, i.e. lies in `G₊`.
    pub fn is_compact(&self, tol: f64) -> bool {
        let (m, n) = (self.sig.m(), self.sig.n());
        self.mat.block(0, m, m, n).max_abs() <= tol && self.mat.block(m, 0, n, m).max_abs() <= tol
    }

    /// `g X g⁻¹` for an invertible `g`.
    pub fn conjugate_by(&self, g: &ComplexMatrix, g_inv: &ComplexMatrix) -> Self {
        Self {
            sig: self.sig,
            mat: g.matmul(&self.mat).matmul(g_inv),
        }
    }

    /// Conjugation by a unitary (e.g. an element of `G₊`).
    pub fn conjugate_unitary(&self, k: &ComplexMatrix) -> Self {
        self.conjugate_by(k, &k.adjoint())
    }

    pub fn bracket(&self, other: &Self) -> Self {
        Self {
            sig: self.sig,
            mat: self.mat.commutator(&other.mat),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            sig: self.sig,
            mat: self.mat.scale_re(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            sig: self.sig,
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            sig: self.sig,
            mat: &self.mat - &other.mat,
        }
    }

    pub fn axpy(&mut self, s: f64, other: &Self) {
        self.mat.axpy_re(s, &other.mat);
    }

    pub fn norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.mat.dist(&other.mat)
    }
}

/// Coordinates `q = (q¹, …, qⁿ)` on the maximal Abelian subspace `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanVector {
    pub sig: Signature,
    pub q: Vec<f64>,
}

impl CartanVector {
    pub fn new(sig: Signature, q: Vec<f64>) -> Result<Self> {
        if q.len() != sig.n() {
            return Err(Error::Dimension {
                expected: (sig.n(), 1),
                found: (q.len(), 1),
            });
        }
        if q.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("Cartan coordinates must be finite".into()));
        }
        Ok(Self { sig, q })
    }
}

/// The element of `A` with `Q = diag(q)` in the anti-diagonal corner blocks.
pub fn embed_cartan(sig: Signature, q: &[f64]) -> AlgebraElement {
    assert_eq!(
        q.len(),
        sig.n(),
        "embed_cartan: wrong number of coordinates"
    );
    let mut mat = ComplexMatrix::zeros(sig.dim(), sig.dim());
    for (k, &x) in q.iter().enumerate() {
        let l = sig.lower(k);
        mat[(k, l)] = C64::new(x, 0.0);
        mat[(l, k)] = C64::new(x, 0.0);
    }
    AlgebraElement::from_matrix_unchecked(sig, mat)
}

/// The central element `C_{m,n} = diag(i n 1_m, -i m 1_n)` spanning the characters of `G₊`.
pub fn central_character(sig: Signature) -> AlgebraElement {
    let (m, n) = (sig.m(), sig.n());
    let entries: Vec<C64> = (0..sig.dim())
        .map(|k| if k < m { I * n as f64 } else { -I * m as f64 })
        .collect();
    AlgebraElement::from_matrix_unchecked(sig, ComplexMatrix::diag(&entries))
}
