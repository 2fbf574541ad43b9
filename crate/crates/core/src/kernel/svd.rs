use alloc::vec::Vec;

use super::eigh::jacobi_rotation;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// `B = U diag(s) V†` with `s` descending and nonnegative.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.s.len();
        let mut us = self.u.clone();
        for c in 0..k.min(us.cols()) {
            for r in 0..us.rows() {
                us[(r, c)] *= self.s[c];
            }
        }
        let us = us.block(0, 0, us.rows(), k);
        let v = self.v.block(0, 0, self.v.rows(), k);
        us.matmul(&v.adjoint())
    }
}

const MAX_SWEEPS: usize = 80;

/// Thin SVD: for an `m×n` input, `U` is `m×k`, `V` is `n×k`, `k = min(m, n)`.
pub fn svd(b: &ComplexMatrix) -> Result<Svd> {
    if !b.is_finite() {
        return Err(Error::Domain("svd input has non-finite entries".into()));
    }
    if b.rows() >= b.cols() {
        one_sided_jacobi(b)
    } else {
        let t = one_sided_jacobi(&b.adjoint())?;
        Ok(Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        })
    }
}

/// SVD with square unitary factors: `U` is `m×m`, `V` is `n×n`.
pub fn svd_full(b: &ComplexMatrix) -> Result<Svd> {
    let thin = svd(b)?;
    Ok(Svd {
        u: complete_unitary(&thin.u),
        s: thin.s,
        v: complete_unitary(&thin.v),
    })
}

fn one_sided_jacobi(b: &ComplexMatrix) -> Result<Svd> {
    let (m, n) = (b.rows(), b.cols());
    let mut u = b.clone();
    let mut v = ComplexMatrix::identity(n);
    // columns below this squared norm are rounding noise; rotating them
    // against large columns never settles
    let negligible = 1e-30 * b.frobenius_norm() * b.frobenius_norm();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
                for k in 0..m {
                    alpha += u[(k, p)].norm_sqr();
                    beta += u[(k, q)].norm_sqr();
                    gamma += u[(k, p)].conj() * u[(k, q)];
                }
                if gamma.norm() <= 1e-15 * libm::sqrt(alpha * beta) || alpha.min(beta) <= negligible
                {
                    continue;
                }
                let Some((c, s, phase)) = jacobi_rotation(alpha, beta, gamma) else {
                    continue;
                };
                rotated = true;
                let ph = phase.conj();
                for k in 0..m {
                    let (x, y) = (u[(k, p)], u[(k, q)]);
                    u[(k, p)] = x * c - y * ph * s;
                    u[(k, q)] = x * s + y * ph * c;
                }
                for k in 0..n {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = x * c - y * ph * s;
                    v[(k, q)] = x * s + y * ph * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided jacobi svd"));
    }

    let norms: Vec<f64> = (0..n)
        .map(|c| libm::sqrt((0..m).map(|r| u[(r, c)].norm_sqr()).sum::<f64>()))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let s: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let mut uo = ComplexMatrix::zeros(m, n);
    let mut vo = ComplexMatrix::zeros(n, n);
    let mut missing = Vec::new();
    for (dst, &src) in order.iter().enumerate() {
        let sigma = norms[src];
        for r in 0..n {
            vo[(r, dst)] = v[(r, src)];
        }
        if sigma > 1e-290 {
            for r in 0..m {
                uo[(r, dst)] = u[(r, src)] / sigma;
            }
        } else {
            missing.push(dst);
        }
    }
    for dst in missing {
        let col = orthogonal_unit_vector(&uo, dst);
        uo.set_column(dst, &col);
    }
    Ok(Svd { u: uo, s, v: vo })
}

/// Extends orthonormal columns to a square unitary matrix.
pub(crate) fn complete_unitary(q: &ComplexMatrix) -> ComplexMatrix {
    let (m, k) = (q.rows(), q.cols());
    let mut out = ComplexMatrix::zeros(m, m);
    out.set_block(0, 0, q);
    for c in k..m {
        let col = orthogonal_unit_vector(&out, c);
        out.set_column(c, &col);
    }
    out
}

/// A unit vector orthogonal to every nonzero column of `q` except `slot`.
fn orthogonal_unit_vector(q: &ComplexMatrix, slot: usize) -> Vec<C64> {
    let m = q.rows();
    let existing: Vec<Vec<C64>> = (0..q.cols())
        .filter(|&c| c != slot)
        .map(|c| q.column(c))
        .filter(|col| col.iter().any(|z| z.norm_sqr() > 0.0))
        .collect();
    let mut best: Option<(f64, Vec<C64>)> = None;
    for i in 0..m {
        let mut x = alloc::vec![ZERO; m];
        x[i] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for col in &existing {
                let proj: C64 = col.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
                for (xi, ci) in x.iter_mut().zip(col) {
                    *xi -= proj * ci;
                }
            }
        }
        let nrm = libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if nrm > 0.5 {
            return x.into_iter().map(|z| z / nrm).collect();
        }
        if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
            best = Some((nrm, x));
        }
    }
    let (nrm, x) = best.expect("nonempty basis");
    x.into_iter().map(|z| z / nrm).collect()
}
