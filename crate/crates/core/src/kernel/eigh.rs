use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

const MAX_SWEEPS: usize = 60;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn eigh(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.ensure_square()?;
    let scale = h.frobenius_norm();
    let defect = h.hermitian_defect();
    if defect > super::rel_tol(1e-12, scale) {
        return Err(Error::NotHermitian { defect });
    }
    // symmetrize so round-off in the input does not leak into the rotations
    let mut a = (h + &h.adjoint()).scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);

    let target = 1e-15 * scale;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= target {
            return Ok(sorted(a, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if off_diagonal(&a) <= 1e-12 * scale {
        Ok(sorted(a, v))
    } else {
        Err(Error::NoConvergence("hermitian jacobi"))
    }
}

fn off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut off = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                off += a[(p, q)].norm_sqr();
            }
        }
    }
    libm::sqrt(off)
}

/// One Jacobi rotation annihilating `a[(p, q)]`.
pub(crate) fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> Option<(f64, f64, C64)> {
    let mag = apq.norm();
    if mag == 0.0 {
        return None;
    }
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    Some((c, t * c, phase))
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let Some((c, s, phase)) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, a[(p, q)]) else {
        return;
    };
    let ph = phase.conj();
    // columns: A <- A G, G = [[c, s], [-s ph, c ph]]
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ph * s;
        a[(k, q)] = akp * s + akq * ph * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ph * s;
        v[(k, q)] = vkp * s + vkq * ph * c;
    }
    // rows: A <- G^† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

fn sorted(a: ComplexMatrix, v: ComplexMatrix) -> HermitianEigen {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}
