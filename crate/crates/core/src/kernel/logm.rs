use super::eigh::eigh;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Principal logarithm of a Hermitian positive-definite matrix.
pub fn logm_hpd(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = p.ensure_square()?;
    let scale = p.frobenius_norm();
    let defect = p.hermitian_defect();
    if defect > super::rel_tol(1e-12, scale) {
        return Err(Error::NotHermitian { defect });
    }
    let e = eigh(p)?;
    let min = e.values.first().copied().unwrap_or(1.0);
    if min <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    let mut vl = e.vectors.clone();
    for (c, &lam) in e.values.iter().enumerate() {
        let l = libm::log(lam);
        for r in 0..n {
            vl[(r, c)] *= l;
        }
    }
    let out = vl.matmul(&e.vectors.adjoint());
    Ok((&out + &out.adjoint()).scale(C64::new(0.5, 0.0)))
}
