use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

// Padé [13/13] coefficients.
const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Largest scaled 1-norm for which the degree-13 approximant is accurate.
const THETA_13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with a degree-13 Padé approximant.
pub fn expm(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = x.ensure_square()?;
    if !x.is_finite() {
        return Err(Error::Domain("expm input has non-finite entries".into()));
    }
    let norm = x.norm_one();
    let s = if norm > THETA_13 {
        libm::ceil(libm::log2(norm / THETA_13)) as i32
    } else {
        0
    };
    let a = x.scale_re(libm::pow(2.0, -f64::from(s)));

    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);

    let mut inner = a6.scale_re(B[13]);
    inner.axpy_re(B[11], &a4);
    inner.axpy_re(B[9], &a2);
    let mut u = a6.matmul(&inner);
    u.axpy_re(B[7], &a6);
    u.axpy_re(B[5], &a4);
    u.axpy_re(B[3], &a2);
    u.axpy_re(B[1], &id);
    let u = a.matmul(&u);

    let mut inner = a6.scale_re(B[12]);
    inner.axpy_re(B[10], &a4);
    inner.axpy_re(B[8], &a2);
    let mut v = a6.matmul(&inner);
    v.axpy_re(B[6], &a6);
    v.axpy_re(B[4], &a4);
    v.axpy_re(B[2], &a2);
    v.axpy_re(B[0], &id);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.solve(&p)?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    if !r.is_finite() {
        return Err(Error::Domain("expm overflow".into()));
    }
    Ok(r)
}
