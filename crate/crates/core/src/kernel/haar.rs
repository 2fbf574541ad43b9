use rand_core::Rng;

use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Uniform in `[0, 1)` with 53 random bits.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box-Muller.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u1 = uniform(rng);
        if u1 > 0.0 {
            let u2 = uniform(rng);
            return libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2);
        }
    }
}

/// Complex Gaussian with `E|z|² = 1`.
pub fn standard_complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    C64::new(s * standard_normal(rng), s * standard_normal(rng))
}

/// Haar-distributed `k×k` unitary: Q factor of a complex Ginibre matrix,
/// with the diagonal of R made positive.
pub fn haar_unitary<R: Rng + ?Sized>(k: usize, rng: &mut R) -> ComplexMatrix {
    assert!(k >= 1, "haar_unitary needs k >= 1");
    let z = ComplexMatrix::from_fn(k, k, |_, _| standard_complex_normal(rng));
    let mut q = ComplexMatrix::zeros(k, k);
    for j in 0..k {
        let mut col = z.column(j);
        // modified Gram-Schmidt, applied twice; the resulting r_jj is real positive
        for _ in 0..2 {
            for i in 0..j {
                let qi = q.column(i);
                let proj: C64 = qi.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in col.iter_mut().zip(&qi) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = libm::sqrt(col.iter().map(|x| x.norm_sqr()).sum::<f64>());
        let col: alloc::vec::Vec<C64> = if nrm > 0.0 {
            col.into_iter().map(|x| x / nrm).collect()
        } else {
            let mut e = alloc::vec![ZERO; k];
            e[j] = C64::new(1.0, 0.0);
            e
        };
        q.set_column(j, &col);
    }
    q
}
