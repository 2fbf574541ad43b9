#![allow(dead_code)]

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reduction_core::kernel::{standard_complex_normal, standard_normal};
use reduction_core::lie::{AlgebraElement, RootSystemData, Signature};
use reduction_core::matrix::{ComplexMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sig(m: usize, n: usize) -> Signature {
    Signature::new(m, n).unwrap()
}

pub fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex_normal(rng))
}

pub fn hermitian(k: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let z = gaussian(k, k, rng);
    (&z + &z.adjoint()).scale_re(0.5)
}

/// Random element of `su(m,n)`: `I A` with `A` anti-Hermitian, trace removed.
pub fn random_algebra(s: Signature, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let z = gaussian(s.dim(), s.dim(), rng);
    let a = (&z - &z.adjoint()).scale_re(0.5);
    let mut x = s.metric().matmul(&a);
    let shift = x.trace() / s.dim() as f64;
    for k in 0..s.dim() {
        x[(k, k)] -= shift;
    }
    AlgebraElement::new(s, x).unwrap()
}

/// `q` in the open chamber with every `|α(q)| ≥ margin`.
pub fn random_regular_q(
    rsd: &RootSystemData,
    margin: f64,
    scale: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    loop {
        let mut q: Vec<f64> = (0..rsd.sig().n())
            .map(|_| scale * standard_normal(rng).abs())
            .collect();
        q.sort_by(|a, b| b.total_cmp(a));
        if rsd.min_root_margin(&q).1 >= margin {
            return q;
        }
    }
}

pub fn normals(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..k).map(|_| standard_normal(rng)).collect()
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
