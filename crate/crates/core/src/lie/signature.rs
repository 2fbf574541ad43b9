use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Signature `(m, n)` of `su(m,n)`, with `m ≥ n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    m: usize,
    n: usize,
}

impl Signature {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n == 0 || m < n {
            return Err(Error::Domain(alloc::format!(
                "signature requires m >= n >= 1, got ({m}, {n})"
            )));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix size `m + n`.
    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Real dimension of `su(m,n)`.
    pub fn algebra_dim(&self) -> usize {
        self.dim() * self.dim() - 1
    }

    /// `I_{m,n} = diag(1_m, -1_n)`.
    pub fn metric(&self) -> ComplexMatrix {
        let entries: alloc::vec::Vec<C64> = (0..self.dim())
            .map(|k| C64::new(if k < self.m { 1.0 } else { -1.0 }, 0.0))
            .collect();
        ComplexMatrix::diag(&entries)
    }

    /// Row/column index of the lower-block partner of upper index `k < n`.
    pub fn lower(&self, k: usize) -> usize {
        self.m + k
    }
}
