//! Seeded random verification instances.
//!
//! The stream is fully specified so other implementations can reproduce it:
//!
//! * Generator: SplitMix64 (state = seed; each step adds `0x9E3779B97F4A7C15`
//!   and applies the standard `30/27/31` xor-shift-multiply finalizer).
//! * Uniform: `u = (x >> 11) · 2⁻⁵³`, in `[0, 1)`.
//! * Complex Gaussian: one Box–Muller pair per complex number,
//!   `ρ = sqrt(−2 ln(1 − u₁))`, `re = ρ cos(2πu₂)`, `im = ρ sin(2πu₂)`.
//! * Matrices are filled row-major, vectors in index order.
//!
//! Instances:
//!
//! * ket: complex Gaussian vector divided by its norm;
//! * hermitian: `(G + G†)/2` for a complex Gaussian `G`;
//! * unitary: columns of a complex Gaussian `G` orthonormalized left to right
//!   by classical Gram–Schmidt with one re-orthogonalization pass.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::matrix::{ComplexMatrix, ComplexVector};

/// Which kind of object [`random_instance`] should draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Ket,
    Hermitian,
    Unitary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RandomInstance {
    Ket(ComplexVector),
    Hermitian(ComplexMatrix),
    Unitary(ComplexMatrix),
}

/// Draws a single instance from a fresh stream seeded with `seed`.
///
/// Panics if `dim == 0`.
pub fn random_instance(seed: u64, dim: usize, kind: InstanceKind) -> RandomInstance {
    let mut rng = InstanceRng::new(seed);
    match kind {
        InstanceKind::Ket => RandomInstance::Ket(rng.ket(dim)),
        InstanceKind::Hermitian => RandomInstance::Hermitian(rng.hermitian(dim)),
        InstanceKind::Unitary => RandomInstance::Unitary(rng.unitary(dim)),
    }
}

/// Mixes a base seed with a stream index into an independent seed
/// (SplitMix64 finalizer of `base + (index + 1) · 0x9E3779B97F4A7C15`).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A stream of random kets, Hermitian matrices and unitaries.
#[derive(Debug, Clone)]
pub struct InstanceRng {
    inner: SplitMix64,
}

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform double in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard complex Gaussian with independent N(0, 1) real and imaginary parts.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let rho = (-2.0 * (1.0 - u1).ln()).sqrt();
        Complex64::from_polar(rho, TAU * u2)
    }

    fn gaussian_matrix(&mut self, dim: usize) -> ComplexMatrix {
        assert!(dim >= 1, "dimension must be at least 1");
        let entries = (0..dim * dim).map(|_| self.complex_gaussian()).collect();
        ComplexMatrix::from_row_major(dim, entries).expect("finite gaussian entries")
    }

    pub fn ket(&mut self, dim: usize) -> ComplexVector {
        assert!(dim >= 1, "dimension must be at least 1");
        let v = ComplexVector::from_entries_unchecked(
            (0..dim).map(|_| self.complex_gaussian()).collect(),
        );
        let norm = v.norm();
        v.scale(Complex64::new(1.0 / norm, 0.0))
    }

    pub fn hermitian(&mut self, dim: usize) -> ComplexMatrix {
        let g = self.gaussian_matrix(dim);
        (&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    pub fn unitary(&mut self, dim: usize) -> ComplexMatrix {
        let g = self.gaussian_matrix(dim);
        let mut columns: Vec<ComplexVector> = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut v = g.column(j);
            for _ in 0..2 {
                for q in &columns {
                    let overlap = q.inner(&v);
                    v.axpy_neg(overlap, q);
                }
            }
            let norm = v.norm();
            columns.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
        let mut u = ComplexMatrix::zeros(dim);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..dim {
                u[(i, j)] = col[i];
            }
        }
        u
    }
}
