//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `h_pq` with a diagonal
//! unitary, then annihilates the now-real pivot with a plane rotation:
//!
//! ```text
//! U = diag(1, w) · [[c, s], [−s, c]],   w = conj(h_pq) / |h_pq|
//! H ← U† H U,   V ← V U
//! ```
//!
//! Sweeps run over all pairs `p < q` in row order until the off-diagonal
//! Frobenius norm drops below `jacobi_off · ‖M‖_F`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Spectral decomposition `M = V Λ V†` of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order (ties keep the solver's diagonal
/// order); column `k` of `eigenvectors` belongs to `eigenvalues[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// V Λ V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|lambda| Complex64::new(lambda, 0.0))
    }

    /// V f(Λ) V† for a scalar function of the eigenvalues.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| v[(i, k)] * weights[k] * v[(j, k)].conj())
                    .sum();
            }
        }
        out
    }
}

fn off_diagonal_norm(h: &ComplexMatrix) -> f64 {
    let n = h.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += h[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix with the default tolerances.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    hermitian_eig_with(m, &Tolerances::DEFAULT)
}

pub fn hermitian_eig_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    m.check_hermitian(tol.hermitian)?;

    // Work on the exactly Hermitian part.
    let mut h = m.clone();
    for i in 0..n {
        h[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let threshold = tol.jacobi_off * m.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&h);
        if off <= threshold {
            break;
        }
        if sweeps == tol.jacobi_max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort: equal eigenvalues keep their index order.
    order.sort_by(|&i, &j| h[(j, j)].re.total_cmp(&h[(i, i)].re));

    let eigenvalues = order.iter().map(|&k| h[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, col)] = v[(i, k)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(h: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let hpq = h[(p, q)];
    let r = hpq.norm();
    if r == 0.0 {
        return;
    }
    let n = h.dim();
    let a = h[(p, p)].re;
    let b = h[(q, q)].re;
    let w = hpq.conj() / r;

    let theta = (b - a) / (2.0 * r);
    let t = if theta.is_finite() {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // H ← H U
    for k in 0..n {
        let hkp = h[(k, p)];
        let hkq = h[(k, q)];
        h[(k, p)] = hkp * c - hkq * w * s;
        h[(k, q)] = hkp * s + hkq * w * c;
    }
    // H ← U† H
    let wc = w.conj();
    for k in 0..n {
        let hpk = h[(p, k)];
        let hqk = h[(q, k)];
        h[(p, k)] = hpk * c - hqk * wc * s;
        h[(q, k)] = hpk * s + hqk * wc * c;
    }
    h[(p, q)] = Complex64::new(0.0, 0.0);
    h[(q, p)] = Complex64::new(0.0, 0.0);
    h[(p, p)] = Complex64::new(a - t * r, 0.0);
    h[(q, q)] = Complex64::new(b + t * r, 0.0);

    // V ← V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * w * s;
        v[(k, q)] = vkp * s + vkq * w * c;
    }
}

/// `exp(−iHt)` for Hermitian `H`, computed as `V exp(−iΛt) V†` (ħ = 1).
pub fn unitary_from_hamiltonian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::NonFinite("evolution time"));
    }
    let eig = hermitian_eig(h)?;
    Ok(eig.reconstruct_with(|lambda| Complex64::from_polar(1.0, -lambda * t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::random::InstanceRng;

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    fn orthonormality_residual(e: &EigenDecomposition) -> f64 {
        e.eigenvectors.unitarity_residual()
    }

    #[test]
    fn diagonal_input_is_returned_as_is() {
        let e = hermitian_eig(&sigma_z()).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, -1.0]);
        assert_eq!(e.eigenvectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn ascending_diagonal_is_reordered() {
        let m =
            ComplexMatrix::from_real_rows(&[&[-2.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[0.0, 0.0, 0.5]])
                .unwrap();
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 0.5, -2.0]);
        assert_eq!(e.eigenvectors.column(0).entries()[1].re, 1.0);
    }

    #[test]
    fn ties_keep_index_order() {
        let e = hermitian_eig(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0; 3]);
        assert_eq!(e.eigenvectors, ComplexMatrix::identity(3));
    }

    #[test]
    fn sigma_x_spectrum() {
        let e = hermitian_eig(&sigma_x()).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // (e0 ± e1)/√2 up to phase
        let plus = e.eigenvectors.column(0);
        let minus = e.eigenvectors.column(1);
        assert!((plus[0].norm() - s).abs() < 1e-15 && (plus[1].norm() - s).abs() < 1e-15);
        assert!(((plus[0] - plus[1]).norm()) < 1e-15);
        assert!(((minus[0] + minus[1]).norm()) < 1e-15);
    }

    #[test]
    fn complex_offdiagonal_2x2() {
        // σy has eigenvalues ±1 with eigenvectors (1, ±i)/√2
        let y = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eig(&y).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&y) < 1e-15);
    }

    #[test]
    fn dimension_one() {
        let m = ComplexMatrix::from_real_rows(&[&[4.5]]).unwrap();
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![4.5]);
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let e = hermitian_eig(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 4]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sweep_budget_exhaustion_is_reported() {
        let m = InstanceRng::new(3).hermitian(6);
        let tol = Tolerances {
            jacobi_max_sweeps: 1,
            ..Tolerances::DEFAULT
        };
        assert!(matches!(
            hermitian_eig_with(&m, &tol),
            Err(Error::NoConvergence { sweeps: 1, .. })
        ));
    }

    #[test]
    fn random_hermitian_reconstruction_d8() {
        let m = InstanceRng::new(2024).hermitian(8);
        let e = hermitian_eig(&m).unwrap();
        let residual = (&m - &e.reconstruct()).frobenius_norm();
        assert!(
            residual <= 1e-10 * m.frobenius_norm(),
            "residual {residual:e}"
        );
        assert!(orthonormality_residual(&e) <= 1e-10);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        // trace oracle
        let trace: f64 = e.eigenvalues.iter().sum();
        assert!((trace - m.trace().re).abs() < 1e-12);
    }

    #[test]
    fn deterministic() {
        let m = InstanceRng::new(5).hermitian(7);
        assert_eq!(hermitian_eig(&m).unwrap(), hermitian_eig(&m).unwrap());
    }

    #[test]
    fn zero_hamiltonian_gives_identity() {
        let u = unitary_from_hamiltonian(&ComplexMatrix::zeros(3), 2.7).unwrap();
        assert_eq!(u, ComplexMatrix::identity(3));
    }

    #[test]
    fn sigma_z_evolution() {
        let theta = 0.37;
        let u = unitary_from_hamiltonian(&sigma_z(), theta).unwrap();
        let expected = ComplexMatrix::diagonal(&[
            Complex64::from_polar(1.0, -theta),
            Complex64::from_polar(1.0, theta),
        ]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn random_evolution_is_unitary() {
        let h = InstanceRng::new(11).hermitian(5);
        let u = unitary_from_hamiltonian(&h, 1.3).unwrap();
        assert!(u.unitarity_residual() <= 1e-12);
    }

    #[test]
    fn non_finite_time_rejected() {
        assert!(unitary_from_hamiltonian(&sigma_x(), f64::NAN).is_err());
    }
}
