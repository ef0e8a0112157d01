//! Hand-computed qubit scenarios and seeded random scenario recipes.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::kernel::{ComplexMatrix, ComplexVector, InstanceRng};
use crate::model::{Ket, Mode, Observable, Scenario, TwoStageEvolution};

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
}

fn qubit(psi: [f64; 2], a: ComplexMatrix, b: ComplexMatrix) -> Scenario {
    Scenario::new(
        Ket::new(ComplexVector::from_real(&psi).unwrap()).unwrap(),
        Observable::new(a).unwrap(),
        Observable::new(b).unwrap(),
        TwoStageEvolution::identity(2),
        Mode::Real,
    )
    .unwrap()
}

/// ψ = |0⟩, A = B = σz, no evolution.
pub fn eigenstate_qubit() -> Scenario {
    qubit([1.0, 0.0], sigma_z(), sigma_z())
}

/// ψ = cos(π/16)|0⟩ + sin(π/16)|1⟩, A = σx, B = σz, no evolution.
/// Post-selecting b = −1 gives the weak value cot(π/16) ≈ 5.0273, outside {±1}.
pub fn anomalous_qubit() -> Scenario {
    let alpha = PI / 16.0;
    qubit([alpha.cos(), alpha.sin()], sigma_x(), sigma_z())
}

/// ψ = cos(3π/8)|0⟩ + sin(3π/8)|1⟩, A = σx, B = σz: Pr(b=+1, a=−1) ≈ −0.1036.
pub fn negativity_qubit() -> Scenario {
    let theta = 3.0 * PI / 8.0;
    qubit([theta.cos(), theta.sin()], sigma_x(), sigma_z())
}

/// ψ = (|0⟩ + |1⟩)/√2, A = B = σz.
pub fn commuting_qubit() -> Scenario {
    qubit([FRAC_1_SQRT_2, FRAC_1_SQRT_2], sigma_z(), sigma_z())
}

/// ψ = |0⟩, A = σx, B = σz: sequential measurement is uniform, the quasi-probability is not.
pub fn contrast_qubit() -> Scenario {
    qubit([1.0, 0.0], sigma_x(), sigma_z())
}

/// Draws ket, A, B, U1 and U2 in that order from one stream.
pub fn random_scenario_from(rng: &mut InstanceRng, dim: usize, mode: Mode) -> Scenario {
    let psi = rng.ket(dim);
    let a = rng.hermitian(dim);
    let b = rng.hermitian(dim);
    let u1 = rng.unitary(dim);
    let u2 = rng.unitary(dim);
    Scenario::new(
        Ket::new(psi).expect("random ket is normalized"),
        Observable::new(a).expect("random Hermitian decomposes"),
        Observable::new(b).expect("random Hermitian decomposes"),
        TwoStageEvolution::new(u1, u2).expect("random unitaries"),
        mode,
    )
    .expect("consistent dimensions")
}

pub fn random_scenario(seed: u64, dim: usize, mode: Mode) -> Scenario {
    random_scenario_from(&mut InstanceRng::new(seed), dim, mode)
}

/// Random scenario with A replaced by the identity.
pub fn random_scenario_with_identity_a(seed: u64, dim: usize, mode: Mode) -> Scenario {
    let s = random_scenario(seed, dim, mode);
    Scenario::new(
        s.psi().clone(),
        Observable::new(ComplexMatrix::identity(dim)).unwrap(),
        s.obs_b().clone(),
        s.evolution().clone(),
        mode,
    )
    .unwrap()
}

/// Random scenario whose B(t2) is a function of A(t1), so the two commute.
///
/// With `B = U2 f(A) U2†` one gets `B(t2) = U1† f(A) U1 = f(A(t1))`. Half of
/// the draws use integer levels for `f`, which makes B degenerate.
pub fn random_commuting_scenario(seed: u64, dim: usize, mode: Mode) -> Scenario {
    let mut rng = InstanceRng::new(seed);
    let psi = rng.ket(dim);
    let a = Observable::new(rng.hermitian(dim)).expect("random Hermitian decomposes");
    let u1 = rng.unitary(dim);
    let u2 = rng.unitary(dim);
    let integer_levels = rng.uniform() < 0.5;
    let levels: Vec<f64> = (0..dim)
        .map(|_| {
            if integer_levels {
                (rng.uniform_in(-2.0, 2.0)).round()
            } else {
                rng.uniform_in(-2.0, 2.0)
            }
        })
        .collect();

    let eig = a.decomposition();
    let v = &eig.eigenvectors;
    let mut f_of_a = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            f_of_a[(i, j)] = (0..dim)
                .map(|k| v[(i, k)] * levels[k] * v[(j, k)].conj())
                .sum::<Complex64>();
        }
    }
    let b = u2.matmul(&f_of_a).matmul(&u2.adjoint());
    Scenario::new(
        Ket::new(psi).expect("random ket is normalized"),
        a,
        Observable::new(b).expect("conjugated function of A is Hermitian"),
        TwoStageEvolution::new(u1, u2).expect("random unitaries"),
        mode,
    )
    .expect("consistent dimensions")
}
