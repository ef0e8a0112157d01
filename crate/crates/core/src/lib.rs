//! Weak values, two-time correlation functions and the correlation-function
//! quasi-probability `Pr_ψ(b, a) = ⟨ψ|P_b^B(t2) P_a^A(t1)|ψ⟩` for
//! finite-dimensional pure states.
//!
//! The central relation is that the weak value of `A` post-selected on `b`
//! equals the average of the eigenvalues `a` over the conditional
//! quasi-probability `Pr_ψ(a|b)`. [`engine::weak_value`] and
//! [`engine::conditional_average`] compute the two sides through unrelated
//! routes (Schrödinger-picture amplitudes versus Heisenberg-picture
//! projectors) so the identity can be checked numerically, in both the real
//! and the complex variant.

pub mod engine;
mod error;
pub mod fixtures;
pub mod kernel;
pub mod model;
mod tolerance;

pub use engine::{
    commuting_reduction_check, conditional_average, conditional_average_from_table,
    conditional_quasiprobability, correlation_function, kd_quasiprobability,
    sequential_measurement_distribution, weak_value, weak_value_of, CommutingCheck, QuasiProbTable,
    WeakValueResult,
};
pub use error::{Error, Result};
pub use kernel::{
    hermitian_eig, random_instance, unitary_from_hamiltonian, ComplexMatrix, ComplexVector,
    EigenDecomposition, InstanceKind, InstanceRng, RandomInstance,
};
pub use model::{
    heisenberg_operator, intermediate_probability, postselection_probability, spectral_projectors,
    Ket, Mode, Observable, ProjectorSet, Scenario, Stage, TwoStageEvolution,
};
pub use num_complex::Complex64;
pub use tolerance::Tolerances;
