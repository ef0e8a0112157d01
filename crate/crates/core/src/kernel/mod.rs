//! Dense complex linear algebra: matrices, the Hermitian eigensolver,
//! Hermitian-generated unitaries and seeded random instances.

pub mod eigen;
pub mod matrix;
pub mod random;

pub use eigen::{hermitian_eig, hermitian_eig_with, unitary_from_hamiltonian, EigenDecomposition};
pub use matrix::{ComplexMatrix, ComplexVector};
pub use random::{derive_seed, random_instance, InstanceKind, InstanceRng, RandomInstance};
