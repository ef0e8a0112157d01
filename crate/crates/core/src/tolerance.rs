//! Numerical tolerances shared by every module.
//!
//! All defaults live in [`Tolerances::DEFAULT`]; tests and the harness read
//! them from here rather than repeating literals.

/// Tolerance configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative Hermiticity tolerance: ‖M − M†‖_F ≤ hermitian · max(1, ‖M‖_F).
    pub hermitian: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm is below `jacobi_off · ‖M‖_F`.
    pub jacobi_off: f64,
    pub jacobi_max_sweeps: usize,
    /// ‖U†U − I‖_F bound accepted for evolution operators.
    pub unitary: f64,
    /// Maximum deviation of ‖ψ‖ from 1 that is silently renormalized.
    pub renormalize: f64,
    /// Maximum deviation of ‖ψ‖ from 1 accepted without renormalizing.
    pub exact_norm: f64,
    /// Eigenvalues closer than `group · max(1, spread)` share one spectral projector.
    pub group: f64,
    /// Relative tolerance used to match a requested eigenvalue label.
    pub label_match: f64,
    /// Post-selection probabilities at or below this are treated as impossible.
    pub postselection_cutoff: f64,
    /// Commutator norm below which two operators are considered commuting.
    pub commuting: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-10,
        jacobi_off: 1e-14,
        jacobi_max_sweeps: 100,
        unitary: 1e-9,
        renormalize: 1e-6,
        exact_norm: 1e-14,
        group: 1e-9,
        label_match: 1e-9,
        postselection_cutoff: 1e-12,
        commuting: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
