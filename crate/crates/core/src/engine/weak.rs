use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::ComplexMatrix;
use crate::model::{Mode, Scenario};
use crate::tolerance::Tolerances;

/// A weak value together with the probability of the post-selection it is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValueResult {
    /// Imaginary part is zero in real mode.
    pub value: Complex64,
    pub postselection_prob: f64,
    pub mode: Mode,
}

/// Weak value of `A` at t1 post-selected on outcome `b_label` of `B` at t2.
///
/// Computed in the Schrödinger picture as
/// `⟨ψ|U1†U2† P_b U2 A U1|ψ⟩ / ⟨ψ|U1†U2† P_b U2 U1|ψ⟩`, which for a
/// non-degenerate `b` equals `⟨b|U2 A U1|ψ⟩ / ⟨b|U2 U1|ψ⟩`.
pub fn weak_value(s: &Scenario, b_label: f64) -> Result<WeakValueResult> {
    weak_value_of(s, s.obs_a().matrix(), b_label)
}

/// Weak value of an arbitrary operator inserted at t1 (e.g. a spectral projector of `A`).
pub fn weak_value_of(s: &Scenario, op: &ComplexMatrix, b_label: f64) -> Result<WeakValueResult> {
    if op.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: op.dim(),
        });
    }
    let p_b = s.obs_b().projectors().projector(b_label)?;
    let u1 = s.evolution().u1();
    let u2 = s.evolution().u2();

    let at_t1 = u1.apply(s.psi().vector());
    let forward = u2.apply(&at_t1);
    let projected = p_b.apply(&forward);

    // ⟨P_b U2 U1 ψ| U2 op U1 ψ⟩ and ‖P_b U2 U1 ψ‖²
    let numerator = projected.inner(&u2.apply(&op.apply(&at_t1)));
    let denominator = projected.norm_sqr();

    let cutoff = Tolerances::DEFAULT.postselection_cutoff;
    if !(denominator > cutoff) {
        return Err(Error::PostselectionTooRare {
            probability: denominator,
            cutoff,
        });
    }
    let mode = s.mode();
    Ok(WeakValueResult {
        value: mode.apply(numerator / denominator),
        postselection_prob: denominator.clamp(0.0, 1.0),
        mode,
    })
}
