use crate::model::{heisenberg_operator, Scenario, Stage};
use crate::tolerance::Tolerances;

use super::quasi::{kd_quasiprobability, sequential_measurement_distribution};

/// Outcome of [`commuting_reduction_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutingCheck {
    /// ‖[A(t1), B(t2)]‖_F ≤ the commuting tolerance.
    pub commuting: bool,
    pub commutator_norm: f64,
    /// Max elementwise |Pr_ψ(b,a) − P_seq(b,a)|; `None` when the operators do not commute.
    pub max_deviation: Option<f64>,
}

impl CommutingCheck {
    /// True unless the operators commute and the two tables still disagree.
    pub fn holds(&self) -> bool {
        self.max_deviation
            .map_or(true, |d| d <= Tolerances::DEFAULT.commuting)
    }
}

/// When `A(t1)` and `B(t2)` commute, the quasi-probability must coincide with
/// the sequential-measurement distribution. Non-commuting scenarios only
/// report the commutator norm.
pub fn commuting_reduction_check(s: &Scenario) -> CommutingCheck {
    let evo = s.evolution();
    let a_t1 =
        heisenberg_operator(s.obs_a().matrix(), evo, Stage::T1).expect("scenario dimensions agree");
    let b_t2 =
        heisenberg_operator(s.obs_b().matrix(), evo, Stage::T2).expect("scenario dimensions agree");
    let commutator_norm = a_t1.commutator(&b_t2).frobenius_norm();
    let commuting = commutator_norm <= Tolerances::DEFAULT.commuting;
    let max_deviation = commuting
        .then(|| kd_quasiprobability(s).max_abs_diff(&sequential_measurement_distribution(s)));
    CommutingCheck {
        commuting,
        commutator_norm,
        max_deviation,
    }
}
