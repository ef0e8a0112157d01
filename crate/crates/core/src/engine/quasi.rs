//! The correlation-function quasi-probability `Pr_ψ(b, a)` and the
//! quantities derived from it.
//!
//! Everything here goes through Heisenberg-picture operators built by
//! [`heisenberg_operator`]; nothing is shared with the Schrödinger-picture
//! weak value in [`super::weak`], so comparing the two is a genuine check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::ComplexMatrix;
use crate::model::{heisenberg_operator, match_label, Mode, Scenario, Stage};
use crate::tolerance::Tolerances;

/// Joint table indexed by eigenvalue labels of `B` (rows) and `A` (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiProbTable {
    pub a_labels: Vec<f64>,
    pub b_labels: Vec<f64>,
    /// `entries[b][a]`; imaginary parts are zero in real mode.
    pub entries: Vec<Vec<Complex64>>,
    pub mode: Mode,
}

impl QuasiProbTable {
    pub fn entry(&self, b_label: f64, a_label: f64) -> Result<Complex64> {
        let b = match_label(&self.b_labels, b_label)?;
        let a = match_label(&self.a_labels, a_label)?;
        Ok(self.entries[b][a])
    }

    /// Σ_a Pr(b, a) for row `b`.
    pub fn row_sum(&self, b: usize) -> Complex64 {
        self.entries[b].iter().sum()
    }

    /// Σ_b Pr(b, a) for column `a`.
    pub fn column_sum(&self, a: usize) -> Complex64 {
        self.entries.iter().map(|row| row[a]).sum()
    }

    pub fn total(&self) -> Complex64 {
        self.entries.iter().flatten().sum()
    }

    /// Smallest real part over all entries.
    pub fn min_real(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.b_labels.iter().enumerate().flat_map(move |(bi, &b)| {
            self.a_labels
                .iter()
                .enumerate()
                .map(move |(ai, &a)| (b, a, self.entries[bi][ai]))
        })
    }

    /// Largest elementwise modulus of the difference to another table of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

fn heisenberg_projectors(s: &Scenario) -> (Vec<ComplexMatrix>, Vec<ComplexMatrix>) {
    let evo = s.evolution();
    let a_t1 = s
        .obs_a()
        .projectors()
        .projectors()
        .iter()
        .map(|p| heisenberg_operator(p, evo, Stage::T1).expect("scenario dimensions agree"))
        .collect();
    let b_t2 = s
        .obs_b()
        .projectors()
        .projectors()
        .iter()
        .map(|p| heisenberg_operator(p, evo, Stage::T2).expect("scenario dimensions agree"))
        .collect();
    (a_t1, b_t2)
}

/// `Pr_ψ(b, a) = ⟨ψ|P_b^B(t2) P_a^A(t1)|ψ⟩`, real part only in real mode.
pub fn kd_quasiprobability(s: &Scenario) -> QuasiProbTable {
    let psi = s.psi().vector();
    let (a_t1, b_t2) = heisenberg_projectors(s);
    let mode = s.mode();

    // P_a(t1)|ψ⟩ for every a, and ⟨ψ|P_b(t2) as (P_b(t2)|ψ⟩)† since P_b(t2) is Hermitian.
    let a_kets: Vec<_> = a_t1.iter().map(|p| p.apply(psi)).collect();
    let b_kets: Vec<_> = b_t2.iter().map(|p| p.apply(psi)).collect();

    let entries = b_kets
        .iter()
        .map(|bk| a_kets.iter().map(|ak| mode.apply(bk.inner(ak))).collect())
        .collect();

    QuasiProbTable {
        a_labels: s.obs_a().projectors().labels().to_vec(),
        b_labels: s.obs_b().projectors().labels().to_vec(),
        entries,
        mode,
    }
}

/// `Pr_ψ(a|b) = Pr_ψ(b, a) / Pr_ψ(b)` for every `a`, with `Pr_ψ(b)` the row sum.
pub fn conditional_quasiprobability(
    t: &QuasiProbTable,
    b_label: f64,
) -> Result<Vec<(f64, Complex64)>> {
    let b = match_label(&t.b_labels, b_label)?;
    let marginal = t.row_sum(b).re;
    let cutoff = Tolerances::DEFAULT.postselection_cutoff;
    if !(marginal > cutoff) {
        return Err(Error::PostselectionTooRare {
            probability: marginal,
            cutoff,
        });
    }
    Ok(t.a_labels
        .iter()
        .zip(&t.entries[b])
        .map(|(&a, &p)| (a, p / marginal))
        .collect())
}

/// `Σ_a a · Pr_ψ(a|b)`, evaluated entirely through the quasi-probability table.
pub fn conditional_average(s: &Scenario, b_label: f64) -> Result<Complex64> {
    let table = kd_quasiprobability(s);
    conditional_average_from_table(&table, b_label)
}

/// Same as [`conditional_average`] but reusing an already computed table.
pub fn conditional_average_from_table(t: &QuasiProbTable, b_label: f64) -> Result<Complex64> {
    Ok(conditional_quasiprobability(t, b_label)?
        .into_iter()
        .map(|(a, p)| p * a)
        .sum())
}

/// Two-time correlation function `⟨ψ|B(t2) A(t1)|ψ⟩` (real part in real mode).
pub fn correlation_function(s: &Scenario) -> Complex64 {
    let evo = s.evolution();
    let psi = s.psi().vector();
    let a_t1 =
        heisenberg_operator(s.obs_a().matrix(), evo, Stage::T1).expect("scenario dimensions agree");
    let b_t2 =
        heisenberg_operator(s.obs_b().matrix(), evo, Stage::T2).expect("scenario dimensions agree");
    s.mode().apply(psi.inner(&b_t2.apply(&a_t1.apply(psi))))
}

/// Joint distribution of actually measuring `A` at t1 and then `B` at t2:
/// `‖P_b U2 P_a U1 |ψ⟩‖²`.
pub fn sequential_measurement_distribution(s: &Scenario) -> QuasiProbTable {
    let u2 = s.evolution().u2();
    let at_t1 = s.state_at_t1();
    let after_a: Vec<_> = s
        .obs_a()
        .projectors()
        .projectors()
        .iter()
        .map(|p| u2.apply(&p.apply(&at_t1)))
        .collect();
    let entries = s
        .obs_b()
        .projectors()
        .projectors()
        .iter()
        .map(|pb| {
            after_a
                .iter()
                .map(|v| Complex64::new(pb.apply(v).norm_sqr(), 0.0))
                .collect()
        })
        .collect();
    QuasiProbTable {
        a_labels: s.obs_a().projectors().labels().to_vec(),
        b_labels: s.obs_b().projectors().labels().to_vec(),
        entries,
        mode: Mode::Real,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::weak::{weak_value, weak_value_of};
    use crate::fixtures;
    use crate::model::{intermediate_probability, postselection_probability};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn commuting_diagonal_table() {
        let t = kd_quasiprobability(&fixtures::commuting_qubit());
        assert!((t.entry(1.0, 1.0).unwrap() - c(0.5)).norm() < 1e-15);
        assert!((t.entry(-1.0, -1.0).unwrap() - c(0.5)).norm() < 1e-15);
        assert!(t.entry(1.0, -1.0).unwrap().norm() < 1e-15);
        assert!(t.entry(-1.0, 1.0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn negative_entry() {
        let t = kd_quasiprobability(&fixtures::negativity_qubit());
        // Oracle: Re(⟨ψ|0⟩⟨0|−⟩⟨−|ψ⟩) with ψ = (cos 3π/8, sin 3π/8).
        let th = 3.0 * std::f64::consts::PI / 8.0;
        let oracle = th.cos() * (th.cos() - th.sin()) / 2.0;
        let e = t.entry(1.0, -1.0).unwrap();
        assert!((e.re - oracle).abs() < 1e-15);
        assert!((e.re - (-0.10355339059327376)).abs() < 1e-12);
        assert!(t.min_real() < 0.0);
    }

    #[test]
    fn marginals_random() {
        for mode in [Mode::Real, Mode::Complex] {
            let s = fixtures::random_scenario(21, 5, mode);
            let t = kd_quasiprobability(&s);
            assert!((t.total() - c(1.0)).norm() <= 1e-10);
            for (bi, &b) in t.b_labels.iter().enumerate() {
                let pb = postselection_probability(&s, b).unwrap();
                assert!((t.row_sum(bi) - c(pb)).norm() <= 1e-10);
            }
            for (ai, &a) in t.a_labels.iter().enumerate() {
                let pa = intermediate_probability(&s, a).unwrap();
                assert!((t.column_sum(ai) - c(pa)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn conditional_commuting_case() {
        let t = kd_quasiprobability(&fixtures::commuting_qubit());
        let cond = conditional_quasiprobability(&t, 1.0).unwrap();
        assert_eq!(cond.len(), 2);
        assert!((cond[0].1 - c(1.0)).norm() < 1e-15 && cond[0].0 == 1.0);
        assert!(cond[1].1.norm() < 1e-15 && cond[1].0 == -1.0);
    }

    #[test]
    fn conditional_equals_projector_weak_values() {
        for mode in [Mode::Real, Mode::Complex] {
            let s = fixtures::random_scenario(4, 4, mode);
            let t = kd_quasiprobability(&s);
            for &b in &t.b_labels {
                let cond = conditional_quasiprobability(&t, b).unwrap();
                let sum: Complex64 = cond.iter().map(|x| x.1).sum();
                assert!((sum - c(1.0)).norm() <= 1e-10);
                for (a, p) in cond {
                    let pa = s.obs_a().projectors().projector(a).unwrap();
                    let wv = weak_value_of(&s, pa, b).unwrap().value;
                    assert!((p - wv).norm() <= 1e-10, "{p} vs {wv}");
                }
            }
        }
    }

    #[test]
    fn conditional_rejects_empty_row() {
        let t = kd_quasiprobability(&fixtures::eigenstate_qubit());
        assert!(matches!(
            conditional_quasiprobability(&t, -1.0),
            Err(Error::PostselectionTooRare { .. })
        ));
    }

    #[test]
    fn conditional_average_matches_weak_value() {
        let s = fixtures::anomalous_qubit();
        let avg = conditional_average(&s, -1.0).unwrap();
        let wv = weak_value(&s, -1.0).unwrap().value;
        assert!((avg - wv).norm() <= 1e-10);
        assert!((avg.re - 5.027339492125848).abs() < 1e-10);

        let s = fixtures::eigenstate_qubit();
        assert!((conditional_average(&s, 1.0).unwrap() - c(1.0)).norm() <= 1e-12);
    }

    #[test]
    fn correlation_examples() {
        let s = fixtures::eigenstate_qubit();
        assert!((correlation_function(&s) - c(1.0)).norm() < 1e-15);

        // A = I reduces to ⟨ψ|B(t2)|ψ⟩.
        let s = fixtures::random_scenario_with_identity_a(8, 4, Mode::Complex);
        let b_t2 = heisenberg_operator(s.obs_b().matrix(), s.evolution(), Stage::T2).unwrap();
        let expect = s.psi().vector().inner(&b_t2.apply(s.psi().vector()));
        assert!((correlation_function(&s) - expect).norm() < 1e-12);
    }

    #[test]
    fn correlation_weighted_sum() {
        for mode in [Mode::Real, Mode::Complex] {
            let s = fixtures::random_scenario(13, 6, mode);
            let t = kd_quasiprobability(&s);
            let weighted: Complex64 = t.iter().map(|(b, a, p)| p * (a * b)).sum();
            assert!((correlation_function(&s) - weighted).norm() <= 1e-10);
        }
    }

    #[test]
    fn sequential_versus_kd_contrast() {
        let s = fixtures::contrast_qubit();
        let seq = sequential_measurement_distribution(&s);
        for (_, _, p) in seq.iter() {
            assert!((p - c(0.25)).norm() <= 1e-10);
        }
        let kd = kd_quasiprobability(&s);
        assert!((kd.entry(1.0, 1.0).unwrap() - c(0.5)).norm() <= 1e-10);
        assert!((kd.entry(1.0, -1.0).unwrap() - c(0.5)).norm() <= 1e-10);
        assert!(kd.entry(-1.0, 1.0).unwrap().norm() <= 1e-10);
        assert!(kd.entry(-1.0, -1.0).unwrap().norm() <= 1e-10);
    }

    #[test]
    fn sequential_commuting_equals_kd() {
        let s = fixtures::commuting_qubit();
        let seq = sequential_measurement_distribution(&s);
        assert!(seq.max_abs_diff(&kd_quasiprobability(&s)) <= 1e-10);
    }

    #[test]
    fn sequential_is_a_distribution() {
        let s = fixtures::random_scenario(55, 7, Mode::Real);
        let seq = sequential_measurement_distribution(&s);
        assert!(seq.min_real() >= 0.0);
        assert!((seq.total() - c(1.0)).norm() <= 1e-10);
    }

    #[test]
    fn real_table_is_real_part_of_complex_table() {
        let s = fixtures::random_scenario(3, 5, Mode::Complex);
        let tc = kd_quasiprobability(&s);
        let tr = kd_quasiprobability(&s.with_mode(Mode::Real));
        for (x, y) in tc.entries.iter().flatten().zip(tr.entries.iter().flatten()) {
            assert_eq!(y.im, 0.0);
            assert!((x.re - y.re).abs() <= 1e-12);
        }
    }
}
