//! JSON scenario files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "psi": [[1.0, 0.0], [0.0, 0.0]],
//!   "obs_a": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
//!   "obs_b": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
//!   "u1": ..., "u2": ...,
//!   "mode": "real"
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs and matrices are lists of rows. The
//! evolution is given either as explicit unitaries `u1`/`u2`, or as
//! Hamiltonians `h1`/`h2` with durations `t1_duration`/`t2_duration`
//! (`u = exp(−i h t)`).

use serde::{Deserialize, Serialize};
use weakcorr_core::{
    unitary_from_hamiltonian, Complex64, ComplexMatrix, ComplexVector, Ket, Mode, Observable,
    Scenario, TwoStageEvolution,
};

use crate::error::HarnessError;

pub type ComplexPair = [f64; 2];
pub type MatrixRows = Vec<Vec<ComplexPair>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Real,
    Complex,
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Real => Mode::Real,
            ModeName::Complex => Mode::Complex,
        }
    }
}

impl From<Mode> for ModeName {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Real => ModeName::Real,
            Mode::Complex => ModeName::Complex,
        }
    }
}

/// On-disk form of a [`Scenario`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub dim: usize,
    pub psi: Vec<ComplexPair>,
    pub obs_a: MatrixRows,
    pub obs_b: MatrixRows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u1: Option<MatrixRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u2: Option<MatrixRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<MatrixRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<MatrixRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1_duration: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2_duration: Option<f64>,
    pub mode: ModeName,
}

fn invalid(field: &str, message: impl ToString) -> HarnessError {
    HarnessError::Validation {
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn to_pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

fn matrix_rows(m: &ComplexMatrix) -> MatrixRows {
    (0..m.dim())
        .map(|i| m.row(i).iter().copied().map(to_pair).collect())
        .collect()
}

fn read_matrix(field: &str, rows: &MatrixRows, dim: usize) -> Result<ComplexMatrix, HarnessError> {
    if rows.len() != dim {
        return Err(invalid(
            field,
            format!("expected {dim} rows, found {}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(invalid(
                field,
                format!("row {i} has {} entries, expected {dim}", row.len()),
            ));
        }
        entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    ComplexMatrix::from_row_major(dim, entries).map_err(|e| invalid(field, e))
}

fn read_observable(field: &str, rows: &MatrixRows, dim: usize) -> Result<Observable, HarnessError> {
    Observable::new(read_matrix(field, rows, dim)?).map_err(|e| invalid(field, e))
}

fn read_unitary(field: &str, rows: &MatrixRows, dim: usize) -> Result<ComplexMatrix, HarnessError> {
    let u = read_matrix(field, rows, dim)?;
    u.check_unitary(weakcorr_core::Tolerances::DEFAULT.unitary)
        .map_err(|e| invalid(field, e))?;
    Ok(u)
}

fn read_generated(
    field: &str,
    h: &MatrixRows,
    t: f64,
    dim: usize,
) -> Result<ComplexMatrix, HarnessError> {
    let h = read_matrix(field, h, dim)?;
    unitary_from_hamiltonian(&h, t).map_err(|e| invalid(field, e))
}

impl ScenarioFile {
    /// Explicit-unitary form of a scenario.
    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            dim: s.dim(),
            psi: s
                .psi()
                .vector()
                .entries()
                .iter()
                .copied()
                .map(to_pair)
                .collect(),
            obs_a: matrix_rows(s.obs_a().matrix()),
            obs_b: matrix_rows(s.obs_b().matrix()),
            u1: Some(matrix_rows(s.evolution().u1())),
            u2: Some(matrix_rows(s.evolution().u2())),
            h1: None,
            h2: None,
            t1_duration: None,
            t2_duration: None,
            mode: s.mode().into(),
        }
    }

    /// Validates shapes and physics and builds the scenario. Errors name the offending field.
    pub fn into_scenario(self) -> Result<Scenario, HarnessError> {
        let dim = self.dim;
        if dim == 0 {
            return Err(invalid("dim", "must be at least 1"));
        }
        if self.psi.len() != dim {
            return Err(invalid(
                "psi",
                format!("expected {dim} amplitudes, found {}", self.psi.len()),
            ));
        }
        let psi = ComplexVector::new(
            self.psi
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
        .and_then(Ket::new)
        .map_err(|e| invalid("psi", e))?;
        let obs_a = read_observable("obs_a", &self.obs_a, dim)?;
        let obs_b = read_observable("obs_b", &self.obs_b, dim)?;

        let explicit = self.u1.is_some() || self.u2.is_some();
        let generated = self.h1.is_some()
            || self.h2.is_some()
            || self.t1_duration.is_some()
            || self.t2_duration.is_some();
        let (u1, u2) = match (explicit, generated) {
            (true, true) => {
                return Err(invalid(
                    "evolution",
                    "give either u1/u2 or h1/h2 with t1_duration/t2_duration, not both",
                ))
            }
            (false, false) => {
                return Err(invalid(
                    "evolution",
                    "missing: give u1/u2 or h1/h2 with durations",
                ))
            }
            (true, false) => {
                let u1 = self.u1.as_ref().ok_or_else(|| invalid("u1", "missing"))?;
                let u2 = self.u2.as_ref().ok_or_else(|| invalid("u2", "missing"))?;
                (read_unitary("u1", u1, dim)?, read_unitary("u2", u2, dim)?)
            }
            (false, true) => {
                let h1 = self.h1.as_ref().ok_or_else(|| invalid("h1", "missing"))?;
                let h2 = self.h2.as_ref().ok_or_else(|| invalid("h2", "missing"))?;
                let t1 = self
                    .t1_duration
                    .ok_or_else(|| invalid("t1_duration", "missing"))?;
                let t2 = self
                    .t2_duration
                    .ok_or_else(|| invalid("t2_duration", "missing"))?;
                (
                    read_generated("h1", h1, t1, dim)?,
                    read_generated("h2", h2, t2, dim)?,
                )
            }
        };
        let evolution = TwoStageEvolution::new(u1, u2).map_err(|e| invalid("evolution", e))?;
        Scenario::new(psi, obs_a, obs_b, evolution, self.mode.into()).map_err(|e| invalid("dim", e))
    }
}

/// Parses and validates a scenario file.
pub fn parse_scenario(bytes: &[u8]) -> Result<Scenario, HarnessError> {
    let file: ScenarioFile =
        serde_json::from_slice(bytes).map_err(|e| HarnessError::Parse(e.to_string()))?;
    file.into_scenario()
}

/// Serializes a scenario in explicit-unitary form.
pub fn serialize_scenario(s: &Scenario) -> Vec<u8> {
    let mut out =
        serde_json::to_vec_pretty(&ScenarioFile::from_scenario(s)).expect("scenario serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use weakcorr_core::fixtures;

    fn real(rows: &[&[f64]]) -> MatrixRows {
        rows.iter()
            .map(|r| r.iter().map(|&x| [x, 0.0]).collect())
            .collect()
    }

    fn minimal() -> ScenarioFile {
        ScenarioFile {
            dim: 2,
            psi: vec![[1.0, 0.0], [0.0, 0.0]],
            obs_a: real(&[&[1.0, 0.0], &[0.0, -1.0]]),
            obs_b: real(&[&[0.0, 1.0], &[1.0, 0.0]]),
            u1: Some(real(&[&[1.0, 0.0], &[0.0, 1.0]])),
            u2: Some(real(&[&[1.0, 0.0], &[0.0, 1.0]])),
            h1: None,
            h2: None,
            t1_duration: None,
            t2_duration: None,
            mode: ModeName::Real,
        }
    }

    fn field_of(err: HarnessError) -> String {
        match err {
            HarnessError::Validation { field, .. } => field,
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn minimal_round_trip() {
        let s = minimal().into_scenario().unwrap();
        let back = parse_scenario(&serialize_scenario(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn random_scenario_round_trips_bit_exactly() {
        let s = fixtures::random_scenario(77, 5, Mode::Complex);
        assert_eq!(parse_scenario(&serialize_scenario(&s)).unwrap(), s);
    }

    #[test]
    fn non_hermitian_observable_named() {
        let mut f = minimal();
        f.obs_a = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let err = f.into_scenario().unwrap_err();
        assert!(err.to_string().contains("obs_a"));
        assert_eq!(field_of(err), "obs_a");
    }

    #[test]
    fn hamiltonian_form() {
        let theta = 0.8;
        let mut f = minimal();
        f.u1 = None;
        f.u2 = None;
        f.h1 = Some(real(&[&[1.0, 0.0], &[0.0, -1.0]]));
        f.h2 = Some(real(&[&[0.0, 0.0], &[0.0, 0.0]]));
        f.t1_duration = Some(theta);
        f.t2_duration = Some(1.0);
        let s = f.into_scenario().unwrap();
        let expected = ComplexMatrix::diagonal(&[
            Complex64::from_polar(1.0, -theta),
            Complex64::from_polar(1.0, theta),
        ]);
        assert!(s.evolution().u1().max_abs_diff(&expected) < 1e-15);
        assert_eq!(s.evolution().u2(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn validation_failures_name_fields() {
        let mut f = minimal();
        f.psi = vec![[1.0, 0.0], [1.0, 0.0]];
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "psi");

        let mut f = minimal();
        f.psi = vec![[1.0, 0.0]];
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "psi");

        let mut f = minimal();
        f.u2 = Some(real(&[&[1.0, 0.0], &[0.0, 2.0]]));
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "u2");

        let mut f = minimal();
        f.obs_b = real(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "obs_b");

        let mut f = minimal();
        f.h1 = Some(real(&[&[1.0, 0.0], &[0.0, 1.0]]));
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "evolution");

        let mut f = minimal();
        f.u1 = None;
        f.u2 = None;
        f.h1 = Some(real(&[&[1.0, 0.0], &[0.0, 1.0]]));
        f.h2 = Some(real(&[&[1.0, 0.0], &[0.0, 1.0]]));
        f.t1_duration = Some(1.0);
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "t2_duration");

        let mut f = minimal();
        f.u2 = None;
        assert_eq!(field_of(f.into_scenario().unwrap_err()), "u2");
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(
            parse_scenario(b"{ not json"),
            Err(HarnessError::Parse(_))
        ));
        assert!(matches!(
            parse_scenario(br#"{"dim": 2, "psi": [], "mode": "real"}"#),
            Err(HarnessError::Parse(_))
        ));
        assert!(matches!(
            parse_scenario(br#"{"dim": 1, "psi": [[1,0]], "obs_a": [[[1,0]]], "obs_b": [[[1,0]]], "u1": [[[1,0]]], "u2": [[[1,0]]], "mode": "imaginary"}"#),
            Err(HarnessError::Parse(_))
        ));
    }
}
