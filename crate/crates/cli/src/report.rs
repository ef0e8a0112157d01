//! Verification reports and their JSON / CSV serializations.

use serde::{Deserialize, Serialize};
use weakcorr_core::Complex64;

/// One evaluated identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_name: String,
    pub scenario_id: String,
    pub seed: u64,
    #[serde(with = "complex_pair")]
    pub lhs: Complex64,
    #[serde(with = "complex_pair")]
    pub rhs: Complex64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        check_name: &str,
        scenario_id: &str,
        seed: u64,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
    ) -> Self {
        let abs_error = (lhs - rhs).norm();
        Self {
            check_name: check_name.to_string(),
            scenario_id: scenario_id.to_string(),
            seed,
            lhs,
            rhs,
            abs_error,
            tolerance,
            // NaN fails
            pass: abs_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Post-selection labels skipped because Pr(b) was at or below the cutoff.
    pub skipped: usize,
    pub max_error: f64,
    /// Only filled in when timing was requested, so reports stay reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn from_records(records: Vec<CheckRecord>, skipped: usize) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let max_error = records.iter().map(|r| r.abs_error).fold(0.0, f64::max);
        let summary = Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
            skipped,
            max_error,
            wall_time_s: None,
        };
        Self { records, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub const CSV_COLUMNS: [&str; 10] = [
    "check_name",
    "scenario_id",
    "seed",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_error",
    "tolerance",
    "pass",
];

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS).expect("in-memory write");
            for r in &report.records {
                w.write_record([
                    r.check_name.clone(),
                    r.scenario_id.clone(),
                    r.seed.to_string(),
                    format_float(r.lhs.re),
                    format_float(r.lhs.im),
                    format_float(r.rhs.re),
                    format_float(r.rhs.im),
                    format_float(r.abs_error),
                    format_float(r.tolerance),
                    r.pass.to_string(),
                ])
                .expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
    }
}

pub fn parse_report_json(bytes: &[u8]) -> serde_json::Result<VerificationReport> {
    serde_json::from_slice(bytes)
}

mod complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use weakcorr_core::Complex64;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(pass: bool) -> CheckRecord {
        let err = if pass { 1e-12 } else { 1e-3 };
        CheckRecord::new(
            "identity",
            "d2-t0",
            7,
            Complex64::new(0.1, -0.2),
            Complex64::new(0.1 + err, -0.2),
            1e-9,
        )
    }

    #[test]
    fn empty_csv_is_header_only() {
        let report = VerificationReport::from_records(vec![], 0);
        let out = String::from_utf8(emit_report(&report, ReportFormat::Csv)).unwrap();
        assert_eq!(
            out,
            "check_name,scenario_id,seed,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,tolerance,pass\n"
        );
        assert_eq!(report.summary.total, 0);
        assert_eq!(report.summary.max_error, 0.0);
    }

    #[test]
    fn one_passing_record_csv() {
        let report = VerificationReport::from_records(vec![record(true)], 0);
        let out = String::from_utf8(emit_report(&report, ReportFormat::Csv)).unwrap();
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        let cells: Vec<_> = lines[1].split(',').collect();
        assert_eq!(cells.len(), 10);
        assert_eq!(cells[0], "identity");
        assert_eq!(cells[3], "1.0000000000000001e-1");
        assert_eq!(cells[9], "true");
        // 17 significant digits parse back exactly
        assert_eq!(cells[3].parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn summary_counts() {
        let report =
            VerificationReport::from_records(vec![record(true), record(false), record(true)], 4);
        assert_eq!(report.summary.passed, 2);
        assert_eq!(report.summary.failed, 1);
        assert_eq!(report.summary.skipped, 4);
        assert!(!report.all_passed());
        assert!((report.summary.max_error - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn nan_error_fails() {
        let r = CheckRecord::new(
            "x",
            "y",
            0,
            Complex64::new(f64::NAN, 0.0),
            Complex64::new(0.0, 0.0),
            1.0,
        );
        assert!(!r.pass);
    }

    #[test]
    fn json_round_trip() {
        let mut report = VerificationReport::from_records(vec![record(true), record(false)], 1);
        report.summary.wall_time_s = Some(0.25);
        let back = parse_report_json(&emit_report(&report, ReportFormat::Json)).unwrap();
        assert_eq!(back, report);
    }
}
