//! Scenario files, seeded verification campaigns, anomalous weak-value scans
//! and report emission for the `weakcorr` command-line tool.

mod error;
pub mod report;
pub mod scan;
pub mod scenario_file;
pub mod suite;

pub use error::HarnessError;
pub use report::{
    emit_report, parse_report_json, CheckRecord, ReportFormat, Summary, VerificationReport,
};
pub use scan::{scan_anomalous, scan_scenarios, AnomalyRecord};
pub use scenario_file::{parse_scenario, serialize_scenario, ScenarioFile};
pub use suite::{check_scenario, generate_trials, run_verification_suite, Trial};
