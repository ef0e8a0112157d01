use proptest::prelude::*;
use weakcorr_cli::{
    emit_report, parse_report_json, parse_scenario, run_verification_suite, serialize_scenario,
    ReportFormat,
};
use weakcorr_core::fixtures::random_scenario;
use weakcorr_core::Mode;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scenario_file_round_trip(seed in any::<u64>(), dim in 1usize..=8, complex in any::<bool>()) {
        let mode = if complex { Mode::Complex } else { Mode::Real };
        let s = random_scenario(seed, dim, mode);
        prop_assert_eq!(parse_scenario(&serialize_scenario(&s)).unwrap(), s);
    }

    #[test]
    fn report_json_round_trip(seed in any::<u64>(), trials in 0usize..3) {
        let report = run_verification_suite(seed, &[2, 3], trials);
        let bytes = emit_report(&report, ReportFormat::Json);
        prop_assert_eq!(parse_report_json(&bytes).unwrap(), report);
    }
}
