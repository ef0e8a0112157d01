//! Search for anomalous weak values, i.e. weak values outside the spectrum of `A`.

use serde::{Deserialize, Serialize};
use weakcorr_core::fixtures::random_scenario;
use weakcorr_core::kernel::derive_seed;
use weakcorr_core::{conditional_average, weak_value, Mode, Scenario};

/// Margin beyond the spectral interval required to call a weak value anomalous.
pub const SPECTRAL_MARGIN: f64 = 1e-9;
pub const REVERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalyRecord {
    pub scenario_id: String,
    pub b_label: f64,
    pub weak_value: f64,
    pub spectral_min: f64,
    pub spectral_max: f64,
    /// Distance outside `[spectral_min, spectral_max]`.
    pub excess: f64,
    /// The same quantity via the quasi-probability route.
    pub conditional_average: f64,
    pub reverified: bool,
}

/// Scans the given scenarios (evaluated in real mode) and returns anomalies
/// sorted by excess, largest first.
pub fn scan_scenarios<'a>(
    scenarios: impl IntoIterator<Item = (String, &'a Scenario)>,
) -> Vec<AnomalyRecord> {
    let mut found = Vec::new();
    for (id, s) in scenarios {
        let s = s.with_mode(Mode::Real);
        let (lo, hi) = (s.obs_a().spectral_min(), s.obs_a().spectral_max());
        for &b in s.obs_b().projectors().labels() {
            let Ok(wv) = weak_value(&s, b) else { continue };
            let value = wv.value.re;
            let excess = if value > hi + SPECTRAL_MARGIN {
                value - hi
            } else if value < lo - SPECTRAL_MARGIN {
                lo - value
            } else {
                continue;
            };
            let average = conditional_average(&s, b).map(|z| z.re).unwrap_or(f64::NAN);
            found.push(AnomalyRecord {
                scenario_id: id.clone(),
                b_label: b,
                weak_value: value,
                spectral_min: lo,
                spectral_max: hi,
                excess,
                conditional_average: average,
                reverified: (average - value).abs() <= REVERIFY_TOL,
            });
        }
    }
    // stable: ties keep scan order
    found.sort_by(|x, y| y.excess.total_cmp(&x.excess));
    found
}

/// Scans `trials` random real-mode scenarios of dimension `dim`.
pub fn scan_anomalous(seed: u64, dim: usize, trials: usize) -> Vec<AnomalyRecord> {
    let scenarios: Vec<_> = (0..trials)
        .map(|t| {
            (
                format!("d{dim}-t{t}"),
                random_scenario(derive_seed(seed, t as u64), dim, Mode::Real),
            )
        })
        .collect();
    scan_scenarios(scenarios.iter().map(|(id, s)| (id.clone(), s)))
}
