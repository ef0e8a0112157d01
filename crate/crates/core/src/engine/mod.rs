//! Weak values, the correlation-function quasi-probability and the identities
//! relating them.

mod commuting;
mod quasi;
mod weak;

pub use commuting::{commuting_reduction_check, CommutingCheck};
pub use quasi::{
    conditional_average, conditional_average_from_table, conditional_quasiprobability,
    correlation_function, kd_quasiprobability, sequential_measurement_distribution, QuasiProbTable,
};
pub use weak::{weak_value, weak_value_of, WeakValueResult};
