//! Seeded end-to-end trials (generate, simulate, distort, estimate, score) and
//! parameter sweeps over them.

mod config;
mod sweep;
mod trial;

pub use config::{GraphSpec, InitialSetRule, TrialConfig};
pub use sweep::{read_results, sweep, write_results, Axis, ResultRow, SweepRow, SweepTable};
pub use trial::{run_trial, EstimatorOutcome, TrialResult};
