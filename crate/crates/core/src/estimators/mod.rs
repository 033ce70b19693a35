//! Clock estimators for oversampled observations of an IC cascade.
//!
//! * [`fastclock`]: greedy interval growth against the conditional expectation
//!   of the next step size. Linear in the input size.
//! * [`dp_mlp`]: segmentation maximizing the exact IC log-likelihood of the
//!   aggregated sequence, by dynamic programming over the last two boundaries.
//! * [`exhaustive_best`]: brute-force maximization of the same objective, for
//!   checking [`dp_mlp`] on short timelines.

mod fastclock;
mod input;
mod record;
mod segmentation;

pub use fastclock::fastclock;
pub use input::EstimationInput;
pub use record::{run_estimator, EstimateRecord, EstimatorKind};
pub use segmentation::{clock_log_likelihood, dp_mlp, exhaustive_best, DpOutcome, EXHAUSTIVE_LIMIT};
