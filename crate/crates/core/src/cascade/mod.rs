//! Discrete-time spreading processes: simulation of the independent cascade
//! (IC) and linear threshold (LT) models, and the per-step quantities of the
//! IC model that the estimators rely on.

mod expectation;
mod ic;
mod lt;
mod params;
mod sequence;

pub use expectation::{expected_next, frontier, log_likelihood_step};
pub(crate) use expectation::{CascadeState, StepLogProbs};
pub use ic::{choose_initial_set, simulate_ic};
pub use lt::{simulate_lt, Thresholds};
pub use params::CascadeParams;
pub use sequence::InfectionSequence;
pub(crate) use sequence::normalize_steps;
