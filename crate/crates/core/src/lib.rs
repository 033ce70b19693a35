//! Discrete-time spreading cascades on random graphs, oversampled observation
//! timelines, and estimators that recover the process clock from them.
//!
//! The numeric core (cascade expectations, step likelihoods, estimators) is
//! generic over a floating-point [`Scalar`]. The clock distance is computed
//! exactly as a ratio of pair counts and can be read out as any scalar or as
//! a [`num_rational::Ratio`].
//!
//! Pipeline:
//!
//! 1. [`graph`]: Erdős–Rényi and stochastic block model substrates.
//! 2. [`cascade`]: independent cascade and linear threshold simulation, plus the
//!    one-step expectation and likelihood of the IC process.
//! 3. [`clockwork`]: clocks, stretch distortion, aggregation and the clock distance.
//! 4. [`estimators`]: FastClock and the likelihood segmentation baseline.
//! 5. [`experiments`]: seeded trials and parameter sweeps written as CSV.

pub mod cascade;
pub mod clockwork;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod graph;
pub mod rng;
pub mod scalar;

pub use cascade::{InfectionSequence, Thresholds};
pub use clockwork::{Clock, ObservedSequence};
pub use error::{Error, Result};
pub use estimators::{DpOutcome, EstimateRecord, EstimatorKind};
pub use graph::Graph;
pub use scalar::Scalar;

/// Cascade parameters in double precision.
pub type CascadeParams = cascade::CascadeParams<f64>;
/// Cascade parameters in single precision.
pub type CascadeParamsF32 = cascade::CascadeParams<f32>;
/// Estimator input in double precision.
pub type EstimationInput<'a> = estimators::EstimationInput<'a, f64>;
/// Estimator input in single precision.
pub type EstimationInputF32<'a> = estimators::EstimationInput<'a, f32>;
/// Exact clock distance as a reduced fraction of vertex pairs.
pub type DistanceRatio = num_rational::Ratio<u64>;
