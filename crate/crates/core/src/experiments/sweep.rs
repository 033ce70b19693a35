use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{GraphSpec, TrialConfig};
use super::trial::{run_trial, EstimatorOutcome, TrialResult};
use crate::error::{Error, Result};
use crate::estimators::EstimatorKind;
use crate::rng::derive_seed;

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Vertex count; ER density follows `p = n^{-1/alpha}`.
    N,
    /// Edge transmission probability.
    PN,
    /// ER density exponent `alpha` in `p = n^{-1/alpha}`.
    DensityAlpha,
    Stretch,
    /// SBM inter-block edge probability.
    InterBlock,
    /// Transmission probability on an SBM base.
    SbmPN,
}

impl Axis {
    pub const ALL: [Axis; 6] = [
        Axis::N,
        Axis::PN,
        Axis::DensityAlpha,
        Axis::Stretch,
        Axis::InterBlock,
        Axis::SbmPN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axis::N => "n",
            Axis::PN => "p_n",
            Axis::DensityAlpha => "density_alpha",
            Axis::Stretch => "stretch",
            Axis::InterBlock => "inter_block",
            Axis::SbmPN => "sbm_p_n",
        }
    }

    /// `base` with this axis set to `value`.
    pub fn apply(self, base: &TrialConfig, value: f64) -> Result<TrialConfig> {
        let mut cfg = base.clone();
        let whole = |what: &str| -> Result<usize> {
            if value >= 1.0 && value.fract() == 0.0 {
                Ok(value as usize)
            } else {
                Err(Error::Config(format!("{what} must be a positive integer, got {value}")))
            }
        };
        match (self, &mut cfg.graph) {
            (Axis::N, GraphSpec::Er { n, .. }) => *n = whole("n")?,
            (Axis::N, GraphSpec::Sbm { n, block_sizes, .. }) => {
                if block_sizes.is_some() {
                    return Err(Error::Config(
                        "cannot sweep n with explicit SBM block sizes".into(),
                    ));
                }
                *n = whole("n")?;
            }
            (Axis::PN, _) => cfg.p_n = value,
            (Axis::DensityAlpha, GraphSpec::Er { alpha, p, .. }) => {
                *alpha = value;
                *p = None;
            }
            (Axis::Stretch, _) => cfg.stretch = whole("stretch")?,
            (Axis::InterBlock, GraphSpec::Sbm { p_inter, .. }) => *p_inter = value,
            (Axis::SbmPN, GraphSpec::Sbm { .. }) => cfg.p_n = value,
            (axis, _) => {
                return Err(Error::Config(format!(
                    "axis {axis} does not apply to this graph model"
                )))
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Axis::ALL.iter().map(|a| a.name()).collect();
                Error::Config(format!("unknown axis `{s}` (expected one of {})", known.join(", ")))
            })
    }
}

/// Aggregate of one estimator at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis: Axis,
    pub value: f64,
    pub estimator: EstimatorKind,
    /// `None` when no trial completed for this estimator.
    pub mean_distance: Option<f64>,
    pub sd_distance: Option<f64>,
    pub mean_time_ns: Option<f64>,
    pub sd_time_ns: Option<f64>,
    /// Trials that contributed to the means.
    pub trials: usize,
    /// Trials excluded because the cascade never spread.
    pub degenerate: usize,
    /// Trials where this estimator was not run (DP cap).
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// One CSV record: `axis,value,estimator,mean_distance,sd_distance,mean_time_ns,sd_time_ns,trials`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub axis: String,
    pub value: f64,
    pub estimator: String,
    pub mean_distance: Option<f64>,
    pub sd_distance: Option<f64>,
    pub mean_time_ns: Option<f64>,
    pub sd_time_ns: Option<f64>,
    pub trials: usize,
}

const HEADER: [&str; 8] = [
    "axis",
    "value",
    "estimator",
    "mean_distance",
    "sd_distance",
    "mean_time_ns",
    "sd_time_ns",
    "trials",
];

/// Mean and sample standard deviation (zero for a single value).
fn mean_sd(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let sd = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    (Some(mean), Some(sd))
}

fn summarize(axis: Axis, value: f64, estimators: &[EstimatorKind], results: &[TrialResult]) -> Vec<SweepRow> {
    let degenerate = results.iter().filter(|r| r.degenerate).count();
    estimators
        .iter()
        .map(|&kind| {
            let mut distances = Vec::new();
            let mut times = Vec::new();
            let mut skipped = 0;
            for outcome in results.iter().flat_map(|r| &r.outcomes) {
                match outcome {
                    EstimatorOutcome::Completed { estimator, distance, time_ns } if *estimator == kind => {
                        distances.push(*distance);
                        times.push(*time_ns as f64);
                    }
                    EstimatorOutcome::Skipped { estimator, .. } if *estimator == kind => skipped += 1,
                    _ => {}
                }
            }
            let (mean_distance, sd_distance) = mean_sd(&distances);
            let (mean_time_ns, sd_time_ns) = mean_sd(&times);
            SweepRow {
                axis,
                value,
                estimator: kind,
                mean_distance,
                sd_distance,
                mean_time_ns,
                sd_time_ns,
                trials: distances.len(),
                degenerate,
                skipped,
            }
        })
        .collect()
}

/// Runs `trials_per_point` trials at each value of `axis` and aggregates them.
///
/// Trial `i` at every point uses seed `derive_seed(base.seed, i)`, so points
/// share their random streams. Trials run on a rayon pool of `threads`
/// workers (all cores when `None`); results do not depend on the thread count.
pub fn sweep(
    base: &TrialConfig,
    axis: Axis,
    values: &[f64],
    trials_per_point: usize,
    threads: Option<usize>,
) -> Result<SweepTable> {
    if trials_per_point == 0 {
        return Err(Error::Config("trials per point must be positive".into()));
    }
    let configs: Vec<TrialConfig> = values
        .iter()
        .map(|&v| axis.apply(base, v))
        .collect::<Result<_>>()?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    let jobs: Vec<(usize, u64)> = (0..configs.len())
        .flat_map(|p| (0..trials_per_point as u64).map(move |i| (p, i)))
        .collect();
    let results: Vec<TrialResult> = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, i)| {
                let cfg = TrialConfig {
                    seed: derive_seed(base.seed, i),
                    ..configs[p].clone()
                };
                run_trial(&cfg)
            })
            .collect::<Result<_>>()
    })?;

    let rows = values
        .iter()
        .zip(results.chunks(trials_per_point))
        .flat_map(|(&value, chunk)| summarize(axis, value, &base.estimators, chunk))
        .collect();
    Ok(SweepTable { rows })
}

impl SweepTable {
    pub fn result_rows(&self) -> Vec<ResultRow> {
        self.rows
            .iter()
            .map(|r| ResultRow {
                axis: r.axis.name().to_string(),
                value: r.value,
                estimator: r.estimator.name().to_string(),
                mean_distance: r.mean_distance,
                sd_distance: r.sd_distance,
                mean_time_ns: r.mean_time_ns,
                sd_time_ns: r.sd_time_ns,
                trials: r.trials,
            })
            .collect()
    }

    /// Row for `(value, estimator)`, if present.
    pub fn row(&self, value: f64, estimator: EstimatorKind) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.value == value && r.estimator == estimator)
    }
}

/// Writes the sweep as CSV. Estimators without completed trials leave the
/// statistic columns empty.
pub fn write_results(table: &SweepTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)?;
    writer.write_record(HEADER)?;
    for row in table.result_rows() {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_path(path.as_ref())?;
    let header = reader.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::Config(format!(
            "unexpected CSV header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(reader.deserialize().collect::<std::result::Result<_, _>>()?)
}
