use log::debug;
use serde::{Deserialize, Serialize};

use super::config::{InitialSetRule, TrialConfig};
use crate::cascade::{choose_initial_set, simulate_ic, CascadeParams};
use crate::clockwork::{distance, stretch_distort};
use crate::error::{Error, Result};
use crate::estimators::{run_estimator, EstimationInput, EstimatorKind};
use crate::rng::derive_seed;

const GRAPH_STREAM: u64 = 0;
const INITIAL_SET_STREAM: u64 = 1;
const CASCADE_STREAM: u64 = 2;
const DISTORTION_STREAM: u64 = 3;

/// What happened to one estimator in one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum EstimatorOutcome {
    Completed {
        estimator: EstimatorKind,
        /// Clock distance to the stretch clock, in `[0, 1]`.
        distance: f64,
        time_ns: u64,
    },
    /// Not run because the observed timeline exceeded the DP cap.
    Skipped {
        estimator: EstimatorKind,
        observed_steps: usize,
        cap: usize,
    },
}

impl EstimatorOutcome {
    pub fn estimator(&self) -> EstimatorKind {
        match self {
            EstimatorOutcome::Completed { estimator, .. }
            | EstimatorOutcome::Skipped { estimator, .. } => *estimator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub seed: u64,
    /// Index of the last ground-truth step, `T`, after dropping trailing empty steps.
    pub cascade_steps: usize,
    /// Index of the last observation, `N`.
    pub observed_steps: usize,
    pub infected: usize,
    /// The cascade never left its initial set; no estimator was run.
    pub degenerate: bool,
    pub outcomes: Vec<EstimatorOutcome>,
}

/// Runs one seeded trial: build the graph, simulate an IC cascade, stretch its
/// timeline, estimate the clock with each configured estimator and score it.
///
/// Trailing empty steps of the cascade are dropped before distortion; they
/// carry no vertices and only lengthen the timeline.
pub fn run_trial(cfg: &TrialConfig) -> Result<TrialResult> {
    cfg.validate()?;
    let graph = cfg.graph.build(derive_seed(cfg.seed, GRAPH_STREAM))?;
    let params = CascadeParams::new(cfg.p_n, cfg.p_e)?;
    let s0 = match &cfg.s0_rule {
        InitialSetRule::UniformRandom => choose_initial_set(
            graph.vertex_count(),
            cfg.s0_size,
            derive_seed(cfg.seed, INITIAL_SET_STREAM),
        )?,
        InitialSetRule::Fixed(vertices) => vertices.clone(),
    };

    let mut cascade = simulate_ic(
        &graph,
        &params,
        &s0,
        cfg.max_steps,
        derive_seed(cfg.seed, CASCADE_STREAM),
    )?;
    cascade.trim_trailing_empty();
    let cascade_steps = cascade.last_index();
    let infected = cascade.infected_count();
    if cascade_steps == 0 {
        debug!("seed {}: cascade never spread, trial is degenerate", cfg.seed);
        return Ok(TrialResult {
            seed: cfg.seed,
            cascade_steps,
            observed_steps: cfg.stretch - 1,
            infected,
            degenerate: true,
            outcomes: Vec::new(),
        });
    }

    let (observed, truth) =
        stretch_distort(&cascade, cfg.stretch, derive_seed(cfg.seed, DISTORTION_STREAM))?;
    let sizes = observed.sizes();
    let self_distance: f64 = distance(&sizes, &truth, &truth)?;
    if self_distance != 0.0 {
        return Err(Error::Config(format!(
            "ground-truth clock is at distance {self_distance} from itself"
        )));
    }

    let input = EstimationInput::new(&graph, params, &observed, s0.len())?;
    let observed_steps = observed.last_index();
    let mut outcomes = Vec::with_capacity(cfg.estimators.len());
    for &kind in &cfg.estimators {
        if kind == EstimatorKind::Dp && observed_steps > cfg.dp_cap {
            outcomes.push(EstimatorOutcome::Skipped {
                estimator: kind,
                observed_steps,
                cap: cfg.dp_cap,
            });
            continue;
        }
        let record = run_estimator(kind, &input)?;
        outcomes.push(EstimatorOutcome::Completed {
            estimator: kind,
            distance: distance(&sizes, &truth, &record.clock)?,
            time_ns: record.wall_clock_ns,
        });
    }
    Ok(TrialResult {
        seed: cfg.seed,
        cascade_steps,
        observed_steps,
        infected,
        degenerate: false,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::GraphSpec;

    fn small(p_n: f64, p_e: f64) -> TrialConfig {
        TrialConfig {
            graph: GraphSpec::Er { n: 200, alpha: 3.0, p: Some(0.05) },
            p_n,
            p_e,
            seed: 17,
            ..TrialConfig::default()
        }
    }

    #[test]
    fn no_spread_is_degenerate() {
        let res = run_trial(&small(0.0, 0.0)).unwrap();
        assert!(res.degenerate);
        assert_eq!(res.cascade_steps, 0);
        assert!(res.outcomes.is_empty());
    }

    #[test]
    fn certain_star_scores_zero() {
        let cfg = TrialConfig {
            graph: GraphSpec::Sbm { n: 5, block_sizes: Some(vec![1, 4]), p_intra: 0.0, p_inter: 1.0 },
            p_n: 1.0,
            p_e: 0.0,
            s0_rule: InitialSetRule::Fixed(vec![0]),
            stretch: 1,
            ..TrialConfig::default()
        };
        let res = run_trial(&cfg).unwrap();
        assert_eq!(res.cascade_steps, 1);
        for outcome in &res.outcomes {
            match outcome {
                EstimatorOutcome::Completed { distance, .. } => assert_eq!(*distance, 0.0),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert_eq!(res.outcomes.len(), 2);
    }

    #[test]
    fn reproducible() {
        let cfg = small(0.2, 1e-4);
        let a = run_trial(&cfg).unwrap();
        let b = run_trial(&cfg).unwrap();
        let strip = |r: &TrialResult| {
            r.outcomes
                .iter()
                .map(|o| match o {
                    EstimatorOutcome::Completed { estimator, distance, .. } => {
                        (*estimator, Some(*distance))
                    }
                    EstimatorOutcome::Skipped { estimator, .. } => (*estimator, None),
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
        assert_eq!((a.cascade_steps, a.observed_steps, a.infected), (b.cascade_steps, b.observed_steps, b.infected));
    }

    #[test]
    fn dp_cap_marks_skips() {
        let cfg = TrialConfig { dp_cap: 0, ..small(0.3, 0.0) };
        let res = run_trial(&cfg).unwrap();
        assert!(!res.degenerate);
        assert!(res.outcomes.iter().any(|o| matches!(o, EstimatorOutcome::Skipped { .. })));
    }

    #[test]
    fn infeasible_config() {
        let cfg = TrialConfig { s0_size: 500, ..small(0.1, 0.0) };
        assert!(matches!(run_trial(&cfg), Err(Error::Config(_))));
    }
}
