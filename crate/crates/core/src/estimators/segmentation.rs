use std::collections::BTreeSet;

use log::warn;

use super::EstimationInput;
use crate::cascade::{log_likelihood_step, StepLogProbs};
use crate::clockwork::{aggregate, Clock};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Longest timeline (`N`) [`exhaustive_best`] accepts.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Result of a likelihood-maximizing segmentation.
#[derive(Debug, Clone, PartialEq)]
pub struct DpOutcome<T> {
    pub clock: Clock,
    /// Log-likelihood of the aggregated sequence under `clock`.
    pub log_likelihood: T,
    /// Every admissible clock had likelihood zero; `clock` is the identity
    /// fallback after the initial interval.
    pub degenerate: bool,
}

/// Log-likelihood of the sequence `clock` aggregates `observed` into: the sum
/// over steps `k ≥ 1` of the probability that step `k` infects exactly
/// `S̃_k`, given `S̃_0..S̃_{k-1}` with `S̃_{k-1}` transmitting.
pub fn clock_log_likelihood<T: Scalar>(input: &EstimationInput<'_, T>, clock: &Clock) -> Result<T> {
    let aggregated = aggregate(input.observed, clock)?;
    let mut infected: BTreeSet<usize> = BTreeSet::new();
    let mut total = T::zero();
    let mut previous: Option<BTreeSet<usize>> = None;
    for step in aggregated.steps() {
        let current: BTreeSet<usize> = step.iter().copied().collect();
        if let Some(active) = &previous {
            total = total
                + log_likelihood_step(input.graph, &input.params, &infected, active, &current)?;
        }
        infected.extend(current.iter().copied());
        previous = Some(current);
    }
    Ok(total)
}

/// Candidate ordering shared by the DP and the exhaustive search: higher
/// likelihood, then fewer intervals, then lexicographically smaller boundaries.
fn improves<T: Scalar>(score: T, path: &[usize], best: Option<(T, &[usize])>) -> bool {
    let Some((best_score, best_path)) = best else {
        return true;
    };
    if score != best_score {
        return score > best_score;
    }
    (path.len(), path) < (best_path.len(), best_path)
}

fn identity_fallback<T: Scalar>(
    input: &EstimationInput<'_, T>,
    first: usize,
) -> Result<DpOutcome<T>> {
    let last = input.last_index();
    warn!("every segmentation has zero likelihood; falling back to the identity clock");
    let clock = Clock::from_boundaries((first..=last).collect())?;
    let log_likelihood = clock_log_likelihood(input, &clock)?;
    Ok(DpOutcome {
        clock,
        log_likelihood,
        degenerate: true,
    })
}

#[derive(Clone)]
struct Best<T> {
    score: T,
    boundaries: Vec<usize>,
}

/// Likelihood-maximizing clock by dynamic programming.
///
/// The first interval is fixed to the shortest prefix holding `s0_size`
/// vertices. The likelihood of step `k` depends on the history only through
/// the infected prefix and the active interval, so the state is the last
/// interval `[s, e]`; `best[s, e]` is the highest-scoring segmentation of
/// `0..=e` ending with it. Each transition to `(e, c]` costs one step
/// likelihood over the frontier of `[s, e]`, for `O(N³ · (|F| + 1))` total on
/// top of the per-state frontier scans.
///
/// Zero-likelihood segmentations are discarded. If none remains, the identity
/// clock is returned with [`DpOutcome::degenerate`] set.
pub fn dp_mlp<T: Scalar>(input: &EstimationInput<'_, T>) -> Result<DpOutcome<T>> {
    let observed = input.observed;
    let graph = input.graph;
    let last = input.last_index();
    let first = input.initial_boundary()?;
    let n = graph.vertex_count();
    let width = last + 1;

    // obs_time[v] = observation index of v, or usize::MAX if never observed
    let mut obs_time = vec![usize::MAX; n];
    for (j, step) in observed.steps().iter().enumerate() {
        for &v in step {
            obs_time[v] = j;
        }
    }
    let mut prefix_count = vec![0usize; width + 1];
    for j in 0..width {
        prefix_count[j + 1] = prefix_count[j] + observed.step(j).len();
    }

    let probs = StepLogProbs::new(&input.params);
    let mut best: Vec<Option<Best<T>>> = vec![None; width * width];
    best[first] = Some(Best {
        score: T::zero(),
        boundaries: vec![first],
    });

    let mut active_degree = vec![0usize; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut frontier_survival: Vec<T> = Vec::new();
    let mut frontier_infection: Vec<T> = Vec::new();
    let mut candidate = Vec::new();

    for end in first..last {
        for start in 0..=end {
            let Some(state) = best[start * width + end].clone() else {
                continue;
            };
            if state.score == T::neg_infinity() {
                continue;
            }

            frontier.clear();
            for &v in observed.steps()[start..=end].iter().flatten() {
                for &w in graph.neighbors(v) {
                    let uninfected = obs_time[w] == usize::MAX || obs_time[w] > end;
                    if uninfected {
                        if active_degree[w] == 0 {
                            frontier.push(w);
                        }
                        active_degree[w] += 1;
                    }
                }
            }
            frontier_survival.clear();
            frontier_infection.clear();
            for &w in &frontier {
                frontier_survival.push(probs.log_survival(active_degree[w]));
                frontier_infection.push(probs.log_infection(active_degree[w]));
                active_degree[w] = 0;
            }
            let uninfected = n - prefix_count[end + 1];
            let outside = uninfected - frontier.len();

            for next_end in end + 1..=last {
                let mut step_score = T::zero();
                let mut frontier_new = 0;
                for (i, &w) in frontier.iter().enumerate() {
                    if obs_time[w] <= next_end {
                        frontier_new += 1;
                        step_score = step_score + frontier_infection[i];
                    } else {
                        step_score = step_score + frontier_survival[i];
                    }
                }
                let new_total = prefix_count[next_end + 1] - prefix_count[end + 1];
                let outside_new = new_total - frontier_new;
                step_score = step_score + probs.external_only(outside_new, outside - outside_new);

                let score = state.score + step_score;
                if score == T::neg_infinity() {
                    continue;
                }
                candidate.clear();
                candidate.extend_from_slice(&state.boundaries);
                candidate.push(next_end);
                let slot = &mut best[(end + 1) * width + next_end];
                let incumbent = slot.as_ref().map(|b| (b.score, b.boundaries.as_slice()));
                if improves(score, &candidate, incumbent) {
                    *slot = Some(Best {
                        score,
                        boundaries: candidate.clone(),
                    });
                }
            }
        }
    }

    let mut winner: Option<Best<T>> = None;
    for start in 0..=last {
        if let Some(state) = &best[start * width + last] {
            if state.score == T::neg_infinity() {
                continue;
            }
            let incumbent = winner.as_ref().map(|b| (b.score, b.boundaries.as_slice()));
            if improves(state.score, &state.boundaries, incumbent) {
                winner = Some(state.clone());
            }
        }
    }
    match winner {
        Some(Best { score, boundaries }) => Ok(DpOutcome {
            clock: Clock::from_boundaries(boundaries)?,
            log_likelihood: score,
            degenerate: false,
        }),
        None => identity_fallback(input, first),
    }
}

/// Likelihood-maximizing clock by enumerating all `2^(N − t_0 − 1)` clocks
/// with the fixed initial interval. Refuses timelines longer than
/// [`EXHAUSTIVE_LIMIT`].
pub fn exhaustive_best<T: Scalar>(input: &EstimationInput<'_, T>) -> Result<DpOutcome<T>> {
    let last = input.last_index();
    if last > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            what: "observed timeline length N",
            actual: last,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let first = input.initial_boundary()?;
    let free: Vec<usize> = (first + 1..last).collect();

    let mut winner: Option<(T, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << free.len()) {
        let mut boundaries = vec![first];
        boundaries.extend(
            free.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &b)| b),
        );
        if last > first {
            boundaries.push(last);
        }
        let clock = Clock::from_boundaries(boundaries)?;
        let score = clock_log_likelihood(input, &clock)?;
        if score == T::neg_infinity() {
            continue;
        }
        let incumbent = winner.as_ref().map(|(s, b)| (*s, b.as_slice()));
        if improves(score, clock.boundaries(), incumbent) {
            winner = Some((score, clock.into()));
        }
    }
    match winner {
        Some((score, boundaries)) => Ok(DpOutcome {
            clock: Clock::from_boundaries(boundaries)?,
            log_likelihood: score,
            degenerate: false,
        }),
        None => identity_fallback(input, first),
    }
}
