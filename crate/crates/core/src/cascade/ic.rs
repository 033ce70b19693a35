use rand::seq::index;
use rand::Rng;

use super::{CascadeParams, InfectionSequence};
use crate::error::{Error, Result};
use crate::graph::{for_each_success, Graph};
use crate::rng;
use crate::scalar::Scalar;

/// Runs the independent cascade process from `s0`.
///
/// In step `j + 1` every vertex of `S_j` tries once to infect each uninfected
/// neighbor with probability `p_n`; afterwards every still-uninfected vertex is
/// infected externally with probability `p_e`. Both kinds of infection land in
/// `S_{j+1}`. The run stops after `max_steps` steps, once every vertex is
/// infected, or when a step infects nobody and `p_e = 0`.
pub fn simulate_ic<T: Scalar>(
    g: &Graph,
    params: &CascadeParams<T>,
    s0: &[usize],
    max_steps: usize,
    seed: u64,
) -> Result<InfectionSequence> {
    params.validate()?;
    let p_n = params.p_n.to_f64().unwrap_or(0.0);
    let p_e = params.p_e.to_f64().unwrap_or(0.0);
    let initial = initial_step(g, s0)?;

    let n = g.vertex_count();
    let mut rng = rng::seeded(seed);
    let mut infected = vec![false; n];
    for &v in &initial {
        infected[v] = true;
    }
    let mut infected_count = initial.len();
    let mut steps = vec![initial];

    while steps.len() <= max_steps && infected_count < n {
        let active = steps.last().expect("at least S_0");
        let mut next = Vec::new();
        for &v in active {
            for &w in g.neighbors(v) {
                // `infected` is updated eagerly, so a vertex hit twice in one step is added once.
                if !infected[w] && rng.random_bool(p_n) {
                    infected[w] = true;
                    next.push(w);
                }
            }
        }
        for_each_success(n as u64, p_e, &mut rng, |k| {
            let w = k as usize;
            if !infected[w] {
                infected[w] = true;
                next.push(w);
            }
        });
        next.sort_unstable();
        infected_count += next.len();
        let stalled = next.is_empty() && p_e == 0.0;
        if stalled {
            break;
        }
        steps.push(next);
    }
    InfectionSequence::new(steps)
}

pub(super) fn initial_step(g: &Graph, s0: &[usize]) -> Result<Vec<usize>> {
    if s0.is_empty() {
        return Err(Error::param("initial infected set must be nonempty"));
    }
    for &v in s0 {
        g.check_vertex(v)?;
    }
    let mut initial = s0.to_vec();
    initial.sort_unstable();
    initial.dedup();
    Ok(initial)
}

/// Draws `size` distinct vertices uniformly at random.
pub fn choose_initial_set(n: usize, size: usize, seed: u64) -> Result<Vec<usize>> {
    if size == 0 || size > n {
        return Err(Error::param(format!(
            "initial set size {size} must lie in 1..={n}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut chosen = index::sample(&mut rng, n, size).into_vec();
    chosen.sort_unstable();
    Ok(chosen)
}
