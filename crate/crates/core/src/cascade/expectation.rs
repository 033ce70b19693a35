use std::collections::{BTreeMap, BTreeSet};

use super::{CascadeParams, InfectionSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{ln_complement, Scalar};

/// Uninfected neighbors of `S_t`, i.e. `N(S_t)` minus `S_0 ∪ ... ∪ S_t`.
pub fn frontier(g: &Graph, seq: &InfectionSequence, t: usize) -> Result<BTreeSet<usize>> {
    if t >= seq.len() {
        return Err(Error::param(format!(
            "step {t} out of range for sequence of length {}",
            seq.len()
        )));
    }
    let active: BTreeSet<usize> = seq.step(t).iter().copied().collect();
    let mut out = g.neighborhood(&active)?;
    for step in &seq.steps()[..=t] {
        for v in step {
            out.remove(v);
        }
    }
    Ok(out)
}

/// Expected number of vertices infected in step `t + 1` of the IC process,
/// given that its first `t + 1` steps were `seq[0..=t]`.
///
/// ```text
/// μ_t = p_e (n − |F_t| − Σ_{j≤t} |S_j|) + Σ_{v ∈ F_t} [p_e + (1 − p_e)(1 − (1 − p_n)^{deg_{S_t}(v)})]
/// ```
pub fn expected_next<T: Scalar>(
    g: &Graph,
    params: &CascadeParams<T>,
    seq: &InfectionSequence,
    t: usize,
) -> Result<T> {
    if t >= seq.len() {
        return Err(Error::param(format!(
            "step {t} out of range for sequence of length {}",
            seq.len()
        )));
    }
    seq.check_in_graph(g)?;
    let mut state = CascadeState::new(g);
    for step in &seq.steps()[..=t] {
        state.push_step(step.iter().copied());
    }
    Ok(state.expected_next(params))
}

/// Log-probability that one IC step infects exactly `newly_infected`, given the
/// vertices infected so far and the set that transmits in this step.
///
/// Each vertex `v` uninfected at the start of the step survives with
/// probability `q_v = (1 − p_e)(1 − p_n)^{deg_active(v)}`. Returns `-∞` for
/// impossible outcomes.
pub fn log_likelihood_step<T: Scalar>(
    g: &Graph,
    params: &CascadeParams<T>,
    infected_before: &BTreeSet<usize>,
    active: &BTreeSet<usize>,
    newly_infected: &BTreeSet<usize>,
) -> Result<T> {
    params.validate()?;
    for &v in infected_before.iter().chain(active).chain(newly_infected) {
        g.check_vertex(v)?;
    }
    if let Some(v) = active.iter().find(|v| !infected_before.contains(v)) {
        return Err(Error::param(format!(
            "active vertex {v} is not among the previously infected"
        )));
    }
    if let Some(v) = newly_infected.iter().find(|v| infected_before.contains(v)) {
        return Err(Error::param(format!(
            "vertex {v} cannot be newly infected twice"
        )));
    }

    let mut active_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in active {
        for &w in g.neighbors(v) {
            if !infected_before.contains(&w) {
                *active_degree.entry(w).or_default() += 1;
            }
        }
    }
    let probs = StepLogProbs::new(params);
    let mut total = T::zero();
    for (&v, &deg) in &active_degree {
        total = total
            + if newly_infected.contains(&v) {
                probs.log_infection(deg)
            } else {
                probs.log_survival(deg)
            };
    }
    let uninfected = g.vertex_count() - infected_before.len();
    let outside = uninfected - active_degree.len();
    let outside_new = newly_infected
        .iter()
        .filter(|v| !active_degree.contains_key(v))
        .count();
    total = total + probs.external_only(outside_new, outside - outside_new);
    Ok(total)
}

/// Per-vertex log-probabilities of one IC step.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StepLogProbs<T> {
    /// `ln(1 − p_e)`
    ln_no_external: T,
    /// `ln(1 − p_n)`
    ln_no_transmission: T,
    /// `ln(p_e)`
    ln_external: T,
}

impl<T: Scalar> StepLogProbs<T> {
    pub(crate) fn new(params: &CascadeParams<T>) -> Self {
        StepLogProbs {
            ln_no_external: ln_complement(params.p_e),
            ln_no_transmission: ln_complement(params.p_n),
            ln_external: params.p_e.ln(),
        }
    }

    /// `ln q_v` for a vertex with `deg` active neighbors.
    pub(crate) fn log_survival(&self, deg: usize) -> T {
        if deg == 0 {
            self.ln_no_external
        } else {
            self.ln_no_external + T::from_count(deg) * self.ln_no_transmission
        }
    }

    /// `ln(1 − q_v)` for a vertex with `deg` active neighbors.
    pub(crate) fn log_infection(&self, deg: usize) -> T {
        (-self.log_survival(deg).exp_m1()).ln()
    }

    /// Contribution of vertices with no active neighbor: `infected` of them
    /// caught externally and `spared` of them not.
    pub(crate) fn external_only(&self, infected: usize, spared: usize) -> T {
        let mut total = T::zero();
        if infected > 0 {
            total = total + T::from_count(infected) * self.ln_external;
        }
        if spared > 0 {
            total = total + T::from_count(spared) * self.ln_no_external;
        }
        total
    }
}

/// Incrementally maintained cascade history: which vertices are infected, how
/// many, and the most recent (active) step.
///
/// Evaluating the next-step expectation touches only the edges of the active
/// step; all buffers are allocated once per graph.
pub(crate) struct CascadeState<'g> {
    graph: &'g Graph,
    /// [`INFECTED`] for infected vertices, otherwise the number of active
    /// neighbours (meaningful for frontier vertices only).
    mark: Vec<u32>,
    infected_count: usize,
    active: Vec<usize>,
    /// The first `frontier_len` slots hold the current frontier.
    frontier: Vec<usize>,
    frontier_len: usize,
}

const INFECTED: u32 = u32::MAX;

impl<'g> CascadeState<'g> {
    pub(crate) fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        CascadeState {
            graph,
            mark: vec![0; n],
            infected_count: 0,
            active: Vec::new(),
            frontier: vec![0; n],
            frontier_len: 0,
        }
    }

    /// Appends a step; its vertices become infected and active.
    pub(crate) fn push_step(&mut self, step: impl IntoIterator<Item = usize>) {
        self.clear_frontier();
        self.active.clear();
        for v in step {
            if self.mark[v] != INFECTED {
                self.mark[v] = INFECTED;
                self.infected_count += 1;
            }
            self.active.push(v);
        }
    }

    #[cfg(test)]
    pub(crate) fn infected_count(&self) -> usize {
        self.infected_count
    }

    fn clear_frontier(&mut self) {
        for &v in &self.frontier[..self.frontier_len] {
            self.mark[v] = 0;
        }
        self.frontier_len = 0;
    }

    fn collect_frontier(&mut self) {
        self.clear_frontier();
        let mut len = 0;
        for &v in &self.active {
            for &w in self.graph.neighbors(v) {
                let m = self.mark[w];
                self.frontier[len] = w;
                len += usize::from(m == 0);
                self.mark[w] = m + u32::from(m != INFECTED);
            }
        }
        self.frontier_len = len;
    }

    /// Conditional expectation of the size of the next step.
    pub(crate) fn expected_next<T: Scalar>(&mut self, params: &CascadeParams<T>) -> T {
        self.collect_frontier();
        let n = self.graph.vertex_count();
        let not_transmitting = T::one() - params.p_n;
        let edge_term: T = self.frontier[..self.frontier_len]
            .iter()
            .map(|&v| {
                let miss = not_transmitting.powi(self.mark[v] as i32);
                params.p_e + (T::one() - params.p_e) * (T::one() - miss)
            })
            .sum();
        let outside = n - self.frontier_len - self.infected_count;
        params.p_e * T::from_count(outside) + edge_term
    }
}
