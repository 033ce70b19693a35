//! Independent reference implementations used to check the library.
//!
//! Nothing here calls into the library's own distance, expectation,
//! likelihood or segmentation code; only plain data types are shared.

#![allow(dead_code)]

use std::collections::HashSet;

use cascade_clock::{Clock, Graph};
use rand::Rng;

/// Random clock on `0..=last`: every index before `last` becomes a boundary
/// with probability `density`.
pub fn random_clock<R: Rng>(last: usize, density: f64, rng: &mut R) -> Clock {
    let mut boundaries: Vec<usize> = (0..last).filter(|_| rng.random_bool(density)).collect();
    boundaries.push(last);
    Clock::from_boundaries(boundaries).expect("valid boundaries")
}

fn interval_of(boundaries: &[usize], j: usize) -> usize {
    boundaries.iter().position(|&b| j <= b).expect("index within clock")
}

/// Pair-disagreement count by enumerating every vertex pair.
pub fn disagreeing_pairs(sizes: &[usize], c0: &Clock, c1: &Clock) -> (u64, u64) {
    let mut slot = Vec::new();
    for (j, &s) in sizes.iter().enumerate() {
        slot.extend(std::iter::repeat_n(j, s));
    }
    let b0 = c0.boundaries();
    let b1 = c1.boundaries();
    let i0: Vec<usize> = slot.iter().map(|&j| interval_of(b0, j)).collect();
    let i1: Vec<usize> = slot.iter().map(|&j| interval_of(b1, j)).collect();
    let n = slot.len();
    let mut bad = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if (i0[u] == i0[v]) != (i1[u] == i1[v]) {
                bad += 1;
            }
        }
    }
    (bad, (n * n.saturating_sub(1) / 2) as u64)
}

/// One IC step by per-edge coin flips: the number of newly infected vertices.
pub fn one_step_count<R: Rng>(
    g: &Graph,
    infected: &HashSet<usize>,
    active: &[usize],
    p_n: f64,
    p_e: f64,
    rng: &mut R,
) -> usize {
    let mut fresh = HashSet::new();
    for &u in active {
        for &v in g.neighbors(u) {
            if !infected.contains(&v) && rng.random_bool(p_n) {
                fresh.insert(v);
            }
        }
    }
    for v in 0..g.vertex_count() {
        if !infected.contains(&v) && !fresh.contains(&v) && rng.random_bool(p_e) {
            fresh.insert(v);
        }
    }
    fresh.len()
}

/// Log-probability that one IC step infects exactly `newly`.
pub fn step_log_likelihood(
    g: &Graph,
    infected: &HashSet<usize>,
    active: &HashSet<usize>,
    newly: &HashSet<usize>,
    p_n: f64,
    p_e: f64,
) -> f64 {
    let mut total = 0.0;
    for v in 0..g.vertex_count() {
        if infected.contains(&v) {
            continue;
        }
        let k = g.neighbors(v).iter().filter(|u| active.contains(u)).count();
        let survive = (1.0 - p_e) * (1.0 - p_n).powi(k as i32);
        let p = if newly.contains(&v) { 1.0 - survive } else { survive };
        if p <= 0.0 {
            return f64::NEG_INFINITY;
        }
        total += p.ln();
    }
    total
}

/// Log-likelihood of the observations merged according to `boundaries`.
pub fn clock_likelihood(
    g: &Graph,
    observed: &[Vec<usize>],
    boundaries: &[usize],
    p_n: f64,
    p_e: f64,
) -> f64 {
    let mut steps: Vec<HashSet<usize>> = Vec::new();
    let mut start = 0;
    for &b in boundaries {
        steps.push(observed[start..=b].iter().flatten().copied().collect());
        start = b + 1;
    }
    let mut infected: HashSet<usize> = steps[0].clone();
    let mut total = 0.0;
    for k in 1..steps.len() {
        total += step_log_likelihood(g, &infected, &steps[k - 1], &steps[k], p_n, p_e);
        if total == f64::NEG_INFINITY {
            return total;
        }
        infected.extend(steps[k].iter().copied());
    }
    total
}

/// Best log-likelihood over every clock whose first interval ends where the
/// first `s0_size` observed vertices have appeared.
pub fn best_likelihood_by_enumeration(
    g: &Graph,
    observed: &[Vec<usize>],
    s0_size: usize,
    p_n: f64,
    p_e: f64,
) -> f64 {
    let mut seen = 0;
    let t0 = observed
        .iter()
        .position(|s| {
            seen += s.len();
            seen == s0_size
        })
        .expect("initial boundary");
    let last = observed.len() - 1;
    let free: Vec<usize> = (t0 + 1..last).collect();
    let mut best = f64::NEG_INFINITY;
    for mask in 0u64..(1u64 << free.len()) {
        let mut boundaries = vec![t0];
        for (i, &b) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                boundaries.push(b);
            }
        }
        if t0 < last {
            boundaries.push(last);
        }
        best = best.max(clock_likelihood(g, observed, &boundaries, p_n, p_e));
    }
    best
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
