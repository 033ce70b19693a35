use num_rational::Ratio;

use super::Clock;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of vertex pairs ordered by exactly one of two clocks, out of all pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairDisagreement {
    pub disagreeing: u64,
    pub total_pairs: u64,
}

impl PairDisagreement {
    pub fn as_scalar<T: Scalar>(&self) -> T {
        T::from_u64(self.disagreeing).expect("count fits")
            / T::from_u64(self.total_pairs).expect("count fits")
    }

    pub fn as_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.disagreeing, self.total_pairs)
    }
}

fn pairs(mass: u64) -> u64 {
    mass * mass.saturating_sub(1) / 2
}

fn check_inputs(sizes: &[usize], c0: &Clock, c1: &Clock) -> Result<u64> {
    if sizes.is_empty() {
        return Err(Error::param("observation sizes must be nonempty"));
    }
    let last = sizes.len() - 1;
    if c0.last() != last || c1.last() != last {
        return Err(Error::param(format!(
            "clocks end at {} and {} but the timeline ends at {last}",
            c0.last(),
            c1.last()
        )));
    }
    let n: u64 = sizes.iter().map(|&s| s as u64).sum();
    if n < 2 {
        return Err(Error::param(format!(
            "distance needs at least two observed vertices, got {n}"
        )));
    }
    Ok(n)
}

/// Sum over the intervals ending at `ends` of `C(mass, 2)`.
fn within_interval_pairs(prefix_mass: &[u64], ends: impl Iterator<Item = usize>) -> u64 {
    let mut start_mass = 0;
    let mut total = 0;
    for end in ends {
        let mass = prefix_mass[end + 1] - start_mass;
        total += pairs(mass);
        start_mass = prefix_mass[end + 1];
    }
    total
}

/// Exact pair-disagreement count between two clocks on the same timeline.
///
/// A pair is unordered by a clock iff both vertices fall into the same
/// interval, so with `a_b` the unordered pairs of clock `b` and `a_01` those of
/// the common refinement, the disagreement count is `a_0 + a_1 − 2 a_01`.
pub fn distance_counts(sizes: &[usize], c0: &Clock, c1: &Clock) -> Result<PairDisagreement> {
    let n = check_inputs(sizes, c0, c1)?;
    let mut prefix_mass = Vec::with_capacity(sizes.len() + 1);
    prefix_mass.push(0u64);
    for &s in sizes {
        prefix_mass.push(prefix_mass.last().unwrap() + s as u64);
    }

    let a0 = within_interval_pairs(&prefix_mass, c0.boundaries().iter().copied());
    let a1 = within_interval_pairs(&prefix_mass, c1.boundaries().iter().copied());
    let mut merged: Vec<usize> = c0
        .boundaries()
        .iter()
        .chain(c1.boundaries())
        .copied()
        .collect();
    merged.sort_unstable();
    merged.dedup();
    let a01 = within_interval_pairs(&prefix_mass, merged.into_iter());

    Ok(PairDisagreement {
        disagreeing: a0 + a1 - 2 * a01,
        total_pairs: pairs(n),
    })
}

/// Fraction of vertex pairs ordered by exactly one of the two clocks, in `[0, 1]`.
///
/// Only the observation sizes matter; `sizes[j] = |Ŝ_j|`.
pub fn distance<T: Scalar>(sizes: &[usize], c0: &Clock, c1: &Clock) -> Result<T> {
    Ok(distance_counts(sizes, c0, c1)?.as_scalar())
}

/// [`distance`] as an exact reduced fraction.
pub fn distance_ratio(sizes: &[usize], c0: &Clock, c1: &Clock) -> Result<Ratio<u64>> {
    Ok(distance_counts(sizes, c0, c1)?.as_ratio())
}

/// Pair-disagreement count by direct enumeration of all `C(n, 2)` vertex pairs.
/// Quadratic in the number of vertices; meant as a reference for small inputs.
pub fn distance_bruteforce_counts(
    sizes: &[usize],
    c0: &Clock,
    c1: &Clock,
) -> Result<PairDisagreement> {
    check_inputs(sizes, c0, c1)?;
    let interval0 = c0.assignment();
    let interval1 = c1.assignment();
    let vertex_obs: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(j, &s)| std::iter::repeat_n(j, s))
        .collect();

    let mut disagreeing = 0u64;
    let mut total_pairs = 0u64;
    for (i, &oi) in vertex_obs.iter().enumerate() {
        for &oj in &vertex_obs[i + 1..] {
            total_pairs += 1;
            let ordered0 = interval0[oi] != interval0[oj];
            let ordered1 = interval1[oi] != interval1[oj];
            if ordered0 != ordered1 {
                disagreeing += 1;
            }
        }
    }
    Ok(PairDisagreement {
        disagreeing,
        total_pairs,
    })
}

pub fn distance_bruteforce<T: Scalar>(sizes: &[usize], c0: &Clock, c1: &Clock) -> Result<T> {
    Ok(distance_bruteforce_counts(sizes, c0, c1)?.as_scalar())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clock(b: &[usize]) -> Clock {
        Clock::from_boundaries(b.to_vec()).unwrap()
    }

    #[test]
    fn identical_clocks_are_at_distance_zero() {
        let c = clock(&[1, 4, 6]);
        let sizes = [3, 0, 2, 5, 1, 1, 2];
        assert_eq!(distance::<f64>(&sizes, &c, &c).unwrap(), 0.0);
    }

    #[test]
    fn four_singletons() {
        let sizes = [1, 1, 1, 1];
        let (c0, c1) = (clock(&[1, 3]), clock(&[0, 3]));
        let counts = distance_counts(&sizes, &c0, &c1).unwrap();
        assert_eq!(counts, PairDisagreement { disagreeing: 3, total_pairs: 6 });
        assert_eq!(distance::<f64>(&sizes, &c0, &c1).unwrap(), 0.5);
        assert_eq!(distance_bruteforce_counts(&sizes, &c0, &c1).unwrap(), counts);
        assert_eq!(distance_ratio(&sizes, &c0, &c1).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn single_interval_versus_fully_refined() {
        for n in 2..10 {
            let sizes = vec![1; n];
            let (c0, c1) = (Clock::single(n - 1), Clock::identity(n - 1));
            assert_eq!(distance::<f64>(&sizes, &c0, &c1).unwrap(), 1.0);
            assert_eq!(distance_bruteforce::<f64>(&sizes, &c0, &c1).unwrap(), 1.0);
        }
    }

    #[test]
    fn input_errors() {
        let sizes = [1, 1, 1];
        assert!(distance::<f64>(&sizes, &clock(&[2]), &clock(&[3])).is_err());
        assert!(distance::<f64>(&[1, 0], &clock(&[1]), &clock(&[0, 1])).is_err());
        assert!(distance_bruteforce::<f64>(&[0, 1], &clock(&[1]), &clock(&[0, 1])).is_err());
        assert!(distance::<f64>(&[], &clock(&[0]), &clock(&[0])).is_err());
    }

    #[test]
    fn boundary_across_empty_observation_is_invisible() {
        let sizes = [2, 3, 0, 4];
        let truth = clock(&[0, 3]);
        let a = clock(&[1, 3]);
        let b = clock(&[2, 3]);
        assert_eq!(
            distance_counts(&sizes, &truth, &a).unwrap(),
            distance_counts(&sizes, &truth, &b).unwrap()
        );
        assert_eq!(distance::<f64>(&sizes, &a, &b).unwrap(), 0.0);
    }
}
