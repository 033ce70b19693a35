use super::EstimationInput;
use crate::cascade::CascadeState;
use crate::clockwork::Clock;
use crate::error::Result;
use crate::scalar::Scalar;

/// Greedy clock estimate.
///
/// The first interval is the shortest observed prefix holding `s0_size`
/// vertices. Each following interval is extended as far as possible while its
/// vertex count stays at most `μ (1 + μ^{-1/3})`, where `μ` is the expected
/// size of the next step given the steps estimated so far. Every interval
/// covers at least one observation, so the loop ends after at most `N` rounds.
///
/// Runs in `O(N + n + m)`: each observed vertex joins the estimate once and
/// each edge is scanned only while one of its endpoints is active.
pub fn fastclock<T: Scalar>(input: &EstimationInput<'_, T>) -> Result<Clock> {
    let observed = input.observed;
    let last = input.last_index();
    let first = input.initial_boundary()?;

    let mut state = CascadeState::new(input.graph);
    state.push_step(observed.steps()[..=first].iter().flatten().copied());
    let mut boundaries = vec![first];
    let mut t_obs = first;

    while t_obs != last {
        let mu: T = state.expected_next(&input.params);
        let threshold = if mu > T::zero() {
            mu * (T::one() + mu.powf(-T::one() / T::lit(3.0)))
        } else {
            T::zero()
        };

        let mut end = t_obs + 1;
        let mut mass = observed.step(end).len();
        while end < last && T::from_count(mass + observed.step(end + 1).len()) <= threshold {
            end += 1;
            mass += observed.step(end).len();
        }

        state.push_step(observed.steps()[t_obs + 1..=end].iter().flatten().copied());
        boundaries.push(end);
        t_obs = end;
    }
    Clock::from_boundaries(boundaries)
}
