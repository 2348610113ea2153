//! Sample semi-online algorithms for the adversary to defeat.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GameState, IntervalId, PresentedInterval, SemiOnlineColorer};
use crate::coloring::Color;

/// Least-used color among the colored intervals overlapping `target`,
/// counting `pending` assignments too. Ties go to the smallest color.
fn least_used(
    state: &GameState,
    target: &PresentedInterval,
    pending: &[(IntervalId, Color)],
) -> Color {
    let mut uses = vec![0usize; state.k()];
    for iv in state.presented() {
        if iv.id != target.id && iv.overlaps(target) {
            let c = state
                .color(iv.id)
                .or_else(|| pending.iter().find(|(id, _)| *id == iv.id).map(|&(_, c)| c));
            if let Some(c) = c {
                uses[c.0 as usize] += 1;
            }
        }
    }
    let best = (0..uses.len()).min_by_key(|&c| (uses[c], c)).unwrap_or(0);
    Color(best as u32)
}

/// Largest number of presented intervals sharing a point of `target`.
fn max_depth_within(state: &GameState, target: &PresentedInterval) -> usize {
    let mut events: Vec<(i64, i32)> = Vec::new();
    for iv in state.presented().iter().filter(|iv| iv.overlaps(target)) {
        events.push((iv.left.max(target.left), 0));
        events.push((iv.right.min(target.right), 1));
    }
    // openings sort before closings at the same coordinate: intervals are closed
    events.sort_unstable();
    let (mut depth, mut best) = (0usize, 0usize);
    for (_, kind) in events {
        if kind == 0 {
            depth += 1;
            best = best.max(depth);
        } else {
            depth -= 1;
        }
    }
    best
}

/// Colors each interval on arrival with the color least used among the
/// intervals it overlaps.
#[derive(Clone, Debug, Default)]
pub struct EagerBalanced;

impl EagerBalanced {
    pub fn new() -> Self {
        EagerBalanced
    }
}

impl SemiOnlineColorer for EagerBalanced {
    fn name(&self) -> &str {
        "eager"
    }

    fn on_insert(&mut self, state: &GameState, inserted: IntervalId) -> Vec<(IntervalId, Color)> {
        let target = state.presented()[inserted];
        vec![(inserted, least_used(state, &target, &[]))]
    }
}

/// Leaves an interval uncolored until one of its points is covered `d - 1`
/// times, then colors it greedily.
#[derive(Clone, Debug, Default)]
pub struct LazyThreshold;

impl LazyThreshold {
    pub fn new() -> Self {
        LazyThreshold
    }
}

impl SemiOnlineColorer for LazyThreshold {
    fn name(&self) -> &str {
        "lazy"
    }

    fn on_insert(&mut self, state: &GameState, _inserted: IntervalId) -> Vec<(IntervalId, Color)> {
        let trigger = state.d().saturating_sub(1);
        let mut out = Vec::new();
        let pending: Vec<IntervalId> = state.uncolored().collect();
        for id in pending {
            let target = state.presented()[id];
            if max_depth_within(state, &target) >= trigger {
                let c = least_used(state, &target, &out);
                out.push((id, c));
            }
        }
        out
    }
}

/// After each insertion, colors every uncolored interval with probability
/// one half, using a uniform color.
#[derive(Clone, Debug)]
pub struct RandomColorer {
    rng: ChaCha8Rng,
}

impl RandomColorer {
    pub fn new(seed: u64) -> Self {
        RandomColorer {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl SemiOnlineColorer for RandomColorer {
    fn name(&self) -> &str {
        "random"
    }

    fn on_insert(&mut self, state: &GameState, _inserted: IntervalId) -> Vec<(IntervalId, Color)> {
        let k = state.k() as u32;
        let pending: Vec<IntervalId> = state.uncolored().collect();
        let mut out = Vec::new();
        for id in pending {
            if self.rng.gen_bool(0.5) {
                out.push((id, Color(self.rng.gen_range(0..k))));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleAlgorithm {
    Eager,
    Lazy,
    Random,
}

impl SampleAlgorithm {
    pub const ALL: [SampleAlgorithm; 3] = [
        SampleAlgorithm::Eager,
        SampleAlgorithm::Lazy,
        SampleAlgorithm::Random,
    ];
}

impl fmt::Display for SampleAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleAlgorithm::Eager => "eager",
            SampleAlgorithm::Lazy => "lazy",
            SampleAlgorithm::Random => "random",
        })
    }
}

impl FromStr for SampleAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eager" => Ok(SampleAlgorithm::Eager),
            "lazy" => Ok(SampleAlgorithm::Lazy),
            "random" => Ok(SampleAlgorithm::Random),
            _ => Err(format!(
                "unknown algorithm '{s}' (expected eager, lazy or random)"
            )),
        }
    }
}

/// Instantiate a sample algorithm; only the random one uses the seed.
pub fn sample_algorithm(kind: SampleAlgorithm, seed: u64) -> Box<dyn SemiOnlineColorer> {
    match kind {
        SampleAlgorithm::Eager => Box::new(EagerBalanced::new()),
        SampleAlgorithm::Lazy => Box::new(LazyThreshold::new()),
        SampleAlgorithm::Random => Box::new(RandomColorer::new(seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eager_colors_on_arrival() {
        let mut s = GameState::new(2, 2);
        let id = s.present(0, 3);
        assert_eq!(EagerBalanced::new().on_insert(&s, id), vec![(0, Color(0))]);
        s.assign_all(&[(0, Color(0))]).unwrap();
        let id = s.present(2, 5);
        assert_eq!(EagerBalanced::new().on_insert(&s, id), vec![(1, Color(1))]);
    }

    #[test]
    fn lazy_waits_on_disjoint_intervals() {
        let mut s = GameState::new(2, 3);
        let mut alg = LazyThreshold::new();
        for i in 0..4 {
            let id = s.present(3 * i, 3 * i + 1);
            assert!(alg.on_insert(&s, id).is_empty());
        }
        let id = s.present(1, 3);
        let out = alg.on_insert(&s, id);
        assert_eq!(out.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 1, 4]);
        assert_ne!(out[0].1, out[2].1);
    }

    #[test]
    fn closed_touching_counts_as_overlap() {
        let mut s = GameState::new(2, 3);
        s.present(0, 1);
        let id = s.present(1, 2);
        assert_eq!(max_depth_within(&s, &s.presented()[id]), 2);
    }

    #[test]
    fn random_replays_identically() {
        let run = |seed| {
            let mut s = GameState::new(3, 2);
            let mut alg = RandomColorer::new(seed);
            let mut log = Vec::new();
            for i in 0..20 {
                let id = s.present(i, i + 5);
                let out = alg.on_insert(&s, id);
                s.assign_all(&out).unwrap();
                log.push(out);
            }
            log
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
    }

    #[test]
    fn names_parse() {
        for a in SampleAlgorithm::ALL {
            assert_eq!(a.to_string().parse::<SampleAlgorithm>().unwrap(), a);
            assert_eq!(sample_algorithm(a, 0).name(), a.to_string());
        }
        assert!("greedy".parse::<SampleAlgorithm>().is_err());
    }
}
