//! The recursive adversary.
//!
//! Coordinates are integers; the `k` points of a vacuous strategy sit at
//! half-integers so that no interval endpoint ever coincides with one.
//! Internally points are kept in half units (`2x`), which keeps everything
//! in `i64`.
//!
//! Layout of a strategy for `(d, n)` starting at `lo`, with `w = width(d, n-1)`
//! and `s = width(d-1, k(d-1))`:
//!
//! ```text
//! [lo, lo+w]          first copy of (d, n-1)
//! [lo+w+1, lo+2w+1]   second copy of (d, n-1)
//! [lo+2w+2, lo+2w+2+s] room for the forcing sub-play
//! I = [lo+w+1, lo+2w+3+s]
//! ```
//!
//! `I` covers the second copy and the sub-play room but nothing of the
//! first copy.

use std::collections::HashMap;

use super::{
    referee_check, Event, GameState, GameTranscript, IntervalId, OutcomeKind, SemiOnlineColorer,
    StrategyOutcome, Violation,
};
use crate::coloring::Color;
use crate::error::{Error, Result};
use crate::geometry::Coord;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StrategyOptions {
    /// Keep playing a forcing sub-play after the forced interval has been
    /// colored. By default the sub-play stops at that moment.
    pub full_playouts: bool,
}

/// Upper bound on the number of intervals a strategy for `(d, n)` presents:
/// `T(d,0) = 0`, `T(d,n) = 2T(d,n-1) + 1 + T(d-1, k(d-1))`. Saturates.
pub fn interval_bound(k: usize, d: usize, n: usize) -> u128 {
    fn go(k: usize, d: usize, n: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
        if n == 0 || d == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(d, n)) {
            return v;
        }
        let half = go(k, d, n - 1, memo);
        let sub = go(k, d - 1, k * (d - 1), memo);
        let v = half.saturating_mul(2).saturating_add(1).saturating_add(sub);
        memo.insert((d, n), v);
        v
    }
    go(k, d, n, &mut HashMap::new())
}

/// Length of the integer span a strategy for `(d, n)` occupies, or `None`
/// if it does not fit in `i64` half units.
pub fn span_width(k: usize, d: usize, n: usize) -> Option<i64> {
    Widths::new(k).get(d, n)
}

struct Widths {
    k: usize,
    memo: HashMap<(usize, usize), Option<i64>>,
}

impl Widths {
    fn new(k: usize) -> Self {
        Widths {
            k,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, d: usize, n: usize) -> Option<i64> {
        if let Some(&w) = self.memo.get(&(d, n)) {
            return w;
        }
        let w = if n == 0 || d == 0 {
            i64::try_from(self.k).ok()
        } else {
            let half = self.get(d, n - 1);
            let sub = self.get(d - 1, self.k * (d - 1));
            half.zip(sub).and_then(|(h, s)| {
                h.checked_mul(2)?
                    .checked_add(s)?
                    .checked_add(3)
                    // positions are doubled internally
                    .filter(|w| w.checked_mul(4).is_some())
            })
        };
        self.memo.insert((d, n), w);
        w
    }
}

enum Stop {
    Violation(Violation),
    /// The watched interval at this stack depth has been colored.
    Abort(usize),
    Fail(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fail(e)
    }
}

struct Exhausted {
    /// Points in half units.
    points: Vec<i64>,
    counts: Vec<usize>,
}

struct Game<'a> {
    state: GameState,
    transcript: GameTranscript,
    alg: &'a mut dyn SemiOnlineColorer,
    watch: Vec<IntervalId>,
    widths: Widths,
    options: StrategyOptions,
}

impl Game<'_> {
    fn k(&self) -> usize {
        self.state.k()
    }

    fn present(&mut self, left: i64, right: i64) -> Result<IntervalId, Stop> {
        let id = self.state.present(left, right);
        self.transcript
            .events
            .push(Event::Insert { id, left, right });
        let response = self.alg.on_insert(&self.state, id);
        self.state.assign_all(&response)?;
        for &(id, color) in &response {
            self.transcript.events.push(Event::Assign { id, color });
        }
        let check = referee_check(&self.state);
        self.transcript
            .events
            .push(Event::RefereeCheck(check.clone()));
        if let Some(v) = check {
            return Err(Stop::Violation(v));
        }
        if !self.options.full_playouts {
            if let Some(level) = self
                .watch
                .iter()
                .position(|&w| self.state.color(w).is_some())
            {
                return Err(Stop::Abort(level));
            }
        }
        Ok(id)
    }

    fn width(&mut self, d: usize, n: usize) -> Result<i64, Stop> {
        self.widths.get(d, n).ok_or_else(|| {
            Stop::Fail(Error::InvalidParameter(format!(
                "strategy ({d}, {n}) does not fit in 64 bits"
            )))
        })
    }

    fn play(&mut self, d: usize, n: usize, lo: i64) -> Result<Exhausted, Stop> {
        let k = self.k();
        if n == 0 || d == 0 {
            return Ok(Exhausted {
                points: (0..k as i64).map(|i| 2 * (lo + i) + 1).collect(),
                counts: vec![0; k],
            });
        }
        let first_id = self.state.presented().len();
        let w = self.width(d, n - 1)?;
        let a = self.play(d, n - 1, lo)?;
        let b = self.play(d, n - 1, lo + w + 1)?;

        let result = if a.counts != b.counts {
            let mut points = Vec::with_capacity(k);
            let mut counts = Vec::with_capacity(k);
            for i in 0..k {
                if b.counts[i] > a.counts[i] {
                    points.push(b.points[i]);
                    counts.push(b.counts[i]);
                } else {
                    points.push(a.points[i]);
                    counts.push(a.counts[i]);
                }
            }
            Exhausted { points, counts }
        } else {
            let s = self.width(d - 1, k * (d - 1))?;
            let room = lo + 2 * w + 2;
            let forced = self.present(lo + w + 1, lo + 2 * w + 3 + s)?;
            if self.state.color(forced).is_none() || self.options.full_playouts {
                self.force(forced, d, room)?;
            }
            let j = self
                .state
                .color(forced)
                .expect("forcing ends with a color")
                .0 as usize;
            let mut out = a;
            out.points[j] = b.points[j];
            out.counts[j] = b.counts[j] + 1;
            out
        };
        self.self_check(first_id, n, &result)?;
        Ok(result)
    }

    /// Run the sub-play inside the room under `forced` until `forced` is
    /// colored.
    fn force(&mut self, forced: IntervalId, d: usize, room: i64) -> Result<(), Stop> {
        self.watch.push(forced);
        let level = self.watch.len() - 1;
        let k = self.k();
        let res = self.play(d - 1, k * (d - 1), room);
        self.watch.pop();
        match res {
            Ok(_) => {}
            Err(Stop::Abort(l)) if l == level => {}
            Err(other) => return Err(other),
        }
        if self.state.color(forced).is_some() {
            return Ok(());
        }
        // Only reachable with full playouts, once an enclosing forced
        // interval is colored and the constraint here is relaxed.
        if let Some(l) = self
            .watch
            .iter()
            .position(|&w| self.state.color(w).is_some())
        {
            return Err(Stop::Abort(l));
        }
        Err(Stop::Fail(Error::StrategyInternalError(format!(
            "sub-play finished with interval {forced} uncolored and no violation"
        ))))
    }

    fn self_check(&self, first_id: IntervalId, n: usize, ex: &Exhausted) -> Result<(), Stop> {
        let presented = &self.state.presented()[first_id..];
        for (i, (&p, &t)) in ex.points.iter().zip(&ex.counts).enumerate() {
            let mut seen = 0;
            for iv in presented
                .iter()
                .filter(|iv| 2 * iv.left <= p && p <= 2 * iv.right)
            {
                seen += 1;
                if self.state.color(iv.id) != Some(Color(i as u32)) {
                    return Err(Stop::Fail(Error::StrategyInternalError(format!(
                        "interval {} covers the point of color {} without that color",
                        iv.id,
                        i + 1
                    ))));
                }
            }
            if seen != t {
                return Err(Stop::Fail(Error::StrategyInternalError(format!(
                    "point of color {} covered {seen} times, recorded {t}",
                    i + 1
                ))));
            }
        }
        if ex.counts.iter().sum::<usize>() < n {
            return Err(Stop::Fail(Error::StrategyInternalError(
                "counts sum below n".into(),
            )));
        }
        Ok(())
    }
}

fn check_params(k: usize, d: usize) -> Result<()> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameter("k and d must be positive".into()));
    }
    Ok(())
}

/// Play the strategy for `(d, n)` against `alg` with a referee of value `d`.
pub fn run_strategy(
    k: usize,
    d: usize,
    n: usize,
    alg: &mut dyn SemiOnlineColorer,
    options: StrategyOptions,
) -> Result<StrategyOutcome> {
    check_params(k, d)?;
    let mut game = Game {
        state: GameState::new(k, d),
        transcript: GameTranscript::default(),
        alg,
        watch: Vec::new(),
        widths: Widths::new(k),
        options,
    };
    let kind = match game.play(d, n, 0) {
        Ok(ex) => OutcomeKind::Exhausted {
            points: ex.points.iter().map(|&p| Coord::new(p, 2)).collect(),
            counts: ex.counts,
        },
        Err(Stop::Violation(v)) => OutcomeKind::ViolationFound(v),
        Err(Stop::Abort(_)) => {
            return Err(Error::StrategyInternalError(
                "abort escaped the outermost level".into(),
            ));
        }
        Err(Stop::Fail(e)) => return Err(e),
    };
    let presented = game.transcript.intervals_presented() as u128;
    if presented > interval_bound(k, d, n) {
        return Err(Error::StrategyInternalError(format!(
            "{presented} intervals presented, above the bound {}",
            interval_bound(k, d, n)
        )));
    }
    Ok(StrategyOutcome {
        kind,
        transcript: game.transcript,
    })
}

/// Defeat `alg` at value `d`: the outcome is always a violation unless the
/// algorithm makes an illegal move.
pub fn run_duel(
    k: usize,
    d: usize,
    alg: &mut dyn SemiOnlineColorer,
    options: StrategyOptions,
) -> Result<StrategyOutcome> {
    check_params(k, d)?;
    if d == 1 {
        let mut state = GameState::new(k, 1);
        let mut transcript = GameTranscript::default();
        let id = state.present(0, 1);
        transcript.events.push(Event::Insert {
            id,
            left: 0,
            right: 1,
        });
        let response = alg.on_insert(&state, id);
        state.assign_all(&response)?;
        for &(id, color) in &response {
            transcript.events.push(Event::Assign { id, color });
        }
        let v = referee_check(&state).ok_or_else(|| {
            Error::StrategyInternalError("a single interval passed at value 1".into())
        })?;
        transcript.events.push(Event::RefereeCheck(Some(v.clone())));
        return Ok(StrategyOutcome {
            kind: OutcomeKind::ViolationFound(v),
            transcript,
        });
    }
    let mut outcome = run_strategy(k, d, k * d, alg, options)?;
    if let OutcomeKind::Exhausted { points, counts } = &outcome.kind {
        // The counts sum to at least kd, so one of them reaches d.
        let i = counts
            .iter()
            .position(|&t| t >= d)
            .ok_or_else(|| Error::StrategyInternalError("exhausted without a count of d".into()))?;
        let p = points[i].clone();
        let covering = outcome
            .transcript
            .replay(k, d)?
            .presented()
            .iter()
            .filter(|iv| Coord::from(iv.left) <= p && p <= Coord::from(iv.right))
            .map(|iv| iv.id)
            .collect();
        let v = Violation { point: p, covering };
        outcome
            .transcript
            .events
            .push(Event::RefereeCheck(Some(v.clone())));
        outcome.kind = OutcomeKind::ViolationFound(v);
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{check_exhausted, EagerBalanced, LazyThreshold, RandomColorer};

    /// Colors every interval with the same color right away.
    struct Mono;
    impl SemiOnlineColorer for Mono {
        fn name(&self) -> &str {
            "mono"
        }
        fn on_insert(&mut self, _: &GameState, id: IntervalId) -> Vec<(IntervalId, Color)> {
            vec![(id, Color(0))]
        }
    }

    /// Tries to recolor interval 0 on the second insertion.
    struct Cheater;
    impl SemiOnlineColorer for Cheater {
        fn name(&self) -> &str {
            "cheater"
        }
        fn on_insert(&mut self, _: &GameState, id: IntervalId) -> Vec<(IntervalId, Color)> {
            vec![(0, Color(id as u32 % 2))]
        }
    }

    #[test]
    fn vacuous_strategy() {
        for d in 1..4 {
            let out = run_strategy(3, d, 0, &mut Mono, StrategyOptions::default()).unwrap();
            match out.kind {
                OutcomeKind::Exhausted { points, counts } => {
                    assert_eq!(counts, vec![0, 0, 0]);
                    assert_eq!(points.len(), 3);
                }
                _ => panic!("expected exhausted"),
            }
            assert!(out.transcript.events.is_empty());
        }
    }

    #[test]
    fn bound_recurrence() {
        assert_eq!(interval_bound(2, 1, 2), 3);
        assert_eq!(interval_bound(2, 2, 4), 60);
        assert_eq!(interval_bound(3, 2, 6), 504);
        assert_eq!(interval_bound(2, 3, 6), 3843);
        assert_eq!(span_width(2, 1, 0), Some(2));
        assert_eq!(span_width(2, 1, 1), Some(9));
    }

    #[test]
    fn exhausted_invariants_hold_on_transcript() {
        // At a value well above n nothing is violated, so the strategy
        // returns its points.
        let mut exhausted = 0;
        for n in 0..4 {
            // full playouts of the forcing sub-plays grow very fast with d
            for (full_playouts, d) in [(false, 6), (true, 3)] {
                let opts = StrategyOptions { full_playouts };
                let algs: [Box<dyn SemiOnlineColorer>; 2] = [
                    Box::new(EagerBalanced::new()),
                    Box::new(LazyThreshold::new()),
                ];
                for mut alg in algs {
                    let out = run_strategy(2, d, n, alg.as_mut(), opts).unwrap();
                    if let OutcomeKind::Exhausted { points, counts } = &out.kind {
                        check_exhausted(&out.transcript, 2, d, points, counts, n).unwrap();
                        exhausted += 1;
                    }
                }
            }
        }
        assert!(exhausted >= 10);
    }

    #[test]
    fn duels_end_in_violation() {
        for &(k, d) in &[(1, 1), (2, 2), (2, 3), (3, 2)] {
            for full_playouts in [false, true] {
                let opts = StrategyOptions { full_playouts };
                let mut algs: Vec<Box<dyn SemiOnlineColorer>> = vec![
                    Box::new(EagerBalanced::new()),
                    Box::new(LazyThreshold::new()),
                    Box::new(RandomColorer::new(7)),
                    Box::new(Mono),
                ];
                for alg in algs.iter_mut() {
                    let out = run_duel(k, d, alg.as_mut(), opts).unwrap();
                    assert!(out.is_violation(), "{} survived k={k} d={d}", alg.name());
                    let n = if d == 1 { 1 } else { k * d };
                    assert!(
                        out.transcript.intervals_presented() as u128
                            <= interval_bound(k, d, n).max(1)
                    );
                }
            }
        }
    }

    #[test]
    fn illegal_moves_are_reported() {
        let err = run_duel(2, 2, &mut Cheater, StrategyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::IllegalAssignment(_)));
    }

    #[test]
    fn replay_reproduces_state() {
        let mut alg = RandomColorer::new(3);
        let out = run_duel(2, 3, &mut alg, StrategyOptions::default()).unwrap();
        let state = out.transcript.replay(2, 3).unwrap();
        let v = referee_check(&state).unwrap();
        match out.kind {
            OutcomeKind::ViolationFound(w) => assert_eq!(v, w),
            _ => unreachable!(),
        }
    }
}
