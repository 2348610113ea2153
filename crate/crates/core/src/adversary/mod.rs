//! The semi-online interval coloring game.
//!
//! Intervals arrive one at a time. After every insertion the algorithm may
//! color any uncolored interval presented so far, but a color, once given,
//! is permanent. The referee then checks properness of value `d`: every
//! point covered by at least `d` presented intervals must be covered by two
//! intervals of distinct assigned colors. Uncolored intervals count toward
//! depth but contribute no color.
//!
//! [`run_duel`] plays the recursive adversary against an algorithm and
//! always ends with a violation (or an illegal move by the algorithm).

mod algorithms;
mod strategy;

use std::fmt;

pub use algorithms::{
    sample_algorithm, EagerBalanced, LazyThreshold, RandomColorer, SampleAlgorithm,
};
pub use strategy::{interval_bound, run_duel, run_strategy, span_width, StrategyOptions};

use crate::coloring::Color;
use crate::error::{Error, Result};
use crate::geometry::Coord;
use crate::verify::{properness_violation_cell, Cell};

pub type IntervalId = usize;

/// A presented closed interval with integer endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PresentedInterval {
    pub id: IntervalId,
    pub left: i64,
    pub right: i64,
}

impl PresentedInterval {
    pub fn overlaps(&self, other: &PresentedInterval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    k: usize,
    d: usize,
    presented: Vec<PresentedInterval>,
    colors: Vec<Option<Color>>,
}

impl GameState {
    pub fn new(k: usize, d: usize) -> Self {
        GameState {
            k,
            d,
            presented: Vec::new(),
            colors: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn presented(&self) -> &[PresentedInterval] {
        &self.presented
    }

    pub fn color(&self, id: IntervalId) -> Option<Color> {
        self.colors.get(id).copied().flatten()
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn uncolored(&self) -> impl Iterator<Item = IntervalId> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| i)
    }

    pub(crate) fn present(&mut self, left: i64, right: i64) -> IntervalId {
        let id = self.presented.len();
        self.presented.push(PresentedInterval { id, left, right });
        self.colors.push(None);
        id
    }

    /// Apply a batch of assignments atomically: either all are legal and
    /// applied, or none is.
    pub(crate) fn assign_all(&mut self, batch: &[(IntervalId, Color)]) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for &(id, color) in batch {
            if id >= self.presented.len() {
                return Err(Error::IllegalAssignment(format!(
                    "interval {id} was never presented"
                )));
            }
            if let Some(c) = self.colors[id] {
                return Err(Error::IllegalAssignment(format!(
                    "interval {id} already has color {c}"
                )));
            }
            if !seen.insert(id) {
                return Err(Error::IllegalAssignment(format!(
                    "interval {id} colored twice in one response"
                )));
            }
            if color.0 as usize >= self.k {
                return Err(Error::IllegalAssignment(format!(
                    "color {color} is outside 1..={}",
                    self.k
                )));
            }
        }
        for &(id, color) in batch {
            self.colors[id] = Some(color);
        }
        Ok(())
    }

    /// Number of presented intervals covering a point given in half units
    /// (`value = half / 2`).
    pub fn depth_at_half(&self, half: i64) -> usize {
        self.presented
            .iter()
            .filter(|iv| 2 * iv.left <= half && half <= 2 * iv.right)
            .count()
    }
}

/// A point covered by at least `d` presented intervals that carry fewer than
/// two distinct assigned colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub point: Coord,
    pub covering: Vec<IntervalId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VIOLATION {}", self.point)?;
        for id in &self.covering {
            write!(f, " {id}")?;
        }
        Ok(())
    }
}

pub fn referee_check(state: &GameState) -> Option<Violation> {
    let flat: Vec<(i64, i64, Option<Color>)> = state
        .presented
        .iter()
        .map(|iv| (iv.left, iv.right, state.colors[iv.id]))
        .collect();
    properness_violation_cell(&flat, state.d).map(|(cell, covering)| Violation {
        point: match cell {
            Cell::Open(a, b) => Coord::new(a + b, 2),
            Cell::Vertex(v) => Coord::from(v),
        },
        covering,
    })
}

/// Callback contract for semi-online algorithms.
pub trait SemiOnlineColorer {
    fn name(&self) -> &str;

    /// Called once after each insertion with the state including the new
    /// interval. The returned assignments are applied atomically and may
    /// only target uncolored presented intervals.
    fn on_insert(&mut self, state: &GameState, inserted: IntervalId) -> Vec<(IntervalId, Color)>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Insert {
        id: IntervalId,
        left: i64,
        right: i64,
    },
    Assign {
        id: IntervalId,
        color: Color,
    },
    RefereeCheck(Option<Violation>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameTranscript {
    pub events: Vec<Event>,
}

impl GameTranscript {
    pub fn intervals_presented(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Insert { .. }))
            .count()
    }

    /// Rebuild the final state by reapplying every insertion and assignment.
    pub fn replay(&self, k: usize, d: usize) -> Result<GameState> {
        let mut state = GameState::new(k, d);
        for e in &self.events {
            match e {
                Event::Insert { id, left, right } => {
                    let got = state.present(*left, *right);
                    if got != *id {
                        return Err(Error::StrategyInternalError(format!(
                            "transcript inserts id {id} where {got} was expected"
                        )));
                    }
                }
                Event::Assign { id, color } => state.assign_all(&[(*id, *color)])?,
                Event::RefereeCheck(_) => {}
            }
        }
        Ok(state)
    }

    /// One event per line: `INS id l r`, `COL id c` and `VIOLATION x ids...`.
    /// Referee checks that found nothing are not printed.
    pub fn to_lines(&self) -> Vec<String> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Insert { id, left, right } => Some(format!("INS {id} {left} {right}")),
                Event::Assign { id, color } => Some(format!("COL {id} {}", color.label())),
                Event::RefereeCheck(Some(v)) => Some(v.to_string()),
                Event::RefereeCheck(None) => None,
            })
            .collect()
    }

    pub fn parse_lines<'a>(lines: impl IntoIterator<Item = &'a str>) -> Result<GameTranscript> {
        let mut events = Vec::new();
        for (no, line) in lines.into_iter().enumerate() {
            let bad = |message: &str| Error::Parse {
                line: no + 1,
                message: message.to_string(),
            };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| bad("expected an integer"));
            let event = match toks[0] {
                "INS" if toks.len() == 4 => Event::Insert {
                    id: int(toks[1])? as usize,
                    left: int(toks[2])?,
                    right: int(toks[3])?,
                },
                "COL" if toks.len() == 3 => Event::Assign {
                    id: int(toks[1])? as usize,
                    color: Color::from_label(int(toks[2])? as u32)
                        .ok_or_else(|| bad("colors start at 1"))?,
                },
                "VIOLATION" if toks.len() >= 2 => Event::RefereeCheck(Some(Violation {
                    point: toks[1].parse().map_err(|e: String| bad(&e))?,
                    covering: toks[2..]
                        .iter()
                        .map(|t| int(t).map(|v| v as usize))
                        .collect::<Result<_>>()?,
                })),
                _ => return Err(bad("unrecognized transcript line")),
            };
            events.push(event);
        }
        Ok(GameTranscript { events })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutcomeKind {
    ViolationFound(Violation),
    /// Points `p_1..p_k` (one per color) and their covering counts.
    Exhausted {
        points: Vec<Coord>,
        counts: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyOutcome {
    pub kind: OutcomeKind,
    pub transcript: GameTranscript,
}

impl StrategyOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self.kind, OutcomeKind::ViolationFound(_))
    }
}

/// Re-derive the exhausted invariants from the raw transcript: point `i` is
/// covered by exactly `counts[i]` intervals, all colored `i`, and the counts
/// sum to at least `n`.
pub fn check_exhausted(
    transcript: &GameTranscript,
    k: usize,
    d: usize,
    points: &[Coord],
    counts: &[usize],
    n: usize,
) -> Result<()> {
    let state = transcript.replay(k, d)?;
    if points.len() != k || counts.len() != k {
        return Err(Error::StrategyInternalError(
            "expected one point per color".into(),
        ));
    }
    for (i, (p, &t)) in points.iter().zip(counts).enumerate() {
        let covering: Vec<&PresentedInterval> = state
            .presented
            .iter()
            .filter(|iv| Coord::from(iv.left) <= *p && *p <= Coord::from(iv.right))
            .collect();
        if covering.len() != t {
            return Err(Error::StrategyInternalError(format!(
                "point {p} is covered {} times, expected {t}",
                covering.len()
            )));
        }
        if let Some(iv) = covering
            .iter()
            .find(|iv| state.color(iv.id) != Some(Color(i as u32)))
        {
            return Err(Error::StrategyInternalError(format!(
                "interval {} covers point {p} without color {}",
                iv.id,
                i + 1
            )));
        }
    }
    if counts.iter().sum::<usize>() < n {
        return Err(Error::StrategyInternalError("counts sum below n".into()));
    }
    Ok(())
}
