use thiserror::Error;

use crate::coloring::Coloring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: points {first} and {second} share their {axis}-coordinate")]
    DegenerateInput {
        first: usize,
        second: usize,
        axis: char,
    },

    #[error("duplicate point: indices {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("point set is not independent: point {dominating} dominates point {dominated}")]
    NotIndependent { dominating: usize, dominated: usize },

    #[error("positive octants need a finite apex")]
    InfinitePositiveApex,

    #[error("octant {index} has an infinite apex coordinate and cannot be dualized")]
    InfiniteApex { index: usize },

    #[error("empty homothet: a + b + c = {sum} is negative")]
    EmptyHomothet { sum: String },

    #[error("triangle {index} is not a positive homothet of the reference triangle")]
    NotHomothet { index: usize },

    #[error("degenerate reference triangle")]
    DegenerateReference,

    #[error("base colorer achieved c = {achieved} but the target is {target}")]
    TargetNotMet {
        achieved: usize,
        target: usize,
        best: Box<Coloring>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("illegal assignment: {0}")]
    IllegalAssignment(String),

    #[error("adversary invariant broken: {0}")]
    StrategyInternalError(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
