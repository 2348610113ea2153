//! Polychromatic colorings of finite point sets in three-space with respect
//! to translates of the negative octant, together with exact brute-force
//! verifiers, the containment-preserving reductions from homothetic
//! triangles and bottomless rectangles, and an adversary that defeats every
//! semi-online interval-coloring algorithm.
//!
//! ```
//! use octcolor::{color_point_set, BaseColorerConfig, PointSet};
//!
//! let points = PointSet::from_triples(&[(0, 3, 1), (1, 0, 2), (2, 2, 0), (3, 1, 3)]).unwrap();
//! let result = color_point_set(&points, 2, &BaseColorerConfig::default()).unwrap();
//! assert!(result.verified_threshold as u64 <= result.guaranteed_threshold);
//! ```

pub mod adversary;
pub mod coloring;
pub mod cover;
pub mod error;
pub mod gen;
pub mod geometry;
pub mod io;
pub mod reductions;
pub mod verify;

pub use adversary::{
    referee_check, run_duel, run_strategy, GameState, GameTranscript, SemiOnlineColorer,
    StrategyOptions, StrategyOutcome,
};
pub use coloring::{
    base_two_color, color_point_set, layered_coloring, layered_guarantee, smooth_threshold,
    split_coloring, threshold_p, BaseColorerConfig, BaseColoring, BaseStrategy, Color, Coloring,
    LayeredColoring, PipelineResult, SplitColoring,
};
pub use cover::{build_octant_cover, validate_cover, CoverReport, OctantCover};
pub use error::{Error, Result};
pub use gen::GenKind;
pub use geometry::{
    compute_layers, dominates, enforce_general_position, is_independent, octant_contains,
    Containment, Coord, ExtCoord, GeneralPositionPolicy, Octant, Point3, PointSet, Sign,
};
pub use verify::{colorfulness_report, interval_properness_violation, ColorfulnessReport};
