//! Polychromatic k-colorings of point sets with respect to negative octants.
//!
//! The pieces stack up as follows:
//!
//! * [`base_two_color`] produces a 2-coloring in which every octant holding
//!   at least `c` points is bichromatic, with `c` certified by the exact
//!   verifier rather than assumed.
//! * [`split_coloring`] repeatedly splits every color class of an
//!   independent set with the base colorer, giving `2^r ≥ k` classes that
//!   are then folded onto `k` colors.
//! * [`layered_coloring`] precolors every staircase layer with
//!   [`split_coloring`] and repairs points whose precolor already appears
//!   below them.
//! * [`color_point_set`] wraps the above for arbitrary input and reports
//!   both the a-priori guarantee and the verified threshold.
//!
//! All guarantees are parameterized by the largest `c` actually certified
//! by a base call on the instance (`c_max`), not by a universal constant.

mod base;
mod layered;
mod split;

use std::fmt;

pub use base::{base_two_color, BaseColorerConfig, BaseColoring, BaseStrategy, EXACT_SEARCH_LIMIT};
pub use layered::{color_point_set, layered_coloring, LayeredColoring, PipelineResult};
pub use split::{split_coloring, SplitColoring};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::verify::colorfulness_report;

/// A color, stored zero-based. [`Color::label`] gives the one-based name
/// used in files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    pub fn label(self) -> u32 {
        self.0 + 1
    }

    pub fn from_label(label: u32) -> Option<Color> {
        label.checked_sub(1).map(Color)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A total coloring of point indices with colors in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    colors: Vec<Color>,
    certified_threshold: Option<usize>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<Color>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        if let Some((i, c)) = colors.iter().enumerate().find(|(_, c)| c.0 as usize >= k) {
            return Err(Error::InvalidParameter(format!(
                "point {i} has color {} outside 1..={k}",
                c.label()
            )));
        }
        Ok(Coloring {
            k,
            colors,
            certified_threshold: None,
        })
    }

    pub fn monochromatic(k: usize, n: usize) -> Result<Self> {
        Coloring::new(k, vec![Color(0); n])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, index: usize) -> Color {
        self.colors[index]
    }

    /// Threshold confirmed by the exact verifier, if [`Coloring::certify`]
    /// has been run.
    pub fn certified_threshold(&self) -> Option<usize> {
        self.certified_threshold
    }

    pub fn certify(mut self, set: &PointSet) -> Self {
        let report = colorfulness_report(set, &self);
        self.certified_threshold = Some(report.minimal_colorful_threshold);
        self
    }

    /// Fold colors onto `0..k` by `color mod k`. Surjective when every
    /// color below the current `k` is in range, so any octant that saw all
    /// old colors sees all new ones.
    pub fn merge_onto(&self, k: usize) -> Result<Coloring> {
        if k == 0 || k > self.k {
            return Err(Error::InvalidParameter(format!(
                "cannot merge {} colors onto {k}",
                self.k
            )));
        }
        Coloring::new(
            k,
            self.colors.iter().map(|c| Color(c.0 % k as u32)).collect(),
        )
    }
}

/// `c·(2c−1)^(⌈log₂k⌉−1)` for `k ≥ 2`, and `1` for `k = 1`. Saturates at
/// `u64::MAX`.
pub fn threshold_p(k: usize, c: usize) -> u64 {
    assert!(k >= 1, "k must be positive");
    if k == 1 {
        return 1;
    }
    let rounds = ceil_log2(k);
    let base = (2 * c as u64).saturating_sub(1);
    let mut t = c as u64;
    for _ in 1..rounds {
        t = t.saturating_mul(base);
    }
    t
}

/// The smooth form `c·k^(log₂(2c−1))`, an upper bound on [`threshold_p`].
pub fn smooth_threshold(k: usize, c: usize) -> f64 {
    let c = c as f64;
    c * (k as f64).powf((2.0 * c - 1.0).log2())
}

/// Guarantee of the layered coloring: `(k−1)·threshold_p(k, c)`, or 1 for
/// a single color.
pub fn layered_guarantee(k: usize, c: usize) -> u64 {
    if k == 1 {
        1
    } else {
        (k as u64 - 1).saturating_mul(threshold_p(k, c))
    }
}

pub(crate) fn ceil_log2(k: usize) -> u32 {
    assert!(k >= 1);
    usize::BITS - (k - 1).leading_zeros()
}

/// SplitMix64 step, used to derive independent seeds for nested base calls.
pub(crate) fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_values() {
        assert_eq!(threshold_p(2, 12), 12);
        assert_eq!(threshold_p(4, 12), 276);
        assert_eq!(threshold_p(3, 12), 276);
        assert_eq!(threshold_p(1, 12), 1);
        assert_eq!(threshold_p(8, 12), 12 * 23 * 23);
        assert_eq!(layered_guarantee(4, 12), 828);
        assert_eq!(layered_guarantee(2, 12), 12);
        assert_eq!(layered_guarantee(1, 12), 1);
    }

    #[test]
    fn recurrence_holds() {
        for c in 2..20 {
            for r in 1..8 {
                let k = 1usize << r;
                assert_eq!(
                    threshold_p(2 * k, c),
                    (2 * c as u64 - 1) * threshold_p(k, c)
                );
            }
        }
    }

    #[test]
    fn tight_form_is_below_smooth_form() {
        for c in 2..16 {
            for k in 2..200 {
                assert!(threshold_p(k, c) as f64 <= smooth_threshold(k, c) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn exponent_for_c12() {
        // k = 4 guarantee against k^5.58.
        assert!((layered_guarantee(4, 12) as f64) <= 4f64.powf(5.58));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
    }

    #[test]
    fn coloring_rejects_out_of_range() {
        assert!(Coloring::new(2, vec![Color(0), Color(2)]).is_err());
        assert!(Coloring::new(0, vec![]).is_err());
        let c = Coloring::new(4, vec![Color(0), Color(1), Color(2), Color(3)]).unwrap();
        let m = c.merge_onto(3).unwrap();
        assert_eq!(m.colors(), &[Color(0), Color(1), Color(2), Color(0)]);
    }

    #[test]
    fn color_labels_are_one_based() {
        assert_eq!(Color(0).label(), 1);
        assert_eq!(Color::from_label(3), Some(Color(2)));
        assert_eq!(Color::from_label(0), None);
    }
}
