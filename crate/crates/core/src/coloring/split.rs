use super::{base_two_color, ceil_log2, threshold_p, BaseColorerConfig, Color, Coloring};
use crate::error::{Error, Result};
use crate::geometry::{first_dominating_pair, PointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitColoring {
    /// Final coloring with `k` colors, certified.
    pub coloring: Coloring,
    /// Largest `c` certified by any base call (at least 2), `None` for `k = 1`.
    pub c_max: Option<usize>,
    /// `threshold_p(k, c_max)`.
    pub threshold: u64,
    /// Fine coloring after each splitting round; `rounds[i]` has `2^(i+1)` colors.
    pub rounds: Vec<Coloring>,
}

/// Split every color class with the base colorer until `2^r ≥ k` classes
/// exist, then fold the classes onto `k` colors.
///
/// Every octant with at least `threshold_p(k, c_max)`
/// points of the (independent) input sees all `k` colors.
pub fn split_coloring(set: &PointSet, k: usize, cfg: &BaseColorerConfig) -> Result<SplitColoring> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    cfg.validate()?;
    if let Some((dominating, dominated)) = first_dominating_pair(set) {
        return Err(Error::NotIndependent {
            dominating,
            dominated,
        });
    }
    let n = set.len();
    if k == 1 {
        return Ok(SplitColoring {
            coloring: Coloring::monochromatic(1, n)?.certify(set),
            c_max: None,
            threshold: 1,
            rounds: Vec::new(),
        });
    }

    let round_count = ceil_log2(k);
    let mut fine = vec![0u32; n];
    let mut c_max = 2;
    let mut rounds = Vec::with_capacity(round_count as usize);
    for round in 0..round_count {
        let classes = 1u32 << round;
        let mut next = vec![0u32; n];
        for class in 0..classes {
            let members: Vec<usize> = (0..n).filter(|&i| fine[i] == class).collect();
            let sub = set.subset(&members);
            let tag = (round as u64) << 32 | class as u64;
            let split = base_two_color(&sub, &cfg.reseeded(tag))?;
            c_max = c_max.max(split.achieved_c);
            for (local, &i) in members.iter().enumerate() {
                next[i] = 2 * class + split.coloring.color(local).0;
            }
        }
        fine = next;
        let colors = fine.iter().map(|&c| Color(c)).collect();
        rounds.push(Coloring::new(2 * classes as usize, colors)?);
    }

    let coloring = rounds
        .last()
        .expect("k >= 2 means at least one round")
        .merge_onto(k)?
        .certify(set);
    Ok(SplitColoring {
        coloring,
        c_max: Some(c_max),
        threshold: threshold_p(k, c_max),
        rounds,
    })
}
