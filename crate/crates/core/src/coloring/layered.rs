use super::{
    layered_guarantee, smooth_threshold, split_coloring, BaseColorerConfig, Color, Coloring,
};
use crate::error::{Error, Result};
use crate::geometry::{
    enforce_general_position, layers_of_ranks, rank_dominates, GeneralPositionPolicy, PointSet,
};
use crate::verify::colorfulness_report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredColoring {
    /// Final total coloring, certified.
    pub coloring: Coloring,
    /// `(k−1)·threshold_p(k, c_max)`, or 1 when `k = 1`.
    pub threshold: u64,
    pub c_max: Option<usize>,
    pub layers: Vec<Vec<usize>>,
    /// Color each point received from its layer's split coloring.
    pub precolors: Vec<Color>,
    /// Points whose precolor already occurred below them and that were given
    /// another color.
    pub recolored: Vec<usize>,
    /// Points that saw all `k` colors below them; finalized to color 1.
    pub uncolored: Vec<usize>,
}

/// Color layer by layer, bottom first. Each layer is precolored by
/// [`split_coloring`]; a point keeps its precolor unless that color already
/// appears among the points it dominates, in which case it takes the
/// smallest color absent there.
pub fn layered_coloring(
    set: &PointSet,
    k: usize,
    cfg: &BaseColorerConfig,
) -> Result<LayeredColoring> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    cfg.validate()?;
    let n = set.len();
    let ranks = set.ranks();
    let layers = layers_of_ranks(&ranks);

    let mut precolors = vec![Color(0); n];
    let mut finals: Vec<Option<Color>> = vec![None; n];
    let mut recolored = Vec::new();
    let mut uncolored = Vec::new();
    let mut c_max: Option<usize> = None;
    let mut seen = vec![false; k];

    for (li, layer) in layers.iter().enumerate() {
        let split = split_coloring(&set.subset(layer), k, &cfg.reseeded(1 << 48 | li as u64))?;
        if let Some(c) = split.c_max {
            c_max = Some(c_max.map_or(c, |m| m.max(c)));
        }
        for (local, &p) in layer.iter().enumerate() {
            precolors[p] = split.coloring.color(local);
        }
        for &p in layer {
            seen.iter_mut().for_each(|s| *s = false);
            for q in 0..n {
                if q != p && rank_dominates(&ranks[p], &ranks[q]) {
                    let c = finals[q].expect("dominated points lie in earlier layers");
                    seen[c.0 as usize] = true;
                }
            }
            let pre = precolors[p];
            finals[p] = Some(if !seen[pre.0 as usize] {
                pre
            } else if let Some(free) = seen.iter().position(|s| !s) {
                recolored.push(p);
                Color(free as u32)
            } else {
                uncolored.push(p);
                Color(0)
            });
        }
    }

    let colors = finals
        .into_iter()
        .map(|c| c.expect("every layer processed"))
        .collect();
    let coloring = Coloring::new(k, colors)?.certify(set);
    let threshold = match c_max {
        Some(c) => layered_guarantee(k, c),
        None => 1,
    };
    Ok(LayeredColoring {
        coloring,
        threshold,
        c_max,
        layers,
        precolors,
        recolored,
        uncolored,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineResult {
    pub coloring: Coloring,
    /// A-priori bound `(k−1)·threshold_p(k, c_max)`.
    pub guaranteed_threshold: u64,
    /// Exact minimal colorful threshold of the returned coloring on the
    /// input as given.
    pub verified_threshold: usize,
    pub c_max: Option<usize>,
    /// `(k−1)·c·k^(log₂(2c−1))`, reported alongside the tight bound.
    pub smooth_bound: Option<f64>,
    /// Whether ties had to be broken before coloring.
    pub perturbed: bool,
}

/// Layered coloring of an arbitrary finite set.
///
/// Sets with repeated coordinates are colored through the symbolic
/// perturbation; every octant trace of the original set is also a trace of
/// the perturbed one, so the coloring stays valid for the original.
pub fn color_point_set(
    set: &PointSet,
    k: usize,
    cfg: &BaseColorerConfig,
) -> Result<PipelineResult> {
    let perturbed = !set.is_general_position();
    let work = if perturbed {
        enforce_general_position(set, GeneralPositionPolicy::SymbolicPerturb)?
    } else {
        set.clone()
    };
    let layered = layered_coloring(&work, k, cfg)?;
    let verified = colorfulness_report(set, &layered.coloring).minimal_colorful_threshold;
    let guaranteed = layered.threshold;
    if verified as u64 > guaranteed {
        return Err(Error::StrategyInternalError(format!(
            "verified threshold {verified} exceeds the guarantee {guaranteed}"
        )));
    }
    let coloring = Coloring::new(k, layered.coloring.colors().to_vec())?.certify(set);
    Ok(PipelineResult {
        coloring,
        guaranteed_threshold: guaranteed,
        verified_threshold: verified,
        c_max: layered.c_max,
        smooth_bound: layered
            .c_max
            .map(|c| (k as f64 - 1.0).max(1.0) * smooth_threshold(k, c)),
        perturbed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::split_coloring;

    #[test]
    fn antichain_matches_split() {
        let set = PointSet::from_triples(&[(0, 4, 8), (1, 3, 9), (2, 2, 7), (3, 1, 6), (4, 0, 5)])
            .unwrap();
        let cfg = BaseColorerConfig::default();
        let layered = layered_coloring(&set, 3, &cfg).unwrap();
        let split = split_coloring(&set, 3, &cfg.reseeded(1 << 48)).unwrap();
        assert_eq!(layered.coloring.colors(), split.coloring.colors());
        assert!(layered.recolored.is_empty());
        assert!(layered.uncolored.is_empty());
    }

    #[test]
    fn chain_gets_distinct_colors_bottom_up() {
        let k = 4;
        let set = PointSet::from_triples(&[(0, 0, 0), (1, 1, 1), (2, 2, 2), (3, 3, 3)]).unwrap();
        let layered = layered_coloring(&set, k, &BaseColorerConfig::default()).unwrap();
        let colors = layered.coloring.colors();
        let mut distinct = colors.to_vec();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), k);
        // The octant at the top point holds the whole chain.
        assert!(layered.coloring.certified_threshold().unwrap() <= k);
    }

    #[test]
    fn long_chain_finalizes_uncolored_points() {
        let triples: Vec<_> = (0..6).map(|i| (i, i, i)).collect();
        let set = PointSet::from_triples(&triples).unwrap();
        let layered = layered_coloring(&set, 2, &BaseColorerConfig::default()).unwrap();
        assert_eq!(layered.uncolored, vec![2, 3, 4, 5]);
        assert_eq!(layered.coloring.color(5), Color(0));
    }

    #[test]
    fn pipeline_single_color() {
        let set = PointSet::from_triples(&[(0, 0, 0), (1, 2, 0), (5, 1, 1)]).unwrap();
        let r = color_point_set(&set, 1, &BaseColorerConfig::default()).unwrap();
        assert_eq!(r.verified_threshold, 1);
        assert_eq!(r.guaranteed_threshold, 1);
        assert!(r.perturbed);
    }
}
