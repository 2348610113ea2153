//! Base 2-colorers.
//!
//! A provider returns a 2-coloring; the constant `c` it achieves is always
//! measured afterwards by the exact verifier, so a provider only has to be
//! good, never trusted.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, Color, Coloring};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::verify::{scan_ranked, Scan};

/// Largest input handled by [`BaseStrategy::ExactSearch`]; bigger sets fall
/// back to local search.
pub const EXACT_SEARCH_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseStrategy {
    /// Backtracking over all 2-colorings for the smallest feasible `c`.
    ExactSearch,
    /// Seeded descent that flips points inside the worst monochromatic
    /// octant, with restarts.
    LocalSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseColorerConfig {
    pub strategy: BaseStrategy,
    pub target_c: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for BaseColorerConfig {
    fn default() -> Self {
        BaseColorerConfig {
            strategy: BaseStrategy::LocalSearch,
            target_c: 12,
            max_restarts: 8,
            seed: 0,
        }
    }
}

impl BaseColorerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.target_c < 2 {
            return Err(Error::InvalidParameter(format!(
                "target_c must be at least 2, got {}",
                self.target_c
            )));
        }
        Ok(())
    }

    pub(crate) fn reseeded(&self, tag: u64) -> Self {
        BaseColorerConfig {
            seed: derive_seed(self.seed, tag),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseColoring {
    /// Certified 2-coloring.
    pub coloring: Coloring,
    /// Smallest `m` such that every octant with at least `m` points is
    /// bichromatic.
    pub achieved_c: usize,
}

pub fn base_two_color(set: &PointSet, cfg: &BaseColorerConfig) -> Result<BaseColoring> {
    cfg.validate()?;
    let ranks = set.ranks();
    let colors = match cfg.strategy {
        BaseStrategy::ExactSearch if ranks.len() <= EXACT_SEARCH_LIMIT => exact_search(&ranks),
        _ => local_search(&ranks, cfg),
    };
    let coloring = Coloring::new(2, colors.into_iter().map(Color).collect())?.certify(set);
    let achieved_c = coloring.certified_threshold().expect("just certified");
    if achieved_c > cfg.target_c {
        return Err(Error::TargetNotMet {
            achieved: achieved_c,
            target: cfg.target_c,
            best: Box::new(coloring),
        });
    }
    Ok(BaseColoring {
        coloring,
        achieved_c,
    })
}

/// Distinct nonempty canonical traces as bitmasks.
fn trace_masks(ranks: &[[u32; 3]]) -> Vec<u32> {
    let n = ranks.len();
    let mut masks = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let apex = [ranks[a][0], ranks[b][1], ranks[c][2]];
                let mut m = 0u32;
                for (i, r) in ranks.iter().enumerate() {
                    if r[0] <= apex[0] && r[1] <= apex[1] && r[2] <= apex[2] {
                        m |= 1 << i;
                    }
                }
                masks.push(m);
            }
        }
    }
    masks.sort_unstable();
    masks.dedup();
    masks.retain(|&m| m != 0);
    masks
}

/// Optimal 2-coloring by increasing `m`: the first `m` for which no trace
/// of size `≥ m` is forced monochromatic.
fn exact_search(ranks: &[[u32; 3]]) -> Vec<u32> {
    let n = ranks.len();
    if n <= 1 {
        return vec![0; n];
    }
    let masks = trace_masks(ranks);
    for m in 2..=n {
        // Edges grouped by their highest member, checked once it is colored.
        let mut by_last: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &mask in masks.iter().filter(|mask| mask.count_ones() as usize >= m) {
            let last = 31 - mask.leading_zeros() as usize;
            by_last[last].push(mask);
        }
        let mut second = 0u32;
        if backtrack(1, n, &by_last, 1, &mut second) {
            return (0..n).map(|i| second >> i & 1).collect();
        }
    }
    // m = n + 1 constrains nothing.
    (0..n).map(|i| (i % 2) as u32).collect()
}

/// Point 0 is fixed to color 0; `second` holds the points colored 1.
fn backtrack(v: usize, n: usize, by_last: &[Vec<u32>], assigned: u32, second: &mut u32) -> bool {
    let ok = |second: u32| {
        let first = assigned & !second;
        by_last[v - 1]
            .iter()
            .all(|&e| e & first != e && e & second != e)
    };
    if !ok(*second) {
        return false;
    }
    if v == n {
        return true;
    }
    let assigned = assigned | 1 << v;
    for bit in [0u32, 1] {
        if bit == 1 {
            *second |= 1 << v;
        } else {
            *second &= !(1 << v);
        }
        if backtrack(v + 1, n, by_last, assigned, second) {
            return true;
        }
    }
    *second &= !(1 << v);
    false
}

fn score(scan: &Scan) -> (usize, usize) {
    (scan.threshold(), scan.ties)
}

fn local_search(ranks: &[[u32; 3]], cfg: &BaseColorerConfig) -> Vec<u32> {
    let n = ranks.len();
    if n <= 1 {
        return vec![0; n];
    }
    let floor = 2;
    let step_limit = 40 + 2 * n;
    let stall_limit = 8;

    let mut best: Option<(Vec<u32>, (usize, usize))> = None;
    for restart in 0..cfg.max_restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, restart as u64));
        let mut colors: Vec<u32> = if restart == 0 {
            // Alternate along z; a cheap start that already splits z-runs.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| ranks[i][2]);
            let mut c = vec![0; n];
            for (pos, &i) in order.iter().enumerate() {
                c[i] = (pos % 2) as u32;
            }
            c
        } else {
            (0..n).map(|_| rng.gen_range(0..2)).collect()
        };
        let mut scan = scan_ranked(ranks, &colors, 2);
        let mut stall = 0;
        for _ in 0..step_limit {
            let current = score(&scan);
            if best.as_ref().is_none_or(|(_, s)| current < *s) {
                best = Some((colors.clone(), current));
            }
            if current.0 <= floor || stall >= stall_limit {
                break;
            }
            let Some((apex, missing)) = scan.best else {
                break;
            };
            let inside: Vec<usize> = (0..n)
                .filter(|&i| {
                    ranks[i][0] <= apex[0] && ranks[i][1] <= apex[1] && ranks[i][2] <= apex[2]
                })
                .collect();
            let mut best_move: Option<(usize, Scan)> = None;
            for &i in &inside {
                colors[i] = missing;
                let s = scan_ranked(ranks, &colors, 2);
                colors[i] = 1 - missing;
                if best_move.as_ref().is_none_or(|(_, b)| score(&s) < score(b)) {
                    best_move = Some((i, s));
                }
            }
            let (i, s) = best_move.expect("witness octant is nonempty");
            if score(&s) < current {
                colors[i] = missing;
                scan = s;
                stall = 0;
            } else {
                // Plateau: take a random flip inside the witness.
                let j = inside[rng.gen_range(0..inside.len())];
                colors[j] = missing;
                scan = scan_ranked(ranks, &colors, 2);
                stall += 1;
            }
        }
        let current = score(&scan);
        if best.as_ref().is_none_or(|(_, s)| current < *s) {
            best = Some((colors.clone(), current));
        }
        if best.as_ref().is_some_and(|(_, s)| s.0 <= cfg.target_c) {
            break;
        }
    }
    best.expect("at least one restart").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::colorfulness_report_exhaustive;

    fn exact() -> BaseColorerConfig {
        BaseColorerConfig {
            strategy: BaseStrategy::ExactSearch,
            ..Default::default()
        }
    }

    #[test]
    fn tiny_sets() {
        let one = PointSet::from_triples(&[(0, 0, 0)]).unwrap();
        assert_eq!(base_two_color(&one, &exact()).unwrap().achieved_c, 2);
        assert_eq!(
            base_two_color(&one, &BaseColorerConfig::default())
                .unwrap()
                .achieved_c,
            2
        );

        let two = PointSet::from_triples(&[(0, 1, 0), (1, 0, 1)]).unwrap();
        let r = base_two_color(&two, &exact()).unwrap();
        assert_eq!(r.achieved_c, 2);
        assert_ne!(r.coloring.color(0), r.coloring.color(1));

        let none = base_two_color(&PointSet::empty(), &exact()).unwrap();
        assert_eq!(none.achieved_c, 1);
    }

    #[test]
    fn exact_search_is_optimal_on_small_sets() {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..9usize {
            let mut ys: Vec<i64> = (0..n as i64).collect();
            let mut zs = ys.clone();
            ys.shuffle(&mut rng);
            zs.shuffle(&mut rng);
            let triples: Vec<_> = (0..n).map(|i| (i as i64, ys[i], zs[i])).collect();
            let set = PointSet::from_triples(&triples).unwrap();
            let got = base_two_color(&set, &exact()).unwrap().achieved_c;
            // Brute force over all 2^n colorings with the O(n^4) verifier.
            let mut best = usize::MAX;
            for mask in 0u32..(1 << n) {
                let c = Coloring::new(2, (0..n).map(|i| Color(mask >> i & 1)).collect()).unwrap();
                best =
                    best.min(colorfulness_report_exhaustive(&set, &c).minimal_colorful_threshold);
            }
            assert_eq!(got, best, "n = {n}");
        }
    }

    #[test]
    fn low_target_reports_best_found() {
        // Every pair of this cyclic antichain is an octant trace, so some
        // pair is monochromatic under any 2-coloring.
        let cyclic = PointSet::from_triples(&[(0, 1, 2), (1, 2, 0), (2, 0, 1)]).unwrap();
        let cfg = BaseColorerConfig {
            target_c: 2,
            ..exact()
        };
        let err = base_two_color(&cyclic, &cfg).unwrap_err();
        match err {
            Error::TargetNotMet {
                achieved,
                target,
                best,
            } => {
                assert_eq!(achieved, 3);
                assert_eq!(target, 2);
                assert_eq!(best.certified_threshold(), Some(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn target_below_two_is_rejected() {
        let cfg = BaseColorerConfig {
            target_c: 1,
            ..Default::default()
        };
        assert!(matches!(
            base_two_color(&PointSet::empty(), &cfg),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn local_search_is_deterministic() {
        let triples: Vec<_> = (0..40i64)
            .map(|i| (i, (i * 17) % 41, 80 - i - (i * 17) % 41))
            .collect();
        let set = PointSet::from_triples(&triples).unwrap();
        let cfg = BaseColorerConfig {
            seed: 99,
            ..Default::default()
        };
        let a = base_two_color(&set, &cfg).unwrap();
        let b = base_two_color(&set, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.achieved_c <= 12);
    }
}
