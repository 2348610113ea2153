//! Exact brute-force oracles.
//!
//! [`colorfulness_report`] computes the smallest `m` such that every closed
//! negative octant holding at least `m` points sees all `k` colors. It runs
//! a sweep over canonical apices in `O(n² k log n)`;
//! [`colorfulness_report_exhaustive`] is the literal `O(n⁴)` scan kept as an
//! independent cross-check.
//!
//! An octant can always be shrunk until each bounding plane passes through a
//! point of the set, so apices `(p_x, q_y, r_z)` with `p, q, r ∈ P` realize
//! every nonempty trace `octant ∩ P`. The empty trace is realized by any
//! apex below the whole set.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::coloring::{Color, Coloring};
use crate::geometry::{rank_dominates, Coord, Octant, PointSet};

/// Worst non-colorful octant found by a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub apex: Octant,
    pub points: Vec<usize>,
    pub missing_color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorfulnessReport {
    pub k: usize,
    pub minimal_colorful_threshold: usize,
    pub witness: Option<Witness>,
    pub octants_examined: u64,
}

impl ColorfulnessReport {
    /// `key=value` lines, one field per line.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("k={}", self.k),
            format!(
                "minimal_colorful_threshold={}",
                self.minimal_colorful_threshold
            ),
            format!("octants_examined={}", self.octants_examined),
        ];
        match &self.witness {
            Some(w) => {
                let apex = w.apex.apex();
                out.push(format!("witness_apex={},{},{}", apex[0], apex[1], apex[2]));
                let pts: Vec<String> = w.points.iter().map(|i| i.to_string()).collect();
                out.push(format!("witness_points={}", pts.join(",")));
                out.push(format!("witness_missing_color={}", w.missing_color.label()));
            }
            None => out.push("witness=none".to_string()),
        }
        out
    }
}

/// Rank-space scan result: the largest non-colorful canonical octant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Scan {
    pub best_count: usize,
    /// Apex ranks `(x, y, z)` and the missing color; absent when only the
    /// empty octant misses a color.
    pub best: Option<([u32; 3], u32)>,
    /// Number of `(x, y, color)` sweep positions attaining `best_count`.
    pub ties: usize,
    pub examined: u64,
}

impl Scan {
    pub fn threshold(&self) -> usize {
        self.best_count + 1
    }

    fn merge(self, other: Scan) -> Scan {
        let examined = self.examined + other.examined;
        let (mut winner, ties) = match self.best_count.cmp(&other.best_count) {
            std::cmp::Ordering::Greater => (self, self.ties),
            std::cmp::Ordering::Less => (other, other.ties),
            std::cmp::Ordering::Equal => {
                let w = match (self.best, other.best) {
                    (Some(a), Some(b)) if b < a => other,
                    (None, Some(_)) => other,
                    _ => self,
                };
                (w, self.ties + other.ties)
            }
        };
        winner.ties = ties;
        winner.examined = examined;
        winner
    }

    fn empty() -> Scan {
        Scan {
            best_count: 0,
            best: None,
            ties: 0,
            examined: 0,
        }
    }
}

struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted values `< bound`.
    fn count_below(&self, bound: usize) -> usize {
        let mut i = bound.min(self.tree.len() - 1);
        let mut s = 0;
        while i > 0 {
            s += self.tree[i] as usize;
            i &= i - 1;
        }
        s
    }

    /// Smallest value `v` such that `count_below(v + 1) >= target` (target ≥ 1).
    fn kth(&self, target: usize) -> usize {
        let mut pos = 0;
        let mut rem = target;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && (self.tree[next] as usize) < rem {
                pos = next;
                rem -= self.tree[next] as usize;
            }
            step >>= 1;
        }
        pos
    }
}

fn verifier_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("COLORER_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("verifier thread pool")
    })
}

const PARALLEL_MIN_POINTS: usize = 96;

/// Sweep over canonical apices in rank space.
pub(crate) fn scan_ranked(ranks: &[[u32; 3]], colors: &[u32], k: usize) -> Scan {
    let n = ranks.len();
    if n == 0 || k == 0 {
        return Scan::empty();
    }
    let max_x = ranks.iter().map(|r| r[0]).max().unwrap();
    let z_size = ranks.iter().map(|r| r[2]).max().unwrap() as usize + 1;
    let mut by_y: Vec<usize> = (0..n).collect();
    by_y.sort_by_key(|&i| (ranks[i][1], i));

    let per_x = |x: u32| -> Scan {
        let mut scan = Scan::empty();
        let mut fen = Fenwick::new(z_size);
        let mut min_z = vec![u32::MAX; k];
        let mut inserted = 0usize;
        let prefix: Vec<usize> = by_y.iter().copied().filter(|&i| ranks[i][0] <= x).collect();
        let mut pos = 0;
        while pos < prefix.len() {
            let y = ranks[prefix[pos]][1];
            while pos < prefix.len() && ranks[prefix[pos]][1] == y {
                let i = prefix[pos];
                fen.add(ranks[i][2] as usize);
                let c = colors[i] as usize;
                min_z[c] = min_z[c].min(ranks[i][2]);
                inserted += 1;
                pos += 1;
            }
            for (c, &mz) in min_z.iter().enumerate() {
                scan.examined += 1;
                let count = if mz == u32::MAX {
                    inserted
                } else {
                    fen.count_below(mz as usize)
                };
                if count == 0 || count < scan.best_count {
                    continue;
                }
                let z = fen.kth(count) as u32;
                let key = ([x, y, z], c as u32);
                if count > scan.best_count {
                    scan.best_count = count;
                    scan.best = Some(key);
                    scan.ties = 1;
                } else {
                    scan.ties += 1;
                    if scan.best.is_none_or(|b| key < b) {
                        scan.best = Some(key);
                    }
                }
            }
        }
        scan
    };

    if n >= PARALLEL_MIN_POINTS {
        verifier_pool().install(|| {
            (0..=max_x)
                .into_par_iter()
                .map(per_x)
                .reduce(Scan::empty, Scan::merge)
        })
    } else {
        (0..=max_x).map(per_x).fold(Scan::empty(), Scan::merge)
    }
}

fn coord_for_rank(set: &PointSet, ranks: &[[u32; 3]], axis: usize, rank: u32) -> Coord {
    let i = ranks
        .iter()
        .position(|r| r[axis] == rank)
        .expect("rank comes from the point set");
    set.get(i).coord(axis).clone()
}

fn witness_from_scan(set: &PointSet, ranks: &[[u32; 3]], best: ([u32; 3], u32)) -> Witness {
    let (apex_rank, color) = best;
    let apex = Octant::negative(
        coord_for_rank(set, ranks, 0, apex_rank[0]),
        coord_for_rank(set, ranks, 1, apex_rank[1]),
        coord_for_rank(set, ranks, 2, apex_rank[2]),
    );
    let points = (0..ranks.len())
        .filter(|&i| rank_dominates(&apex_rank, &ranks[i]))
        .collect();
    Witness {
        apex,
        points,
        missing_color: Color(color),
    }
}

fn color_indices(coloring: &Coloring, n: usize) -> Vec<u32> {
    assert_eq!(
        coloring.len(),
        n,
        "coloring must be total over the point set"
    );
    coloring.colors().iter().map(|c| c.0).collect()
}

/// Exact minimal colorful threshold of a total coloring.
///
/// Ties between equally large witnesses are broken by the lexicographically
/// smallest apex (in rank space) and then the smallest missing color, so the
/// result does not depend on thread scheduling.
pub fn colorfulness_report(set: &PointSet, coloring: &Coloring) -> ColorfulnessReport {
    let ranks = set.ranks();
    let colors = color_indices(coloring, set.len());
    let scan = scan_ranked(&ranks, &colors, coloring.k());
    ColorfulnessReport {
        k: coloring.k(),
        minimal_colorful_threshold: scan.threshold(),
        witness: scan.best.map(|b| witness_from_scan(set, &ranks, b)),
        octants_examined: scan.examined,
    }
}

/// Literal scan of all `n³` canonical apices, `O(n⁴)`.
pub fn colorfulness_report_exhaustive(set: &PointSet, coloring: &Coloring) -> ColorfulnessReport {
    let ranks = set.ranks();
    let colors = color_indices(coloring, set.len());
    let k = coloring.k();
    let n = ranks.len();
    let mut best: Option<(usize, [u32; 3], u32)> = None;
    let mut examined = 0u64;
    let mut seen = vec![false; k];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                examined += 1;
                let apex = [ranks[a][0], ranks[b][1], ranks[c][2]];
                seen.iter_mut().for_each(|s| *s = false);
                let mut count = 0;
                for i in 0..n {
                    if rank_dominates(&apex, &ranks[i]) {
                        count += 1;
                        seen[colors[i] as usize] = true;
                    }
                }
                if let Some(missing) = seen.iter().position(|s| !s) {
                    let cand = (count, apex, missing as u32);
                    let better = match best {
                        None => count > 0,
                        Some((bc, ba, bm)) => {
                            count > bc || (count == bc && (apex, missing as u32) < (ba, bm))
                        }
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    let (threshold, witness) = match best {
        Some((count, apex, missing)) => (
            count + 1,
            Some(witness_from_scan(set, &ranks, (apex, missing))),
        ),
        None => (1, None),
    };
    ColorfulnessReport {
        k,
        minimal_colorful_threshold: threshold,
        witness,
        octants_examined: examined,
    }
}

/// Every combination apex `(p_x, q_y, r_z)` over `p, q, r ∈ P`, in
/// lexicographic index order.
pub fn canonical_apices(set: &PointSet) -> impl Iterator<Item = Octant> + '_ {
    let n = set.len();
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| {
            (0..n).map(move |c| {
                Octant::negative(
                    set.get(a).x.clone(),
                    set.get(b).y.clone(),
                    set.get(c).z.clone(),
                )
            })
        })
    })
}

/// All traces `octant ∩ P` (as sorted index lists) realized by canonical
/// apices, plus the empty trace.
pub fn canonical_patterns(set: &PointSet) -> BTreeSet<Vec<usize>> {
    let ranks = set.ranks();
    let n = ranks.len();
    let mut out = BTreeSet::new();
    out.insert(Vec::new());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let apex = [ranks[a][0], ranks[b][1], ranks[c][2]];
                out.insert(
                    (0..n)
                        .filter(|&i| rank_dominates(&apex, &ranks[i]))
                        .collect(),
                );
            }
        }
    }
    out
}

/// Realizable traces by subset enumeration: `S` is an octant trace iff no
/// point outside `S` lies below the coordinate-wise maximum of `S`.
/// Exponential; meant for `n ≤ 20`.
pub fn realizable_patterns_by_subsets(set: &PointSet) -> BTreeSet<Vec<usize>> {
    let ranks = set.ranks();
    let n = ranks.len();
    assert!(n <= 20, "subset enumeration is limited to 20 points");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.is_empty() {
            out.insert(members);
            continue;
        }
        let mut max = [0u32; 3];
        for &i in &members {
            for axis in 0..3 {
                max[axis] = max[axis].max(ranks[i][axis]);
            }
        }
        let closed = (0..n).all(|i| mask >> i & 1 == 1 || !rank_dominates(&max, &ranks[i]));
        if closed {
            out.insert(members);
        }
    }
    out
}

/// A cell of the endpoint arrangement of a set of closed intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell<T> {
    /// Open gap between two consecutive endpoints.
    Open(T, T),
    Vertex(T),
}

/// Leftmost violating cell, preferring open cells over endpoints: a cell
/// covered by at least `d` intervals whose assigned colors are fewer than
/// two distinct values. Uncolored intervals count toward depth only.
pub fn properness_violation_cell<T: Ord + Clone>(
    intervals: &[(T, T, Option<Color>)],
    d: usize,
) -> Option<(Cell<T>, Vec<usize>)> {
    let mut endpoints: Vec<T> = intervals
        .iter()
        .flat_map(|(l, r, _)| [l.clone(), r.clone()])
        .collect();
    endpoints.sort();
    endpoints.dedup();

    let mut starts: Vec<usize> = (0..intervals.len()).collect();
    starts.sort_by(|&a, &b| intervals[a].0.cmp(&intervals[b].0));
    let mut ends: Vec<usize> = (0..intervals.len()).collect();
    ends.sort_by(|&a, &b| intervals[a].1.cmp(&intervals[b].1));

    let max_color = intervals
        .iter()
        .filter_map(|iv| iv.2.map(|c| c.0 as usize + 1))
        .max()
        .unwrap_or(0);
    let mut per_color = vec![0usize; max_color];
    let mut distinct = 0usize;
    let mut depth = 0usize;
    let (mut si, mut ei) = (0, 0);
    let mut vertex_hit: Option<usize> = None;
    let mut open_hit: Option<usize> = None;

    for (pos, e) in endpoints.iter().enumerate() {
        while si < starts.len() && intervals[starts[si]].0 == *e {
            depth += 1;
            if let Some(c) = intervals[starts[si]].2 {
                per_color[c.0 as usize] += 1;
                if per_color[c.0 as usize] == 1 {
                    distinct += 1;
                }
            }
            si += 1;
        }
        if vertex_hit.is_none() && depth >= d && distinct < 2 {
            vertex_hit = Some(pos);
        }
        while ei < ends.len() && intervals[ends[ei]].1 == *e {
            depth -= 1;
            if let Some(c) = intervals[ends[ei]].2 {
                per_color[c.0 as usize] -= 1;
                if per_color[c.0 as usize] == 0 {
                    distinct -= 1;
                }
            }
            ei += 1;
        }
        if pos + 1 < endpoints.len() && depth >= d && distinct < 2 {
            open_hit = Some(pos);
            break;
        }
    }

    let cell = match (open_hit, vertex_hit) {
        (Some(pos), _) => Cell::Open(endpoints[pos].clone(), endpoints[pos + 1].clone()),
        (None, Some(pos)) => Cell::Vertex(endpoints[pos].clone()),
        (None, None) => return None,
    };
    let covering = intervals
        .iter()
        .enumerate()
        .filter(|(_, (l, r, _))| match &cell {
            Cell::Open(a, b) => l <= a && b <= r,
            Cell::Vertex(v) => l <= v && v <= r,
        })
        .map(|(i, _)| i)
        .collect();
    Some((cell, covering))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalViolation {
    pub point: Coord,
    pub covering: Vec<usize>,
}

/// Exact properness check over the atomic cells of the endpoint arrangement.
/// The witness is a cell midpoint when an open cell violates, otherwise an
/// endpoint.
pub fn interval_properness_violation(
    intervals: &[((Coord, Coord), Option<Color>)],
    d: usize,
) -> Option<IntervalViolation> {
    let flat: Vec<(Coord, Coord, Option<Color>)> = intervals
        .iter()
        .map(|((l, r), c)| (l.clone(), r.clone(), *c))
        .collect();
    properness_violation_cell(&flat, d).map(|(cell, covering)| IntervalViolation {
        point: match cell {
            Cell::Open(a, b) => a.midpoint(&b),
            Cell::Vertex(v) => v,
        },
        covering,
    })
}
