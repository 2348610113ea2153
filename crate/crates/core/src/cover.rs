//! Covers of the non-dominating region of an independent set.
//!
//! For an independent set `P` in general position, [`build_octant_cover`]
//! returns `2|P| + 1` negative octants whose interiors avoid `P` and whose
//! union contains every point of space that dominates no point of `P`.
//!
//! [`validate_cover`] checks those properties exactly on any candidate
//! cover. Coverage is decided on the arrangement cut out by the source and
//! apex coordinates: along each vertical line of that arrangement the region
//! to cover is `z < min{q_z : q below the line}` and the covered part is
//! `z ≤ max{apex_z : octant above the line}`, so one comparison per line
//! settles it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    enforce_general_position, first_dominating_pair, Containment, Coord, ExtCoord,
    GeneralPositionPolicy, Octant, Point3, PointSet,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctantCover {
    source: PointSet,
    octants: Vec<Octant>,
}

impl OctantCover {
    /// Wrap an arbitrary candidate cover, e.g. for validation.
    pub fn new(source: PointSet, octants: Vec<Octant>) -> Self {
        OctantCover { source, octants }
    }

    pub fn source(&self) -> &PointSet {
        &self.source
    }

    pub fn octants(&self) -> &[Octant] {
        &self.octants
    }

    pub fn into_octants(self) -> Vec<Octant> {
        self.octants
    }
}

pub fn build_octant_cover(set: &PointSet) -> Result<OctantCover> {
    enforce_general_position(set, GeneralPositionPolicy::Reject)?;
    if let Some((dominating, dominated)) = first_dominating_pair(set) {
        return Err(Error::NotIndependent {
            dominating,
            dominated,
        });
    }
    let inf = || ExtCoord::PlusInfinity;
    let fin = |c: &Coord| ExtCoord::Finite(c.clone());

    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| set.get(a).z.cmp(&set.get(b).z));

    let Some((&first, rest)) = order.split_first() else {
        return Ok(OctantCover::new(
            set.clone(),
            vec![Octant::negative(inf(), inf(), inf())],
        ));
    };
    let p = set.get(first);
    let mut octants = vec![
        Octant::negative(fin(&p.x), inf(), inf()),
        Octant::negative(inf(), fin(&p.y), inf()),
        Octant::negative(inf(), inf(), fin(&p.z)),
    ];

    for (step, &idx) in rest.iter().enumerate() {
        let p = set.get(idx);
        let earlier = &order[..=step];
        let mut next: Vec<Octant> = octants
            .iter()
            .map(|o| {
                if o.contains(p, Containment::Closed) {
                    o.with_apex_coord(2, fin(&p.z))
                } else {
                    o.clone()
                }
            })
            .collect();
        let left_y = earlier
            .iter()
            .map(|&j| set.get(j))
            .filter(|q| q.x < p.x)
            .map(|q| fin(&q.y))
            .min()
            .unwrap_or_else(inf);
        let bottom_x = earlier
            .iter()
            .map(|&j| set.get(j))
            .filter(|q| q.y < p.y)
            .map(|q| fin(&q.x))
            .min()
            .unwrap_or_else(inf);
        next.push(Octant::negative(fin(&p.x), left_y, inf()));
        next.push(Octant::negative(bottom_x, fin(&p.y), inf()));
        octants = next;
    }
    debug_assert_eq!(octants.len(), 2 * set.len() + 1);
    Ok(OctantCover::new(set.clone(), octants))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub expected_size: usize,
    pub actual_size: usize,
    /// `(octant, point)` with the point strictly inside the octant.
    pub interior_violation: Option<(usize, usize)>,
    /// A point dominating no source point that no octant contains.
    pub uncovered: Option<Point3>,
    pub grid_lines_checked: usize,
    pub random_probes_checked: usize,
}

impl CoverReport {
    pub fn cardinality_ok(&self) -> bool {
        self.expected_size == self.actual_size
    }

    pub fn avoids_interiors(&self) -> bool {
        self.interior_violation.is_none()
    }

    pub fn covers(&self) -> bool {
        self.uncovered.is_none()
    }

    pub fn passed(&self) -> bool {
        self.cardinality_ok() && self.avoids_interiors() && self.covers()
    }
}

/// Coordinates of one axis mapped to positions: value `i` sits at `2i + 1`,
/// the gaps around it at even positions, and `+∞` at `2m + 1`.
struct AxisGrid {
    values: Vec<Coord>,
}

impl AxisGrid {
    fn new(mut values: Vec<Coord>) -> Self {
        values.sort();
        values.dedup();
        AxisGrid { values }
    }

    fn top(&self) -> usize {
        2 * self.values.len()
    }

    fn pos(&self, c: &Coord) -> usize {
        2 * self.values.binary_search(c).expect("coordinate registered") + 1
    }

    fn pos_ext(&self, c: &ExtCoord) -> usize {
        match c {
            ExtCoord::Finite(v) => self.pos(v),
            ExtCoord::PlusInfinity => self.top() + 1,
        }
    }

    fn value(&self, pos: usize) -> Coord {
        let m = self.values.len();
        if m == 0 {
            return Coord::zero();
        }
        if pos % 2 == 1 {
            return self.values[pos / 2].clone();
        }
        let i = pos / 2;
        if i == 0 {
            &self.values[0] - &Coord::one()
        } else if i == m {
            &self.values[m - 1] + &Coord::one()
        } else {
            self.values[i - 1].midpoint(&self.values[i])
        }
    }
}

struct PositionSpace {
    axes: [AxisGrid; 3],
    sources: Vec<[usize; 3]>,
    octants: Vec<[usize; 3]>,
}

impl PositionSpace {
    fn new(source: &PointSet, octants: &[Octant]) -> Self {
        let axes = [0, 1, 2].map(|a| {
            let mut vals: Vec<Coord> = source.iter().map(|p| p.coord(a).clone()).collect();
            vals.extend(octants.iter().filter_map(|o| o.apex()[a].finite().cloned()));
            AxisGrid::new(vals)
        });
        let sources = source
            .iter()
            .map(|p| [0, 1, 2].map(|a| axes[a].pos(p.coord(a))))
            .collect();
        let octants = octants
            .iter()
            .map(|o| [0, 1, 2].map(|a| axes[a].pos_ext(&o.apex()[a])))
            .collect();
        PositionSpace {
            axes,
            sources,
            octants,
        }
    }

    fn interior_violation(&self) -> Option<(usize, usize)> {
        for (t, o) in self.octants.iter().enumerate() {
            for (j, s) in self.sources.iter().enumerate() {
                if (0..3).all(|a| s[a] < o[a]) {
                    return Some((t, j));
                }
            }
        }
        None
    }

    fn point(&self, pos: [usize; 3]) -> Point3 {
        Point3 {
            x: self.axes[0].value(pos[0]),
            y: self.axes[1].value(pos[1]),
            z: self.axes[2].value(pos[2]),
        }
    }

    /// Exhaustive coverage check; returns the first uncovered position and
    /// the number of vertical lines examined.
    fn uncovered(&self) -> (Option<[usize; 3]>, usize) {
        let gx = self.axes[0].top() + 1;
        let gy = self.axes[1].top() + 1;
        let none_dom = self.axes[2].top() + 1;
        let mut zdom = vec![none_dom; gx * gy];
        for s in &self.sources {
            let cell = &mut zdom[s[0] * gy + s[1]];
            *cell = (*cell).min(s[2]);
        }
        for x in 0..gx {
            for y in 0..gy {
                let mut v = zdom[x * gy + y];
                if x > 0 {
                    v = v.min(zdom[(x - 1) * gy + y]);
                }
                if y > 0 {
                    v = v.min(zdom[x * gy + y - 1]);
                }
                zdom[x * gy + y] = v;
            }
        }
        let mut zcov = vec![-1i64; gx * gy];
        for o in &self.octants {
            let (x, y) = (o[0].min(gx - 1), o[1].min(gy - 1));
            let cell = &mut zcov[x * gy + y];
            *cell = (*cell).max(o[2] as i64);
        }
        for x in (0..gx).rev() {
            for y in (0..gy).rev() {
                let mut v = zcov[x * gy + y];
                if x + 1 < gx {
                    v = v.max(zcov[(x + 1) * gy + y]);
                }
                if y + 1 < gy {
                    v = v.max(zcov[x * gy + y + 1]);
                }
                zcov[x * gy + y] = v;
            }
        }
        for x in 0..gx {
            for y in 0..gy {
                let (dom, cov) = (zdom[x * gy + y] as i64, zcov[x * gy + y]);
                // Required z positions are 0..dom; covered are 0..=cov.
                if cov < dom - 1 {
                    return (Some([x, y, (cov + 1) as usize]), gx * gy);
                }
            }
        }
        (None, gx * gy)
    }

    fn probe(&self, pos: [usize; 3]) -> ProbeOutcome {
        if self.sources.iter().any(|s| (0..3).all(|a| s[a] <= pos[a])) {
            return ProbeOutcome::Dominating;
        }
        if self.octants.iter().any(|o| (0..3).all(|a| pos[a] <= o[a])) {
            ProbeOutcome::Covered
        } else {
            ProbeOutcome::Uncovered
        }
    }
}

enum ProbeOutcome {
    Dominating,
    Covered,
    Uncovered,
}

const PROBE_SEED: u64 = 0x0c7a_57ee_d5ee_d001;

/// Check the three cover properties. Coverage is decided exhaustively on
/// the coordinate arrangement; `probes` extra random points are tested on
/// top of that, skipping the ones that dominate a source point.
pub fn validate_cover(cover: &OctantCover, probes: usize) -> CoverReport {
    let space = PositionSpace::new(&cover.source, &cover.octants);
    let (hole, lines) = space.uncovered();
    let mut uncovered = hole.map(|p| space.point(p));

    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut checked = 0;
    for _ in 0..probes {
        let pos = [0, 1, 2].map(|a| rng.gen_range(0..=space.axes[a].top()));
        match space.probe(pos) {
            ProbeOutcome::Dominating => {}
            ProbeOutcome::Covered => checked += 1,
            ProbeOutcome::Uncovered => {
                checked += 1;
                if uncovered.is_none() {
                    uncovered = Some(space.point(pos));
                }
            }
        }
    }

    CoverReport {
        expected_size: 2 * cover.source.len() + 1,
        actual_size: cover.octants.len(),
        interior_violation: space.interior_violation(),
        uncovered,
        grid_lines_checked: lines,
        random_probes_checked: checked,
    }
}

/// Search for a family of at most `size` octants avoiding the interior of
/// `set` and covering its non-dominating region.
///
/// Apex coordinates are drawn from the source coordinates and `+∞`. This
/// loses nothing: raising an apex coordinate to the next source value does
/// not change which points are strictly below it, and only grows coverage.
pub fn find_small_cover(set: &PointSet, size: usize) -> Option<Vec<Octant>> {
    let axis_values = |a: usize| {
        let mut v: Vec<ExtCoord> = set
            .iter()
            .map(|p| ExtCoord::Finite(p.coord(a).clone()))
            .collect();
        v.push(ExtCoord::PlusInfinity);
        v.sort();
        v.dedup();
        v
    };
    let (xs, ys, zs) = (axis_values(0), axis_values(1), axis_values(2));
    let mut candidates = Vec::new();
    for x in &xs {
        for y in &ys {
            for z in &zs {
                let o = Octant::negative(x.clone(), y.clone(), z.clone());
                if set.iter().all(|p| !o.contains(p, Containment::Interior)) {
                    candidates.push(o);
                }
            }
        }
    }
    let take = size.min(candidates.len());
    let mut chosen: Vec<usize> = (0..take).collect();
    loop {
        let family: Vec<Octant> = chosen.iter().map(|&i| candidates[i].clone()).collect();
        let space = PositionSpace::new(set, &family);
        if space.uncovered().0.is_none() {
            return Some(family);
        }
        // Next combination in lexicographic order.
        let mut i = take;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if chosen[i] < candidates.len() - take + i {
                break;
            }
        }
        chosen[i] += 1;
        for j in i + 1..take {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apices(cover: &OctantCover) -> Vec<String> {
        cover.octants().iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn empty_and_singleton() {
        let c = build_octant_cover(&PointSet::empty()).unwrap();
        assert_eq!(apices(&c), vec!["inf inf inf"]);
        assert!(validate_cover(&c, 100).passed());

        let c = build_octant_cover(&PointSet::from_triples(&[(0, 0, 0)]).unwrap()).unwrap();
        assert_eq!(apices(&c), vec!["0 inf inf", "inf 0 inf", "inf inf 0"]);
        assert!(validate_cover(&c, 100).passed());
    }

    #[test]
    fn two_point_induction_by_hand() {
        let set = PointSet::from_triples(&[(2, -2, -2), (1, -1, -1)]).unwrap();
        let c = build_octant_cover(&set).unwrap();
        assert_eq!(
            apices(&c),
            vec![
                "2 inf -1",
                "inf -2 inf",
                "inf inf -2",
                "1 inf inf",
                "2 -1 inf"
            ]
        );
        assert!(validate_cover(&c, 500).passed());
    }

    #[test]
    fn missing_octant_leaves_a_hole() {
        let set = PointSet::from_triples(&[(0, 0, 0)]).unwrap();
        let mut octants = build_octant_cover(&set).unwrap().into_octants();
        octants.remove(1);
        let report = validate_cover(&OctantCover::new(set.clone(), octants), 0);
        assert!(!report.cardinality_ok());
        assert!(report.avoids_interiors());
        let hole = report.uncovered.expect("hole expected");
        // The hole dominates nothing and lies outside both remaining octants.
        assert!(hole.x > Coord::zero() && hole.z > Coord::zero());
        assert!(hole.y <= Coord::zero());
    }

    #[test]
    fn raised_apex_swallows_a_point() {
        let set = PointSet::from_triples(&[(2, -2, -2), (1, -1, -1)]).unwrap();
        let mut octants = build_octant_cover(&set).unwrap().into_octants();
        // (2, inf, -1) raised to z = 0 now holds (1, -1, -1) inside.
        octants[0] = Octant::negative(2, ExtCoord::PlusInfinity, 0);
        let report = validate_cover(&OctantCover::new(set, octants), 0);
        assert_eq!(report.interior_violation, Some((0, 1)));
    }

    #[test]
    fn rejects_bad_input() {
        let chain = PointSet::from_triples(&[(0, 0, 0), (1, 1, 1)]).unwrap();
        assert!(matches!(
            build_octant_cover(&chain),
            Err(Error::NotIndependent { .. })
        ));
        let tied = PointSet::from_triples(&[(0, 1, 0), (1, 0, 0)]).unwrap();
        assert!(matches!(
            build_octant_cover(&tied),
            Err(Error::DegenerateInput { .. })
        ));
    }

    #[test]
    fn tight_family_needs_five_octants() {
        let set = PointSet::from_triples(&[(1, -1, -1), (2, -2, -2)]).unwrap();
        assert!(find_small_cover(&set, 4).is_none());
        assert!(find_small_cover(&set, 5).is_some());
    }

    #[test]
    fn axis_grid_positions() {
        let g = AxisGrid::new(vec![Coord::from(3), Coord::from(1), Coord::from(3)]);
        assert_eq!(g.pos(&Coord::from(1)), 1);
        assert_eq!(g.pos(&Coord::from(3)), 3);
        assert_eq!(g.value(0), Coord::from(0));
        assert_eq!(g.value(2), Coord::from(2));
        assert_eq!(g.value(4), Coord::from(4));
        assert_eq!(g.pos_ext(&ExtCoord::PlusInfinity), 5);
    }
}
