//! Containment-preserving maps from planar families and dual octant
//! families to primal point sets.
//!
//! * A normalized triangle `{u ≤ a, v ≤ b, u + v ≥ −c}` is the trace of the
//!   negative octant with apex `(a, b, c)` on the plane `x + y + z = 0`,
//!   parameterized by `(u, v) ↦ (u, v, −u − v)`.
//! * A bottomless rectangle `[l, r] × (−∞, t]` is the trace of the octant
//!   with apex `(r, −l, t)` on the plane `x + y = 0`, parameterized by
//!   `(u, v) ↦ (u, −u, v)`.
//! * An interval `[l, r]` inserted at time `s` is the bottomless rectangle
//!   `[l, r] × (−∞, −s]`; it is present at time `T` at position `x` iff the
//!   rectangle contains `(x, −T)`.
//! * A negative octant with apex `a` contains `q` iff the point `−a` lies in
//!   the negative octant with apex `−q`, which turns a family of octants
//!   into a point set.

use std::fmt;

use crate::coloring::{color_point_set, BaseColorerConfig, PipelineResult};
use crate::error::{Error, Result};
use crate::geometry::{symbolic_perturb, Containment, Coord, Octant, Point3, PointSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub u: Coord,
    pub v: Coord,
}

impl Point2 {
    pub fn new(u: impl Into<Coord>, v: impl Into<Coord>) -> Self {
        Point2 {
            u: u.into(),
            v: v.into(),
        }
    }
}

/// `{(u, v) : u ≤ a, v ≤ b, u + v ≥ −c}`, a homothet of the reference
/// triangle with vertices `(0, 0)`, `(0, −1)`, `(−1, 0)` scaled by
/// `a + b + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedTriangle {
    a: Coord,
    b: Coord,
    c: Coord,
}

impl NormalizedTriangle {
    pub fn new(a: impl Into<Coord>, b: impl Into<Coord>, c: impl Into<Coord>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let sum = &(&a + &b) + &c;
        if sum.is_negative() {
            return Err(Error::EmptyHomothet {
                sum: sum.to_string(),
            });
        }
        Ok(NormalizedTriangle { a, b, c })
    }

    pub fn params(&self) -> (&Coord, &Coord, &Coord) {
        (&self.a, &self.b, &self.c)
    }

    pub fn contains(&self, q: &Point2) -> bool {
        q.u <= self.a && q.v <= self.b && &q.u + &q.v >= -&self.c
    }
}

impl fmt::Display for NormalizedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

/// `[left, right] × (−∞, top]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BottomlessRect {
    left: Coord,
    right: Coord,
    top: Coord,
}

impl BottomlessRect {
    pub fn new(
        left: impl Into<Coord>,
        right: impl Into<Coord>,
        top: impl Into<Coord>,
    ) -> Result<Self> {
        let (left, right, top) = (left.into(), right.into(), top.into());
        if left >= right {
            return Err(Error::InvalidParameter(format!(
                "bottomless rectangle needs left < right, got [{left}, {right}]"
            )));
        }
        Ok(BottomlessRect { left, right, top })
    }

    pub fn left(&self) -> &Coord {
        &self.left
    }

    pub fn right(&self) -> &Coord {
        &self.right
    }

    pub fn top(&self) -> &Coord {
        &self.top
    }

    pub fn contains(&self, q: &Point2) -> bool {
        self.left <= q.u && q.u <= self.right && q.v <= self.top
    }
}

impl fmt::Display for BottomlessRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.left, self.right, self.top)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimedInterval {
    pub left: Coord,
    pub right: Coord,
    pub insert_time: Coord,
}

impl TimedInterval {
    pub fn new(
        left: impl Into<Coord>,
        right: impl Into<Coord>,
        insert_time: impl Into<Coord>,
    ) -> Result<Self> {
        let (left, right, insert_time) = (left.into(), right.into(), insert_time.into());
        if left >= right {
            return Err(Error::InvalidParameter(format!(
                "interval needs left < right, got [{left}, {right}]"
            )));
        }
        Ok(TimedInterval {
            left,
            right,
            insert_time,
        })
    }

    /// Present at `time` and covering `x`.
    pub fn covers_at(&self, x: &Coord, time: &Coord) -> bool {
        self.insert_time <= *time && self.left <= *x && *x <= self.right
    }
}

/// Planar point standing for position `x` at time `time`.
pub fn interval_query_point(x: &Coord, time: &Coord) -> Point2 {
    Point2 {
        u: x.clone(),
        v: -time,
    }
}

pub fn timed_interval_to_rect(t: &TimedInterval) -> BottomlessRect {
    BottomlessRect {
        left: t.left.clone(),
        right: t.right.clone(),
        top: -&t.insert_time,
    }
}

pub fn rect_to_octant(r: &BottomlessRect) -> Octant {
    Octant::negative(r.right.clone(), -&r.left, r.top.clone())
}

pub fn rect_point_lift(q: &Point2) -> Point3 {
    Point3 {
        x: q.u.clone(),
        y: -&q.u,
        z: q.v.clone(),
    }
}

pub fn triangle_to_octant(t: &NormalizedTriangle) -> Octant {
    Octant::negative(t.a.clone(), t.b.clone(), t.c.clone())
}

pub fn plane_point_lift(q: &Point2) -> Point3 {
    Point3 {
        x: q.u.clone(),
        y: q.v.clone(),
        z: -&(&q.u + &q.v),
    }
}

/// Negated apices of a family of negative octants, in order. Repeated
/// octants give repeated points.
pub fn dual_points(octants: &[Octant]) -> Result<Vec<Point3>> {
    octants
        .iter()
        .enumerate()
        .map(|(index, o)| {
            o.finite_apex()
                .map(|a| a.neg())
                .ok_or(Error::InfiniteApex { index })
        })
        .collect()
}

/// Map every octant with apex `a` to the point `−a`.
pub fn dualize_octants(octants: &[Octant]) -> Result<PointSet> {
    PointSet::new(dual_points(octants)?)
}

/// The negative octant with apex `−q`, which contains the dual point of
/// exactly those octants that contain `q`.
pub fn dual_query_lift(q: &Point3) -> Octant {
    Octant::negative_at(&q.neg())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualFamily {
    Triangles(Vec<NormalizedTriangle>),
    Rects(Vec<BottomlessRect>),
    Intervals(Vec<TimedInterval>),
    Octants(Vec<Octant>),
}

impl DualFamily {
    pub fn len(&self) -> usize {
        match self {
            DualFamily::Triangles(v) => v.len(),
            DualFamily::Rects(v) => v.len(),
            DualFamily::Intervals(v) => v.len(),
            DualFamily::Octants(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn octants(&self) -> Vec<Octant> {
        match self {
            DualFamily::Triangles(v) => v.iter().map(triangle_to_octant).collect(),
            DualFamily::Rects(v) => v.iter().map(rect_to_octant).collect(),
            DualFamily::Intervals(v) => v
                .iter()
                .map(|t| rect_to_octant(&timed_interval_to_rect(t)))
                .collect(),
            DualFamily::Octants(v) => v.clone(),
        }
    }

    /// Indices of the members containing a planar query point. `None` for an
    /// octant family, which has no planar view.
    pub fn members_containing(&self, q: &Point2) -> Option<Vec<usize>> {
        let hits = |f: &dyn Fn(usize) -> bool| (0..self.len()).filter(|&i| f(i)).collect();
        match self {
            DualFamily::Triangles(v) => Some(hits(&|i| v[i].contains(q))),
            DualFamily::Rects(v) => Some(hits(&|i| v[i].contains(q))),
            DualFamily::Intervals(v) => Some(hits(&|i| timed_interval_to_rect(&v[i]).contains(q))),
            DualFamily::Octants(_) => None,
        }
    }

    /// The point of three-space standing for a planar query.
    pub fn lift(&self, q: &Point2) -> Option<Point3> {
        match self {
            DualFamily::Triangles(_) => Some(plane_point_lift(q)),
            DualFamily::Rects(_) | DualFamily::Intervals(_) => Some(rect_point_lift(q)),
            DualFamily::Octants(_) => None,
        }
    }
}

/// Primal points of a family: lifts every member to an octant and dualizes.
/// Repeated members are separated by the symbolic perturbation, which only
/// adds octant traces, so colorings of the result stay valid for the family.
pub fn family_points(family: &DualFamily) -> Result<PointSet> {
    let raw = dual_points(&family.octants())?;
    match PointSet::new(raw.clone()) {
        Ok(set) => Ok(set),
        Err(Error::DuplicatePoint { .. }) => PointSet::new(symbolic_perturb(&raw)),
        Err(e) => Err(e),
    }
}

/// Color a family of triangles, bottomless rectangles, timed intervals or
/// octants so that every point covered by at least the guaranteed number of
/// members is covered by all `k` colors. Member `i` gets color `i` of the
/// returned coloring.
pub fn color_dual_family(
    family: &DualFamily,
    k: usize,
    cfg: &BaseColorerConfig,
) -> Result<PipelineResult> {
    let set = family_points(family)?;
    color_point_set(&set, k, cfg)
}

/// Sends a reference triangle onto the normalized one, so that positive
/// homothets of the reference become [`NormalizedTriangle`]s.
///
/// The reference is given as `[corner, down, left]`: `corner` goes to
/// `(0, 0)`, `down` to `(0, −1)` and `left` to `(−1, 0)`. The map is affine
/// with rational coefficients, so everything stays exact.
#[derive(Clone, Debug)]
pub struct AffineNormalizer {
    origin: Point2,
    // Row-major 2x2 matrix.
    m: [[Coord; 2]; 2],
}

impl AffineNormalizer {
    pub fn new(reference: [Point2; 3]) -> Result<Self> {
        let [r0, r1, r2] = reference;
        let e1 = (&r1.u - &r0.u, &r1.v - &r0.v);
        let e2 = (&r2.u - &r0.u, &r2.v - &r0.v);
        let det = &(&e1.0 * &e2.1) - &(&e2.0 * &e1.1);
        if det == Coord::zero() {
            return Err(Error::DegenerateReference);
        }
        // E = [e1 e2] as columns, E^{-1} = [[e2.v, -e2.u], [-e1.v, e1.u]] / det.
        let inv = [
            [&e2.1 / &det, &(-&e2.0) / &det],
            [&(-&e1.1) / &det, &e1.0 / &det],
        ];
        // M = S E^{-1} with S = [[0, -1], [-1, 0]].
        let m = [[-&inv[1][0], -&inv[1][1]], [-&inv[0][0], -&inv[0][1]]];
        Ok(AffineNormalizer { origin: r0, m })
    }

    pub fn map(&self, q: &Point2) -> Point2 {
        let d = (&q.u - &self.origin.u, &q.v - &self.origin.v);
        Point2 {
            u: &(&self.m[0][0] * &d.0) + &(&self.m[0][1] * &d.1),
            v: &(&self.m[1][0] * &d.0) + &(&self.m[1][1] * &d.1),
        }
    }

    /// Normalize a positive homothet of the reference, given by the images
    /// of `[corner, down, left]`.
    pub fn normalize(&self, index: usize, vertices: &[Point2; 3]) -> Result<NormalizedTriangle> {
        let [s, d, l] = vertices.each_ref().map(|p| self.map(p));
        let scale = &s.v - &d.v;
        let ok = d.u == s.u && l.v == s.v && &s.u - &l.u == scale && !scale.is_negative();
        if !ok {
            return Err(Error::NotHomothet { index });
        }
        let c = &(&scale - &s.u) - &s.v;
        NormalizedTriangle::new(s.u, s.v, c)
    }
}

/// Closed-containment test of a planar family member against its octant
/// image, for a lifted query.
pub fn lifted_contains(octant: &Octant, lifted: &Point3) -> bool {
    octant.contains(lifted, Containment::Closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timed_interval_examples() {
        let r = timed_interval_to_rect(&TimedInterval::new(0, 2, 5).unwrap());
        assert_eq!(r, BottomlessRect::new(0, 2, -5).unwrap());
        assert_eq!(
            timed_interval_to_rect(&TimedInterval::new(0, 2, 0).unwrap()).top(),
            &Coord::from(0)
        );
        assert_eq!(
            timed_interval_to_rect(&TimedInterval::new(1, 3, -4).unwrap()).top(),
            &Coord::from(4)
        );
    }

    #[test]
    fn rect_examples() {
        let r = BottomlessRect::new(0, 2, 5).unwrap();
        let o = rect_to_octant(&r);
        assert_eq!(o.to_string(), "2 0 5");
        for (q, expect) in [
            (Point2::new(1, 4), true),
            (Point2::new(3, 4), false),
            (Point2::new(1, 6), false),
        ] {
            assert_eq!(r.contains(&q), expect);
            assert_eq!(lifted_contains(&o, &rect_point_lift(&q)), expect);
        }
        assert_eq!(rect_point_lift(&Point2::new(1, 4)), Point3::new(1, -1, 4));
    }

    #[test]
    fn triangle_examples() {
        let t = NormalizedTriangle::new(1, 1, 1).unwrap();
        let o = triangle_to_octant(&t);
        assert_eq!(plane_point_lift(&Point2::new(0, 0)), Point3::new(0, 0, 0));
        assert!(
            t.contains(&Point2::new(0, 0))
                && lifted_contains(&o, &plane_point_lift(&Point2::new(0, 0)))
        );
        assert!(
            !t.contains(&Point2::new(2, 0))
                && !lifted_contains(&o, &plane_point_lift(&Point2::new(2, 0)))
        );

        let dot = NormalizedTriangle::new(0, 0, 0).unwrap();
        assert!(dot.contains(&Point2::new(0, 0)));
        assert!(lifted_contains(
            &triangle_to_octant(&dot),
            &plane_point_lift(&Point2::new(0, 0))
        ));

        assert!(matches!(
            NormalizedTriangle::new(0, 0, -1),
            Err(Error::EmptyHomothet { .. })
        ));
    }

    #[test]
    fn dual_examples() {
        let o = Octant::negative(1, 2, 3);
        let q = Point3::new(0, 0, 0);
        assert!(lifted_contains(&o, &q));
        let p = dualize_octants(&[o]).unwrap();
        assert_eq!(p.get(0), &Point3::new(-1, -2, -3));
        assert!(lifted_contains(&dual_query_lift(&q), p.get(0)));

        let o = Octant::negative(0, 0, 0);
        let p = dualize_octants(std::slice::from_ref(&o)).unwrap();
        for (q, expect) in [(Point3::new(0, 0, 0), true), (Point3::new(1, 0, 0), false)] {
            assert_eq!(lifted_contains(&o, &q), expect);
            assert_eq!(lifted_contains(&dual_query_lift(&q), p.get(0)), expect);
        }
    }

    #[test]
    fn infinite_apex_cannot_be_dualized() {
        let o = Octant::negative(0, crate::geometry::ExtCoord::PlusInfinity, 0);
        assert!(matches!(
            dualize_octants(&[Octant::negative(1, 1, 1), o]),
            Err(Error::InfiniteApex { index: 1 })
        ));
    }

    #[test]
    fn repeated_members_are_separated() {
        let t = NormalizedTriangle::new(1, 2, 3).unwrap();
        let fam = DualFamily::Triangles(vec![t.clone(), t]);
        let set = family_points(&fam).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.is_general_position());
    }

    #[test]
    fn affine_normalization() {
        // Reference triangle with corner (1, 1), legs along +u and +v.
        let reference = [Point2::new(1, 1), Point2::new(3, 1), Point2::new(1, 3)];
        let norm = AffineNormalizer::new(reference.clone()).unwrap();
        assert_eq!(norm.map(&reference[0]), Point2::new(0, 0));
        assert_eq!(norm.map(&reference[1]), Point2::new(0, -1));
        assert_eq!(norm.map(&reference[2]), Point2::new(-1, 0));

        // Homothet with factor 3 translated by (5, -2).
        let member = [Point2::new(8, 1), Point2::new(14, 1), Point2::new(8, 7)];
        let t = norm.normalize(0, &member).unwrap();
        let centroid = Point2::new(10, 3);
        assert!(t.contains(&norm.map(&centroid)));
        assert!(!t.contains(&norm.map(&Point2::new(7, 1))));

        // Reflected copy is not a positive homothet.
        let flipped = [Point2::new(8, 1), Point2::new(2, 1), Point2::new(8, -5)];
        assert!(matches!(
            norm.normalize(4, &flipped),
            Err(Error::NotHomothet { index: 4 })
        ));
        assert!(matches!(
            AffineNormalizer::new([Point2::new(0, 0), Point2::new(1, 1), Point2::new(2, 2)]),
            Err(Error::DegenerateReference)
        ));
    }
}
