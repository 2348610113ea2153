//! Exact geometric primitives: coordinates, points, octants and the
//! dominance order they induce.
//!
//! Everything here is exact. Coordinates are arbitrary-precision rationals,
//! and the hot loops elsewhere in the crate work on per-axis ranks computed
//! by [`PointSet::ranks`], which preserve every `<`, `=` and `>` relation
//! between coordinates of the set.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(BigRational);

impl Coord {
    pub fn new(numer: i64, denom: i64) -> Self {
        Coord(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Coord(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn midpoint(&self, other: &Coord) -> Coord {
        Coord((&self.0 + &other.0) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn one() -> Self {
        Coord(BigRational::one())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord(BigRational::from_integer(BigInt::from(v)))
    }
}

impl std::ops::Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

impl std::ops::Neg for &Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-&self.0)
    }
}

impl std::ops::Add for &Coord {
    type Output = Coord;
    fn add(self, rhs: &Coord) -> Coord {
        Coord(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Coord {
    type Output = Coord;
    fn sub(self, rhs: &Coord) -> Coord {
        Coord(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &Coord {
    type Output = Coord;
    fn mul(self, rhs: &Coord) -> Coord {
        Coord(&self.0 * &rhs.0)
    }
}

impl std::ops::Div for &Coord {
    type Output = Coord;
    fn div(self, rhs: &Coord) -> Coord {
        Coord(&self.0 / &rhs.0)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints "p" for integers and "p/q" otherwise.
        write!(f, "{}", self.0)
    }
}

impl FromStr for Coord {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let parsed = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            BigRational::new(n, d)
        } else {
            let n: BigInt = s
                .parse()
                .map_err(|_| format!("not an exact number: {s:?}"))?;
            BigRational::from_integer(n)
        };
        Ok(Coord(parsed))
    }
}

/// A coordinate that may also be `+∞`, used for octant apices.
///
/// The derived order puts every finite value below `PlusInfinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtCoord {
    Finite(Coord),
    PlusInfinity,
}

impl ExtCoord {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtCoord::Finite(_))
    }

    pub fn finite(&self) -> Option<&Coord> {
        match self {
            ExtCoord::Finite(c) => Some(c),
            ExtCoord::PlusInfinity => None,
        }
    }

    /// Compare against a finite coordinate.
    pub fn cmp_coord(&self, c: &Coord) -> Ordering {
        match self {
            ExtCoord::Finite(v) => v.cmp(c),
            ExtCoord::PlusInfinity => Ordering::Greater,
        }
    }
}

impl From<Coord> for ExtCoord {
    fn from(c: Coord) -> Self {
        ExtCoord::Finite(c)
    }
}

impl From<i64> for ExtCoord {
    fn from(v: i64) -> Self {
        ExtCoord::Finite(Coord::from(v))
    }
}

impl fmt::Display for ExtCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtCoord::Finite(c) => c.fmt(f),
            ExtCoord::PlusInfinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtCoord {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtCoord::PlusInfinity),
            other => other.parse().map(ExtCoord::Finite),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: Coord,
    pub y: Coord,
    pub z: Coord,
}

impl Point3 {
    pub fn new(x: impl Into<Coord>, y: impl Into<Coord>, z: impl Into<Coord>) -> Self {
        Point3 {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn coord(&self, axis: usize) -> &Coord {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis {axis} out of range"),
        }
    }

    pub fn neg(&self) -> Point3 {
        Point3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

/// Closed octants contain their boundary; `Interior` uses strict
/// inequalities, and an infinite bound is never tight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Closed,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octant {
    apex: [ExtCoord; 3],
    sign: Sign,
}

impl Octant {
    pub fn negative(
        x: impl Into<ExtCoord>,
        y: impl Into<ExtCoord>,
        z: impl Into<ExtCoord>,
    ) -> Self {
        Octant {
            apex: [x.into(), y.into(), z.into()],
            sign: Sign::Negative,
        }
    }

    pub fn negative_at(p: &Point3) -> Self {
        Octant::negative(p.x.clone(), p.y.clone(), p.z.clone())
    }

    pub fn positive(apex: &Point3) -> Self {
        Octant {
            apex: [
                apex.x.clone().into(),
                apex.y.clone().into(),
                apex.z.clone().into(),
            ],
            sign: Sign::Positive,
        }
    }

    pub fn new(apex: [ExtCoord; 3], sign: Sign) -> Result<Self> {
        if sign == Sign::Positive && apex.iter().any(|c| !c.is_finite()) {
            return Err(Error::InfinitePositiveApex);
        }
        Ok(Octant { apex, sign })
    }

    pub fn apex(&self) -> &[ExtCoord; 3] {
        &self.apex
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn finite_apex(&self) -> Option<Point3> {
        Some(Point3 {
            x: self.apex[0].finite()?.clone(),
            y: self.apex[1].finite()?.clone(),
            z: self.apex[2].finite()?.clone(),
        })
    }

    pub(crate) fn with_apex_coord(&self, axis: usize, value: ExtCoord) -> Octant {
        let mut apex = self.apex.clone();
        apex[axis] = value;
        Octant {
            apex,
            sign: self.sign,
        }
    }

    pub fn contains(&self, p: &Point3, mode: Containment) -> bool {
        octant_contains(self, p, mode)
    }
}

impl fmt::Display for Octant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.apex[0], self.apex[1], self.apex[2])
    }
}

/// `p` dominates `q` when the closed negative octant with apex `p` contains `q`.
pub fn dominates(p: &Point3, q: &Point3) -> bool {
    q.x <= p.x && q.y <= p.y && q.z <= p.z
}

pub fn octant_contains(o: &Octant, p: &Point3, mode: Containment) -> bool {
    (0..3).all(|axis| {
        let ord = o.apex[axis].cmp_coord(p.coord(axis));
        // ord compares apex against point.
        match (o.sign, mode) {
            (Sign::Negative, Containment::Closed) => ord != Ordering::Less,
            (Sign::Negative, Containment::Interior) => ord == Ordering::Greater,
            (Sign::Positive, Containment::Closed) => ord != Ordering::Greater,
            (Sign::Positive, Containment::Interior) => ord == Ordering::Less,
        }
    })
}

/// A finite point set. Indices are stable identifiers and duplicates are
/// rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point3>,
}

impl PointSet {
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::DuplicatePoint {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_triples(triples: &[(i64, i64, i64)]) -> Result<Self> {
        PointSet::new(
            triples
                .iter()
                .map(|&(x, y, z)| Point3::new(x, y, z))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        PointSet { points: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn get(&self, index: usize) -> &Point3 {
        &self.points[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point3> {
        self.points.iter()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Dense per-axis ranks: equal coordinates share a rank, and ranks
    /// compare exactly like the coordinates they replace.
    pub fn ranks(&self) -> Vec<[u32; 3]> {
        let n = self.points.len();
        let mut out = vec![[0u32; 3]; n];
        let mut order: Vec<usize> = (0..n).collect();
        for axis in 0..3 {
            order.sort_by(|&a, &b| self.points[a].coord(axis).cmp(self.points[b].coord(axis)));
            let mut rank = 0u32;
            for (pos, &i) in order.iter().enumerate() {
                if pos > 0 && self.points[order[pos - 1]].coord(axis) != self.points[i].coord(axis)
                {
                    rank += 1;
                }
                out[i][axis] = rank;
            }
        }
        out
    }

    pub fn is_general_position(&self) -> bool {
        self.first_shared_coordinate().is_none()
    }

    fn first_shared_coordinate(&self) -> Option<(usize, usize, char)> {
        let n = self.points.len();
        let mut order: Vec<usize> = (0..n).collect();
        for (axis, name) in ['x', 'y', 'z'].into_iter().enumerate() {
            order.sort_by(|&a, &b| {
                self.points[a]
                    .coord(axis)
                    .cmp(self.points[b].coord(axis))
                    .then(a.cmp(&b))
            });
            for w in order.windows(2) {
                if self.points[w[0]].coord(axis) == self.points[w[1]].coord(axis) {
                    return Some((w[0].min(w[1]), w[0].max(w[1]), name));
                }
            }
        }
        None
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point3;
    type IntoIter = std::slice::Iter<'a, Point3>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[inline]
pub(crate) fn rank_dominates(p: &[u32; 3], q: &[u32; 3]) -> bool {
    q[0] <= p[0] && q[1] <= p[1] && q[2] <= p[2]
}

pub fn is_independent(set: &PointSet) -> bool {
    first_dominating_pair(set).is_none()
}

/// Returns `(dominating, dominated)` for the first comparable pair found.
pub fn first_dominating_pair(set: &PointSet) -> Option<(usize, usize)> {
    let ranks = set.ranks();
    let n = ranks.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && rank_dominates(&ranks[i], &ranks[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralPositionPolicy {
    Reject,
    SymbolicPerturb,
}

/// Reject repeated coordinates, or break ties by point index.
///
/// `SymbolicPerturb` orders each axis by `(coordinate, index)` and replaces
/// the coordinate by its position in that order, so the output is an
/// order-isomorphic integer point set. Sets already in general position are
/// returned unchanged under either policy.
pub fn enforce_general_position(set: &PointSet, policy: GeneralPositionPolicy) -> Result<PointSet> {
    match set.first_shared_coordinate() {
        None => Ok(set.clone()),
        Some((first, second, axis)) => match policy {
            GeneralPositionPolicy::Reject => Err(Error::DegenerateInput {
                first,
                second,
                axis,
            }),
            GeneralPositionPolicy::SymbolicPerturb => {
                let points = symbolic_perturb(set.points());
                PointSet::new(points)
            }
        },
    }
}

/// Order-isomorphic integer relabelling of `(coordinate, index)` pairs.
/// Accepts repeated points, which come out distinct.
pub fn symbolic_perturb(points: &[Point3]) -> Vec<Point3> {
    let n = points.len();
    let mut coords = vec![[0i64; 3]; n];
    let mut order: Vec<usize> = (0..n).collect();
    for axis in 0..3 {
        order.sort_by(|&a, &b| {
            points[a]
                .coord(axis)
                .cmp(points[b].coord(axis))
                .then(a.cmp(&b))
        });
        for (rank, &i) in order.iter().enumerate() {
            coords[i][axis] = rank as i64;
        }
    }
    coords
        .into_iter()
        .map(|[x, y, z]| Point3::new(x, y, z))
        .collect()
}

/// Staircase layers: layer 0 holds the points dominating no other point,
/// layer `i` the minimal points of what remains after removing layers `< i`.
///
/// A point's layer is the length of the longest dominance chain below it,
/// computed in `O(n²)` over a lexicographic sweep.
pub fn compute_layers(set: &PointSet) -> Vec<Vec<usize>> {
    let ranks = set.ranks();
    layers_of_ranks(&ranks)
}

pub(crate) fn layers_of_ranks(ranks: &[[u32; 3]]) -> Vec<Vec<usize>> {
    let n = ranks.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Anything p dominates precedes p lexicographically.
    order.sort_by(|&a, &b| ranks[a].cmp(&ranks[b]));
    let mut depth = vec![0usize; n];
    for (pos, &p) in order.iter().enumerate() {
        let mut d = 0;
        for &q in &order[..pos] {
            if rank_dominates(&ranks[p], &ranks[q]) {
                d = d.max(depth[q] + 1);
            }
        }
        depth[p] = d;
    }
    let count = depth.iter().map(|d| d + 1).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); count];
    for (i, &d) in depth.iter().enumerate() {
        layers[d].push(i);
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p(1, 2, 3), &p(0, 1, 2)));
        assert!(dominates(&p(4, 4, 4), &p(4, 4, 4)));
        assert!(!dominates(&p(0, 5, 0), &p(1, 0, 0)));
    }

    #[test]
    fn containment_modes() {
        let o = Octant::negative(2, ExtCoord::PlusInfinity, -1);
        let q = p(2, -2, -2);
        assert!(!octant_contains(&o, &q, Containment::Interior));
        assert!(octant_contains(&o, &q, Containment::Closed));

        let pos = Octant::positive(&p(0, 0, 0));
        assert!(octant_contains(&pos, &p(1, 1, 1), Containment::Closed));
        assert!(!octant_contains(&pos, &p(0, 1, 1), Containment::Interior));
        assert!(!octant_contains(&pos, &p(-1, 1, 1), Containment::Closed));
    }

    #[test]
    fn positive_octant_rejects_infinite_apex() {
        let apex = [ExtCoord::from(0), ExtCoord::PlusInfinity, ExtCoord::from(0)];
        assert!(matches!(
            Octant::new(apex.clone(), Sign::Positive),
            Err(Error::InfinitePositiveApex)
        ));
        assert!(Octant::new(apex, Sign::Negative).is_ok());
    }

    #[test]
    fn infinity_is_above_everything() {
        let big = ExtCoord::from(i64::MAX);
        assert!(ExtCoord::PlusInfinity > big);
        assert_eq!(
            ExtCoord::PlusInfinity.cmp_coord(&Coord::from(i64::MAX)),
            Ordering::Greater
        );
    }

    #[test]
    fn independence_examples() {
        assert!(!is_independent(
            &PointSet::from_triples(&[(0, 0, 0), (1, 1, 1)]).unwrap()
        ));
        assert!(is_independent(
            &PointSet::from_triples(&[(0, 1, 2), (1, 2, 0), (2, 0, 1)]).unwrap()
        ));
        assert!(is_independent(&PointSet::empty()));
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = PointSet::from_triples(&[(1, 2, 3), (0, 0, 0), (1, 2, 3)]).unwrap_err();
        assert!(matches!(
            err,
            Error::DuplicatePoint {
                first: 0,
                second: 2
            }
        ));
    }

    #[test]
    fn general_position_policies() {
        let good = PointSet::from_triples(&[(0, 0, 0), (1, 1, 1)]).unwrap();
        assert_eq!(
            enforce_general_position(&good, GeneralPositionPolicy::Reject).unwrap(),
            good
        );

        let tied = PointSet::from_triples(&[(0, 0, 0), (0, 1, 1)]).unwrap();
        assert!(matches!(
            enforce_general_position(&tied, GeneralPositionPolicy::Reject),
            Err(Error::DegenerateInput { axis: 'x', .. })
        ));

        let fixed =
            enforce_general_position(&tied, GeneralPositionPolicy::SymbolicPerturb).unwrap();
        assert!(fixed.is_general_position());
        assert!(fixed.get(0).x < fixed.get(1).x);
        assert!(fixed.get(0).y < fixed.get(1).y);
    }

    #[test]
    fn layer_examples() {
        let chain = PointSet::from_triples(&[(0, 0, 0), (1, 1, 1), (2, 2, 2)]).unwrap();
        assert_eq!(compute_layers(&chain), vec![vec![0], vec![1], vec![2]]);

        let anti = PointSet::from_triples(&[(0, 4, 8), (1, 3, 9), (2, 2, 7), (3, 1, 6), (4, 0, 5)])
            .unwrap();
        assert_eq!(compute_layers(&anti), vec![vec![0, 1, 2, 3, 4]]);

        let mixed = PointSet::from_triples(&[(0, 0, 0), (2, 1, 1), (1, 2, 2)]).unwrap();
        assert_eq!(compute_layers(&mixed), vec![vec![0], vec![1, 2]]);

        assert!(compute_layers(&PointSet::empty()).is_empty());
    }

    #[test]
    fn ranks_respect_ties() {
        let set = PointSet::new(vec![
            Point3::new(Coord::new(1, 2), 3, 0),
            Point3::new(Coord::new(2, 4), -1, 5),
            Point3::new(0, 3, 2),
        ])
        .unwrap();
        let r = set.ranks();
        assert_eq!(r[0][0], r[1][0]);
        assert!(r[2][0] < r[0][0]);
        assert_eq!(r[0][1], r[2][1]);
    }

    #[test]
    fn coord_parse_and_display() {
        let c: Coord = "6/4".parse().unwrap();
        assert_eq!(c, Coord::new(3, 2));
        assert_eq!(c.to_string(), "3/2");
        assert_eq!("-7".parse::<Coord>().unwrap().to_string(), "-7");
        assert!("1/0".parse::<Coord>().is_err());
        assert!("1.5".parse::<Coord>().is_err());
        assert_eq!("inf".parse::<ExtCoord>().unwrap(), ExtCoord::PlusInfinity);
    }
}
