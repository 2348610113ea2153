//! Seeded instance generators. Every generator returns a set in general
//! position (pairwise distinct coordinates on each axis).

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Point3, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Random3d,
    Antichain,
    Chain,
    Grid,
    TightFamily,
}

impl GenKind {
    pub const ALL: [GenKind; 5] = [
        GenKind::Random3d,
        GenKind::Antichain,
        GenKind::Chain,
        GenKind::Grid,
        GenKind::TightFamily,
    ];
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Random3d => "random3d",
            GenKind::Antichain => "antichain",
            GenKind::Chain => "chain",
            GenKind::Grid => "grid",
            GenKind::TightFamily => "pn-tight",
        })
    }
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown instance kind '{s}' (expected random3d, antichain, chain, grid or pn-tight)"))
    }
}

pub fn generate(kind: GenKind, n: usize, seed: u64) -> PointSet {
    match kind {
        GenKind::Random3d => random3d(n, seed),
        GenKind::Antichain => random_antichain(n, seed),
        GenKind::Chain => chain(n),
        GenKind::Grid => grid(n),
        GenKind::TightFamily => tight_family(n),
    }
}

fn build(triples: impl IntoIterator<Item = (i64, i64, i64)>) -> PointSet {
    PointSet::new(
        triples
            .into_iter()
            .map(|(x, y, z)| Point3::new(x, y, z))
            .collect(),
    )
    .expect("generators emit distinct points")
}

/// Distinct integer coordinates per axis, each axis drawn from `0..10n`.
pub fn random3d(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = (10 * n).max(1);
    let mut axis = || {
        let mut v: Vec<i64> = sample(&mut rng, range, n)
            .into_iter()
            .map(|x| x as i64)
            .collect();
        v.shuffle(&mut rng);
        v
    };
    let (xs, ys, zs) = (axis(), axis(), axis());
    build((0..n).map(|i| (xs[i], ys[i], zs[i])))
}

/// Random independent set: points on the plane `x + y + z = 0` with
/// distinct coordinates per axis. Two points on that plane are never
/// comparable.
pub fn random_antichain(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = (10 * n).max(1);
    loop {
        let xs = sample(&mut rng, range, n);
        let mut ys: Vec<i64> = sample(&mut rng, range, n)
            .into_iter()
            .map(|y| y as i64)
            .collect();
        ys.shuffle(&mut rng);
        let triples: Vec<_> = xs
            .into_iter()
            .zip(ys)
            .map(|(x, y)| (x as i64, y, -(x as i64) - y))
            .collect();
        let mut zs: Vec<i64> = triples.iter().map(|t| t.2).collect();
        zs.sort_unstable();
        zs.dedup();
        if zs.len() == n {
            return build(triples);
        }
    }
}

/// `(i, i, i)` for `i` in `0..n`.
pub fn chain(n: usize) -> PointSet {
    build((0..n as i64).map(|i| (i, i, i)))
}

/// The first `n` points of a sheared `m × m` lattice, `m = ⌈√n⌉`. Each axis
/// uses a different bijection of the cell index onto `0..m²`.
pub fn grid(n: usize) -> PointSet {
    let m = (1..).find(|m| m * m >= n).unwrap_or(0) as i64;
    build((0..n as i64).map(|t| {
        let (i, j) = (t / m.max(1), t % m.max(1));
        (
            i * m + j,
            j * m + (m - 1 - i),
            (m - 1 - i) * m + (m - 1 - j),
        )
    }))
}

/// `(i, -i, -i)` for `i` in `1..=n`: independent, and no cover with fewer
/// than `2n + 1` octants exists.
pub fn tight_family(n: usize) -> PointSet {
    build((1..=n as i64).map(|i| (i, -i, -i)))
}
