//! Fixed workloads shared by the benchmarks.

use octcolor::gen::{random3d, random_antichain};
use octcolor::{color_point_set, BaseColorerConfig, Coloring, PointSet};

/// A random set with the pipeline's `k`-coloring, for timing the verifier.
pub fn colored_set(n: usize, k: usize, seed: u64) -> (PointSet, Coloring) {
    let set = random3d(n, seed);
    let cfg = BaseColorerConfig {
        seed,
        ..BaseColorerConfig::default()
    };
    let coloring = color_point_set(&set, k, &cfg)
        .expect("pipeline on random input")
        .coloring;
    (set, coloring)
}

pub fn antichain(n: usize, seed: u64) -> PointSet {
    random_antichain(n, seed)
}
