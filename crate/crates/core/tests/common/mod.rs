//! Shared helpers for the integration suites: an exhaustive-enumeration
//! mutual-information oracle (independent of the dynamic program) and a
//! generator of small datasets with deliberate ties.

use itertools::Itertools;
use micgrid::data::Dataset;
use micgrid::mic::get_clumps_partition;
use micgrid::partition::AxisPartition;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Best mutual information over column partitions whose cuts lie on clump
/// boundaries, for every column budget `2..=lx`, by brute-force enumeration.
/// MI is computed directly in probability space (`sum p log2 p/(p q)`), a
/// different route than the entropy recurrences under test.
pub fn brute_force_scores(d: &Dataset<f64>, rows: &AxisPartition<f64>, lx: usize) -> Vec<f64> {
    let canon = d.canonicalize();
    let clumps = get_clumps_partition(&canon, rows);
    let endpoints = clumps.endpoints().to_vec();
    let n = canon.len();
    let ly = rows.bin_count();
    let row_of: Vec<usize> = canon.ys().map(|y| rows.bin_index(y)).collect();
    let interior = &endpoints[1..endpoints.len() - 1];
    (2..=lx)
        .map(|l| {
            let mut best = 0.0f64; // the single-column partition has MI 0
            for cut_count in 1..l.min(interior.len() + 1) {
                for cuts in interior.iter().copied().combinations(cut_count) {
                    let mut bounds = vec![0usize];
                    bounds.extend(cuts);
                    bounds.push(n);
                    best = best.max(direct_mi(&row_of, &bounds, ly));
                }
            }
            best
        })
        .collect()
}

fn direct_mi(row_of: &[usize], bounds: &[usize], ly: usize) -> f64 {
    let n = row_of.len() as f64;
    let cols = bounds.len() - 1;
    let mut joint = vec![vec![0u64; ly]; cols];
    for c in 0..cols {
        for &r in &row_of[bounds[c]..bounds[c + 1]] {
            joint[c][r] += 1;
        }
    }
    let col_m: Vec<u64> = joint.iter().map(|col| col.iter().sum()).collect();
    let mut row_m = vec![0u64; ly];
    for col in &joint {
        for (r, &c) in col.iter().enumerate() {
            row_m[r] += c;
        }
    }
    let mut mi = 0.0;
    for (ci, col) in joint.iter().enumerate() {
        for (ri, &c) in col.iter().enumerate() {
            if c > 0 {
                let p = c as f64 / n;
                let px = col_m[ci] as f64 / n;
                let qy = row_m[ri] as f64 / n;
                mi += p * (p / (px * qy)).log2();
            }
        }
    }
    mi
}

/// `n` points on a coarse `(levels x levels)` value grid, so x and y ties are
/// frequent.
pub fn tied_dataset(rng: &mut ChaCha8Rng, n: usize, levels: u32) -> Dataset<f64> {
    let pts = (0..n)
        .map(|_| {
            let a = rng.random_range(0..levels) as f64 / (levels - 1) as f64;
            let b = rng.random_range(0..levels) as f64 / (levels - 1) as f64;
            (a, b)
        })
        .collect();
    Dataset::new(pts).unwrap()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
