//! The uniform-grid approximation to MIC.
//!
//! Instead of optimizing cut placement, both axes get equal-width bins
//! spanning `[min, max]`; the normalized mutual information of that single
//! grid replaces the dynamic program. The score search runs over the same
//! `lx * ly < n^0.6` shape family as MIC so the two measures share a budget.
//!
//! U-MIC is not invariant under order-preserving transforms (value-width
//! bins move with the values); that is inherent to the construction.

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mic::{admissible_shapes, GridScore};
use crate::partition::{Axis, AxisPartition};
use crate::Scalar;

/// Data ranges shared by every shape of a sweep.
#[derive(Debug, Clone, Copy)]
struct Ranges<F> {
    x_lo: F,
    x_hi: F,
    y_lo: F,
    y_hi: F,
}

impl<F: Scalar> Ranges<F> {
    fn of(d: &Dataset<F>) -> Result<Self> {
        let (x_lo, x_hi) = d
            .x_range()
            .ok_or(Error::TooFewPoints { min: 2, actual: 0 })?;
        let (y_lo, y_hi) = d.y_range().expect("nonempty");
        Ok(Ranges {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        })
    }

    fn is_degenerate(&self) -> bool {
        self.x_lo == self.x_hi || self.y_lo == self.y_hi
    }
}

/// Reusable buffers for the shape sweep: cell counts, the cut positions of
/// both axes, and a `c * log2(c)` table over possible counts.
struct ShapeScratch<F> {
    counts: Vec<u64>,
    cuts_x: Vec<F>,
    cuts_y: Vec<F>,
    flog: Vec<F>,
}

impl<F: Scalar> ShapeScratch<F> {
    fn new(n: usize) -> Self {
        let mut flog = vec![F::zero(); n + 1];
        for (c, slot) in flog.iter_mut().enumerate().skip(2) {
            *slot = F::from_index(c) * F::from_index(c).log2();
        }
        ShapeScratch {
            counts: Vec::new(),
            cuts_x: Vec::new(),
            cuts_y: Vec::new(),
            flog,
        }
    }
}

/// Equal-width cut positions, matching `AxisPartition::uniform`.
fn fill_cuts<F: Scalar>(cuts: &mut Vec<F>, lo: F, hi: F, bins: usize) {
    let width = (hi - lo) / F::from_index(bins);
    cuts.clear();
    cuts.extend((1..bins).map(|i| lo + width * F::from_index(i)));
}

/// Bin lookup for a uniform partition: an arithmetic first guess, corrected
/// against the actual cuts so the result always agrees with
/// `AxisPartition::bin_index` (the guess can be off by one at cut values
/// because of rounding).
#[inline]
fn uniform_bin<F: Scalar>(cuts: &[F], lo: F, scale: F, v: F) -> usize {
    let last = cuts.len();
    let mut i = ((v - lo) * scale).to_usize().unwrap_or(0).min(last);
    while i > 0 && v < cuts[i - 1] {
        i -= 1;
    }
    while i < last && v >= cuts[i] {
        i += 1;
    }
    i
}

/// Per-axis bin index of every point, for one bin count.
fn bin_indices<F: Scalar>(
    values: impl Iterator<Item = F>,
    lo: F,
    hi: F,
    bins: usize,
    cuts: &mut Vec<F>,
) -> Vec<u32> {
    fill_cuts(cuts, lo, hi, bins);
    let scale = F::from_index(bins) / (hi - lo);
    values
        .map(|v| uniform_bin(cuts, lo, scale, v) as u32)
        .collect()
}

/// One shape of the sweep, from precomputed per-axis bin indices.
fn score_shape<F: Scalar>(
    col_of: &[u32],
    row_of: &[u32],
    lx: usize,
    ly: usize,
    scratch: &mut ShapeScratch<F>,
) -> F {
    scratch.counts.clear();
    scratch.counts.resize(lx * ly, 0);
    for (&row, &col) in row_of.iter().zip(col_of) {
        scratch.counts[row as usize * lx + col as usize] += 1;
    }
    let n = col_of.len();
    // H = log2(n) - sum(c log2 c) / n per distribution; the log2(n) terms of
    // the three entropies cancel in H(P) + H(Q) - H(P,Q) except for one.
    let nf = F::from_index(n);
    let flog = &scratch.flog;
    let mut s_rows = F::zero();
    let mut s_joint = F::zero();
    for row in scratch.counts.chunks_exact(lx) {
        let mut m = 0u64;
        for &c in row {
            m += c;
            s_joint = s_joint + flog[c as usize];
        }
        s_rows = s_rows + flog[m as usize];
    }
    let mut s_cols = F::zero();
    for j in 0..lx {
        let mut m = 0u64;
        for i in 0..ly {
            m += scratch.counts[i * lx + j];
        }
        s_cols = s_cols + flog[m as usize];
    }
    let mi = (s_joint - s_rows - s_cols) / nf + F::from_index(n).log2();
    let mi = if mi < F::zero() { F::zero() } else { mi };
    let score = mi / F::from_index(lx.min(ly)).log2();
    if score > F::one() {
        F::one()
    } else {
        score
    }
}

/// Normalized MI of the equal-width `lx`-by-`ly` grid. A zero range on
/// either axis makes that variable constant, so the score is 0 and flagged
/// degenerate.
pub fn uniform_partition_score<F: Scalar>(
    d: &Dataset<F>,
    lx: usize,
    ly: usize,
) -> Result<GridScore<F>> {
    if lx < 2 || ly < 2 {
        return Err(Error::DegenerateGrid { lx, ly });
    }
    let ranges = Ranges::of(d)?;
    if ranges.is_degenerate() {
        return Ok(GridScore {
            score: F::zero(),
            degenerate: true,
        });
    }
    let mut scratch = ShapeScratch::new(d.len());
    let col_of = bin_indices(d.xs(), ranges.x_lo, ranges.x_hi, lx, &mut scratch.cuts_x);
    let row_of = bin_indices(d.ys(), ranges.y_lo, ranges.y_hi, ly, &mut scratch.cuts_y);
    Ok(GridScore {
        score: score_shape(&col_of, &row_of, lx, ly, &mut scratch),
        degenerate: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UmicResult<F> {
    pub score: F,
    pub best_shape: (usize, usize),
    pub shapes_evaluated: usize,
}

/// U-MIC: maximum of [`uniform_partition_score`] over all shapes with
/// `lx * ly < n^exponent`. Sequential; see [`umic_with`] for the parallel
/// sweep.
pub fn umic<F: Scalar>(d: &Dataset<F>, exponent: f64) -> Result<UmicResult<F>> {
    umic_with(d, exponent, false)
}

pub fn umic_with<F: Scalar>(
    d: &Dataset<F>,
    exponent: f64,
    parallel: bool,
) -> Result<UmicResult<F>> {
    let n = d.len();
    if n < 4 {
        return Err(Error::TooFewPoints { min: 4, actual: n });
    }
    let shapes = admissible_shapes(n, exponent)?;
    let ranges = Ranges::of(d)?;
    if ranges.is_degenerate() {
        return Ok(UmicResult {
            score: F::zero(),
            best_shape: shapes[0],
            shapes_evaluated: shapes.len(),
        });
    }
    // Bin indices depend only on the per-axis bin count, which repeats
    // across shapes; compute each once. Index 0 of the tables is bin count 2.
    let max_bins = shapes.iter().map(|&(lx, ly)| lx.max(ly)).max().unwrap();
    let mut cuts = Vec::new();
    let cols_by_bins: Vec<Vec<u32>> = (2..=max_bins)
        .map(|b| bin_indices(d.xs(), ranges.x_lo, ranges.x_hi, b, &mut cuts))
        .collect();
    let rows_by_bins: Vec<Vec<u32>> = (2..=max_bins)
        .map(|b| bin_indices(d.ys(), ranges.y_lo, ranges.y_hi, b, &mut cuts))
        .collect();
    let eval = |scratch: &mut ShapeScratch<F>, (lx, ly): (usize, usize)| {
        let score = score_shape(
            &cols_by_bins[lx - 2],
            &rows_by_bins[ly - 2],
            lx,
            ly,
            scratch,
        );
        ((lx, ly), score)
    };
    let entries: Vec<((usize, usize), F)> = if parallel {
        shapes
            .par_iter()
            .map_init(
                || ShapeScratch::new(n),
                |scratch, &shape| eval(scratch, shape),
            )
            .collect()
    } else {
        let mut scratch = ShapeScratch::new(n);
        shapes
            .iter()
            .map(|&shape| eval(&mut scratch, shape))
            .collect()
    };
    let mut best = entries[0];
    for &e in &entries[1..] {
        if e.1 > best.1 {
            best = e;
        }
    }
    Ok(UmicResult {
        score: best.1,
        best_shape: best.0,
        shapes_evaluated: entries.len(),
    })
}

/// Inputs for the bounded-noise lower bound: a 2-row grid split at the y
/// midrange, `lx` equal-width columns, and the noise half-width `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyBoundInput<F> {
    pub lx: usize,
    pub epsilon: F,
    pub y_mid: F,
}

impl<F: Scalar> NoisyBoundInput<F> {
    /// `y_mid = (y_max + y_min) / 2` of the dataset under test.
    pub fn for_dataset(d: &Dataset<F>, lx: usize, epsilon: F) -> Result<Self> {
        let (lo, hi) = d
            .y_range()
            .ok_or(Error::TooFewPoints { min: 2, actual: 0 })?;
        let half = F::from_f64(0.5).unwrap();
        Ok(NoisyBoundInput {
            lx,
            epsilon,
            y_mid: (lo + hi) * half,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound<F> {
    pub value: F,
    /// True when one half of the midrange split is empty; the bound is then
    /// trivially 0.
    pub degenerate: bool,
}

/// Lower bound on the 2-row uniform-grid score for bounded uniform noise:
/// `(|D| log|D| - |D1| log|D1| - |D2| log|D2|) / |D| - m / lx`, logs base 2,
/// where `D1`/`D2` split at `y_mid` and `m` counts columns containing a point
/// within `epsilon` of `y_mid`. The raw value is returned unclamped (it can
/// be negative when many columns touch the midline).
pub fn umic_lower_bound<F: Scalar>(d: &Dataset<F>, input: &NoisyBoundInput<F>) -> LowerBound<F> {
    let n = d.len() as u64;
    // Points on the cut go up, matching the 2-row uniform grid's bin rule.
    let d1 = d.ys().filter(|&y| y < input.y_mid).count() as u64;
    let d2 = n - d1;
    if d1 == 0 || d2 == 0 {
        return LowerBound {
            value: F::zero(),
            degenerate: true,
        };
    }
    let flog = |c: u64| {
        if c == 0 {
            F::zero()
        } else {
            F::from_count(c) * F::from_count(c).log2()
        }
    };
    let split_entropy = (flog(n) - flog(d1) - flog(d2)) / F::from_count(n);

    let (x_lo, x_hi) = d.x_range().expect("nonempty");
    let m = if x_lo == x_hi {
        u64::from(d.ys().any(|y| (y - input.y_mid).abs() <= input.epsilon))
    } else {
        let cols = AxisPartition::uniform(Axis::X, x_lo, x_hi, input.lx);
        let mut touched = vec![false; input.lx];
        for &(x, y) in d.points() {
            if (y - input.y_mid).abs() <= input.epsilon {
                touched[cols.bin_index(x)] = true;
            }
        }
        touched.iter().filter(|&&t| t).count() as u64
    };
    LowerBound {
        value: split_entropy - F::from_count(m) / F::from_index(input.lx),
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(pts: &[(f64, f64)]) -> Dataset<f64> {
        Dataset::new(pts.to_vec()).unwrap()
    }

    fn lattice(side: usize) -> Dataset<f64> {
        let mut pts = Vec::new();
        for i in 0..side {
            for j in 0..side {
                pts.push((i as f64 / (side - 1) as f64, j as f64 / (side - 1) as f64));
            }
        }
        ds(&pts)
    }

    #[test]
    fn product_lattice_scores_zero() {
        let d = lattice(3);
        for shape in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let g = uniform_partition_score(&d, shape.0, shape.1).unwrap();
            assert!(g.score.abs() < 1e-9, "shape {shape:?} scored {}", g.score);
        }
    }

    #[test]
    fn diagonal_scores_one() {
        let d = ds(&[(0.0, 0.0), (0.25, 0.25), (0.75, 0.75), (1.0, 1.0)]);
        let g = uniform_partition_score(&d, 2, 2).unwrap();
        assert!((g.score - 1.0).abs() < 1e-12);
    }

    #[test]
    fn skew_grid_matches_direct_mi() {
        // Points engineered to land as counts [[4,1],[1,4]].
        let mut pts = Vec::new();
        for i in 0..4 {
            pts.push((0.1 + 0.01 * i as f64, 0.1 + 0.01 * i as f64));
            pts.push((0.9 - 0.01 * i as f64, 0.9 - 0.01 * i as f64));
        }
        pts.push((0.2, 0.8));
        pts.push((0.8, 0.2));
        let d = ds(&pts);
        let g = uniform_partition_score(&d, 2, 2).unwrap();
        assert!((g.score - 0.278).abs() < 1e-3);
    }

    #[test]
    fn zero_range_is_degenerate() {
        let d = ds(&[(0.5, 0.0), (0.5, 0.5), (0.5, 1.0), (0.5, 0.7)]);
        let g = uniform_partition_score(&d, 2, 2).unwrap();
        assert!(g.degenerate);
        assert_eq!(g.score, 0.0);
    }

    #[test]
    fn separated_halves_bound_is_one() {
        let mut pts = Vec::new();
        for i in 0..10 {
            let x = i as f64 / 9.0;
            pts.push((x, 0.0));
            pts.push((x, 1.0));
        }
        let d = ds(&pts);
        let input = NoisyBoundInput::for_dataset(&d, 10, 0.05).unwrap();
        let b = umic_lower_bound(&d, &input);
        assert!(!b.degenerate);
        assert!((b.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn every_column_touched_bound_is_zero() {
        // Balanced split with one near-mid point in each of the 4 columns.
        let mut pts = Vec::new();
        for i in 0..4 {
            let x = 0.125 + 0.25 * i as f64;
            pts.push((x, if i % 2 == 0 { 0.49 } else { 0.51 }));
            pts.push((x, if i % 2 == 0 { 1.0 } else { 0.0 }));
        }
        let d = ds(&pts);
        let input = NoisyBoundInput {
            lx: 4,
            epsilon: 0.05,
            y_mid: 0.5,
        };
        let b = umic_lower_bound(&d, &input);
        assert!((b.value - 0.0).abs() < 1e-12);
    }

    #[test]
    fn empty_half_is_degenerate() {
        let d = ds(&[(0.0, 0.4), (0.5, 0.2), (1.0, 0.1), (0.7, 0.0)]);
        let input = NoisyBoundInput {
            lx: 4,
            epsilon: 0.0,
            y_mid: 1.0,
        };
        let b = umic_lower_bound(&d, &input);
        assert!(b.degenerate);
        assert_eq!(b.value, 0.0);
    }
}
