//! Axis partitions: interior cut points dividing one axis into bins.

use crate::data::Dataset;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Ordered interior cut points over one axis.
///
/// Bins are half-open `[lo, hi)` except the last, which is closed above, so a
/// maximum-valued sample is always binned. `bin_count` is the number of bins
/// actually realized; an equipartition that cannot reach the requested count
/// (too many ties) is marked degenerate instead of failing.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisPartition<F> {
    axis: Axis,
    cuts: Vec<F>,
    requested: usize,
}

impl<F: Scalar> AxisPartition<F> {
    /// `bins` equal-width bins spanning `[lo, hi]`. Requires `lo < hi`.
    pub fn uniform(axis: Axis, lo: F, hi: F, bins: usize) -> AxisPartition<F> {
        assert!(bins >= 1, "need at least one bin");
        assert!(lo < hi, "uniform partition needs a nonzero range");
        let width = (hi - lo) / F::from_index(bins);
        let cuts = (1..bins).map(|i| lo + width * F::from_index(i)).collect();
        AxisPartition {
            axis,
            cuts,
            requested: bins,
        }
    }

    /// Greedy equal-count partition of `values`: walk the sorted values left
    /// to right, closing a bin whenever adding the next tie group would
    /// overshoot the running target `remaining / bins_left`. Samples with
    /// identical values always share a bin, so heavy ties can yield fewer
    /// bins than requested (see [`AxisPartition::is_degenerate`]).
    pub fn equipartition(axis: Axis, values: &[F], bins: usize) -> AxisPartition<F> {
        assert!(bins >= 1, "need at least one bin");
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Self::equipartition_sorted(axis, &sorted, bins)
    }

    /// As [`AxisPartition::equipartition`], but `sorted` must already be
    /// ascending.
    pub fn equipartition_sorted(axis: Axis, sorted: &[F], bins: usize) -> AxisPartition<F> {
        let n = sorted.len();
        let mut cuts = Vec::with_capacity(bins.saturating_sub(1));
        let mut i = 0usize;
        let mut bin_size = 0usize;
        let mut bins_closed = 0usize;
        let mut target = n as f64 / bins as f64;
        while i < n {
            let mut j = i + 1;
            while j < n && sorted[j] == sorted[i] {
                j += 1;
            }
            let group = j - i;
            let with_group = (bin_size + group) as f64;
            if bin_size > 0
                && bins_closed + 1 < bins
                && (with_group - target).abs() >= (bin_size as f64 - target).abs()
            {
                // Close the current bin between the previous value and this one.
                let half = F::from_f64(0.5).unwrap();
                cuts.push((sorted[i - 1] + sorted[i]) * half);
                bins_closed += 1;
                bin_size = 0;
                target = (n - i) as f64 / (bins - bins_closed) as f64;
            }
            bin_size += group;
            i = j;
        }
        AxisPartition {
            axis,
            cuts,
            requested: bins,
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn cuts(&self) -> &[F] {
        &self.cuts
    }

    /// Number of bins actually realized.
    pub fn bin_count(&self) -> usize {
        self.cuts.len() + 1
    }

    pub fn requested(&self) -> usize {
        self.requested
    }

    /// True when ties forced fewer bins than requested; callers typically
    /// skip the affected grid shape.
    pub fn is_degenerate(&self) -> bool {
        self.bin_count() < self.requested
    }

    /// Bin index for `v`: values equal to a cut fall in the upper bin, which
    /// realizes half-open bins with a closed final bin.
    pub fn bin_index(&self, v: F) -> usize {
        self.cuts.partition_point(|&c| c <= v)
    }
}

/// Equipartition one coordinate of `d` into `bins` as-equal-as-possible bins.
pub fn equipartition_axis<F: Scalar>(d: &Dataset<F>, axis: Axis, bins: usize) -> AxisPartition<F> {
    let values: Vec<F> = match axis {
        Axis::X => d.xs().collect(),
        Axis::Y => d.ys().collect(),
    };
    AxisPartition::equipartition(axis, &values, bins)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occupancies(p: &AxisPartition<f64>, values: &[f64]) -> Vec<usize> {
        let mut counts = vec![0usize; p.bin_count()];
        for &v in values {
            counts[p.bin_index(v)] += 1;
        }
        counts
    }

    #[test]
    fn even_split_one_to_ten() {
        let values: Vec<f64> = (1..=10).map(|v| v as f64).collect();
        let p = AxisPartition::equipartition(Axis::X, &values, 2);
        assert_eq!(occupancies(&p, &values), vec![5, 5]);
        assert!(!p.is_degenerate());
    }

    #[test]
    fn ties_are_inseparable() {
        let values = [1.0, 1.0, 1.0, 2.0];
        let p = AxisPartition::equipartition(Axis::Y, &values, 2);
        assert_eq!(occupancies(&p, &values), vec![3, 1]);
    }

    #[test]
    fn three_way_split() {
        let values: Vec<f64> = (1..=9).map(|v| v as f64).collect();
        let p = AxisPartition::equipartition(Axis::X, &values, 3);
        assert_eq!(occupancies(&p, &values), vec![3, 3, 3]);
    }

    #[test]
    fn all_equal_values_degenerate() {
        let values = [2.0; 6];
        let p = AxisPartition::equipartition(Axis::Y, &values, 3);
        assert_eq!(p.bin_count(), 1);
        assert!(p.is_degenerate());
    }

    #[test]
    fn uniform_last_bin_closed() {
        let p = AxisPartition::uniform(Axis::X, 0.0, 1.0, 4);
        assert_eq!(p.bin_index(0.0), 0);
        assert_eq!(p.bin_index(0.25), 1);
        assert_eq!(p.bin_index(0.999), 3);
        assert_eq!(p.bin_index(1.0), 3);
    }
}
