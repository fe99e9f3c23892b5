//! Grid histograms and the entropy arithmetic built on them.
//!
//! All entropies are in bits (base-2 logs). The normalized scores are
//! base-invariant, but fixing the base makes raw values testable.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::partition::{Axis, AxisPartition};
use crate::Scalar;

/// Cell counts induced by a column partition times a row partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridHistogram {
    /// Row-major `rows x cols` counts.
    counts: Vec<u64>,
    rows: usize,
    cols: usize,
    total: u64,
}

impl GridHistogram {
    pub fn from_counts(rows: Vec<Vec<u64>>) -> GridHistogram {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged count matrix");
        let counts: Vec<u64> = rows.into_iter().flatten().collect();
        let total = counts.iter().sum();
        GridHistogram {
            counts,
            rows: nrows,
            cols: ncols,
            total,
        }
    }

    /// Bin every point of `d`: `counts[i][j]` is the number of points whose y
    /// falls in row `i` and x in column `j`.
    pub fn from_dataset<F: Scalar>(
        d: &Dataset<F>,
        cols: &AxisPartition<F>,
        rows: &AxisPartition<F>,
    ) -> GridHistogram {
        assert_eq!(cols.axis(), Axis::X, "column partition must be on X");
        assert_eq!(rows.axis(), Axis::Y, "row partition must be on Y");
        let (nr, nc) = (rows.bin_count(), cols.bin_count());
        let mut counts = vec![0u64; nr * nc];
        for &(x, y) in d.points() {
            counts[rows.bin_index(y) * nc + cols.bin_index(x)] += 1;
        }
        GridHistogram {
            counts,
            rows: nr,
            cols: nc,
            total: d.len() as u64,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, row: usize, col: usize) -> u64 {
        self.counts[row * self.cols + col]
    }

    pub fn row_marginal(&self) -> Vec<u64> {
        (0..self.rows)
            .map(|i| self.counts[i * self.cols..(i + 1) * self.cols].iter().sum())
            .collect()
    }

    pub fn col_marginal(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.cols];
        for row in self.counts.chunks_exact(self.cols) {
            for (total, c) in m.iter_mut().zip(row) {
                *total += c;
            }
        }
        m
    }

    pub fn transpose(&self) -> GridHistogram {
        let mut counts = vec![0u64; self.counts.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                counts[j * self.rows + i] = self.count(i, j);
            }
        }
        GridHistogram {
            counts,
            rows: self.cols,
            cols: self.rows,
            total: self.total,
        }
    }
}

/// Probabilities summing to 1 within 1e-9.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<F> {
    probs: Vec<F>,
}

impl<F: Scalar> DiscreteDistribution<F> {
    pub fn new(probs: Vec<F>) -> Result<Self> {
        let sum = probs.iter().fold(F::zero(), |a, &p| a + p);
        let one = F::one();
        let tol = F::from_f64(1e-9).unwrap();
        if (sum - one).abs() > tol || probs.iter().any(|&p| p < F::zero()) {
            return Err(Error::InvalidDistribution {
                sum: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(DiscreteDistribution { probs })
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        let total: u64 = counts.iter().sum();
        let t = F::from_count(total.max(1));
        DiscreteDistribution {
            probs: counts.iter().map(|&c| F::from_count(c) / t).collect(),
        }
    }

    pub fn probs(&self) -> &[F] {
        &self.probs
    }
}

/// `-sum p log2 p`, with `0 log 0 = 0`.
pub fn shannon_entropy<F: Scalar>(p: &DiscreteDistribution<F>) -> F {
    let mut h = F::zero();
    for &p in p.probs() {
        if p > F::zero() {
            h = h - p * p.log2();
        }
    }
    h
}

/// Entropy in bits of the distribution `counts / total`.
pub fn entropy_of_counts<F: Scalar>(counts: impl IntoIterator<Item = u64>, total: u64) -> F {
    if total == 0 {
        return F::zero();
    }
    let t = F::from_count(total);
    let mut h = F::zero();
    for c in counts {
        if c > 0 {
            let p = F::from_count(c) / t;
            h = h - p * p.log2();
        }
    }
    h
}

/// `H(rows) + H(cols) - H(joint)` from empirical cell frequencies, clamped
/// at zero against rounding.
pub fn mutual_information<F: Scalar>(g: &GridHistogram) -> F {
    let h_rows = entropy_of_counts::<F>(g.row_marginal(), g.total());
    let h_cols = entropy_of_counts::<F>(g.col_marginal(), g.total());
    let h_joint = entropy_of_counts::<F>(g.counts.iter().copied(), g.total());
    let mi = h_rows + h_cols - h_joint;
    if mi < F::zero() {
        F::zero()
    } else {
        mi
    }
}

/// Mutual information divided by `log2(min(lx, ly))`.
pub fn normalized_mi<F: Scalar>(g: &GridHistogram, lx: usize, ly: usize) -> Result<F> {
    if lx < 2 || ly < 2 {
        return Err(Error::DegenerateGrid { lx, ly });
    }
    let norm = F::from_index(lx.min(ly)).log2();
    Ok(mutual_information::<F>(g) / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Dataset;
    use crate::partition::{Axis, AxisPartition};

    #[test]
    fn diagonal_points_two_by_two() {
        let d = Dataset::new(vec![(0.1, 0.1), (0.3, 0.3), (0.6, 0.6), (0.9, 0.9)]).unwrap();
        let cols = AxisPartition::uniform(Axis::X, 0.0, 1.0, 2);
        let rows = AxisPartition::uniform(Axis::Y, 0.0, 1.0, 2);
        let g = GridHistogram::from_dataset(&d, &cols, &rows);
        assert_eq!(g.count(0, 0), 2);
        assert_eq!(g.count(0, 1), 0);
        assert_eq!(g.count(1, 0), 0);
        assert_eq!(g.count(1, 1), 2);
    }

    #[test]
    fn degenerate_one_by_one_grid() {
        let d = Dataset::new(vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.25)]).unwrap();
        let cols = AxisPartition::uniform(Axis::X, 0.0, 1.0, 1);
        let rows = AxisPartition::uniform(Axis::Y, 0.0, 1.0, 1);
        let g = GridHistogram::from_dataset(&d, &cols, &rows);
        assert_eq!(g.count(0, 0), 3);
        assert_eq!(g.total(), 3);
    }

    #[test]
    fn lattice_three_by_three_uniform_counts() {
        // 3x3 lattice of 9 points on a 3x3 uniform grid: each cell holds one
        // point (hand enumeration of the point-to-cell map).
        let mut pts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                pts.push((i as f64 / 2.0, j as f64 / 2.0));
            }
        }
        let d = Dataset::new(pts).unwrap();
        let cols = AxisPartition::uniform(Axis::X, 0.0, 1.0, 3);
        let rows = AxisPartition::uniform(Axis::Y, 0.0, 1.0, 3);
        let g = GridHistogram::from_dataset(&d, &cols, &rows);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.count(i, j), 1);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        let uniform = DiscreteDistribution::new(vec![0.25f64; 4]).unwrap();
        assert!((shannon_entropy(&uniform) - 2.0).abs() < 1e-12);

        let point_mass = DiscreteDistribution::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&point_mass), 0.0);

        let dyadic = DiscreteDistribution::new(vec![0.5f64, 0.25, 0.25]).unwrap();
        assert!((shannon_entropy(&dyadic) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        let perfect = GridHistogram::from_counts(vec![vec![2, 0], vec![0, 2]]);
        assert!((mutual_information::<f64>(&perfect) - 1.0).abs() < 1e-12);

        let independent = GridHistogram::from_counts(vec![vec![1, 1], vec![1, 1]]);
        assert!(mutual_information::<f64>(&independent).abs() < 1e-12);

        // Oracle: direct H(P)+H(Q)-H(P,Q) on the 10-point joint [[4,1],[1,4]].
        let g = GridHistogram::from_counts(vec![vec![4, 1], vec![1, 4]]);
        let p = |c: f64| c / 10.0;
        let h = |ps: &[f64]| {
            -ps.iter()
                .filter(|&&x| x > 0.0)
                .map(|&x| x * x.log2())
                .sum::<f64>()
        };
        let expected =
            h(&[p(5.0), p(5.0)]) + h(&[p(5.0), p(5.0)]) - h(&[p(4.0), p(1.0), p(1.0), p(4.0)]);
        assert!((mutual_information::<f64>(&g) - expected).abs() < 1e-12);
        assert!((mutual_information::<f64>(&g) - 0.278).abs() < 1e-3);
    }

    #[test]
    fn normalized_mi_examples() {
        let perfect = GridHistogram::from_counts(vec![vec![2, 0], vec![0, 2]]);
        assert!((normalized_mi::<f64>(&perfect, 2, 2).unwrap() - 1.0).abs() < 1e-12);

        let independent = GridHistogram::from_counts(vec![vec![1, 1], vec![1, 1]]);
        assert!(normalized_mi::<f64>(&independent, 2, 2).unwrap().abs() < 1e-12);

        let skew = GridHistogram::from_counts(vec![vec![4, 1], vec![1, 4]]);
        assert!((normalized_mi::<f64>(&skew, 2, 2).unwrap() - 0.278).abs() < 1e-3);

        assert!(matches!(
            normalized_mi::<f64>(&perfect, 1, 2),
            Err(crate::Error::DegenerateGrid { .. })
        ));
    }

    #[test]
    fn distribution_must_sum_to_one() {
        assert!(DiscreteDistribution::new(vec![0.5, 0.4]).is_err());
    }
}
