//! Pearson and Spearman coefficients as cheap comparison baselines.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::Scalar;

/// Rank-transformed coordinates, average rank for ties. Ranks start at 1, so
/// each rank vector sums to `n (n + 1) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedDataset<F> {
    pub x: Vec<F>,
    pub y: Vec<F>,
}

impl<F: Scalar> RankedDataset<F> {
    pub fn from_dataset(d: &Dataset<F>) -> Self {
        RankedDataset {
            x: average_ranks(&d.xs().collect::<Vec<_>>()),
            y: average_ranks(&d.ys().collect::<Vec<_>>()),
        }
    }
}

/// Midranks: tied values get the mean of the positions they occupy.
pub fn average_ranks<F: Scalar>(values: &[F]) -> Vec<F> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![F::zero(); n];
    let half = F::from_f64(0.5).unwrap();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 ..= j, midrank = (i + j + 1) / 2
        let midrank = F::from_index(i + j + 1) * half;
        for &idx in &order[i..j] {
            ranks[idx] = midrank;
        }
        i = j;
    }
    ranks
}

fn pearson_of<F: Scalar>(xs: &[F], ys: &[F]) -> Result<F> {
    let n = F::from_index(xs.len());
    let mean = |vs: &[F]| vs.iter().fold(F::zero(), |a, &v| a + v) / n;
    let (mx, my) = (mean(xs), mean(ys));
    let mut cov = F::zero();
    let mut vx = F::zero();
    let mut vy = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        cov = cov + dx * dy;
        vx = vx + dx * dx;
        vy = vy + dy * dy;
    }
    if vx == F::zero() {
        return Err(Error::ZeroVariance { variable: "x" });
    }
    if vy == F::zero() {
        return Err(Error::ZeroVariance { variable: "y" });
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Pearson correlation coefficient, in `[-1, 1]`.
pub fn pearson<F: Scalar>(d: &Dataset<F>) -> Result<F> {
    if d.len() < 2 {
        return Err(Error::TooFewPoints {
            min: 2,
            actual: d.len(),
        });
    }
    let xs: Vec<F> = d.xs().collect();
    let ys: Vec<F> = d.ys().collect();
    pearson_of(&xs, &ys)
}

/// Pearson of the rank-transformed data, average ranks for ties.
pub fn spearman<F: Scalar>(d: &Dataset<F>) -> Result<F> {
    if d.len() < 2 {
        return Err(Error::TooFewPoints {
            min: 2,
            actual: d.len(),
        });
    }
    let ranked = RankedDataset::from_dataset(d);
    pearson_of(&ranked.x, &ranked.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(pts: &[(f64, f64)]) -> Dataset<f64> {
        Dataset::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn affine_relation_is_one() {
        let d = ds(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0), (3.0, 7.0)]);
        assert!((pearson(&d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negated_relation_is_minus_one() {
        let d = ds(&[(0.0, 0.0), (1.0, -1.0), (2.0, -2.0)]);
        assert!((pearson(&d).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_parabola_cancels() {
        let d = ds(&[(-2.0, 4.0), (-1.0, 1.0), (0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]);
        assert!(pearson(&d).unwrap().abs() < 1e-9);
    }

    #[test]
    fn zero_variance_names_variable() {
        let d = ds(&[(1.0, 0.0), (1.0, 1.0), (1.0, 2.0)]);
        match pearson(&d).unwrap_err() {
            Error::ZeroVariance { variable } => assert_eq!(variable, "x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spearman_of_monotone_map_is_one() {
        let d = ds(&[(0.1, 0.001), (0.5, 0.125), (0.9, 0.729), (1.3, 2.197)]);
        assert!((spearman(&d).unwrap() - 1.0).abs() < 1e-12);
        let dec = ds(&[(0.0, 5.0), (1.0, 2.0), (2.0, 1.0), (3.0, 0.5)]);
        assert!((spearman(&dec).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spearman_with_ties_uses_midranks() {
        // Hand ranking: y ranks are 1.5, 1.5, 3, 4.
        let d = ds(&[(1.0, 1.0), (2.0, 1.0), (3.0, 3.0), (4.0, 4.0)]);
        assert!((spearman(&d).unwrap() - 0.9487).abs() < 1e-3);
    }

    #[test]
    fn rank_sums_are_invariant() {
        let values = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let ranks = average_ranks(&values);
        let n = values.len() as f64;
        let sum: f64 = ranks.iter().sum();
        assert!((sum - n * (n + 1.0) / 2.0).abs() < 1e-12);
    }
}
