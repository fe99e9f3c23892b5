//! Rank-window noise smoothing.
//!
//! Each y value is replaced by the mean of the y values whose x ranks lie
//! within `epsilon` positions on either side. Rank windows are the
//! deterministic counterpart of radius neighborhoods (the two coincide in
//! expectation for uniform x), and boundary windows truncate so the dataset
//! size is preserved for downstream scoring.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::Scalar;

/// Half-width of the smoothing window, in ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothingConfig {
    pub epsilon: usize,
}

impl SmoothingConfig {
    /// `epsilon` points on each side; must leave a window inside the dataset
    /// (`epsilon <= (n - 1) / 2`). `epsilon = 0` is the identity.
    pub fn new(epsilon: usize, n: usize) -> Result<Self> {
        if n < 2 || epsilon > (n - 1) / 2 {
            return Err(Error::WindowOutOfBounds { epsilon, n });
        }
        Ok(SmoothingConfig { epsilon })
    }

    /// MSE-optimal half-width from the noise and smoothness parameters,
    /// rounded to the nearest integer and clamped to `[1, (n - 1) / 2]`.
    pub fn from_parameters(sigma: f64, k_lip: f64, beta: f64, n: usize) -> Result<Self> {
        let optimal = optimal_neighborhood(sigma, k_lip, beta, n)?;
        let clamped = (optimal.round() as usize).clamp(1, (n.max(3) - 1) / 2);
        SmoothingConfig::new(clamped, n)
    }
}

/// The closed-form window half-width minimizing the smoothing mean squared
/// error: `(sigma^2 / (4 k^2 beta))^(1/(2beta+1)) * n^(1 - 1/(2beta+1))`.
pub fn optimal_neighborhood(sigma: f64, k_lip: f64, beta: f64, n: usize) -> Result<f64> {
    for (name, value) in [("sigma", sigma), ("k_lip", k_lip), ("beta", beta)] {
        if value <= 0.0 || value.is_nan() {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    if n < 2 {
        return Err(Error::TooFewPoints { min: 2, actual: n });
    }
    let inv = 1.0 / (2.0 * beta + 1.0);
    let base = sigma * sigma / (4.0 * k_lip * k_lip * beta);
    Ok(base.powf(inv) * (n as f64).powf(1.0 - inv))
}

/// Replace each y with the mean over the rank window `[i - eps, i + eps]`
/// intersected with the dataset; x values are untouched.
pub fn knn_smooth<F: Scalar>(d: &Dataset<F>, cfg: SmoothingConfig) -> Result<Dataset<F>> {
    let n = d.len();
    if n < 2 || cfg.epsilon > (n - 1) / 2 {
        return Err(Error::WindowOutOfBounds {
            epsilon: cfg.epsilon,
            n,
        });
    }
    let canon = d.canonicalize();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(F::zero());
    for y in canon.ys() {
        let last = *prefix.last().unwrap();
        prefix.push(last + y);
    }
    let points = canon
        .points()
        .iter()
        .enumerate()
        .map(|(i, &(x, _))| {
            let lo = i.saturating_sub(cfg.epsilon);
            let hi = (i + cfg.epsilon + 1).min(n);
            let mean = (prefix[hi] - prefix[lo]) / F::from_index(hi - lo);
            (x, mean)
        })
        .collect();
    Dataset::new(points)
}

/// Empirical mean squared y-difference between two datasets in matching
/// x order.
pub fn smoothing_mse<F: Scalar>(clean: &Dataset<F>, smoothed: &Dataset<F>) -> Result<F> {
    if clean.len() != smoothed.len() {
        return Err(Error::LengthMismatch {
            left: clean.len(),
            right: smoothed.len(),
        });
    }
    if clean.is_empty() {
        return Ok(F::zero());
    }
    let sum = clean
        .ys()
        .zip(smoothed.ys())
        .fold(F::zero(), |acc, (a, b)| acc + (a - b) * (a - b));
    Ok(sum / F::from_index(clean.len()))
}

/// Max absolute value, the statistic the residual-decay checks consume.
pub fn residual_max_stat<F: Scalar>(noise: &[F]) -> F {
    noise
        .iter()
        .fold(F::zero(), |m, &z| if z.abs() > m { z.abs() } else { m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(pts: &[(f64, f64)]) -> Dataset<f64> {
        Dataset::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_value() {
        let eps = optimal_neighborhood(1.0, 1.0, 1.0, 1000).unwrap();
        assert!((eps - 63.0).abs() < 0.05, "got {eps}");
    }

    #[test]
    fn doubling_n_scales_by_two_thirds_power() {
        let a = optimal_neighborhood(0.3, 2.0, 1.0, 500).unwrap();
        let b = optimal_neighborhood(0.3, 2.0, 1.0, 1000).unwrap();
        assert!((b / a - 2f64.powf(2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn vanishing_noise_gives_vanishing_window() {
        let eps = optimal_neighborhood(1e-12, 1.0, 1.0, 1000).unwrap();
        assert!(eps < 1e-4);
    }

    #[test]
    fn nonpositive_parameter_rejected() {
        assert!(optimal_neighborhood(0.0, 1.0, 1.0, 100).is_err());
        assert!(optimal_neighborhood(1.0, -1.0, 1.0, 100).is_err());
    }

    #[test]
    fn zero_window_is_identity() {
        let d = ds(&[(0.0, 1.0), (1.0, 5.0), (2.0, -3.0)]);
        let s = knn_smooth(&d, SmoothingConfig { epsilon: 0 }).unwrap();
        assert_eq!(s.points(), d.canonicalize().points());
    }

    #[test]
    fn constant_y_unchanged() {
        let d = ds(&[(0.0, 2.0), (1.0, 2.0), (2.0, 2.0), (3.0, 2.0), (4.0, 2.0)]);
        let s = knn_smooth(&d, SmoothingConfig { epsilon: 2 }).unwrap();
        assert!(s.ys().all(|y| (y - 2.0).abs() < 1e-12));
    }

    #[test]
    fn truncated_window_means() {
        let d = ds(&[(0.0, 0.0), (1.0, 3.0), (2.0, 6.0)]);
        let s = knn_smooth(&d, SmoothingConfig { epsilon: 1 }).unwrap();
        let ys: Vec<f64> = s.ys().collect();
        assert_eq!(ys, vec![1.5, 3.0, 4.5]);
    }

    #[test]
    fn oversized_window_rejected() {
        let d = ds(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert!(knn_smooth(&d, SmoothingConfig { epsilon: 2 }).is_err());
    }

    #[test]
    fn mse_examples() {
        let a = ds(&[(0.0, 1.0), (1.0, 2.0)]);
        assert_eq!(smoothing_mse(&a, &a).unwrap(), 0.0);

        let b = ds(&[(0.0, 1.5), (1.0, 2.5)]);
        assert!((smoothing_mse(&a, &b).unwrap() - 0.25).abs() < 1e-12);

        let short = ds(&[(0.0, 0.0)]);
        assert!(smoothing_mse(&a, &short).is_err());
    }

    #[test]
    fn residual_max_examples() {
        assert_eq!(residual_max_stat(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(residual_max_stat(&[-3.0, 1.0]), 3.0);
    }
}
