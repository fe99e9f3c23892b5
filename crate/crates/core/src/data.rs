//! Paired samples and their canonical x-sorted form.

use crate::error::{Error, Result};
use crate::Scalar;

/// A finite set of `(x, y)` sample pairs.
///
/// Construction rejects non-finite coordinates, so every downstream
/// comparison is a total order. Scoring operations expect the canonical
/// x-sorted view produced by [`Dataset::canonicalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<F> {
    points: Vec<(F, F)>,
    canonical: bool,
}

impl<F: Scalar> Dataset<F> {
    pub fn new(points: Vec<(F, F)>) -> Result<Self> {
        for (index, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFiniteCoordinate { index });
            }
        }
        Ok(Dataset {
            points,
            canonical: false,
        })
    }

    pub fn from_columns(xs: &[F], ys: &[F]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                left: xs.len(),
                right: ys.len(),
            });
        }
        Self::new(xs.iter().copied().zip(ys.iter().copied()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(F, F)] {
        &self.points
    }

    pub fn xs(&self) -> impl Iterator<Item = F> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = F> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Sort by x ascending, ties broken by y ascending. Idempotent, keeps the
    /// multiset of points. The deterministic tie order is what makes clump
    /// extraction and the DP reproducible.
    pub fn canonicalize(&self) -> Dataset<F> {
        if self.canonical {
            return self.clone();
        }
        let mut points = self.points.clone();
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
        Dataset {
            points,
            canonical: true,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// The same points with x and y exchanged (not canonicalized).
    pub fn swapped(&self) -> Dataset<F> {
        Dataset {
            points: self.points.iter().map(|&(x, y)| (y, x)).collect(),
            canonical: false,
        }
    }

    /// `(min, max)` over x; `None` for an empty dataset.
    pub fn x_range(&self) -> Option<(F, F)> {
        range(self.xs())
    }

    pub fn y_range(&self) -> Option<(F, F)> {
        range(self.ys())
    }
}

fn range<F: Scalar>(values: impl Iterator<Item = F>) -> Option<(F, F)> {
    let mut values = values;
    let first = values.next()?;
    let mut lo = first;
    let mut hi = first;
    for v in values {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(pts: &[(f64, f64)]) -> Dataset<f64> {
        Dataset::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_sorts_by_x() {
        let d = ds(&[(2.0, 0.0), (1.0, 5.0)]).canonicalize();
        assert_eq!(d.points(), &[(1.0, 5.0), (2.0, 0.0)]);
    }

    #[test]
    fn canonicalize_breaks_x_ties_by_y() {
        let d = ds(&[(1.0, 3.0), (1.0, 1.0)]).canonicalize();
        assert_eq!(d.points(), &[(1.0, 1.0), (1.0, 3.0)]);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let d = ds(&[(0.0, 1.0), (1.0, 0.0), (2.0, 2.0)]).canonicalize();
        assert_eq!(d.canonicalize().points(), d.points());
    }

    #[test]
    fn non_finite_coordinate_names_index() {
        let err = Dataset::new(vec![(0.0, 0.0), (f64::NAN, 1.0)]).unwrap_err();
        match err {
            Error::NonFiniteCoordinate { index } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn ranges() {
        let d = ds(&[(0.0, 3.0), (2.0, -1.0), (1.0, 0.5)]);
        assert_eq!(d.x_range(), Some((0.0, 2.0)));
        assert_eq!(d.y_range(), Some((-1.0, 3.0)));
    }
}
