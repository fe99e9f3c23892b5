use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the scoring code is generic over.
///
/// Implemented for `f32` and `f64`; everything the measures need is a `Float`
/// plus lossless-enough conversions from counts.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Conversion from a count. Panics only if the count does not fit, which
    /// cannot happen for dataset sizes this crate handles.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + std::fmt::Debug
        + std::fmt::Display
        + Send
        + Sync
        + 'static
{
}
