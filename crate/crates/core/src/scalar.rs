use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumCast};

/// Real scalar used for potentials, partition sums and rates.
pub trait Scalar:
    Float + FromPrimitive + NumCast + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Exponent above which sums are rescaled to stay finite.
    fn rescale_threshold() -> Self;

    fn of(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("finite conversion")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn rescale_threshold() -> Self {
        40.0
    }
}

impl Scalar for f64 {
    fn rescale_threshold() -> Self {
        300.0
    }
}
