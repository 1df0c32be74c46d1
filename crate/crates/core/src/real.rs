use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type for every real-valued computation in the crate.
///
/// Blanket-implemented for `f32`, `f64` and [`crate::Extended`].
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert")
    }

    /// Exact `num/den` in the scalar's own precision.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).unwrap() / Self::from_i64(den).unwrap()
    }

    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count must convert")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<R> {
    sum: R,
    carry: R,
}

impl<R: Real> Default for CompensatedSum<R> {
    fn default() -> Self {
        Self {
            sum: R::zero(),
            carry: R::zero(),
        }
    }
}

impl<R: Real> CompensatedSum<R> {
    pub fn add(&mut self, x: R) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> R {
        self.sum + self.carry
    }
}
