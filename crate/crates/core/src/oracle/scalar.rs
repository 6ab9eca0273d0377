//! Arithmetic abstraction for the deciders: f64 with relative slack, or
//! exact rationals behind `--exact-rational`.

use num::rational::BigRational;
use num::{FromPrimitive, ToPrimitive, Zero};

use crate::approx;

pub trait Scalar: Clone + PartialOrd + Sized {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// `self <= o`, with 1e-9 relative slack in float mode, exact otherwise.
    fn le_slack(&self, o: &Self) -> bool;
    fn ge_slack(&self, o: &Self) -> bool {
        o.le_slack(self)
    }
    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
    fn is_positive(&self) -> bool;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn le_slack(&self, o: &Self) -> bool {
        approx::le(*self, *o)
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
}

impl Scalar for BigRational {
    fn from_f64(x: f64) -> Self {
        // Every finite f64 is a binary rational, so this is exact.
        <BigRational as FromPrimitive>::from_f64(x).expect("finite distance")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn le_slack(&self, o: &Self) -> bool {
        self <= o
    }
    fn is_positive(&self) -> bool {
        self > &BigRational::zero()
    }
}

/// Dense symmetric matrix of scalars, mirroring a `MetricSpace`.
pub struct ScalarMatrix<T> {
    pub n: usize,
    data: Vec<T>,
}

impl<T: Scalar> ScalarMatrix<T> {
    pub fn from_metric(m: &crate::metric::MetricSpace) -> Self {
        let n = m.len();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(T::from_f64(m.d(i, j)));
            }
        }
        ScalarMatrix { n, data }
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_exact() {
        let a = <BigRational as Scalar>::from_f64(0.1);
        let b = <BigRational as Scalar>::from_f64(0.2);
        // The rationals are exact images of the f64 bit patterns, so
        // products and comparisons are exact; doubling is exact in binary.
        assert!(a.le_slack(&b));
        assert!(!b.le_slack(&a));
        assert_eq!(Scalar::to_f64(&a.mul(&<BigRational as Scalar>::from_f64(2.0))), 0.2);
    }
}
