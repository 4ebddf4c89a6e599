//! Numeric plumbing for ratio-valued quantities (conductance, bounds).
//!
//! Flow and cut arithmetic is integral throughout; only derived ratios go
//! through [`Scalar`], so callers can pick `f64` for speed or an exact
//! rational when comparing against hand-computed values.

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};
use std::fmt::Debug;

/// Any number type a ratio of two counts can be expressed in.
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug {}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug {}

/// `num / den` in the scalar type `T`.
///
/// Panics if `den` is zero or either count does not fit `T`.
pub fn ratio<T: Scalar>(num: u64, den: u64) -> T {
    assert!(den != 0, "ratio with zero denominator");
    let n = T::from_u64(num).expect("numerator out of range");
    let d = T::from_u64(den).expect("denominator out of range");
    n / d
}

/// Exact rational helper used by tests and reports.
pub fn exact(num: u64, den: u64) -> Ratio<i64> {
    Ratio::new(num as i64, den as i64)
}

/// Natural log clamped below at 1, for the iterated-log factors that are
/// undefined or negative on tiny graphs.
pub fn ln_floor1(x: f64) -> f64 {
    if x <= std::f64::consts::E {
        1.0
    } else {
        x.ln().max(1.0)
    }
}

/// `ln ln x` floored at 1.
pub fn lnln_floor1(x: f64) -> f64 {
    if x <= 1.0 {
        return 1.0;
    }
    let l = x.ln();
    if l <= 1.0 {
        1.0
    } else {
        l.ln().max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_in_both_representations() {
        let f: f64 = ratio(1, 21);
        assert!((f - 1.0 / 21.0).abs() < 1e-15);
        let q: Ratio<i64> = ratio(4, 6);
        assert_eq!(q, Ratio::new(2, 3));
        assert_eq!(exact(2, 6), Ratio::new(1, 3));
    }

    #[test]
    fn iterated_log_floor() {
        assert_eq!(lnln_floor1(3.0), 1.0);
        assert_eq!(lnln_floor1(15.0), 1.0);
        assert!(lnln_floor1(1e6) > 2.0);
        assert_eq!(ln_floor1(2.0), 1.0);
    }
}
