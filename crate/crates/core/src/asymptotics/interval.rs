//! Closed intervals with rational endpoints, rounded outward.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn int(x: i64) -> Self {
        Self::point(BigRational::from_integer(x.into()))
    }

    /// Enclosure of `sqrt(x)` with endpoints on the grid `2^-bits`.
    pub fn sqrt(x: &BigRational, bits: u32) -> Self {
        assert!(!x.is_negative(), "sqrt of a negative number");
        let scale = BigInt::one() << (2 * bits);
        let scaled = x * BigRational::from_integer(scale);
        let lo_int = scaled.floor().to_integer().sqrt();
        let hi_int = scaled.ceil().to_integer().sqrt();
        let hi_int = if &hi_int * &hi_int < scaled.ceil().to_integer() {
            hi_int + 1
        } else {
            hi_int
        };
        let den = BigInt::one() << bits;
        Interval {
            lo: BigRational::new(lo_int, den.clone()),
            hi: BigRational::new(hi_int, den),
        }
    }

    /// `sqrt` of an interval with non-negative lower end.
    pub fn sqrt_of(&self, bits: u32) -> Self {
        Interval {
            lo: Self::sqrt(&self.lo, bits).lo,
            hi: Self::sqrt(&self.hi, bits).hi,
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of an interval containing 0");
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = p.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Interval { lo, hi }
    }
}

impl Div for &Interval {
    type Output = Interval;
    fn div(self, o: &Interval) -> Interval {
        let inv = o.recip();
        Mul::mul(self, &inv)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::frac;

    #[test]
    fn sqrt_encloses() {
        for bits in [4, 32, 200] {
            let s = Interval::sqrt(&frac(2, 1), bits);
            assert!(&s.lo * &s.lo <= frac(2, 1) && &s.hi * &s.hi >= frac(2, 1));
            assert!(s.width() <= BigRational::new(BigInt::one(), BigInt::one() << bits));
        }
        assert_eq!(Interval::sqrt(&frac(9, 4), 3), Interval::point(frac(3, 2)));
    }

    #[test]
    fn arithmetic_is_outward() {
        let a = Interval::new(frac(-1, 1), frac(2, 1));
        let b = Interval::new(frac(3, 1), frac(4, 1));
        assert_eq!(&a * &b, Interval::new(frac(-4, 1), frac(8, 1)));
        assert_eq!(&a - &b, Interval::new(frac(-5, 1), frac(-1, 1)));
        assert_eq!(b.recip(), Interval::new(frac(1, 4), frac(1, 3)));
        assert!(a.contains_zero() && b.is_positive());
        assert_eq!(-&b, Interval::new(frac(-4, 1), frac(-3, 1)));
    }
}
