use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats as `num/den`, or `num` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Commutative Q-algebra element usable as a series or polynomial coefficient.
///
/// Some coefficient rings carry context (the modulus of an étale algebra, a
/// variable count), so constants are produced from an existing element.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, r: &Rat) -> Self;

    fn from_rat_like(&self, r: &Rat) -> Self {
        self.one_like().scale(r)
    }

    fn power(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Rings where units can be inverted.
pub trait Invertible: Coeff {
    fn try_inv(&self) -> Result<Self>;
}

impl Coeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
}

impl Invertible for Rat {
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::NotInvertible("0".into()))
        } else {
            Ok(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_form() {
        assert_eq!(rat_to_string(&rat(336, 5)), "336/5");
        assert_eq!(rat_to_string(&rat(-4, 2)), "-2");
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(2, 3).power(5), rat(32, 243));
        assert_eq!(rat(7, 1).power(0), rat(1, 1));
    }
}
