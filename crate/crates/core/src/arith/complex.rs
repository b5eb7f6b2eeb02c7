//! Fixed-point complex numbers with a few hundred fractional bits, used only
//! to evaluate the recursion numerically at the actual branch points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coeff::{Coeff, Invertible, Rat};
use crate::error::{Error, Result};

/// Fractional bits carried: 256 bits of working precision plus guard bits.
pub const FRAC_BITS: u32 = 320;

/// `re + i*im`, each scaled by `2^FRAC_BITS`.
#[derive(Clone, PartialEq, Eq)]
pub struct FixedComplex {
    re: BigInt,
    im: BigInt,
}

fn round_shift(x: BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x;
    }
    let half = BigInt::one() << (bits - 1);
    (x + half) >> bits
}

fn div_round(n: BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if (r << 1u32) >= d.abs() {
        q + 1
    } else {
        q
    }
}

impl FixedComplex {
    pub fn zero() -> Self {
        FixedComplex { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_rat(r: &Rat) -> Self {
        let re = div_round(r.numer() << FRAC_BITS, r.denom());
        FixedComplex { re, im: BigInt::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        let s = 2f64.powi(52);
        let conv = |v: f64| -> BigInt { BigInt::from((v * s).round() as i64) << (FRAC_BITS - 52) };
        FixedComplex { re: conv(re), im: conv(im) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let conv = |v: &BigInt| -> f64 { (v >> (FRAC_BITS - 60)).to_f64().unwrap_or(f64::NAN) / 2f64.powi(60) };
        (conv(&self.re), conv(&self.im))
    }

    /// `log2 |z|` rounded down, or `None` for zero. Cheap magnitude estimate.
    pub fn magnitude_bits(&self) -> Option<i64> {
        let b = self.re.bits().max(self.im.bits());
        if b == 0 {
            None
        } else {
            Some(b as i64 - FRAC_BITS as i64)
        }
    }

    /// True when `|self - other| <= 2^-bits * max(1, |other|)`.
    pub fn close_to(&self, other: &Self, bits: u32) -> bool {
        let d = self.minus(other);
        let scale = other.magnitude_bits().unwrap_or(0).max(0);
        match d.magnitude_bits() {
            None => true,
            Some(m) => m <= scale - bits as i64,
        }
    }

    /// The roots of `sum c_k z^k` found by Newton iteration from seeds.
    pub fn polish_root(poly: &[Rat], seed: (f64, f64)) -> Self {
        let coeffs: Vec<Self> = poly.iter().map(Self::from_rat).collect();
        let deriv: Vec<Self> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into()))).collect();
        let eval = |c: &[Self], z: &Self| -> Self {
            c.iter().rev().fold(Self::zero(), |acc, k| acc.times(z).plus(k))
        };
        let mut z = Self::from_f64(seed.0, seed.1);
        for _ in 0..40 {
            let step = eval(&coeffs, &z).times(&eval(&deriv, &z).try_inv().expect("simple root"));
            z = z.minus(&step);
            if step.magnitude_bits().is_none_or(|m| m < -(FRAC_BITS as i64) + 8) {
                break;
            }
        }
        z
    }
}

impl fmt::Debug for FixedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re:e}{im:+e}i")
    }
}

impl Coeff for FixedComplex {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        FixedComplex { re: BigInt::one() << FRAC_BITS, im: BigInt::zero() }
    }
    fn vanishes(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn minus(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn times(&self, o: &Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        FixedComplex { re: round_shift(re, FRAC_BITS), im: round_shift(im, FRAC_BITS) }
    }
    fn negate(&self) -> Self {
        FixedComplex { re: -&self.re, im: -&self.im }
    }
    fn scale(&self, r: &Rat) -> Self {
        FixedComplex {
            re: div_round(&self.re * r.numer(), r.denom()),
            im: div_round(&self.im * r.numer(), r.denom()),
        }
    }
}

impl Invertible for FixedComplex {
    fn try_inv(&self) -> Result<Self> {
        if self.vanishes() {
            return Err(Error::NotInvertible("0".into()));
        }
        // (re - i im) / (re^2 + im^2), all at scale 2^F
        let norm = &self.re * &self.re + &self.im * &self.im; // scale 2^{2F}
        let num_re = &self.re << (2 * FRAC_BITS);
        let num_im = -(&self.im << (2 * FRAC_BITS));
        Ok(FixedComplex { re: div_round(num_re, &norm), im: div_round(num_im, &norm) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn field_operations() {
        let a = FixedComplex::from_rat(&rat(3, 7));
        let inv = a.try_inv().unwrap();
        assert!(a.times(&inv).close_to(&a.one_like(), 300));
        let i = FixedComplex::from_f64(0.0, 1.0);
        assert!(i.times(&i).close_to(&a.one_like().negate(), 300));
    }

    #[test]
    fn cube_roots_of_one_half() {
        // 2 z^3 - 1
        let p = [rat(-1, 1), rat(0, 1), rat(0, 1), rat(2, 1)];
        let r = FixedComplex::polish_root(&p, (-0.4, 0.7));
        let cube = r.times(&r).times(&r);
        assert!(cube.close_to(&FixedComplex::from_rat(&rat(1, 2)), 300));
    }
}
