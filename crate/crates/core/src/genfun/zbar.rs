//! The modified partition function Z̄ by independent routes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::xseries::XSeries;
use crate::arith::{factorial, falling_factorial_neg_inv_hbar, Coeff, HbarPoly, Rat};
use crate::error::Result;
use crate::permcount::{connected_from_disconnected, disconnected_table, fbullet_closed, hbar_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZbarRoute {
    /// Falling-factorial sum.
    Closed,
    /// 1 + Σ f•(v,e) ħ^{(a−1)e−v} x^{−ae} with Stirling-number f•.
    Disconnected,
    /// Exponential of the connected series obtained from f• by a logarithm.
    ExpConnected,
    /// Angle-ordered recursion F•(v,e) divided by (ae)!.
    Recursion,
}

impl ZbarRoute {
    pub const ALL: [ZbarRoute; 4] =
        [ZbarRoute::Closed, ZbarRoute::Disconnected, ZbarRoute::ExpConnected, ZbarRoute::Recursion];
}

impl fmt::Display for ZbarRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZbarRoute::Closed => "closed",
            ZbarRoute::Disconnected => "disconnected",
            ZbarRoute::ExpConnected => "exp-connected",
            ZbarRoute::Recursion => "recursion",
        })
    }
}

/// Z̄ to x^{−order} from Σ_e (−ħ^{−1})_{ae}/e! [(−1)^a ħ^{a−1}/(a x^a)]^e.
pub fn zbar_closed(a: u32, order: usize) -> XSeries {
    let mut z = XSeries::one(order);
    let a_us = a as usize;
    for e in 1..=order / a_us {
        let ff = falling_factorial_neg_inv_hbar(a * e as u32);
        let sign = if (a_us * e).is_multiple_of(2) { 1 } else { -1 };
        let den = BigInt::from(a).pow(e as u32) * factorial(e as u64);
        let c = Rat::new(BigInt::from(sign), den);
        z.set(a_us * e, ff.scale(&c).shift((a as i32 - 1) * e as i32));
    }
    z
}

/// Z̄ to x^{−order} by the requested route.
pub fn zbar(a: u32, order: usize, route: ZbarRoute) -> Result<XSeries> {
    let max_e = (order / a as usize) as u32;
    let unit_at_origin = |v: u32| Rat::from_integer((v == 0).into());
    match route {
        ZbarRoute::Closed => Ok(zbar_closed(a, order)),
        ZbarRoute::Disconnected => {
            let s = hbar_series(a, max_e, |v, e| if e == 0 { unit_at_origin(v) } else { fbullet_closed(a, v, e) });
            Ok(pad(XSeries::from_series(&s, s.hi() as usize)?, order))
        }
        ZbarRoute::ExpConnected => {
            let f = connected_from_disconnected(a, max_e)?;
            let s = hbar_series(a, max_e, |v, e| if e == 0 { Rat::zero() } else { f[e as usize][v as usize].clone() });
            let z = s.exp()?;
            Ok(pad(XSeries::from_series(&z, z.hi() as usize)?, order))
        }
        ZbarRoute::Recursion => {
            let t = disconnected_table(a, max_e);
            let s = hbar_series(a, max_e, |v, e| {
                let big = t[e as usize].get(v as usize).cloned().unwrap_or_default();
                Rat::new(big, factorial((a * e) as u64))
            });
            Ok(pad(XSeries::from_series(&s, s.hi() as usize)?, order))
        }
    }
}

/// Extends with zeros up to `order`: coefficients between the last multiple of `a` and
/// `order` vanish by the support constraint.
fn pad(z: XSeries, order: usize) -> XSeries {
    let mut c = z.coeffs().to_vec();
    c.resize(order + 1, HbarPoly::zero());
    c.truncate(order + 1);
    XSeries::from_coeffs(c)
}

/// Whether Z̄ specialized at ħ = −1 is the constant series 1.
pub fn is_one_at_minus_one(z: &XSeries) -> bool {
    z.eval_hbar(&Rat::from_integer((-1).into()))
        .iter()
        .enumerate()
        .all(|(b, c)| if b == 0 { *c == Rat::from_integer(1.into()) } else { c.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, rat};

    #[test]
    fn closed_low_terms() {
        let z = zbar_closed(2, 4);
        assert_eq!(*z.coeff(0), HbarPoly::one());
        assert!(z.coeff(1).vanishes());
        let expect = HbarPoly::constant(rat(1, 2)).plus(&HbarPoly::monomial(rat(1, 2), -1));
        assert_eq!(*z.coeff(2), expect);
    }

    #[test]
    fn a1_is_binomial_series() {
        // (1 − u)^{−1/ħ} = Σ_e binom(1/ħ + e − 1, e) u^e; check at ħ = 1/3
        let z = zbar_closed(1, 20);
        let h = rat(1, 3);
        for (e, c) in z.eval_hbar(&h).iter().enumerate() {
            let e = e as i64;
            assert_eq!(*c, Rat::from_integer(binomial(3 + e - 1, e)), "e = {e}");
        }
    }

    #[test]
    fn routes_agree_small() {
        for a in 1..=3 {
            let c = zbar(a, 12, ZbarRoute::Closed).unwrap();
            for r in ZbarRoute::ALL {
                assert_eq!(zbar(a, 12, r).unwrap(), c, "a = {a}, route {r}");
            }
        }
    }
}
