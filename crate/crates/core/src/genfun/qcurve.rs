//! The Schrödinger-like equation in its x^{−1/ħ}-free form.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::xseries::XSeries;
use super::zbar::{is_one_at_minus_one, zbar, ZbarRoute};
use crate::arith::{binomial, falling_factorial_neg_inv_hbar, rat_to_string, Coeff, HbarPoly, Rat};
use crate::error::Result;

/// LHS − RHS of  −ħ x ∂ₓ Z̄ = (−ħ)^a Σ_k binom(a,k) (−ħ^{−1})_k x^{−k} ∂ₓ^{a−k} Z̄,
/// known to the order of `z`.
pub fn apply_quantum_operator(a: u32, z: &XSeries) -> XSeries {
    let order = z.order();
    let a_us = a as usize;
    let neg_hbar_a = HbarPoly::monomial(Rat::from_integer(BigInt::from(-1).pow(a)), a as i32);
    // prefactor of x^{−k} ∂^{a−k}, for each k
    let weights: Vec<HbarPoly> = (0..=a)
        .map(|k| {
            let c = Rat::from_integer(binomial(a as i64, k as i64));
            neg_hbar_a.times(&falling_factorial_neg_inv_hbar(k)).scale(&c)
        })
        .collect();
    let mut out = XSeries::zero(order);
    for big_b in 0..=order {
        // −ħ x ∂ₓ x^{−b} = ħ b x^{−b}
        let mut acc = z.coeff(big_b).shift(1).scale(&Rat::from_integer(BigInt::from(big_b)));
        if big_b >= a_us {
            let b = big_b - a_us;
            let cb = z.coeff(b);
            if !cb.vanishes() {
                for (k, w) in weights.iter().enumerate() {
                    let m = a_us - k;
                    // ∂^m x^{−b} = (−1)^m b(b+1)⋯(b+m−1) x^{−b−m}
                    let rising: BigInt = (b..b + m).map(BigInt::from).product();
                    let signed = if m.is_multiple_of(2) { rising } else { -rising };
                    acc = acc.minus(&w.times(cb).scale(&Rat::from_integer(signed)));
                }
            }
        }
        out.set(big_b, acc);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteStatus {
    pub route: ZbarRoute,
    pub residual_zero: bool,
    pub unit_at_minus_one: bool,
    pub agrees_with_closed: bool,
    /// First nonzero residual coefficient: (b, ħ-exponent, value).
    pub first_failure: Option<(usize, i32, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchrodingerReport {
    pub a: u32,
    pub order: usize,
    pub routes: Vec<RouteStatus>,
}

impl SchrodingerReport {
    /// Residual vanishes and all routes agree; the ħ = −1 specialization is reported separately.
    pub fn passed(&self) -> bool {
        self.routes.iter().all(|r| r.residual_zero && r.agrees_with_closed)
    }
}

/// Position and value of the first nonzero coefficient of a residual.
pub fn first_nonzero(res: &XSeries) -> Option<(usize, i32, String)> {
    res.coeffs().iter().enumerate().find_map(|(b, c)| c.terms().next().map(|(e, r)| (b, e, rat_to_string(r))))
}

/// Builds Z̄ by every route and checks the equation coefficientwise to x^{−order}.
pub fn verify_schrodinger(a: u32, order: usize) -> Result<SchrodingerReport> {
    let closed = zbar(a, order, ZbarRoute::Closed)?;
    let mut routes = Vec::new();
    for route in ZbarRoute::ALL {
        let z = zbar(a, order, route)?;
        let res = apply_quantum_operator(a, &z);
        let first_failure = first_nonzero(&res);
        routes.push(RouteStatus {
            route,
            residual_zero: first_failure.is_none(),
            unit_at_minus_one: is_one_at_minus_one(&z),
            agrees_with_closed: z == closed,
            first_failure,
        });
    }
    Ok(SchrodingerReport { a, order, routes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::genfun::zbar_closed;

    #[test]
    fn trivial_input_is_caught() {
        let res = apply_quantum_operator(1, &XSeries::one(4));
        assert_eq!(first_nonzero(&res), Some((1, 0, "-1".into())));
    }

    #[test]
    fn closed_form_is_annihilated() {
        for a in 1..=4 {
            assert!(apply_quantum_operator(a, &zbar_closed(a, 16)).is_zero(), "a = {a}");
        }
    }

    #[test]
    fn perturbation_is_located() {
        let mut z = zbar_closed(2, 12);
        let bumped = z.coeff(6).plus(&HbarPoly::constant(rat(1, 1)));
        z.set(6, bumped);
        let (b, _, _) = first_nonzero(&apply_quantum_operator(2, &z)).unwrap();
        assert_eq!(b, 6);
    }
}
