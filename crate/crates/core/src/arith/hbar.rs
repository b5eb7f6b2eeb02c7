use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::coeff::{rat_to_string, Coeff, Rat};

/// Laurent polynomial in ħ with rational coefficients.
///
/// Stored sparsely by exponent; zero coefficients are never kept.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HbarPoly {
    terms: BTreeMap<i32, Rat>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0)
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rat, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        HbarPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, exp: i32) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by ħ^k.
    pub fn shift(&self, k: i32) -> Self {
        HbarPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Value at ħ = `h`; `h` must be nonzero when negative exponents occur.
    pub fn eval(&self, h: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&e, c) in &self.terms {
            let p = h.pow(e);
            acc += c * p;
        }
        acc
    }
}

impl Coeff for HbarPoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        HbarPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
    fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        HbarPoly { terms: self.terms.iter().map(|(&e, c)| (e, c * r)).collect() }
    }
}

/// The falling factorial `(t)_k = t (t-1) ... (t-k+1)` at `t = -1/ħ`.
pub fn falling_factorial_neg_inv_hbar(k: u32) -> HbarPoly {
    let mut acc = HbarPoly::one();
    for i in 0..k {
        let mut factor = HbarPoly::monomial(-Rat::one(), -1);
        factor.add_term(0, Rat::from_integer((-(i as i64)).into()));
        acc = acc.times(&factor);
    }
    acc
}

impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, c)| match e {
                0 => rat_to_string(c),
                _ => format!("({})*h^{}", rat_to_string(c), e),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn falling_factorial_small_cases() {
        assert_eq!(falling_factorial_neg_inv_hbar(0), HbarPoly::one());
        // (-1/h)(-1/h - 1) = h^-2 + h^-1
        let mut expect = HbarPoly::monomial(rat(1, 1), -2);
        expect.add_term(-1, rat(1, 1));
        assert_eq!(falling_factorial_neg_inv_hbar(2), expect);
    }

    #[test]
    fn falling_factorial_vanishes_at_its_roots() {
        // t = -1/h takes the value j at h = -1/j.
        for k in 1..8u32 {
            let ff = falling_factorial_neg_inv_hbar(k);
            for j in 1..k as i64 {
                assert!(ff.eval(&rat(-1, j)).is_zero(), "k={k} j={j}");
            }
            // t = 0 is approached as h -> infinity; the constant term is the value there.
            assert!(ff.coeff(0).is_zero());
        }
    }

    #[test]
    fn evaluation_at_minus_one() {
        let p = HbarPoly::monomial(rat_int(3), -3).plus(&HbarPoly::constant(rat_int(2)));
        assert_eq!(p.eval(&rat_int(-1)), rat_int(-1));
    }
}
