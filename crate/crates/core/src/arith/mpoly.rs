//! Sparse multivariate polynomials with exponent vectors packed into a `u128`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::coeff::{Coeff, Rat};
use super::poly::Poly;

pub const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MASK: u128 = 0xffff;

/// Exponent vector of up to [`MAX_VARS`] variables, each below 2^16.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub fn one() -> Self {
        Monomial(0)
    }

    pub fn var(i: usize, e: u32) -> Self {
        debug_assert!(i < MAX_VARS && e <= MASK as u32);
        Monomial((e as u128) << (BITS * i as u32))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        exps.iter().enumerate().fold(Monomial(0), |m, (i, &e)| m.mul(Monomial::var(i, e)))
    }

    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (BITS * i as u32)) & MASK) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    pub fn with_exp(self, i: usize, e: u32) -> Monomial {
        let cleared = self.0 & !(MASK << (BITS * i as u32));
        Monomial(cleared | ((e as u128) << (BITS * i as u32)))
    }

    pub fn total_degree(self, nvars: usize) -> u32 {
        (0..nvars).map(|i| self.exp(i)).sum()
    }
}

/// Sparse polynomial in `nvars` variables with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
    zero: C,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(nvars: usize, zero: C) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MPoly { nvars, terms: BTreeMap::new(), zero }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars, c.zero_like());
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn term(nvars: usize, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(nvars, c.zero_like());
        p.add_term(m, c);
        p
    }

    /// The univariate polynomial `u` placed in variable `var`.
    pub fn from_univariate(nvars: usize, var: usize, u: &Poly<C>, zero: C) -> Self {
        let mut p = Self::zero(nvars, zero);
        for (k, c) in u.coeffs().iter().enumerate() {
            p.add_term(Monomial::var(var, k as u32), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.vanishes() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.plus(&c);
                if e.vanishes() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (&m, c) in &other.terms {
            self.add_term(m, c.clone());
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    /// Maps coefficients into another ring.
    pub fn map<D: Coeff>(&self, zero: D, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.nvars, zero);
        for (&m, c) in &self.terms {
            out.add_term(m, f(c));
        }
        out
    }

    /// Re-indexes variables: variable `i` of `self` becomes `target[i]` in a
    /// polynomial with `nvars` variables.
    pub fn relabel(&self, nvars: usize, target: &[usize]) -> Self {
        assert_eq!(target.len(), self.nvars);
        let mut out = Self::zero(nvars, self.zero.clone());
        for (&m, c) in &self.terms {
            let nm = (0..self.nvars).fold(Monomial::one(), |acc, i| acc.mul(Monomial::var(target[i], m.exp(i))));
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Splits off variable `var`: returns `p_k` with `self = sum_k var^k p_k`,
    /// where the `p_k` no longer involve `var`.
    pub fn collect_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars, self.zero.clone()); if self.is_empty() { 0 } else { deg + 1 }];
        for (&m, c) in &self.terms {
            out[m.exp(var) as usize].add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn mul_scalar(&self, c: &C) -> Self {
        self.map(self.zero.clone(), |x| x.times(c))
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(&k, c)| (k.mul(m), c.clone())).collect(), zero: self.zero.clone() }
    }

    /// Multiplies by a univariate polynomial in variable `var`.
    pub fn mul_univariate(&self, var: usize, u: &Poly<C>) -> Self {
        let mut out = Self::zero(self.nvars, self.zero.clone());
        for (k, uc) in u.coeffs().iter().enumerate() {
            if uc.vanishes() {
                continue;
            }
            let shift = Monomial::var(var, k as u32);
            for (&m, c) in &self.terms {
                out.add_term(m.mul(shift), c.times(uc));
            }
        }
        out
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.zero.clone());
        for (&m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), c.scale(&Rat::from_integer((e as i64).into())));
            }
        }
        out
    }

    /// Substitutes a value for every variable.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.zero.clone();
        for (&m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.times(&x.power(e));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Exact division by a univariate polynomial in `var` with rational
    /// coefficients; `None` when the remainder is nonzero.
    pub fn div_exact_univariate(&self, var: usize, d: &Poly<Rat>) -> Option<Self> {
        let dd = d.degree().expect("division by zero polynomial") as u32;
        let lc_inv = d.leading().unwrap().recip();
        let mut rem = self.collect_in(var);
        if rem.is_empty() {
            return Some(self.clone());
        }
        if (rem.len() as u32) <= dd {
            return None;
        }
        let zero = Self::zero(self.nvars, self.zero.clone());
        let mut quot = vec![zero; rem.len() - dd as usize];
        for k in (dd as usize..rem.len()).rev() {
            if rem[k].is_empty() {
                continue;
            }
            let c = rem[k].scale(&lc_inv);
            for (j, dc) in d.coeffs().iter().enumerate() {
                if !dc.is_zero() {
                    let t = c.scale(&-dc);
                    rem[k - dd as usize + j].add_assign(&t);
                }
            }
            quot[k - dd as usize] = c;
        }
        if rem.iter().take(dd as usize).any(|r| !r.is_empty()) {
            return None;
        }
        let mut out = Self::zero(self.nvars, self.zero.clone());
        for (k, q) in quot.into_iter().enumerate() {
            out.add_assign(&q.mul_monomial(Monomial::var(var, k as u32)));
        }
        Some(out)
    }
}

impl<C: Coeff> Coeff for MPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars, self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.nvars, self.zero.one_like())
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        out.add_assign(small);
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.negate());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars.max(other.nvars), self.zero.clone());
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(&m, c)| (m, c.negate())).collect(), zero: self.zero.clone() }
    }
    fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return self.zero_like();
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(&m, c)| (m, c.scale(r))).collect(), zero: self.zero.clone() }
    }
}

impl MPoly<Rat> {
    pub fn rat_zero(nvars: usize) -> Self {
        Self::zero(nvars, Rat::zero())
    }

    pub fn rat_one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn p(terms: &[(&[u32], i64)]) -> MPoly<Rat> {
        let mut out = MPoly::rat_zero(3);
        for (e, c) in terms {
            out.add_term(Monomial::from_exps(e), rat_int(*c));
        }
        out
    }

    #[test]
    fn packing() {
        let m = Monomial::from_exps(&[3, 0, 7]);
        assert_eq!(m.exps(3), vec![3, 0, 7]);
        assert_eq!(m.with_exp(2, 1).exps(3), vec![3, 0, 1]);
        assert_eq!(m.mul(Monomial::var(1, 2)).exps(3), vec![3, 2, 7]);
    }

    #[test]
    fn exact_division() {
        // (z0^2 - 1)(z1 + 2 z0) / (z0^2 - 1)
        let a = p(&[(&[0, 1, 0], 1), (&[1, 0, 0], 2)]);
        let d = Poly::from_ints(&[-1, 0, 1]);
        let prod = a.mul_univariate(0, &d);
        assert_eq!(prod.div_exact_univariate(0, &d), Some(a.clone()));
        assert_eq!(a.div_exact_univariate(0, &d), None);
        assert_eq!(prod.plus(&p(&[(&[0, 0, 1], 1)])).div_exact_univariate(0, &d), None);
    }

    #[test]
    fn relabel_swaps() {
        let a = p(&[(&[1, 2, 0], 5)]);
        let b = a.relabel(3, &[1, 0, 2]);
        assert_eq!(b, p(&[(&[2, 1, 0], 5)]));
    }
}
