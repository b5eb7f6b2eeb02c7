use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::curve::SpectralCurve;
use crate::arith::{Coeff, MPoly, Monomial, Poly, Rat};
use crate::error::{Error, Result};

/// ω_{g,n}/Πdz_i as N(z₁..z_n) / Π p(z_i)^{m_i}, with the p-powers reduced as far
/// as N allows. The first variable is the one produced by the recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaDatum {
    pub a: u32,
    pub g: u32,
    pub n: usize,
    numerator: MPoly<Rat>,
    denom: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct OmegaJson {
    a: u32,
    g: u32,
    n: usize,
    numerator: Vec<(Vec<u32>, String, String)>,
    denom_exponents: Vec<u32>,
    monomial_exponents: Vec<u32>,
}

/// Shared p(z)-power bookkeeping for numerators over Π p(z_i)^{m_i}.
pub(crate) fn lift_denominators(num: &MPoly<Rat>, from: &[u32], to: &[u32], p: &Poly<Rat>) -> MPoly<Rat> {
    let mut out = num.clone();
    for (i, (&f, &t)) in from.iter().zip(to).enumerate() {
        assert!(t >= f, "cannot lower a denominator by multiplication");
        if t > f {
            out = out.mul_univariate(i, &p.pow(t - f));
        }
    }
    out
}

impl OmegaDatum {
    /// Builds the datum and cancels common p(z_i) factors.
    pub fn new(a: u32, g: u32, numerator: MPoly<Rat>, denom: Vec<u32>) -> Self {
        let n = denom.len();
        assert_eq!(numerator.nvars(), n, "numerator arity");
        let mut d = OmegaDatum { a, g, n, numerator, denom };
        d.reduce();
        d
    }

    pub fn zero(a: u32, g: u32, n: usize) -> Self {
        OmegaDatum { a, g, n, numerator: MPoly::rat_zero(n), denom: vec![0; n] }
    }

    fn reduce(&mut self) {
        if self.numerator.is_empty() {
            self.denom.iter_mut().for_each(|m| *m = 0);
            return;
        }
        let p = SpectralCurve::new(self.a).expect("a > 0").branch_poly().clone();
        if p.degree() == Some(0) {
            return;
        }
        for i in 0..self.n {
            while self.denom[i] > 0 {
                match self.numerator.div_exact_univariate(i, &p) {
                    Some(q) => {
                        self.numerator = q;
                        self.denom[i] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    pub fn numerator(&self) -> &MPoly<Rat> {
        &self.numerator
    }

    pub fn denom_exponents(&self) -> &[u32] {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Value of ω/Πdz_i at a point avoiding the branch points.
    pub fn eval(&self, z: &[Rat]) -> Result<Rat> {
        let p = SpectralCurve::new(self.a)?.branch_poly().clone();
        let mut den = Rat::one();
        for (zi, &m) in z.iter().zip(&self.denom) {
            den *= p.eval(zi).expect("rational evaluation").pow(m as i32);
        }
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.numerator.eval(z) / den)
    }

    /// The same form over larger denominator exponents (no reduction).
    pub fn numerator_over(&self, denom: &[u32]) -> MPoly<Rat> {
        let p = SpectralCurve::new(self.a).expect("a > 0").branch_poly().clone();
        lift_denominators(&self.numerator, &self.denom, denom, &p)
    }

    /// Exact equality as rational functions.
    pub fn same_function(&self, other: &OmegaDatum) -> bool {
        if self.a != other.a || self.n != other.n {
            return false;
        }
        let top: Vec<u32> = self.denom.iter().zip(&other.denom).map(|(x, y)| *x.max(y)).collect();
        self.numerator_over(&top) == other.numerator_over(&top)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let mut target: Vec<usize> = (0..self.n).collect();
            target.swap(i, i + 1);
            self.denom[i] == self.denom[i + 1] && self.numerator.relabel(self.n, &target) == self.numerator
        })
    }

    /// Largest pole order allowed at a branch point in any variable.
    pub fn pole_order_bound(&self) -> u32 {
        (6 * self.g as i64 - 4 + 2 * self.n as i64).max(0) as u32
    }

    /// deg_{z_i} N ≤ a·m_i − 2 for every i, i.e. no pole at z_i = ∞.
    pub fn regular_at_infinity(&self) -> bool {
        (0..self.n).all(|i| match self.numerator.degree_in(i) {
            None => true,
            Some(d) => (d as i64) <= self.a as i64 * self.denom[i] as i64 - 2,
        })
    }

    /// Symmetry, the pole-order bound and regularity at z = ∞.
    pub fn check_invariants(&self) -> Result<()> {
        if !self.is_symmetric() {
            return Err(Error::Invariant(format!("ω_{{{},{}}} is not symmetric", self.g, self.n)));
        }
        let bound = self.pole_order_bound();
        if let Some(m) = self.denom.iter().find(|&&m| m > bound) {
            return Err(Error::Invariant(format!("ω_{{{},{}}} has pole order {m} > {bound}", self.g, self.n)));
        }
        if !self.regular_at_infinity() {
            return Err(Error::Invariant(format!("ω_{{{},{}}} has a pole at z = ∞", self.g, self.n)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let numerator = self
            .numerator
            .terms()
            .map(|(m, c)| (m.exps(self.n), c.numer().to_string(), c.denom().to_string()))
            .collect();
        let j = OmegaJson {
            a: self.a,
            g: self.g,
            n: self.n,
            numerator,
            denom_exponents: self.denom.clone(),
            monomial_exponents: vec![0; self.n],
        };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: OmegaJson = serde_json::from_str(s)?;
        if j.denom_exponents.len() != j.n || j.monomial_exponents.iter().any(|&e| e != 0) {
            return Err(Error::Invalid("malformed ω record".into()));
        }
        let mut num = MPoly::rat_zero(j.n);
        for (exps, nu, de) in j.numerator {
            if exps.len() != j.n {
                return Err(Error::Invalid("exponent vector arity".into()));
            }
            let parse = |s: &str| s.parse().map_err(|_| Error::Invalid(format!("bad integer {s}")));
            let c = Rat::new(parse(&nu)?, parse(&de)?);
            num.add_term(Monomial::from_exps(&exps), c);
        }
        Ok(OmegaDatum { a: j.a, g: j.g, n: j.n, numerator: num, denom: j.denom_exponents })
    }

    /// Multiplies by a rational constant.
    pub fn scaled(&self, c: &Rat) -> Self {
        let mut d = self.clone();
        d.numerator = self.numerator.scale(c);
        if d.numerator.is_empty() {
            d.denom.iter_mut().for_each(|m| *m = 0);
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn datum() -> OmegaDatum {
        // (z0 + z1) p(z0) / (p(z0)^3 p(z1)^2) at a = 2
        let p = Poly::from_ints(&[-1, 0, 1]);
        let mut n = MPoly::rat_zero(2);
        n.add_term(Monomial::var(0, 1), rat_int(1));
        n.add_term(Monomial::var(1, 1), rat_int(1));
        OmegaDatum::new(2, 0, n.mul_univariate(0, &p), vec![3, 2])
    }

    #[test]
    fn reduction_cancels_factors() {
        let d = datum();
        assert_eq!(d.denom_exponents(), &[2, 2]);
        assert!(d.is_symmetric());
        let z = [rat(1, 3), rat(2, 5)];
        let one = rat_int(1);
        let direct = (&z[0] + &z[1]) / ((&z[0] * &z[0] - &one).pow(2) * (&z[1] * &z[1] - &one).pow(2));
        assert_eq!(d.eval(&z).unwrap(), direct);
    }

    #[test]
    fn json_round_trip() {
        let d = datum();
        let back = OmegaDatum::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(back, d);
        assert!(back.same_function(&d));
    }

    #[test]
    fn asymmetric_is_rejected() {
        let mut n = MPoly::rat_zero(2);
        n.add_term(Monomial::var(0, 1), rat_int(1));
        let d = OmegaDatum::new(2, 0, n, vec![2, 2]);
        assert!(d.check_invariants().is_err());
    }
}
