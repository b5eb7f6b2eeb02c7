use serde::{Deserialize, Serialize};

use crate::arith::{Coeff, HbarPoly, Rat, TruncSeries};
use crate::error::Result;

/// Σ_{b=0}^{N} c_b(ħ) x^{−b}, with every coefficient known exactly up to `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    coeffs: Vec<HbarPoly>,
}

/// One exported coefficient: the rational multiplying ħ^e x^{−b}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XTerm {
    pub b: usize,
    pub hbar_exponent: i32,
    pub num: String,
    pub den: String,
}

impl XSeries {
    pub fn zero(order: usize) -> Self {
        XSeries { coeffs: vec![HbarPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = HbarPoly::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<HbarPoly>) -> Self {
        assert!(!coeffs.is_empty(), "an XSeries knows at least x^0");
        XSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^{−b}; panics beyond the known order.
    pub fn coeff(&self, b: usize) -> &HbarPoly {
        assert!(b <= self.order(), "x^-{b} is beyond the known order {}", self.order());
        &self.coeffs[b]
    }

    pub fn coeffs(&self) -> &[HbarPoly] {
        &self.coeffs
    }

    pub fn set(&mut self, b: usize, c: HbarPoly) {
        self.coeffs[b] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::vanishes)
    }

    pub fn truncate(&self, order: usize) -> Self {
        XSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        XSeries { coeffs: (0..=n).map(|b| self.coeffs[b].minus(&other.coeffs[b])).collect() }
    }

    /// Specializes ħ to a nonzero rational.
    pub fn eval_hbar(&self, h: &Rat) -> Vec<Rat> {
        self.coeffs.iter().map(|c| c.eval(h)).collect()
    }

    pub fn to_series(&self) -> TruncSeries<HbarPoly> {
        TruncSeries::new(0, self.coeffs.clone(), HbarPoly::zero())
    }

    /// Reads coefficients `0..=order` of a series in x^{−1}.
    pub fn from_series(s: &TruncSeries<HbarPoly>, order: usize) -> Result<Self> {
        let coeffs = (0..=order as i64).map(|b| s.coeff(b)).collect::<Result<_>>()?;
        Ok(XSeries { coeffs })
    }

    pub fn terms(&self) -> Vec<XTerm> {
        let mut out = Vec::new();
        for (b, c) in self.coeffs.iter().enumerate() {
            for (e, r) in c.terms() {
                out.push(XTerm { b, hbar_exponent: e, num: r.numer().to_string(), den: r.denom().to_string() });
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.terms())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn json_lists_nonzero_terms() {
        let mut s = XSeries::one(2);
        s.set(2, HbarPoly::monomial(rat(1, 2), -1));
        let terms = s.terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[1], XTerm { b: 2, hbar_exponent: -1, num: "1".into(), den: "2".into() });
        assert!(s.to_json().unwrap().contains("\"hbar_exponent\": -1"));
    }
}
