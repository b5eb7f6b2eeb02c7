//! Truncated Laurent series with an explicit window of known coefficients.
//!
//! A series knows its coefficients for exponents `lo..=hi`; everything below
//! `lo` is zero and everything above `hi` is unknown. Asking for an unknown
//! coefficient is an error.

use num_traits::{One, Zero};

use super::coeff::{Coeff, Invertible, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TruncSeries<R> {
    lo: i64,
    coeffs: Vec<R>,
    zero: R,
}

/// Equal when both are known to the same order and agree coefficientwise.
impl<R: Coeff> PartialEq for TruncSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.hi() != other.hi() {
            return false;
        }
        let lo = self.lo.min(other.lo);
        (lo..=self.hi()).all(|k| match (self.get(k), other.get(k)) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) | (None, Some(a)) => a.vanishes(),
            (None, None) => true,
        })
    }
}

impl<R: Coeff> TruncSeries<R> {
    /// Series with coefficients `coeffs[k]` at exponent `lo + k`, known up to
    /// exponent `lo + coeffs.len() - 1`.
    pub fn new(lo: i64, coeffs: Vec<R>, zero: R) -> Self {
        TruncSeries { lo, coeffs, zero }
    }

    /// The zero series known exactly up to exponent `hi`.
    pub fn zero(zero: R, hi: i64) -> Self {
        let n = (hi + 1).max(0) as usize;
        TruncSeries { lo: 0, coeffs: vec![zero.clone(); n], zero }
    }

    /// Polynomial `sum c_k t^k` regarded as a series known up to `hi`.
    pub fn from_poly(c: &[R], zero: R, hi: i64) -> Self {
        let n = (hi + 1).max(0) as usize;
        let mut coeffs: Vec<R> = c.iter().take(n).cloned().collect();
        coeffs.resize(n, zero.clone());
        TruncSeries { lo: 0, coeffs, zero }
    }

    pub fn monomial(c: R, exp: i64, hi: i64) -> Self {
        let zero = c.zero_like();
        if hi < exp {
            return TruncSeries { lo: exp, coeffs: Vec::new(), zero };
        }
        let mut coeffs = vec![zero.clone(); (hi - exp + 1) as usize];
        coeffs[0] = c;
        TruncSeries { lo: exp, coeffs, zero }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent whose coefficient is known.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn zero_coeff(&self) -> &R {
        &self.zero
    }

    pub fn coeff(&self, k: i64) -> Result<R> {
        if k > self.hi() {
            return Err(Error::OutOfWindow { requested: k, known: self.hi() });
        }
        if k < self.lo {
            return Ok(self.zero.clone());
        }
        Ok(self.coeffs[(k - self.lo) as usize].clone())
    }

    fn get(&self, k: i64) -> Option<&R> {
        if k < self.lo || k > self.hi() {
            None
        } else {
            Some(&self.coeffs[(k - self.lo) as usize])
        }
    }

    /// Drops leading zero coefficients so that `lo` is the true valuation
    /// (or `hi + 1` when every known coefficient vanishes).
    pub fn normalized(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.vanishes()).count();
        TruncSeries { lo: self.lo + skip as i64, coeffs: self.coeffs[skip..].to_vec(), zero: self.zero.clone() }
    }

    /// Forgets coefficients above `hi`.
    pub fn truncate(&self, hi: i64) -> Self {
        if hi >= self.hi() {
            return self.clone();
        }
        let keep = (hi - self.lo + 1).max(0) as usize;
        TruncSeries { lo: self.lo, coeffs: self.coeffs[..keep].to_vec(), zero: self.zero.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().min(other.hi());
        let coeffs = (lo..=hi)
            .map(|k| match (self.get(k), other.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => self.zero.clone(),
            })
            .collect();
        TruncSeries { lo, coeffs, zero: self.zero.clone() }
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::negate)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries { lo: self.lo, coeffs: self.coeffs.iter().map(&f).collect(), zero: f(&self.zero).zero_like() }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    /// Product; leading zeros are dropped first so the window is as large as possible.
    pub fn mul(&self, other: &Self) -> Self {
        let lead_zero = |s: &Self| s.coeffs.first().is_some_and(|c| c.vanishes());
        if lead_zero(self) || lead_zero(other) {
            return self.normalized().mul_exact_windows(&other.normalized());
        }
        self.mul_exact_windows(other)
    }

    fn mul_exact_windows(&self, other: &Self) -> Self {
        let lo = self.lo + other.lo;
        let hi = (self.hi() + other.lo).min(other.hi() + self.lo);
        if hi < lo {
            return TruncSeries { lo, coeffs: Vec::new(), zero: self.zero.clone() };
        }
        let n = (hi - lo + 1) as usize;
        let mut coeffs = vec![self.zero.clone(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.vanishes() {
                    coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
                }
            }
        }
        TruncSeries { lo, coeffs, zero: self.zero.clone() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries { lo: self.lo + k, coeffs: self.coeffs.clone(), zero: self.zero.clone() }
    }

    /// The series `f(-t)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lo + i as i64).rem_euclid(2) == 1 { c.negate() } else { c.clone() })
            .collect();
        TruncSeries { lo: self.lo, coeffs, zero: self.zero.clone() }
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<R> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rat::from_integer((self.lo + i as i64).into())))
            .collect();
        // the t^0 coefficient disappears; t^{lo-1} becomes the new start
        TruncSeries { lo: self.lo - 1, coeffs, zero: self.zero.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = Self::monomial(self.zero.one_like(), 0, self.hi() - self.lo);
        (0..e).fold(one, |acc, _| acc.mul(self))
    }

    /// Successive powers `self^0, ..., self^max`.
    pub fn powers(&self, max: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(Self::monomial(self.zero.one_like(), 0, self.hi() - self.lo));
        for k in 1..=max {
            let next = out[k - 1].mul(self);
            out.push(next);
        }
        out
    }

    fn require_constant(&self, expected: &'static str, want_one: bool) -> Result<()> {
        if self.lo < 0 && self.coeffs.iter().take((-self.lo) as usize).any(|c| !c.vanishes()) {
            return Err(Error::ConstantTerm { expected, found: "a pole".into() });
        }
        let c0 = self.coeff(0)?;
        let ok = if want_one { c0 == c0.one_like() } else { c0.vanishes() };
        if ok {
            Ok(())
        } else {
            Err(Error::ConstantTerm { expected, found: format!("{c0:?}") })
        }
    }

    fn power_part(&self) -> Vec<R> {
        (0..=self.hi()).map(|k| self.get(k).cloned().unwrap_or_else(|| self.zero.clone())).collect()
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant("0", false)?;
        let f = self.power_part();
        let n = f.len();
        let mut g = Vec::with_capacity(n);
        g.push(self.zero.one_like());
        // n g_n = sum_{k=1}^n k f_k g_{n-k}
        for m in 1..n {
            let mut acc = self.zero.clone();
            for k in 1..=m {
                if !f[k].vanishes() {
                    acc = acc.plus(&f[k].times(&g[m - k]).scale(&Rat::from_integer((k as i64).into())));
                }
            }
            g.push(acc.scale(&Rat::new(One::one(), (m as i64).into())));
        }
        Ok(TruncSeries { lo: 0, coeffs: g, zero: self.zero.clone() })
    }

    /// `log(f)` for `f` with constant term one.
    pub fn log(&self) -> Result<Self> {
        self.require_constant("1", true)?;
        let f = self.power_part();
        let n = f.len();
        let mut h: Vec<R> = Vec::with_capacity(n);
        h.push(self.zero.clone());
        // m h_m = m f_m - sum_{k=1}^{m-1} k h_k f_{m-k}
        for m in 1..n {
            let mut acc = f[m].scale(&Rat::from_integer((m as i64).into()));
            for k in 1..m {
                if !h[k].vanishes() && !f[m - k].vanishes() {
                    acc = acc.minus(&h[k].times(&f[m - k]).scale(&Rat::from_integer((k as i64).into())));
                }
            }
            h.push(acc.scale(&Rat::new(One::one(), (m as i64).into())));
        }
        Ok(TruncSeries { lo: 0, coeffs: h, zero: self.zero.clone() })
    }

    /// Composition `self(inner)` for a polynomial-like `self` (`lo >= 0`) and
    /// `inner` with positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.lo < 0 {
            return Err(Error::Invalid("compose: outer series has a pole".into()));
        }
        let inner = inner.normalized();
        if inner.lo < 1 {
            return Err(Error::Invalid("compose: inner series must vanish at 0".into()));
        }
        // unknown outer terms start contributing at t^{(hi+1) * val(inner)}
        let hi = ((self.hi() + 1) * inner.lo - 1).min(inner.hi());
        let mut acc = Self::zero(self.zero.clone(), hi);
        let mut p = Self::monomial(self.zero.one_like(), 0, hi);
        for k in 0..=self.hi() {
            if k * inner.lo > hi {
                break;
            }
            if let Some(c) = self.get(k) {
                if !c.vanishes() {
                    acc = acc.add(&p.mul_coeff(c).truncate(hi));
                }
            }
            p = p.mul(&inner).truncate(hi);
        }
        Ok(acc.truncate(hi))
    }
}

impl<R: Invertible> TruncSeries<R> {
    /// Multiplicative inverse; the leading known coefficient must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let s = self.normalized();
        if s.coeffs.is_empty() {
            return Err(Error::NotInvertible("series with no known nonzero coefficient".into()));
        }
        let c0inv = s.coeffs[0].try_inv()?;
        let n = s.coeffs.len();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for m in 1..n {
            let mut acc = s.zero.clone();
            for k in 1..=m {
                if !s.coeffs[k].vanishes() {
                    acc = acc.plus(&s.coeffs[k].times(&out[m - k]));
                }
            }
            out.push(acc.times(&c0inv).negate());
        }
        Ok(TruncSeries { lo: -s.lo, coeffs: out, zero: s.zero })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Square root of a series with constant term one.
    pub fn sqrt_unit(&self) -> Result<Self> {
        self.require_constant("1", true)?;
        let f = self.power_part();
        let n = f.len();
        let half = Rat::new(One::one(), 2.into());
        let mut g: Vec<R> = Vec::with_capacity(n);
        g.push(self.zero.one_like());
        // 2 g_m = f_m - sum_{k=1}^{m-1} g_k g_{m-k}
        for m in 1..n {
            let mut acc = f[m].clone();
            for k in 1..m {
                acc = acc.minus(&g[k].times(&g[m - k]));
            }
            g.push(acc.scale(&half));
        }
        Ok(TruncSeries { lo: 0, coeffs: g, zero: self.zero.clone() })
    }

    /// Compositional inverse of `f = t + O(t^2)`, known to the same order.
    pub fn revert(&self) -> Result<Self> {
        let f = self.normalized();
        if f.lo != 1 || f.coeffs[0] != f.zero.one_like() {
            return Err(Error::Invalid("revert: series must start with t".into()));
        }
        let hi = f.hi();
        // g = t - (f(g) - g), iterated; each pass fixes one more coefficient.
        let t = Self::monomial(f.zero.one_like(), 1, hi);
        let excess = f.sub(&t);
        let mut g = t.clone();
        for _ in 1..hi.max(1) {
            let next = t.sub(&excess.compose(&g)?).truncate(hi);
            if next == g {
                break;
            }
            g = next;
        }
        Ok(g)
    }
}

impl TruncSeries<Rat> {
    pub fn from_rats(lo: i64, c: &[Rat]) -> Self {
        Self::new(lo, c.to_vec(), Rat::zero())
    }
}

/// Inverts `x = f(z)`, given as a Laurent series in `z` with a simple pole at
/// `z = 0`, into `z` as a power series in `X = 1/x`, known to the same order.
pub fn lagrange_invert(f: &TruncSeries<Rat>) -> Result<TruncSeries<Rat>> {
    let f = f.normalized();
    if f.lo() != -1 {
        return Err(Error::Invalid(format!("lagrange_invert: expected a simple pole, got valuation {}", f.lo())));
    }
    // X = 1/f = z / psi(z) with psi = z f(z) and psi(0) != 0, so z = X psi(z)
    // and [X^n] z = (1/n) [z^{n-1}] psi^n.
    let psi = f.shift(1);
    let order = psi.hi() + 1;
    let mut coeffs = vec![Rat::zero(); order as usize + 1];
    let mut power = TruncSeries::monomial(Rat::one(), 0, psi.hi());
    for n in 1..=order {
        power = power.mul(&psi);
        coeffs[n as usize] = power.coeff(n - 1)? / Rat::from_integer(n.into());
    }
    Ok(TruncSeries::from_rats(0, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn series(lo: i64, c: &[i64]) -> TruncSeries<Rat> {
        TruncSeries::from_rats(lo, &c.iter().map(|&k| rat_int(k)).collect::<Vec<_>>())
    }

    #[test]
    fn out_of_window_is_an_error() {
        let s = series(0, &[1, 2, 3]);
        assert_eq!(s.coeff(2).unwrap(), rat_int(3));
        assert_eq!(s.coeff(-4).unwrap(), rat_int(0));
        assert!(matches!(s.coeff(3), Err(Error::OutOfWindow { requested: 3, known: 2 })));
    }

    #[test]
    fn product_window_is_conservative() {
        let a = series(-1, &[1, 1, 1, 1]); // known to t^2
        let b = series(0, &[1, 1]); // known to t^1
        let p = a.mul(&b);
        assert_eq!(p.lo(), -1);
        assert_eq!(p.hi(), 0);
    }

    #[test]
    fn exp_of_zero_and_inverse_pair() {
        let z = series(0, &[0; 10]);
        assert_eq!(z.exp().unwrap(), series(0, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        let mut c = vec![0i64; 11];
        c[1] = 1;
        let x = series(0, &c);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }

    #[test]
    fn wrong_constant_terms() {
        assert!(series(0, &[1, 1]).exp().is_err());
        assert!(series(0, &[2, 1]).log().is_err());
    }

    #[test]
    fn inverse_and_sqrt() {
        let s = series(0, &[1, -1, 0, 0, 0, 0]);
        assert_eq!(s.inv().unwrap(), series(0, &[1, 1, 1, 1, 1, 1]));
        let sq = series(0, &[1, 2, 1, 0, 0]).sqrt_unit().unwrap();
        assert_eq!(sq, series(0, &[1, 1, 0, 0, 0]));
        let p = series(1, &[2, 1]).inv().unwrap();
        assert_eq!(p.lo(), -1);
        assert_eq!(p.coeff(-1).unwrap(), rat(1, 2));
        assert_eq!(p.coeff(0).unwrap(), rat(-1, 4));
    }

    #[test]
    fn reversion_round_trip() {
        let f = series(1, &[1, 3, -2, 5, 1, 0, 7]);
        let g = f.revert().unwrap();
        let back = f.compose(&g).unwrap();
        assert_eq!(back.truncate(f.hi()), series(1, &[1, 0, 0, 0, 0, 0, 0]).truncate(back.hi()));
    }

    #[test]
    fn lagrange_a1_is_geometric() {
        // x = 1 + 1/z  =>  z = 1/(x - 1) = X + X^2 + ...
        let f = series(-1, &[1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let z = lagrange_invert(&f).unwrap();
        for n in 1..=z.hi() {
            assert_eq!(z.coeff(n).unwrap(), rat_int(1));
        }
    }

    #[test]
    fn lagrange_a2_composes_back() {
        // x = 1/z + z; check 1/x(z(X)) = X
        let mut c = vec![0i64; 22];
        c[0] = 1;
        c[2] = 1;
        let f = series(-1, &c);
        let z = lagrange_invert(&f).unwrap();
        // z (1 + z^2)^{-1} = X, i.e. z = X (1 + z^2)
        let x = TruncSeries::monomial(rat_int(1), 1, z.hi());
        let one = TruncSeries::monomial(rat_int(1), 0, z.hi());
        let lhs = z.sub(&x.mul(&one.add(&z.mul(&z))));
        for k in 0..=lhs.hi() {
            assert_eq!(lhs.coeff(k).unwrap(), rat_int(0), "X^{k}");
        }
        assert!(lhs.hi() >= 20);
    }
}
