use std::fmt;

use num_traits::{One, Zero};

use super::coeff::{rat_to_string, Coeff, Rat};

/// Dense univariate polynomial; `coeffs[k]` multiplies `s^k`.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in which
/// case `coeffs` is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.vanishes()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Coeff::negate).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn eval(&self, x: &R) -> Option<R> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.times(x).plus(c);
        }
        Some(acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        // The zero polynomial carries no coefficient to build a one from.
        let mut acc = match self.coeffs.first() {
            Some(c) => Self::constant(c.one_like()),
            None => return Self::zero(),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient of `p(z) - p(s)` by `z - s` evaluated at `s = root`, as a
    /// polynomial in `z`. When `root` is a root of `self` this equals
    /// `self(z) / (z - root)`.
    pub fn deflate_at(&self, root: &R) -> Self {
        // Horner-style synthetic division.
        let n = self.coeffs.len();
        if n < 2 {
            return Self::zero();
        }
        let mut out = vec![root.zero_like(); n - 1];
        let mut carry = root.zero_like();
        for k in (1..n).rev() {
            carry = carry.times(root).plus(&self.coeffs[k]);
            out[k - 1] = carry.clone();
        }
        Self::new(out)
    }
}

impl Poly<Rat> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&k| Rat::from_integer(k.into())).collect())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division over Q. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::from_ints(&[1]), Self::zero());
        let (mut v0, mut v1) = (Self::zero(), Self::from_ints(&[1]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u2 = u0.sub(&q.mul(&u1));
            let v2 = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u2;
            v0 = v1;
            v1 = v2;
        }
        match r0.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
            }
            _ => (r0, u0, v0),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rat_to_string(c))?,
                1 => write!(f, "({})*s", rat_to_string(c))?,
                _ => write!(f, "({})*s^{}", rat_to_string(c), k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn division_and_gcd() {
        // (s^2 - 1) = (s - 1)(s + 1)
        let m = Poly::from_ints(&[-1, 0, 1]);
        let (q, r) = m.div_rem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(m.gcd(&Poly::from_ints(&[-1, 1])), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = Poly::from_ints(&[-1, 0, 0, 2]);
        let b = Poly::from_ints(&[1, 1]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(g, Poly::from_ints(&[1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn deflation_divides_out_root() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.deflate_at(&rat(1, 1)), Poly::from_ints(&[1, 1]));
        // p(z) = 2z^3 - 1 has no rational root, but the identity
        // p(z) - p(r) = (z - r) q(z) still holds.
        let p = Poly::from_ints(&[-1, 0, 0, 2]);
        let r = rat(3, 2);
        let q = p.deflate_at(&r);
        let lhs = p.sub(&Poly::constant(p.eval(&r).unwrap()));
        assert_eq!(lhs, q.mul(&Poly::new(vec![-r, rat(1, 1)])));
    }

    #[test]
    fn squarefree_branch_loci() {
        for a in 2..=9i64 {
            let mut c = vec![0i64; a as usize + 1];
            c[0] = -1;
            c[a as usize] = a - 1;
            assert!(Poly::from_ints(&c).is_squarefree(), "a = {a}");
        }
    }
}
