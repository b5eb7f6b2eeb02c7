//! Arithmetic in `Q[s]/(m(s))` for squarefree `m`, viewed as a product of
//! number fields. Zero divisors are reported as a splitting of `m` so the
//! caller can redo a computation in each factor (dynamic evaluation).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::coeff::{Coeff, Invertible, Rat};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A squarefree defining polynomial together with cached power sums of its roots.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    monic: Poly<Rat>,
    degree: usize,
    /// Power sums `p_k = sum over roots of root^k` for `k < 2 * degree`.
    power_sums: Vec<Rat>,
}

impl Modulus {
    pub fn new(m: Poly<Rat>) -> Result<Arc<Self>> {
        let degree = match m.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Invalid(format!("modulus {m} must have positive degree"))),
        };
        if !m.is_squarefree() {
            return Err(Error::Invalid(format!("modulus {m} is not squarefree")));
        }
        let monic = m.monic();
        let power_sums = newton_power_sums(&monic, 2 * degree);
        Ok(Arc::new(Modulus { monic, degree, power_sums }))
    }

    /// `(a-1) s^a - 1`, the branch locus of `x(z) = z^(a-1) + 1/z`.
    pub fn branch_locus(a: u32) -> Result<Arc<Self>> {
        if a < 2 {
            return Err(Error::Invalid(format!("a = {a} has no branch points")));
        }
        let mut c = vec![Rat::zero(); a as usize + 1];
        c[0] = -Rat::one();
        c[a as usize] = Rat::from_integer((a as i64 - 1).into());
        Self::new(Poly::new(c))
    }

    pub fn poly(&self) -> &Poly<Rat> {
        &self.monic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sum of `k`-th powers of the roots.
    pub fn power_sum(&self, k: usize) -> Rat {
        if k < self.power_sums.len() {
            return self.power_sums[k].clone();
        }
        newton_power_sums(&self.monic, k + 1).pop().unwrap()
    }

    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        let d = self.degree;
        let m = self.monic.coeffs();
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                v[k - d + j] -= &c * &m[j];
            }
        }
        v.truncate(d);
        v.resize(d, Rat::zero());
        v
    }
}

fn newton_power_sums(monic: &Poly<Rat>, count: usize) -> Vec<Rat> {
    let d = monic.degree().unwrap();
    let c = monic.coeffs();
    // s^d + e_1 s^{d-1} + ... with e_i = c[d - i]
    let e = |i: usize| -> Rat { if i <= d { c[d - i].clone() } else { Rat::zero() } };
    let mut p: Vec<Rat> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(Rat::from_integer((d as i64).into()));
            continue;
        }
        let mut acc = Rat::zero();
        for i in 1..k.min(d + 1) {
            acc += e(i) * &p[k - i];
        }
        if k <= d {
            acc += e(k) * Rat::from_integer((k as i64).into());
        }
        p.push(-acc);
    }
    p
}

/// Outcome of an inversion that hit a zero divisor: `m = first * second`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitEvent {
    pub first: Poly<Rat>,
    pub second: Poly<Rat>,
}

/// Element of `Q[s]/(m)`, stored as the remainder of degree `< deg m`.
#[derive(Clone)]
pub struct EtaleElem {
    modulus: Arc<Modulus>,
    value: Vec<Rat>,
}

impl EtaleElem {
    pub fn new(modulus: &Arc<Modulus>, value: &Poly<Rat>) -> Self {
        let v = modulus.reduce(value.coeffs().to_vec());
        EtaleElem { modulus: Arc::clone(modulus), value: v }
    }

    pub fn from_rat(modulus: &Arc<Modulus>, r: Rat) -> Self {
        let mut v = vec![Rat::zero(); modulus.degree];
        v[0] = r;
        EtaleElem { modulus: Arc::clone(modulus), value: v }
    }

    /// The class of `s` itself, i.e. a generic root of the modulus.
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        Self::new(modulus, &Poly::x())
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    /// Coefficient of `s^k` in the reduced representative.
    pub fn component(&self, k: usize) -> &Rat {
        &self.value[k]
    }

    pub fn to_poly(&self) -> Poly<Rat> {
        Poly::new(self.value.clone())
    }

    fn same_modulus(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus,
            "étale elements over different moduli cannot be combined"
        );
    }

    /// Sum of this element's values over all roots of the modulus.
    pub fn trace(&self) -> Rat {
        self.value
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * self.modulus.power_sum(k))
            .sum()
    }

    /// Inverse modulo `m` by the extended Euclidean algorithm.
    ///
    /// A nontrivial common factor with `m` is returned as a [`SplitEvent`].
    pub fn quotient_invert(&self) -> Result<std::result::Result<Self, SplitEvent>> {
        let u = self.to_poly();
        if u.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let m = self.modulus.poly();
        let (g, coef_u, _) = u.ext_gcd(m);
        if g.degree() == Some(0) {
            return Ok(Ok(EtaleElem::new(&self.modulus, &coef_u)));
        }
        let other = m.div_rem(&g).0.monic();
        Ok(Err(SplitEvent { first: g, second: other }))
    }
}

impl PartialEq for EtaleElem {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.value == other.value
    }
}

impl fmt::Debug for EtaleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.to_poly(), self.modulus.monic)
    }
}

impl Coeff for EtaleElem {
    fn zero_like(&self) -> Self {
        EtaleElem { modulus: Arc::clone(&self.modulus), value: vec![Rat::zero(); self.modulus.degree] }
    }
    fn one_like(&self) -> Self {
        Self::from_rat(&self.modulus, Rat::one())
    }
    fn vanishes(&self) -> bool {
        self.value.iter().all(Zero::is_zero)
    }
    fn plus(&self, other: &Self) -> Self {
        self.same_modulus(other);
        let value = self.value.iter().zip(&other.value).map(|(a, b)| a + b).collect();
        EtaleElem { modulus: Arc::clone(&self.modulus), value }
    }
    fn minus(&self, other: &Self) -> Self {
        self.same_modulus(other);
        let value = self.value.iter().zip(&other.value).map(|(a, b)| a - b).collect();
        EtaleElem { modulus: Arc::clone(&self.modulus), value }
    }
    fn times(&self, other: &Self) -> Self {
        self.same_modulus(other);
        let d = self.modulus.degree;
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.value.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.value.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        EtaleElem { modulus: Arc::clone(&self.modulus), value: self.modulus.reduce(prod) }
    }
    fn negate(&self) -> Self {
        EtaleElem { modulus: Arc::clone(&self.modulus), value: self.value.iter().map(|a| -a).collect() }
    }
    fn scale(&self, r: &Rat) -> Self {
        EtaleElem { modulus: Arc::clone(&self.modulus), value: self.value.iter().map(|a| a * r).collect() }
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Self::from_rat(&self.modulus, r.clone())
    }
}

impl Invertible for EtaleElem {
    fn try_inv(&self) -> Result<Self> {
        match self.quotient_invert()? {
            Ok(inv) => Ok(inv),
            Err(split) => Err(Error::Split(split.first, split.second)),
        }
    }
}
