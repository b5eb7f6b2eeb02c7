use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{rat_int, Poly, Rat};
use crate::error::{Error, Result};

/// The spectral curve x(z) = z^{a−1} + 1/z, y(z) = z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCurve {
    a: u32,
    p: Poly<Rat>,
}

impl SpectralCurve {
    pub fn new(a: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::Invalid("a must be positive".into()));
        }
        let mut c = vec![Rat::zero(); a as usize + 1];
        c[0] = -Rat::one();
        c[a as usize] += rat_int(a as i64 - 1);
        Ok(SpectralCurve { a, p: Poly::new(c) })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// p(z) = (a−1)z^a − 1, so that dx = p(z)/z² dz. Constant −1 when a = 1.
    pub fn branch_poly(&self) -> &Poly<Rat> {
        &self.p
    }

    pub fn has_branch_points(&self) -> bool {
        self.a >= 2
    }

    pub fn x(&self, z: &Rat) -> Rat {
        z.pow(self.a as i32 - 1) + z.recip()
    }

    /// ω_{0,1}/dz = y x'(z) as a Laurent polynomial: (a−1)z^{a−1} − z^{−1}.
    pub fn omega01_density(&self) -> BTreeMap<i32, Rat> {
        let mut m = BTreeMap::new();
        if self.a >= 2 {
            m.insert(self.a as i32 - 1, rat_int(self.a as i64 - 1));
        }
        m.insert(-1, -Rat::one());
        m
    }

    /// ω_{0,2}/dz₁dz₂ = 1/(z₁ − z₂)²; no regular part in genus zero.
    pub fn omega02(&self, z1: &Rat, z2: &Rat) -> Result<Rat> {
        let d = z1 - z2;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok((&d * &d).recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn base_cases() {
        let c2 = SpectralCurve::new(2).unwrap();
        // z(1 − z^{−2}) = z − z^{−1}
        let w = c2.omega01_density();
        assert_eq!(w.get(&1), Some(&rat_int(1)));
        assert_eq!(w.get(&-1), Some(&rat_int(-1)));
        let c1 = SpectralCurve::new(1).unwrap();
        assert_eq!(c1.omega01_density().into_iter().collect::<Vec<_>>(), vec![(-1, rat_int(-1))]);
        assert!(!c1.has_branch_points());
        let (u, v) = (rat(1, 3), rat(5, 2));
        assert_eq!(c2.omega02(&u, &v).unwrap(), c2.omega02(&v, &u).unwrap());
        assert_eq!(SpectralCurve::new(3).unwrap().branch_poly(), &Poly::from_ints(&[-1, 0, 0, 2]));
    }
}
