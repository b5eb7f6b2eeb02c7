use serde::{Deserialize, Serialize};

use super::perm::{is_transitive, Perm};
use crate::error::{Error, Result};

/// Type data of a labelled a-hypermap: hyperedge size, genus and face perimeters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HypermapSpec {
    pub a: u32,
    pub g: u32,
    pub b: Vec<u32>,
}

impl HypermapSpec {
    pub fn new(a: u32, g: u32, b: Vec<u32>) -> Self {
        HypermapSpec { a, g, b }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn degree(&self) -> u32 {
        self.b.iter().sum()
    }

    pub fn hyperedges(&self) -> Option<u32> {
        (self.a > 0 && self.degree().is_multiple_of(self.a)).then(|| self.degree() / self.a)
    }

    /// Vertex count forced by Riemann–Hurwitz, when it is a positive integer.
    pub fn vertices(&self) -> Option<u32> {
        let e = self.hyperedges()? as i64;
        let v = 2 - 2 * self.g as i64 - self.n() as i64 + (self.a as i64 - 1) * e;
        (v > 0).then_some(v as u32)
    }
}

/// A triple with `σ₀σ₁σ₂ = id`, composed right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTriple {
    pub sigma: [Perm; 3],
}

/// Summary of a validated triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleInfo {
    pub a: u32,
    pub g: u32,
    /// Face perimeters, in order of each face's least symbol.
    pub perimeters: Vec<u32>,
    pub vertices: u32,
    pub connected: bool,
}

impl FactorTriple {
    pub fn new(s0: Perm, s1: Perm, s2: Perm) -> Self {
        FactorTriple { sigma: [s0, s1, s2] }
    }

    pub fn degree(&self) -> usize {
        self.sigma[0].degree()
    }

    /// Checks the product relation and the uniform hyperedge size, and recovers the genus.
    pub fn validate(&self) -> Result<TripleInfo> {
        let [s0, s1, s2] = &self.sigma;
        let d = s0.degree();
        if s1.degree() != d || s2.degree() != d {
            return Err(Error::Invalid("permutations of different degrees".into()));
        }
        if !s0.compose(s1).compose(s2).is_identity() {
            return Err(Error::Invalid("σ₀σ₁σ₂ is not the identity".into()));
        }
        let t1 = s1.cycle_type();
        let a = t1[0] as u32;
        if t1.iter().any(|&l| l as u32 != a) {
            return Err(Error::Invalid(format!("σ₁ has mixed cycle type {t1:?}")));
        }
        let perimeters: Vec<u32> = s2.cycles().iter().map(|c| c.len() as u32).collect();
        let v = s0.num_cycles() as i64;
        let n = perimeters.len() as i64;
        let e = (d as i64) / a as i64;
        // v = 2 - 2g - n + (a-1)e
        let two_g = 2 - n + (a as i64 - 1) * e - v;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::Invalid(format!("inconsistent Euler characteristic (2g = {two_g})")));
        }
        Ok(TripleInfo {
            a,
            g: (two_g / 2) as u32,
            perimeters,
            vertices: v as u32,
            connected: is_transitive(&[s0, s1, s2]),
        })
    }

    pub fn conjugate_by(&self, g: &Perm) -> FactorTriple {
        FactorTriple { sigma: self.sigma.clone().map(|s| s.conjugate_by(g)) }
    }

    /// Label-preserving automorphisms: permutations commuting with all three σ and
    /// mapping every cycle of σ₂ to itself. The triple must be connected.
    pub fn automorphisms(&self) -> Result<Vec<Perm>> {
        if !is_transitive(&[&self.sigma[0], &self.sigma[1], &self.sigma[2]]) {
            return Err(Error::Invalid("automorphism search needs a connected hypermap".into()));
        }
        let d = self.degree();
        let mut face = vec![0usize; d];
        for (k, c) in self.sigma[2].cycles().iter().enumerate() {
            for &x in c {
                face[x as usize] = k;
            }
        }
        let mut out = Vec::new();
        // a commuting map is determined by the image of 0
        for y in 0..d as u32 {
            if face[y as usize] != face[0] {
                continue;
            }
            if let Some(g) = self.propagate(y, &face) {
                out.push(g);
            }
        }
        Ok(out)
    }

    fn propagate(&self, y: u32, face: &[usize]) -> Option<Perm> {
        let d = self.degree();
        let mut img = vec![u32::MAX; d];
        let mut stack = vec![(0u32, y)];
        img[0] = y;
        while let Some((x, gx)) = stack.pop() {
            for s in &self.sigma {
                let (sx, sgx) = (s.apply(x), s.apply(gx));
                match img[sx as usize] {
                    u32::MAX => {
                        img[sx as usize] = sgx;
                        stack.push((sx, sgx));
                    }
                    known if known != sgx => return None,
                    _ => {}
                }
            }
        }
        let g = Perm::from_images(img).ok()?;
        (0..d).all(|x| face[g.apply(x as u32) as usize] == face[x]).then_some(g)
    }
}

/// The two worked 3-hypermaps (types (0,2) and (1,1)) with their automorphism group orders
/// and, for the second, the stated non-trivial automorphism.
pub fn fixture_hypermaps() -> Result<Vec<(FactorTriple, usize)>> {
    let parse = |s: &str| s.parse::<Perm>();
    // σ₀ fixes 11 and swaps 1 and 12, as the product relation requires.
    let first = FactorTriple::new(
        parse("(1 12)(2 4)(3)(5)(6 7)(8)(9 13 10)(11)(14)(15)")?,
        parse("(1 2 3)(4 5 6)(7 8 9)(10 11 12)(13 14 15)")?,
        parse("(1 11 10 15 14 13 8 7 5 4)(2 6 9 12 3)")?,
    );
    let second = FactorTriple::new(
        parse("(1)(2 5)(3 11)(4)(6 7)(8 13)(9 10)(12 17)(14)(15 16)(18)")?,
        parse("(1 2 3)(4 5 6)(7 8 9)(10 11 12)(13 14 15)(16 17 18)")?,
        parse("(1 3 10 8 15 18 17 11 2 4 6 9 12 16 14 13 7 5)")?,
    );
    let mut out = Vec::new();
    for t in [first, second] {
        t.validate()?;
        let aut = t.automorphisms()?.len();
        out.push((t, aut));
    }
    Ok(out)
}

/// The involution displayed for the second fixture.
pub fn fixture_involution() -> Perm {
    "(1 4)(2 5)(3 6)(7 11)(8 12)(9 10)(13 17)(14 18)(15 16)"
        .parse()
        .expect("well-formed fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_count_formula() {
        assert_eq!(HypermapSpec::new(3, 0, vec![5, 10]).vertices(), Some(10));
        assert_eq!(HypermapSpec::new(3, 1, vec![18]).vertices(), Some(11));
        assert_eq!(HypermapSpec::new(2, 1, vec![3]).vertices(), None);
        assert_eq!(HypermapSpec::new(2, 3, vec![2]).vertices(), None);
    }

    #[test]
    fn fixtures_validate() {
        let fx = fixture_hypermaps().unwrap();
        let i0 = fx[0].0.validate().unwrap();
        assert_eq!((i0.a, i0.g, i0.perimeters.clone(), i0.connected), (3, 0, vec![10, 5], true));
        assert_eq!(fx[0].1, 1);
        let i1 = fx[1].0.validate().unwrap();
        assert_eq!((i1.a, i1.g, i1.perimeters.clone()), (3, 1, vec![18]));
        assert_eq!(fx[1].1, 2);
        let inv = fixture_involution();
        assert_eq!(fx[1].0.conjugate_by(&inv), fx[1].0);
        assert!(fx[1].0.automorphisms().unwrap().contains(&inv));
    }

    #[test]
    fn broken_product_is_rejected() {
        let t = FactorTriple::new(
            "(1 2)(3)".parse().unwrap(),
            "(1 2 3)".parse().unwrap(),
            "(1 2 3)".parse().unwrap(),
        );
        assert!(t.validate().is_err());
    }
}
