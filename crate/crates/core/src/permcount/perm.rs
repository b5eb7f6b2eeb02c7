use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{0, .., d-1}`; displayed and parsed 1-based in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm { images: (0..d as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::Invalid(format!("image {i} out of range")))?;
            if *slot {
                return Err(Error::Invalid(format!("image {i} repeated")));
            }
            *slot = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of degree `d` from 0-based cycles.
    pub fn from_cycles(d: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..d as u32).collect();
        let mut touched = vec![false; d];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let xi = x as usize;
                if xi >= d || touched[xi] {
                    return Err(Error::Invalid(format!("symbol {} misplaced in cycles", x + 1)));
                }
                touched[xi] = true;
                images[xi] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `g ∘ self ∘ g^{-1}`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Cycles (including fixed points), each starting at its least element, sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut c = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                c.push(x);
                x = self.images[x as usize];
            }
            out.push(c);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

/// Whether the group generated by `gens` acts transitively on the points.
pub fn is_transitive(gens: &[&Perm]) -> bool {
    let Some(d) = gens.first().map(|g| g.degree()) else {
        return true;
    };
    let mut uf = UnionFind::new(d);
    for g in gens {
        for (i, &x) in g.images.iter().enumerate() {
            uf.union(i, x as usize);
        }
    }
    uf.components() <= 1
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), count: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.count -= 1;
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.count
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; the degree is the largest symbol.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut max = 0u32;
        for chunk in s.split('(').skip(1) {
            let body = chunk
                .split(')')
                .next()
                .ok_or_else(|| Error::Invalid(format!("unbalanced cycle in {s:?}")))?;
            let mut c = Vec::new();
            for tok in body.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|t| !t.is_empty()) {
                let x: u32 = tok.parse().map_err(|_| Error::Invalid(format!("bad symbol {tok:?}")))?;
                if x == 0 {
                    return Err(Error::Invalid("symbols are 1-based".into()));
                }
                max = max.max(x);
                c.push(x - 1);
            }
            cycles.push(c);
        }
        Perm::from_cycles(max as usize, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: Perm = "(1 3 2)(4)".parse().unwrap();
        assert_eq!(p.to_string(), "(1 3 2)(4)");
        assert_eq!(p.cycle_type(), vec![3, 1]);
        assert!("(1 2)(2 3)".parse::<Perm>().is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let p: Perm = "(1 2)(3)".parse().unwrap();
        let q: Perm = "(2 3)(1)".parse().unwrap();
        // (p ∘ q)(2) = p(3) = 3
        assert_eq!(p.compose(&q).apply(1), 2);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let s: Perm = "(1 2 3)(4)".parse().unwrap();
        let g: Perm = "(1 4)(2)(3)".parse().unwrap();
        assert_eq!(s.conjugate_by(&g).to_string(), "(1)(2 3 4)");
    }
}
