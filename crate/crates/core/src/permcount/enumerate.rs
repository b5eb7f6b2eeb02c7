//! Brute-force enumeration of factorizations.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::hypermap::HypermapSpec;
use super::perm::UnionFind;
use crate::arith::{factorial, Rat};
use crate::error::{Error, Result};

/// Limits for brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest total perimeter enumerated.
    pub degree_bound: u32,
    /// Lifts the bound to 18 for one-face specs.
    pub extended: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { degree_bound: 12, extended: false }
    }
}

pub const EXTENDED_ONE_FACE_BOUND: u32 = 18;

impl EnumConfig {
    fn allows(&self, spec: &HypermapSpec) -> bool {
        let d = spec.degree();
        d <= self.degree_bound || (self.extended && spec.n() == 1 && d <= EXTENDED_ONE_FACE_BOUND)
    }
}

/// Cycle bookkeeping for a permutation built one arrow at a time, with undo.
///
/// Unfinished parts are disjoint paths; `end[x]` is the opposite endpoint of the path
/// whose endpoint is `x`. `closed + paths` bounds the final cycle count from above.
#[derive(Clone)]
struct Chains {
    end: Vec<u8>,
    closed: u32,
    paths: u32,
    log: Vec<(u8, u8, u8, u8)>,
}

impl Chains {
    fn new(d: usize) -> Self {
        Chains { end: (0..d as u8).collect(), closed: 0, paths: d as u32, log: Vec::with_capacity(d) }
    }

    /// Adds `x -> z`, where `x` is a path tail and `z` a path head.
    #[inline]
    fn link(&mut self, x: u8, z: u8) {
        let h = self.end[x as usize];
        if h == z {
            self.closed += 1;
            self.paths -= 1;
            self.log.push((u8::MAX, 0, 0, 0));
        } else {
            let t = self.end[z as usize];
            self.log.push((h, self.end[h as usize], t, self.end[t as usize]));
            self.end[h as usize] = t;
            self.end[t as usize] = h;
            self.paths -= 1;
        }
    }

    #[inline]
    fn unlink(&mut self) {
        let (h, eh, t, et) = self.log.pop().expect("unbalanced unlink");
        if h == u8::MAX {
            self.closed -= 1;
        } else {
            self.end[t as usize] = et;
            self.end[h as usize] = eh;
        }
        self.paths += 1;
    }

    #[inline]
    fn bound(&self) -> u32 {
        self.closed + self.paths
    }
}

/// State for enumerating σ₁ of type (a,…,a) against a fixed σ₂, tracking σ₁∘σ₂.
#[derive(Clone)]
struct Sigma1Search<'a> {
    a: usize,
    target: u32,
    s2_inv: &'a [u8],
    face: &'a [u8],
    nfaces: usize,
    s1: Vec<u8>,
    used: u64,
    chains: Chains,
    block: Vec<u8>,
}

impl Sigma1Search<'_> {
    /// σ₁(y) = z adds the arrow σ₂^{-1}(y) -> z to σ₁∘σ₂.
    #[inline]
    fn set(&mut self, y: u8, z: u8) {
        self.s1[y as usize] = z;
        self.chains.link(self.s2_inv[y as usize], z);
    }

    #[inline]
    fn unset(&mut self) {
        self.chains.unlink();
    }

    fn viable(&self) -> bool {
        self.chains.bound() >= self.target
    }

    fn connected(&self) -> bool {
        if self.nfaces == 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.nfaces);
        for (x, &y) in self.s1.iter().enumerate() {
            uf.union(self.face[x] as usize, self.face[y as usize] as usize);
        }
        uf.components() == 1
    }

    fn count(&mut self) -> u64 {
        let d = self.s1.len();
        if self.used.count_ones() as usize == d {
            return u64::from(self.chains.closed == self.target && self.connected());
        }
        let start = (!self.used).trailing_zeros() as u8;
        self.used |= 1 << start;
        self.block.clear();
        self.block.push(start);
        let total = self.extend(start);
        self.used &= !(1 << start);
        total
    }

    /// Chooses the next element of the hyperedge being built after `last`.
    fn extend(&mut self, last: u8) -> u64 {
        let d = self.s1.len();
        if self.block.len() == self.a {
            let start = self.block[0];
            self.set(last, start);
            let saved = std::mem::take(&mut self.block);
            let total = if self.viable() { self.count() } else { 0 };
            self.block = saved;
            self.unset();
            return total;
        }
        let mut total = 0;
        for z in 0..d as u8 {
            if self.used & (1 << z) != 0 {
                continue;
            }
            self.set(last, z);
            if self.viable() {
                self.used |= 1 << z;
                self.block.push(z);
                total += self.extend(z);
                self.block.pop();
                self.used &= !(1 << z);
            }
            self.unset();
        }
        total
    }
}

/// Number of σ₁ of type (a,…,a) with σ₁σ₂ having exactly `v` cycles and ⟨σ₁,σ₂⟩
/// transitive, for σ₂ the canonical permutation with consecutive cycles of lengths `b`.
pub fn count_sigma1(a: u32, b: &[u32], v: u32) -> Result<u64> {
    let d: u32 = b.iter().sum();
    if d > 63 {
        return Err(Error::DegreeBound { degree: d as usize, bound: 63 });
    }
    if a == 0 || !d.is_multiple_of(a) {
        return Ok(0);
    }
    let d = d as usize;
    let mut s2_inv = vec![0u8; d];
    let mut face = vec![0u8; d];
    let mut offset = 0usize;
    for (k, &len) in b.iter().enumerate() {
        let len = len as usize;
        for i in 0..len {
            let x = offset + i;
            let next = offset + (i + 1) % len;
            s2_inv[next] = x as u8;
            face[x] = k as u8;
        }
        offset += len;
    }
    let a = a as usize;
    let base = Sigma1Search {
        a,
        target: v,
        s2_inv: &s2_inv,
        face: &face,
        nfaces: b.len(),
        s1: vec![0; d],
        used: 1,
        chains: Chains::new(d),
        block: vec![0],
    };
    if a == 1 {
        let mut st = base;
        st.used = 0;
        st.block.clear();
        return Ok(st.count());
    }
    // split on the first two links of the hyperedge through 0
    let mut prefixes = Vec::new();
    for z1 in 1..d as u8 {
        if a == 2 {
            prefixes.push(vec![z1]);
        } else {
            for z2 in 1..d as u8 {
                if z2 != z1 {
                    prefixes.push(vec![z1, z2]);
                }
            }
        }
    }
    let total = prefixes
        .par_iter()
        .map(|pre| {
            let mut st = base.clone();
            let mut last = 0u8;
            for &z in pre {
                st.set(last, z);
                st.used |= 1 << z;
                st.block.push(z);
                last = z;
            }
            if st.viable() {
                st.extend(last)
            } else {
                0
            }
        })
        .sum();
    Ok(total)
}

/// Weighted count of connected labelled a-hypermaps of the given type, by enumeration.
pub fn brute_force_m(spec: &HypermapSpec, cfg: &EnumConfig) -> Result<Rat> {
    if spec.b.is_empty() || spec.b.contains(&0) {
        return Err(Error::Invalid("brute force needs positive perimeters".into()));
    }
    let Some(v) = spec.vertices() else {
        return Ok(Rat::from_integer(0.into()));
    };
    if !cfg.allows(spec) {
        let bound = if cfg.extended && spec.n() == 1 { EXTENDED_ONE_FACE_BOUND } else { cfg.degree_bound };
        return Err(Error::DegreeBound { degree: spec.degree() as usize, bound: bound as usize });
    }
    let count = count_sigma1(spec.a, &spec.b, v)?;
    let centralizer: BigInt = spec.b.iter().map(|&x| BigInt::from(x)).product();
    Ok(Rat::new(count.into(), centralizer))
}

/// Per-vertex-count tallies of σ₀ ∈ S_{ae} against the canonical σ₁ of type (a,…,a):
/// `(all, transitive)`, both indexed by `v`.
pub fn sigma0_tallies(a: u32, e: u32, bound: u32) -> Result<(Vec<u64>, Vec<u64>)> {
    let d = (a * e) as usize;
    if d as u32 > bound {
        return Err(Error::DegreeBound { degree: d, bound: bound as usize });
    }
    if d == 0 {
        return Ok((vec![1], vec![0]));
    }
    let a = a as usize;
    let first: Vec<u8> = (0..d as u8).collect();
    let parts: Vec<(Vec<u64>, Vec<u64>)> = first
        .par_iter()
        .map(|&z| {
            let mut st = Sigma0Search {
                a,
                s0: vec![0; d],
                used: 1 << z,
                chains: Chains::new(d),
                all: vec![0; d + 1],
                conn: vec![0; d + 1],
            };
            st.s0[0] = z;
            st.chains.link(0, z);
            st.run(1);
            (st.all, st.conn)
        })
        .collect();
    let mut all = vec![0u64; d + 1];
    let mut conn = vec![0u64; d + 1];
    for (pa, pc) in parts {
        for v in 0..=d {
            all[v] += pa[v];
            conn[v] += pc[v];
        }
    }
    Ok((all, conn))
}

struct Sigma0Search {
    a: usize,
    s0: Vec<u8>,
    used: u64,
    chains: Chains,
    all: Vec<u64>,
    conn: Vec<u64>,
}

impl Sigma0Search {
    fn run(&mut self, x: usize) {
        let d = self.s0.len();
        if x == d {
            let v = self.chains.closed as usize;
            self.all[v] += 1;
            let mut uf = UnionFind::new(d / self.a);
            for (i, &y) in self.s0.iter().enumerate() {
                uf.union(i / self.a, y as usize / self.a);
            }
            if uf.components() == 1 {
                self.conn[v] += 1;
            }
            return;
        }
        for z in 0..d as u8 {
            if self.used & (1 << z) == 0 {
                self.s0[x] = z;
                self.used |= 1 << z;
                self.chains.link(x as u8, z);
                self.run(x + 1);
                self.chains.unlink();
                self.used &= !(1 << z);
            }
        }
    }
}

fn per_sigma1_weight(a: u32, e: u32) -> Rat {
    let den = BigInt::from(a).pow(e) * factorial(e as u64);
    Rat::new(1.into(), den)
}

/// f•(v, e) by enumerating σ₀; the ordinary bound is 12.
pub fn fbullet_brute(a: u32, v: u32, e: u32) -> Result<Rat> {
    let (all, _) = sigma0_tallies(a, e, 12)?;
    let c = all.get(v as usize).copied().unwrap_or(0);
    Ok(per_sigma1_weight(a, e) * Rat::from_integer(c.into()))
}

/// Weighted count f(v, e) of connected unlabelled a-hypermaps, by enumeration.
pub fn connected_brute(a: u32, v: u32, e: u32) -> Result<Rat> {
    let (_, conn) = sigma0_tallies(a, e, 12)?;
    let c = conn.get(v as usize).copied().unwrap_or(0);
    Ok(per_sigma1_weight(a, e) * Rat::from_integer(c.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(a: u32, g: u32, b: &[u32]) -> Rat {
        brute_force_m(&HypermapSpec::new(a, g, b.to_vec()), &EnumConfig::default()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(m(3, 0, &[3]), rat(1, 3));
        assert_eq!(m(2, 1, &[3]), rat(0, 1));
        assert_eq!(m(2, 0, &[2]), rat(1, 2));
        // 4·M = Catalan C_2
        assert_eq!(m(2, 0, &[4]), rat(2, 4));
    }

    #[test]
    fn degree_bound_enforced() {
        let spec = HypermapSpec::new(2, 0, vec![14]);
        assert!(matches!(brute_force_m(&spec, &EnumConfig::default()), Err(Error::DegreeBound { .. })));
    }

    #[test]
    fn tallies_sum_to_factorial() {
        let (all, conn) = sigma0_tallies(2, 3, 12).unwrap();
        assert_eq!(all.iter().sum::<u64>(), 720);
        assert!(conn.iter().zip(&all).all(|(c, t)| c <= t));
    }
}
