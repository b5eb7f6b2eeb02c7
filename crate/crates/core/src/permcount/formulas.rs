//! Closed formulas and recursions for hypermap counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::enumerate::{brute_force_m, EnumConfig};
use super::hypermap::HypermapSpec;
use crate::arith::{binomial, factorial, Coeff, HbarPoly, Rat, TruncSeries};
use crate::error::{Error, Result};

/// Unsigned Stirling number of the first kind: permutations of `k` points with `j` cycles.
pub fn stirling_first(k: u32, j: u32) -> BigInt {
    stirling_row(k).get(j as usize).cloned().unwrap_or_default()
}

/// Row `k` of the unsigned Stirling triangle, indexed by `j = 0..=k`.
pub fn stirling_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..k {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] += c * m;
        }
        row = next;
    }
    row
}

/// f•(v, e) = [ae, v] / (a^e e!).
pub fn fbullet_closed(a: u32, v: u32, e: u32) -> Rat {
    let num = stirling_first(a * e, v);
    let den = BigInt::from(a).pow(e) * factorial(e as u64);
    Rat::new(num, den)
}

/// Π_{i=lo}^{hi} i, empty when `hi < lo`.
fn range_product(lo: i64, hi: i64) -> BigInt {
    (lo..=hi).map(BigInt::from).product()
}

/// One step of the angle-ordered recursion: from F•(·, e−1) to F•(·, e), where
/// F•(v, e) = (ae)! f•(v, e) and both vectors are indexed by `v`.
pub fn disconnected_recursion_step(a: u32, e: u32, prev: &[BigInt]) -> Vec<BigInt> {
    assert!(e >= 1, "recursion starts at e = 1");
    let (a64, ae) = (a as i64, (a * e) as i64);
    let mut out = vec![BigInt::zero(); (a * e) as usize + 1];
    let labels = range_product(ae - a64 + 1, ae - 1);
    for k in 0..=a {
        let glue = range_product(ae - a64, ae - k as i64 - 1);
        if glue.is_zero() {
            continue;
        }
        let w = &labels * binomial(a64, k as i64) * glue;
        for (j, s) in stirling_row(k).into_iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (u, f) in prev.iter().enumerate() {
                if !f.is_zero() {
                    out[u + j] += &w * &s * f;
                }
            }
        }
    }
    out
}

/// F•(·, e) for e = 0..=max_e by the recursion, seeded with F•(0, 0) = 1.
pub fn disconnected_table(a: u32, max_e: u32) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for e in 1..=max_e {
        let next = disconnected_recursion_step(a, e, &rows[e as usize - 1]);
        rows.push(next);
    }
    rows
}

/// Bivariate generating series Σ c(v, e) ħ^{(a−1)e−v} x^{−ae} as a series in x^{−1}.
pub fn hbar_series(a: u32, max_e: u32, c: impl Fn(u32, u32) -> Rat) -> TruncSeries<HbarPoly> {
    let hi = (a * max_e) as i64;
    let mut coeffs = vec![HbarPoly::zero(); hi as usize + 1];
    coeffs[0] = HbarPoly::constant(c(0, 0));
    for e in 1..=max_e {
        let mut h = HbarPoly::zero();
        for v in 1..=a * e {
            let val = c(v, e);
            if !val.is_zero() {
                h = h.plus(&HbarPoly::monomial(val, (a as i32 - 1) * e as i32 - v as i32));
            }
        }
        coeffs[(a * e) as usize] = h;
    }
    TruncSeries::new(0, coeffs, HbarPoly::zero())
}

/// Connected counts f(v, e) for e ≤ max_e, from the logarithm of the disconnected series;
/// indexed `[e][v]`.
pub fn connected_from_disconnected(a: u32, max_e: u32) -> Result<Vec<Vec<Rat>>> {
    let disconnected = hbar_series(a, max_e, |v, e| {
        if e == 0 {
            Rat::from_integer((v == 0).into())
        } else {
            fbullet_closed(a, v, e)
        }
    });
    let conn = disconnected.log()?;
    read_counts(a, max_e, &conn)
}

/// Reads c(v, e) back out of an ħ-graded series in x^{−1}.
pub fn read_counts(a: u32, max_e: u32, s: &TruncSeries<HbarPoly>) -> Result<Vec<Vec<Rat>>> {
    let mut out = Vec::with_capacity(max_e as usize + 1);
    for e in 0..=max_e {
        let h = s.coeff((a * e) as i64)?;
        let row = (0..=a * e).map(|v| h.coeff((a as i32 - 1) * e as i32 - v as i32)).collect();
        out.push(row);
    }
    Ok(out)
}

/// N_0..=N_B from N(t) = 1 + t^a N(t)^a.
pub fn nb_recursion(a: u32, max_b: u32) -> Vec<BigInt> {
    let len = max_b as usize + 1;
    let a = a as usize;
    let mut n = vec![BigInt::zero(); len];
    n[0] = BigInt::one();
    // each pass fixes at least one more coefficient
    for _ in 0..len {
        let mut p = vec![BigInt::zero(); len];
        p[0] = BigInt::one();
        for _ in 0..a {
            p = convolve(&p, &n);
        }
        let mut next = vec![BigInt::zero(); len];
        next[0] = BigInt::one();
        for b in a..len {
            next[b] = p[b - a].clone();
        }
        if next == n {
            break;
        }
        n = next;
    }
    n
}

fn convolve(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let len = p.len();
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in p.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in q.iter().take(len - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// M_{0,1}(b) from the generalized Catalan formula.
pub fn closed_m01(a: u32, b: u32) -> Rat {
    assert!(b >= 1, "closed_m01 needs b >= 1");
    if !b.is_multiple_of(a) {
        return Rat::zero();
    }
    let (a, b) = (a as i64, b as i64);
    let num = BigInt::from(a) * binomial(b, b / a);
    Rat::new(num, BigInt::from(a * b + a - b) * b)
}

/// Vertex-pointed count C = b₁⋯b_n·M, with the isolated-vertex case C_{0,1}(0) = 1.
pub fn pointed_count(spec: &HypermapSpec, cfg: &EnumConfig) -> Result<Rat> {
    if spec.b.contains(&0) {
        let isolated = spec.g == 0 && spec.b == [0];
        return Ok(Rat::from_integer(isolated.into()));
    }
    if spec.b.is_empty() {
        return Err(Error::Invalid("pointed count needs at least one face".into()));
    }
    let m = if spec.g == 0 && spec.n() == 1 {
        closed_m01(spec.a, spec.b[0])
    } else {
        brute_force_m(spec, cfg)?
    };
    let prod: BigInt = spec.b.iter().map(|&x| BigInt::from(x)).product();
    Ok(m * Rat::from_integer(prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_first(0, 0), BigInt::from(1));
        assert_eq!(stirling_first(3, 2), BigInt::from(3));
        assert_eq!(stirling_first(4, 1), BigInt::from(6));
        assert_eq!(stirling_first(3, 5), BigInt::from(0));
        assert_eq!(stirling_row(6).iter().sum::<BigInt>(), BigInt::from(720));
    }

    #[test]
    fn fbullet_small() {
        assert_eq!(fbullet_closed(2, 1, 1), rat(1, 2));
        assert_eq!(fbullet_closed(2, 2, 1), rat(1, 2));
        assert_eq!(fbullet_closed(3, 0, 2), rat(0, 1));
    }

    #[test]
    fn recursion_first_step() {
        let t = disconnected_table(2, 1);
        assert_eq!(t[1], vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn catalan_column() {
        let n = nb_recursion(2, 10);
        let even: Vec<i64> = n.iter().step_by(2).map(|x| x.try_into().unwrap()).collect();
        assert_eq!(even, vec![1, 1, 2, 5, 14, 42]);
        assert!(n.iter().skip(1).step_by(2).all(Zero::is_zero));
        let n3 = nb_recursion(3, 6);
        assert_eq!((n3[3].clone(), n3[6].clone()), (BigInt::from(1), BigInt::from(3)));
    }

    #[test]
    fn closed_m01_values() {
        assert_eq!(closed_m01(2, 2), rat(1, 2));
        assert_eq!(closed_m01(3, 4), rat_int(0));
        assert_eq!(closed_m01(3, 3), rat(1, 3));
    }

    #[test]
    fn pointed_values() {
        let cfg = EnumConfig::default();
        assert_eq!(pointed_count(&HypermapSpec::new(2, 0, vec![0]), &cfg).unwrap(), rat_int(1));
        assert_eq!(pointed_count(&HypermapSpec::new(2, 1, vec![0, 3]), &cfg).unwrap(), rat_int(0));
        assert_eq!(pointed_count(&HypermapSpec::new(2, 0, vec![4]), &cfg).unwrap(), rat_int(2));
    }
}
