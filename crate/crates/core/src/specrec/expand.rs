//! Expansion of correlators at x = ∞ on the branch z → 0.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::omega::OmegaDatum;
use crate::arith::{lagrange_invert, rat_int, Rat, TruncSeries};
use crate::error::{Error, Result};

/// Coefficients c(b₁..b_n) of Π x_i^{−b_i−1} dx_i, for b_i ≥ 1.
pub type ExpansionTable = BTreeMap<Vec<u32>, Rat>;

/// z as a power series in X = 1/x, known to X^{top}.
pub fn z_at_infinity(a: u32, top: usize) -> Result<TruncSeries<Rat>> {
    if a == 0 {
        return Err(Error::Invalid("a must be positive".into()));
    }
    // x(z) = z^{−1} + z^{a−1}, known to z^{top−1}
    let mut c = vec![Rat::zero(); top + 1];
    c[0] = Rat::one();
    if a as usize <= top {
        c[a as usize] += Rat::one();
    }
    let x = TruncSeries::from_rats(-1, &c);
    let z = lagrange_invert(&x)?;
    Ok(z.truncate(top as i64))
}

/// [x^{−b−1}] y for b = 0..=top: the genus-zero one-point data.
pub fn expand_omega01(a: u32, top: usize) -> Result<Vec<Rat>> {
    let z = z_at_infinity(a, top + 1)?;
    (0..=top).map(|b| z.coeff(b as i64 + 1)).collect()
}

/// Table T[e][b] = [X^{b+1}] z^e · (−X² dz/dX) / p(z)^m for one variable.
fn variable_table(a: u32, z: &TruncSeries<Rat>, max_e: usize, m: u32, top: usize) -> Result<Vec<Vec<Rat>>> {
    let hi = top as i64 + 1;
    let mut pc = vec![Rat::zero(); a as usize + 1];
    pc[0] = -Rat::one();
    pc[a as usize] += rat_int(a as i64 - 1);
    let zt = z.truncate(hi);
    let powers = zt.powers((a as usize).max(max_e));
    let mut p_of_z = TruncSeries::zero(Rat::zero(), hi);
    for (k, c) in pc.iter().enumerate() {
        p_of_z = p_of_z.add(&powers[k].scale(c));
    }
    let inv_pm = p_of_z.inv()?.pow(m);
    let jac = z.derivative().shift(2).neg().truncate(hi);
    let base = jac.mul(&inv_pm);
    let mut out = Vec::with_capacity(max_e + 1);
    for e in powers.iter().take(max_e + 1) {
        let d = e.mul(&base);
        out.push((0..=top).map(|b| d.coeff(b as i64 + 1)).collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// All vectors of positive integers of length n with sum ≤ total.
pub fn positive_vectors(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len() - 1) as u32;
        for b in 1..=left.saturating_sub(rest) {
            cur.push(b);
            rec(n, left - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= n as u32 {
        rec(n, total, &mut Vec::new(), &mut out);
    }
    out
}

/// c(b⃗) for all b⃗ with b_i ≥ 1 and Σb_i ≤ total.
pub fn expand_at_infinity(omega: &OmegaDatum, total: u32) -> Result<ExpansionTable> {
    let n = omega.n;
    if n == 0 {
        return Err(Error::Invalid("nothing to expand for n = 0".into()));
    }
    let top = (total as usize + 1).saturating_sub(n);
    let z = z_at_infinity(omega.a, top + 2)?;
    let tables: Vec<Vec<Vec<Rat>>> = (0..n)
        .map(|i| {
            let max_e = omega.numerator().degree_in(i).unwrap_or(0) as usize;
            variable_table(omega.a, &z, max_e, omega.denom_exponents()[i], top)
        })
        .collect::<Result<_>>()?;
    let mut out = ExpansionTable::new();
    for b in positive_vectors(n, total) {
        let mut acc = Rat::zero();
        for (m, c) in omega.numerator().terms() {
            let mut t = c.clone();
            for (i, &bi) in b.iter().enumerate() {
                let v = &tables[i][m.exp(i) as usize][bi as usize];
                if v.is_zero() {
                    t = Rat::zero();
                    break;
                }
                t *= v;
            }
            acc += t;
        }
        out.insert(b, acc);
    }
    Ok(out)
}

/// Expansion of ω_{0,2} − dx₁dx₂/(x₁−x₂)² at x = ∞, for b₁, b₂ ≥ 1 and
/// b₁ + b₂ ≤ total. Reported for information; no combinatorial identity is
/// asserted for it.
pub fn expand_omega02(a: u32, total: u32) -> Result<ExpansionTable> {
    // With z = Σ c_k X^k, (z₁ − z₂)/(X₁ − X₂) = H = Σ c_k h_{k−1}(X₁, X₂) and
    // the regularized density is X₁²X₂² (z₁'z₂'/H² − 1) in x-coordinates.
    let t = total as usize;
    let z = z_at_infinity(a, t + 1)?;
    let c: Vec<Rat> = (0..=t as i64 + 1).map(|k| z.coeff(k)).collect::<Result<_>>()?;
    let dz: Vec<Rat> = (0..=t).map(|k| &c[k + 1] * rat_int(k as i64 + 1)).collect();
    // bivariate arrays indexed [i][j], truncated to i + j ≤ t
    let zero2 = || vec![vec![Rat::zero(); t + 1]; t + 1];
    let mut h = zero2();
    for (k, ck) in c.iter().enumerate().skip(1) {
        for i in 0..k {
            let j = k - 1 - i;
            if i + j <= t {
                h[i][j] += ck;
            }
        }
    }
    let mul = |x: &Vec<Vec<Rat>>, y: &Vec<Vec<Rat>>| {
        let mut out = zero2();
        for i1 in 0..=t {
            for j1 in 0..=t - i1 {
                if x[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..=t - i1 - j1 {
                    for j2 in 0..=t - i1 - j1 - i2 {
                        out[i1 + i2][j1 + j2] += &x[i1][j1] * &y[i2][j2];
                    }
                }
            }
        }
        out
    };
    // 1/H by fixed-point iteration: H(0,0) = 1, inv = 1 + (1 − H)·inv
    let mut one_minus_h = zero2();
    for i in 0..=t {
        for j in 0..=t - i {
            one_minus_h[i][j] = -&h[i][j];
        }
    }
    one_minus_h[0][0] += Rat::one();
    let mut inv = zero2();
    inv[0][0] = Rat::one();
    for _ in 0..=t {
        let mut next = mul(&one_minus_h, &inv);
        next[0][0] += Rat::one();
        inv = next;
    }
    let inv2 = mul(&inv, &inv);
    let mut d = zero2();
    for i in 0..=t {
        for j in 0..=t - i {
            d[i][j] = &dz[i] * &dz[j];
        }
    }
    let mut r = mul(&d, &inv2);
    r[0][0] -= Rat::one();
    let mut out = ExpansionTable::new();
    for b in positive_vectors(2, total) {
        out.insert(b.clone(), r[b[0] as usize - 1][b[1] as usize - 1].clone());
    }
    Ok(out)
}
