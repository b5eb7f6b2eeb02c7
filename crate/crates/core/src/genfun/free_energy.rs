//! Free energies restricted to the diagonal and the partition function built from them.

use std::collections::BTreeMap;

use super::xseries::XSeries;
use crate::arith::{factorial, Coeff, HbarPoly, Rat, TruncSeries};
use crate::error::{Error, Result};
use crate::permcount::{CountTable, HypermapSpec};

/// Ordered tuples of `n` positive integers summing to `total`.
pub fn compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(rest: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=rest.saturating_sub(left as u32 - 1) {
            cur.push(first);
            go(rest - first, left - 1, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        go(total, n, &mut cur, &mut out);
    }
    out
}

/// Coefficients `0..=order` of F̄_{g,n}(x,…,x): the x^{−B} coefficient is Σ_{Σb=B} M(b⃗).
pub fn free_energy_series(a: u32, g: u32, n: usize, order: usize, table: &CountTable) -> Result<Vec<Rat>> {
    let mut out = vec![Rat::from_integer(0.into()); order + 1];
    for (big_b, slot) in out.iter_mut().enumerate().skip(1) {
        for b in compositions(big_b as u32, n) {
            let spec = HypermapSpec::new(a, g, b);
            let m = table.get(&spec).ok_or_else(|| Error::Missing(format!("no count for {spec:?}")))?;
            *slot += m;
        }
    }
    Ok(out)
}

/// Every (g, n) with a possibly nonzero contribution at total perimeter at most `order`.
pub fn contributing_types(a: u32, order: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for n in 1..=order {
        for g in 0u32.. {
            let feasible = (n..=order).any(|d| {
                let mut b = vec![1; n - 1];
                b.push((d + 1 - n) as u32);
                HypermapSpec::new(a, g, b).vertices().is_some()
            });
            if !feasible {
                break;
            }
            out.push((g, n));
        }
    }
    out
}

/// Z̄ = exp Σ_{g,n} ħ^{2g−2+n}/n! F̄_{g,n}(x,…,x), using every count in `table`.
pub fn zbar_from_free_energies(a: u32, order: usize, table: &CountTable) -> Result<XSeries> {
    let mut log_coeffs: BTreeMap<usize, HbarPoly> = BTreeMap::new();
    for (g, n) in contributing_types(a, order) {
        let f = free_energy_series(a, g, n, order, table)?;
        let inv_nfact = Rat::new(1.into(), factorial(n as u64));
        let exp = 2 * g as i32 - 2 + n as i32;
        for (big_b, c) in f.into_iter().enumerate() {
            if c != Rat::from_integer(0.into()) {
                let term = HbarPoly::monomial(c * &inv_nfact, exp);
                let slot = log_coeffs.entry(big_b).or_insert_with(HbarPoly::zero);
                *slot = slot.plus(&term);
            }
        }
    }
    let coeffs = (0..=order).map(|b| log_coeffs.remove(&b).unwrap_or_default()).collect();
    let z = TruncSeries::new(0, coeffs, HbarPoly::zero()).exp()?;
    XSeries::from_series(&z, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }
}
