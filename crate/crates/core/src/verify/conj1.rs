//! Expansions of ω_{g,n} at x = ∞ against hypermap counts.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::source::CountSource;
use crate::arith::{rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::permcount::HypermapSpec;
use crate::specrec::{expand_at_infinity, is_stable, OmegaTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub b: Vec<u32>,
    pub expansion: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture1Report {
    pub a: u32,
    pub g: u32,
    pub n: usize,
    /// every b⃗ with b_i ≥ 1 and Σb_i ≤ window was compared
    pub window: u32,
    pub checked: usize,
    pub nonzero: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Conjecture1Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares c(b⃗) with b₁⋯b_n·M(b⃗) exactly for all b⃗ in the window.
pub fn check_conjecture1(
    table: &OmegaTable,
    g: u32,
    n: usize,
    window: u32,
    counts: &dyn CountSource,
) -> Result<Conjecture1Report> {
    if !is_stable(g, n) {
        return Err(Error::Invalid(format!("({g},{n}) is unstable: 2g − 2 + n must be positive")));
    }
    let a = table.a();
    let omega = table.omega(g, n)?;
    let exp = expand_at_infinity(&omega, window)?;
    let rows: Vec<(Vec<u32>, Rat, Rat)> = exp
        .into_par_iter()
        .map(|(b, c)| {
            let m = counts.m(&HypermapSpec::new(a, g, b.clone()))?;
            let prod: BigInt = b.iter().map(|&x| BigInt::from(x)).product();
            Ok((b, c, m * Rat::from_integer(prod)))
        })
        .collect::<Result<_>>()?;
    let nonzero = rows.iter().filter(|(_, c, _)| *c != Rat::from_integer(0.into())).count();
    let mismatches = rows
        .iter()
        .filter(|(_, c, e)| c != e)
        .map(|(b, c, e)| Mismatch { b: b.clone(), expansion: rat_to_string(c), expected: rat_to_string(e) })
        .collect();
    Ok(Conjecture1Report { a, g, n, window, checked: rows.len(), nonzero, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::permcount::EnumConfig;
    use crate::verify::{BruteForce, WithFault};

    #[test]
    fn unstable_is_rejected() {
        let t = OmegaTable::new(3);
        let err = check_conjecture1(&t, 0, 2, 6, &BruteForce::default()).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn one_loop_a2() {
        let t = OmegaTable::new(2);
        let r = check_conjecture1(&t, 1, 1, 12, &BruteForce::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, 12);
        assert_eq!(r.nonzero, 5);
    }

    #[test]
    fn fault_is_detected() {
        let t = OmegaTable::new(2);
        let bf = BruteForce::new(EnumConfig::default());
        let f = WithFault { inner: &bf, spec: HypermapSpec::new(2, 0, vec![1, 1, 2]), value: rat_int(5) };
        let r = check_conjecture1(&t, 0, 3, 6, &f).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].b, vec![1, 1, 2]);
    }

    #[test]
    fn missing_data_names_the_type() {
        let t = OmegaTable::new(2);
        let err = check_conjecture1(&t, 1, 1, 4, &crate::permcount::CountTable::new()).unwrap_err();
        assert!(err.to_string().contains("g: 1"), "{err}");
    }
}
