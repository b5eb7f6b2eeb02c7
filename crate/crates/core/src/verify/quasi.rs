//! Quasi-polynomial fits of M / Π binom(b_i − 1, ⌊(b_i − 1)/a⌋) modulo a.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::source::CountSource;
use crate::arith::{binomial, rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::permcount::HypermapSpec;

/// Π_i binom(b_i − 1, ⌊(b_i − 1)/a⌋).
pub fn binomial_factor(a: u32, b: &[u32]) -> Result<BigInt> {
    if a == 0 || b.contains(&0) {
        return Err(Error::Invalid("binomial factor needs a ≥ 1 and b_i ≥ 1".into()));
    }
    Ok(b.iter().map(|&bi| binomial(bi as i64 - 1, ((bi - 1) / a) as i64)).product())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFit {
    /// b_i mod a
    pub residues: Vec<u32>,
    pub points: usize,
    /// None for the zero polynomial
    pub degree: Option<u32>,
    /// exponent vector and coefficient
    pub coefficients: Vec<(Vec<u32>, String)>,
    /// false when the training points do not pin the polynomial down
    pub unique: bool,
    #[serde(skip)]
    exact: Vec<(Vec<u32>, Rat)>,
}

impl CosetFit {
    fn eval(&self, b: &[u32]) -> Rat {
        self.exact
            .iter()
            .map(|(e, c)| c * Rat::from_integer(b.iter().zip(e).map(|(&x, &k)| BigInt::from(x).pow(k)).product()))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoldoutPoint {
    pub b: Vec<u32>,
    pub expected: String,
    /// None when no training point shares the coset
    pub predicted: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    Passed,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolyFit {
    pub a: u32,
    pub g: u32,
    pub n: usize,
    pub cosets: Vec<CosetFit>,
    /// the largest degree over all cosets
    pub fitted_degree: Option<u32>,
    /// 3g − 3 + n
    pub conjectured_degree: i64,
    pub holdout: Vec<HoldoutPoint>,
    pub status: FitStatus,
}

/// Exponent vectors in n variables of total degree ≤ d, in graded order.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// Solves rows · c = rhs exactly; None if inconsistent, else a solution with free
/// variables set to zero and whether it is unique.
fn solve(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>, ncols: usize) -> Option<(Vec<Rat>, bool)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        rows[r].iter_mut().for_each(|x| *x *= &inv);
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
                let t = &f * &rhs[r];
                rhs[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rhs[i].clone();
    }
    Some((sol, pivots.len() == ncols))
}

fn fit_coset(residues: Vec<u32>, pts: &[(Vec<u32>, Rat)], max_degree: u32) -> Result<CosetFit> {
    let n = residues.len();
    let zero_fit = |unique| CosetFit {
        residues: residues.clone(),
        points: pts.len(),
        degree: None,
        coefficients: vec![],
        unique,
        exact: vec![],
    };
    if pts.iter().all(|(_, v)| v.is_zero()) {
        return Ok(zero_fit(!pts.is_empty()));
    }
    for d in 0..=max_degree {
        let mons = monomials(n, d);
        if mons.len() > pts.len() {
            break;
        }
        let rows = pts
            .iter()
            .map(|(b, _)| {
                mons.iter()
                    .map(|e| Rat::from_integer(b.iter().zip(e).map(|(&x, &k)| BigInt::from(x).pow(k)).product()))
                    .collect()
            })
            .collect();
        let rhs = pts.iter().map(|(_, v)| v.clone()).collect();
        if let Some((sol, unique)) = solve(rows, rhs, mons.len()) {
            let exact: Vec<(Vec<u32>, Rat)> = mons.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect();
            let degree = exact.iter().map(|(e, _)| e.iter().sum()).max();
            return Ok(CosetFit {
                residues,
                points: pts.len(),
                degree,
                coefficients: exact.iter().map(|(e, c)| (e.clone(), rat_to_string(c))).collect(),
                unique,
                exact,
            });
        }
    }
    Err(Error::Invalid(format!(
        "interpolation grid too small: {} points in coset {residues:?} admit no exact fit of degree ≤ {max_degree}",
        pts.len()
    )))
}

/// Fits P = M / binomial factor on each coset of (aℤ)^n from the training grid and
/// tests the fit on the holdout grid.
pub fn quasi_poly_check(
    a: u32,
    g: u32,
    n: usize,
    training: &[Vec<u32>],
    holdout: &[Vec<u32>],
    counts: &dyn CountSource,
    max_degree: u32,
) -> Result<QuasiPolyFit> {
    let reduced = |b: &Vec<u32>| -> Result<Rat> {
        if b.len() != n {
            return Err(Error::Invalid(format!("{b:?} does not have {n} entries")));
        }
        let m = counts.m(&HypermapSpec::new(a, g, b.clone()))?;
        Ok(m / Rat::from_integer(binomial_factor(a, b)?))
    };
    let coset = |b: &[u32]| b.iter().map(|x| x % a).collect::<Vec<_>>();
    let mut groups: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rat)>> = BTreeMap::new();
    for b in training {
        groups.entry(coset(b)).or_default().push((b.clone(), reduced(b)?));
    }
    let cosets: Vec<CosetFit> =
        groups.into_iter().map(|(r, pts)| fit_coset(r, &pts, max_degree)).collect::<Result<_>>()?;
    let mut points = Vec::with_capacity(holdout.len());
    for b in holdout {
        let expected = reduced(b)?;
        let fit = cosets.iter().find(|c| c.residues == coset(b));
        let predicted = fit.map(|f| f.eval(b));
        let pass = predicted.as_ref() == Some(&expected);
        points.push(HoldoutPoint {
            b: b.clone(),
            expected: rat_to_string(&expected),
            predicted: predicted.as_ref().map(rat_to_string),
            pass,
        });
    }
    let evaluable = points.iter().filter(|p| p.predicted.is_some()).count();
    let status = if points.iter().any(|p| p.predicted.is_some() && !p.pass) {
        FitStatus::Failed
    } else if evaluable == 0 || evaluable < points.len() {
        FitStatus::Inconclusive
    } else {
        FitStatus::Passed
    };
    Ok(QuasiPolyFit {
        a,
        g,
        n,
        fitted_degree: cosets.iter().filter_map(|c| c.degree).max(),
        cosets,
        conjectured_degree: 3 * g as i64 - 3 + n as i64,
        holdout: points,
        status,
    })
}
