//! One step of the recursion at a single branch point, over any coefficient
//! ring containing that branch point.
//!
//! Everything is kept as numerators over powers of p(z_i), so the result of a
//! step is a polynomial numerator together with a vector of p-exponents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chart::{eval_poly_on, LocalChart};
use crate::arith::{rat_int, Coeff, Invertible, MPoly, Poly, TruncSeries};
use crate::error::{Error, Result};

/// A numerator over Π p(z_i)^{den_i}.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Fraction<K> {
    pub num: MPoly<K>,
    pub den: Vec<u32>,
}

impl<K: Coeff> Fraction<K> {
    pub fn lift(&self, to: &[u32], p: &Poly<K>) -> MPoly<K> {
        let mut out = self.num.clone();
        for (i, (&f, &t)) in self.den.iter().zip(to).enumerate() {
            if t > f {
                out = out.mul_univariate(i, &p.pow(t - f));
            }
        }
        out
    }

    pub fn add(&self, other: &Self, p: &Poly<K>) -> Self {
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(x, y)| *x.max(y)).collect();
        let num = self.lift(&den, p).plus(&other.lift(&den, p));
        Fraction { num, den }
    }
}

pub(crate) type LowerTable<K> = BTreeMap<(u32, usize), Fraction<K>>;

/// Series attached to one sheet (z or z̄) of the chart.
struct Sheet<K> {
    delta_pows: Vec<TruncSeries<K>>,
    z_pows: Vec<TruncSeries<K>>,
    inv_p_pows: Vec<TruncSeries<K>>,
}

impl<K: Invertible> Sheet<K> {
    fn new(alpha: &K, delta: &TruncSeries<K>, p: &Poly<K>, max_l: usize, max_e: usize, max_m: usize) -> Result<Self> {
        let hi = delta.hi();
        let z = TruncSeries::monomial(alpha.clone(), 0, hi).add(delta);
        let inv_p = eval_poly_on(p, alpha, delta).inv()?;
        Ok(Sheet { delta_pows: delta.powers(max_l), z_pows: z.powers(max_e), inv_p_pows: inv_p.powers(max_m) })
    }
}

/// A factor of the recursion integrand as a series in the chart coordinate
/// whose coefficients are numerators over Π p(z_i)^{den_i}.
struct Factor<K> {
    series: TruncSeries<MPoly<K>>,
    den: Vec<u32>,
}

/// Which lower correlator a factor is, before it is expanded.
#[derive(Clone, Debug)]
enum FactorKind {
    /// ω_{0,2}(w, z_i)
    Bergman(usize),
    /// stable ω_{h,|I|+1}(w, z_I)
    Stable(u32, Vec<usize>),
}

enum Term {
    /// ω_{g−1,n+2}(z, z̄, z_S) with the stable or the Bergman case
    Diagonal(Option<(u32, usize)>),
    Product(FactorKind, FactorKind),
}

fn constant_series<K: Coeff>(s: &TruncSeries<K>, nv: usize) -> TruncSeries<MPoly<K>> {
    s.map(|c| MPoly::constant(nv, c.clone()))
}

/// Orientation of the integral in the recursion kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// ∫ from z̄ to z, the usual convention
    #[default]
    Standard,
    /// ∫ from z to z̄; every ω_{g,n} changes by (−1)^n
    Reversed,
}

pub(crate) struct Step<'a, K> {
    pub orientation: Orientation,
    pub g: u32,
    /// size of z_S; the result has n + 1 variables
    pub n: usize,
    pub chart: &'a LocalChart<K>,
    pub p: &'a Poly<K>,
    pub lower: &'a LowerTable<K>,
}

impl<'a, K: Invertible> Step<'a, K> {
    fn nv(&self) -> usize {
        self.n + 1
    }

    fn lower(&self, g: u32, n: usize) -> Result<&'a Fraction<K>> {
        self.lower.get(&(g, n)).ok_or_else(|| Error::Missing(format!("ω_{{{g},{n}}}")))
    }

    fn kind_valuation(&self, k: &FactorKind) -> Result<i64> {
        Ok(match k {
            FactorKind::Bergman(_) => 0,
            FactorKind::Stable(h, idx) => -(self.lower(*h, idx.len() + 1)?.den[0] as i64),
        })
    }

    fn terms(&self) -> Vec<Term> {
        let (g, n) = (self.g, self.n);
        let mut out = Vec::new();
        if g >= 1 {
            out.push(Term::Diagonal(if g == 1 && n == 0 { None } else { Some((g - 1, n + 2)) }));
        }
        let kind = |h: u32, idx: Vec<usize>| {
            if h == 0 && idx.len() == 1 {
                FactorKind::Bergman(idx[0])
            } else {
                FactorKind::Stable(h, idx)
            }
        };
        for g1 in 0..=g {
            let g2 = g - g1;
            for mask in 0u32..(1 << n) {
                let i: Vec<usize> = (1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect();
                let j: Vec<usize> = (1..=n).filter(|k| mask >> (k - 1) & 1 == 0).collect();
                if (g1 == 0 && i.is_empty()) || (g2 == 0 && j.is_empty()) {
                    continue;
                }
                out.push(Term::Product(kind(g1, i), kind(g2, j)));
            }
        }
        out
    }

    fn term_valuation(&self, t: &Term) -> Result<i64> {
        Ok(match t {
            Term::Diagonal(None) => -2,
            Term::Diagonal(Some((h, k))) => {
                let l = self.lower(*h, *k)?;
                -((l.den[0] + l.den[1]) as i64)
            }
            Term::Product(x, y) => self.kind_valuation(x)? + self.kind_valuation(y)?,
        })
    }

    /// Expands `poly` (in nv + 1 variables) after substituting the sheets
    /// given for the listed variables; `m` are their p-exponents.
    fn substitute(&self, poly: &MPoly<K>, subs: &[(usize, &Sheet<K>, u32)]) -> TruncSeries<MPoly<K>> {
        let nv = self.nv();
        let zero_k = self.chart.alpha.zero_like();
        let mut groups: BTreeMap<Vec<u32>, MPoly<K>> = BTreeMap::new();
        for (&mono, c) in poly.terms() {
            let key: Vec<u32> = subs.iter().map(|(v, _, _)| mono.exp(*v)).collect();
            let rest = subs.iter().fold(mono, |m, (v, _, _)| m.with_exp(*v, 0));
            groups.entry(key).or_insert_with(|| MPoly::zero(nv, zero_k.clone())).add_term(rest, c.clone());
        }
        let hi = self.chart.order();
        let mut acc: TruncSeries<MPoly<K>> = TruncSeries::zero(MPoly::zero(nv, zero_k.clone()), hi);
        for (key, rest) in &groups {
            let mut s = subs[0].1.z_pows[key[0] as usize].clone();
            for (k, (_, sheet, _)) in subs.iter().enumerate().skip(1) {
                s = s.mul(&sheet.z_pows[key[k] as usize]);
            }
            acc = acc.add(&s.map(|c| rest.mul_scalar(c)));
        }
        let mut pole = subs[0].1.inv_p_pows[subs[0].2 as usize].clone();
        for (_, sheet, m) in subs.iter().skip(1) {
            pole = pole.mul(&sheet.inv_p_pows[*m as usize]);
        }
        acc.mul(&constant_series(&pole, nv))
    }

    fn expand_kind(&self, k: &FactorKind, sheet: &Sheet<K>, placeholder: usize, lmax: usize, q: &Poly<K>) -> Result<Factor<K>> {
        let nv = self.nv();
        let zero_k = self.chart.alpha.zero_like();
        match k {
            FactorKind::Bergman(i) => {
                // 1/(z_i − α − δ)² = Σ_l (l+1) δ^l q(z_i)^{l+2} / p(z_i)^{l+2}
                let mut coeffs = vec![MPoly::zero(nv, zero_k.clone()); lmax + 1];
                for l in 0..=lmax {
                    let u = q.pow(l as u32 + 2).mul(&self.p.pow((lmax - l) as u32));
                    let base = MPoly::from_univariate(nv, *i, &u, zero_k.clone()).scale(&rat_int(l as i64 + 1));
                    for (kk, c) in coeffs.iter_mut().enumerate().skip(l) {
                        let d = sheet.delta_pows[l].coeff(kk as i64)?;
                        if !d.vanishes() {
                            *c = c.plus(&base.mul_scalar(&d));
                        }
                    }
                }
                let mut den = vec![0; nv];
                den[*i] = lmax as u32 + 2;
                Ok(Factor { series: TruncSeries::new(0, coeffs, MPoly::zero(nv, zero_k)), den })
            }
            FactorKind::Stable(h, idx) => {
                let l = self.lower(*h, idx.len() + 1)?;
                let mut target = vec![placeholder];
                target.extend(idx.iter().copied());
                let poly = l.num.relabel(nv + 1, &target);
                let mut den = vec![0; nv];
                for (j, &v) in idx.iter().enumerate() {
                    den[v] = l.den[j + 1];
                }
                let series = self.substitute(&poly, &[(placeholder, sheet, l.den[0])]);
                Ok(Factor { series, den })
            }
        }
    }

    /// This branch point's contribution to ω_{g,n+1}(z₀, z_S).
    pub fn run(&self) -> Result<Fraction<K>> {
        let nv = self.nv();
        let ch = self.chart;
        let zero_k = ch.alpha.zero_like();
        let terms = self.terms();
        let vals: Vec<i64> = terms.iter().map(|t| self.term_valuation(t)).collect::<Result<_>>()?;
        let v_f = vals.iter().copied().min().unwrap_or(0);
        let lmax = (-v_f).max(0) as usize;
        let big_j = (1 - v_f) as usize;
        if ch.order() < big_j as i64 + 1 {
            return Err(Error::OutOfWindow { requested: big_j as i64 + 1, known: ch.order() });
        }
        let max_e = self.lower.values().filter_map(|f| (0..f.num.nvars()).filter_map(|v| f.num.degree_in(v)).max()).max().unwrap_or(0) as usize;
        let max_m = self.lower.values().flat_map(|f| f.den.iter().copied()).max().unwrap_or(0) as usize;
        let max_l = lmax.max(big_j);
        let sz = Sheet::new(&ch.alpha, &ch.delta, self.p, max_l, max_e, max_m)?;
        let sb = Sheet::new(&ch.alpha, &ch.delta_bar, self.p, max_l, max_e, max_m)?;
        let q = self.p.deflate_at(&ch.alpha);
        let (ph_z, ph_bar) = (0, nv);

        let mut parts: Vec<Factor<K>> = Vec::with_capacity(terms.len());
        for t in &terms {
            let f = match t {
                Term::Diagonal(None) => {
                    let d = ch.delta.sub(&ch.delta_bar);
                    let b = d.mul(&d).inv()?;
                    Factor { series: constant_series(&b, nv), den: vec![0; nv] }
                }
                Term::Diagonal(Some((h, k))) => {
                    let l = self.lower(*h, *k)?;
                    let mut target = vec![ph_z, ph_bar];
                    target.extend(1..=self.n);
                    let poly = l.num.relabel(nv + 1, &target);
                    let mut den = vec![0; nv];
                    den[1..].copy_from_slice(&l.den[2..]);
                    let series = self.substitute(&poly, &[(ph_z, &sz, l.den[0]), (ph_bar, &sb, l.den[1])]);
                    Factor { series, den }
                }
                Term::Product(x, y) => {
                    let (vx, vy) = (self.kind_valuation(x)?, self.kind_valuation(y)?);
                    let fx = self.expand_kind(x, &sz, ph_z, lmax, &q)?;
                    let fy = self.expand_kind(y, &sb, ph_bar, lmax, &q)?;
                    let series = fx.series.truncate(-vy).mul(&fy.series.truncate(-vx));
                    let den = fx.den.iter().zip(&fy.den).map(|(a, b)| a + b).collect();
                    Factor { series, den }
                }
            };
            if f.series.hi() < 0 {
                return Err(Error::OutOfWindow { requested: 0, known: f.series.hi() });
            }
            parts.push(f);
        }

        // common denominators across the terms of the integrand
        let mut den = vec![0u32; nv];
        for f in &parts {
            for (d, x) in den.iter_mut().zip(&f.den) {
                *d = (*d).max(*x);
            }
        }
        let mut integrand: TruncSeries<MPoly<K>> = TruncSeries::zero(MPoly::zero(nv, zero_k.clone()), 0);
        for f in &parts {
            let lifted = f.series.truncate(0).map(|c| Fraction { num: c.clone(), den: f.den.clone() }.lift(&den, self.p));
            integrand = integrand.add(&lifted);
        }

        // z_t z̄_t / (2 (z − z̄) dx/dt)
        let jac = ch.dz.mul(&ch.dz_bar);
        let two_gap = ch.delta.sub(&ch.delta_bar).scale(&rat_int(2)).mul(&ch.dx);
        let g = jac.mul(&two_gap.inv()?);
        let w = integrand.mul(&constant_series(&g, nv));
        if w.hi() < -2 {
            return Err(Error::OutOfWindow { requested: -2, known: w.hi() });
        }

        // kernel numerator ∫_{z̄}^{z} dw/(z₀ − w)² = 1/(z₀ − z) − 1/(z₀ − z̄)
        //   = Σ_j (δ^j − δ̄^j) q(z₀)^{j+1} / p(z₀)^{j+1}, or its negative
        let mut num = MPoly::zero(nv, zero_k.clone());
        for j in 1..=big_j {
            let kern = match self.orientation {
                Orientation::Standard => sz.delta_pows[j].sub(&sb.delta_pows[j]),
                Orientation::Reversed => sb.delta_pows[j].sub(&sz.delta_pows[j]),
            };
            let mut r = MPoly::zero(nv, zero_k.clone());
            for k in j as i64..=(1 - v_f) {
                let kc = kern.coeff(k)?;
                if kc.vanishes() {
                    continue;
                }
                r = r.plus(&w.coeff(-1 - k)?.mul_scalar(&kc));
            }
            if r.is_empty() {
                continue;
            }
            let u = q.pow(j as u32 + 1).mul(&self.p.pow((big_j - j) as u32));
            num = num.plus(&r.mul_univariate(0, &u));
        }
        den[0] = big_j as u32 + 1;
        Ok(Fraction { num, den })
    }
}
