//! Drivers for the recursion: exact over the étale algebra of the branch
//! locus, exact with rational branch points (a = 2), and numeric.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::chart::LocalChart;
use super::curve::SpectralCurve;
use super::engine::{Fraction, LowerTable, Orientation, Step};
use super::omega::OmegaDatum;
use crate::arith::{rat_int, Coeff, EtaleElem, FixedComplex, MPoly, Modulus, Poly, Rat, FRAC_BITS};
use crate::error::{Error, Result};

/// How the sum over branch points is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Generic branch point in ℚ[s]/(p), summed by the trace.
    Etale,
    /// a = 2 only: α = ±1 separately, in the chart z = α + u with z̄ = 1/z.
    RationalA2,
}

pub fn is_stable(g: u32, n: usize) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

/// Local-series order used for ω_{g,n}, before any extra margin.
pub fn default_order(g: u32, n: usize) -> i64 {
    2 * (6 * g as i64 - 2 + 2 * n as i64) + 4
}

/// The stable correlators the step producing ω_{g,n} reads.
pub fn required_lower(g: u32, n: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    if g >= 1 && is_stable(g - 1, n + 1) {
        out.push((g - 1, n + 1));
    }
    for g1 in 0..=g {
        for k in 0..n {
            if is_stable(g1, k + 1) && (g1, k + 1) != (g, n) {
                out.push((g1, k + 1));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn lower_over<K: Coeff>(lower: &BTreeMap<(u32, usize), Arc<OmegaDatum>>, zero: &K, conv: impl Fn(&Rat) -> K) -> LowerTable<K> {
    lower
        .iter()
        .map(|(&k, d)| (k, Fraction { num: d.numerator().map(zero.clone(), &conv), den: d.denom_exponents().to_vec() }))
        .collect()
}

fn poly_over<K: Coeff>(p: &Poly<Rat>, conv: impl Fn(&Rat) -> K) -> Poly<K> {
    Poly::new(p.coeffs().iter().map(conv).collect())
}

fn zero_fraction<K: Coeff>(nv: usize, zero: K) -> Fraction<K> {
    Fraction { num: MPoly::zero(nv, zero), den: vec![0; nv] }
}

/// Settings of a single recursion step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepConfig {
    /// order of the local series in the chart coordinate
    pub order: i64,
    pub route: Route,
    pub orientation: Orientation,
}

/// One exact recursion step, ω_{g,n} from the given lower correlators.
pub fn recursion_step(
    a: u32,
    g: u32,
    n: usize,
    lower: &BTreeMap<(u32, usize), Arc<OmegaDatum>>,
    cfg: StepConfig,
) -> Result<OmegaDatum> {
    let order = cfg.order;
    if !is_stable(g, n) || n == 0 {
        return Err(Error::Invalid(format!("({g},{n}) is not a stable type with n ≥ 1")));
    }
    if a == 1 {
        return Ok(OmegaDatum::zero(a, g, n));
    }
    let curve = SpectralCurve::new(a)?;
    let p = curve.branch_poly().clone();
    let acc = match cfg.route {
        Route::Etale => etale_sum(a, g, n, lower, cfg, &p)?,
        Route::RationalA2 => {
            if a != 2 {
                return Err(Error::Invalid("the rational-branch-point route needs a = 2".into()));
            }
            let table = lower_over(lower, &Rat::zero(), |r| r.clone());
            let mut acc = zero_fraction(n, Rat::zero());
            for alpha in [rat_int(1), rat_int(-1)] {
                let chart = LocalChart::u_chart_a2(&alpha, order)?;
                let f = Step { orientation: cfg.orientation, g, n: n - 1, chart: &chart, p: &p, lower: &table }.run()?;
                acc = acc.add(&f, &p);
            }
            acc
        }
    };
    let d = OmegaDatum::new(a, g, acc.num, acc.den);
    d.check_invariants()?;
    Ok(d)
}

/// Σ over roots of p by trace, splitting the modulus when a zero divisor shows up.
fn etale_sum(
    a: u32,
    g: u32,
    n: usize,
    lower: &BTreeMap<(u32, usize), Arc<OmegaDatum>>,
    cfg: StepConfig,
    p: &Poly<Rat>,
) -> Result<Fraction<Rat>> {
    let mut work = vec![Modulus::branch_locus(a)?];
    let mut acc = zero_fraction(n, Rat::zero());
    while let Some(m) = work.pop() {
        let conv = |r: &Rat| EtaleElem::from_rat(&m, r.clone());
        let zero = conv(&Rat::zero());
        let table = lower_over(lower, &zero, conv);
        let pk = poly_over(p, conv);
        let alpha = EtaleElem::generator(&m);
        let res = LocalChart::t_chart(a, &alpha, cfg.order)
            .and_then(|chart| Step { orientation: cfg.orientation, g, n: n - 1, chart: &chart, p: &pk, lower: &table }.run());
        match res {
            Ok(f) => {
                let traced = Fraction { num: f.num.map(Rat::zero(), EtaleElem::trace), den: f.den };
                acc = acc.add(&traced, p);
            }
            Err(Error::Split(f1, f2)) => {
                work.push(Modulus::new(f1)?);
                work.push(Modulus::new(f2)?);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(acc)
}

/// Initial guesses for the roots of (a−1)z^a = 1.
fn root_seeds(a: u32) -> Vec<(f64, f64)> {
    let r = (a as f64 - 1.0).powf(-1.0 / a as f64);
    (0..a)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / a as f64;
            (r * th.cos(), r * th.sin())
        })
        .collect()
}

/// The step evaluated numerically: the same residue calculus at each complex
/// branch point, summed without any exact reduction.
pub fn numeric_step(
    a: u32,
    g: u32,
    n: usize,
    lower: &BTreeMap<(u32, usize), Arc<OmegaDatum>>,
    cfg: StepConfig,
) -> Result<NumericOmega> {
    if a < 2 {
        return Err(Error::Invalid("numeric evaluation needs branch points".into()));
    }
    let p = SpectralCurve::new(a)?.branch_poly().clone();
    let conv = FixedComplex::from_rat;
    let zero = FixedComplex::zero();
    let table = lower_over(lower, &zero, conv);
    let pk = poly_over(&p, conv);
    let mut acc = zero_fraction(n, zero);
    for seed in root_seeds(a) {
        let alpha = FixedComplex::polish_root(p.coeffs(), seed);
        let chart = LocalChart::t_chart(a, &alpha, cfg.order)?;
        let f = Step { orientation: cfg.orientation, g, n: n - 1, chart: &chart, p: &pk, lower: &table }.run()?;
        acc = acc.add(&f, &pk);
    }
    Ok(NumericOmega { a, p: pk, value: acc })
}

/// ω_{g,n} with floating coefficients, as a numerator over Π p(z_i)^{m_i}.
pub struct NumericOmega {
    a: u32,
    p: Poly<FixedComplex>,
    value: Fraction<FixedComplex>,
}

impl NumericOmega {
    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn eval(&self, z: &[Rat]) -> Result<FixedComplex> {
        let pt: Vec<FixedComplex> = z.iter().map(FixedComplex::from_rat).collect();
        let mut den = pt[0].one_like();
        for (zi, &m) in pt.iter().zip(&self.value.den) {
            let pz = self.p.eval(zi).unwrap_or_else(FixedComplex::zero);
            den = den.times(&pz.power(m));
        }
        let inv = crate::arith::Invertible::try_inv(&den)?;
        Ok(self.value.num.eval(&pt).times(&inv))
    }
}

/// Bits of agreement that amount to 10^{−40}.
pub const NUMERIC_CHECK_BITS: u32 = 133;

/// Compares an exact datum with its numeric recomputation at sample points.
pub fn numeric_agreement(exact: &OmegaDatum, num: &NumericOmega, points: &[Vec<Rat>]) -> Result<bool> {
    debug_assert!(NUMERIC_CHECK_BITS < FRAC_BITS);
    for pt in points {
        let want = FixedComplex::from_rat(&exact.eval(pt)?);
        if !num.eval(pt)?.close_to(&want, NUMERIC_CHECK_BITS) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Memoized correlators of one curve, keyed by (g, n). Entries are written
/// once and only completed values are ever visible.
pub struct OmegaTable {
    a: u32,
    route: Route,
    orientation: Orientation,
    extra_order: i64,
    cache: RwLock<BTreeMap<(u32, usize), Arc<OmegaDatum>>>,
}

impl OmegaTable {
    pub fn new(a: u32) -> Self {
        OmegaTable {
            a,
            route: Route::Etale,
            orientation: Orientation::Standard,
            extra_order: 0,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// Extra orders of local series on top of [`default_order`].
    pub fn with_extra_order(mut self, extra: i64) -> Self {
        self.extra_order = extra;
        self
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn order_for(&self, g: u32, n: usize) -> i64 {
        default_order(g, n) + self.extra_order
    }

    fn config(&self, g: u32, n: usize) -> StepConfig {
        StepConfig { order: self.order_for(g, n), route: self.route, orientation: self.orientation }
    }

    /// ω_{g,n} if already computed or inserted.
    pub fn cached(&self, g: u32, n: usize) -> Option<Arc<OmegaDatum>> {
        self.cache.read().expect("cache lock").get(&(g, n)).cloned()
    }

    /// Seeds the table, e.g. from a cache on disk. A conflicting entry is an error.
    pub fn insert(&self, d: OmegaDatum) -> Result<Arc<OmegaDatum>> {
        if d.a != self.a {
            return Err(Error::Invalid(format!("datum for a = {} in table for a = {}", d.a, self.a)));
        }
        let mut c = self.cache.write().expect("cache lock");
        let e = c.entry((d.g, d.n)).or_insert_with(|| Arc::new(d.clone()));
        if !e.same_function(&d) {
            return Err(Error::Invariant(format!("conflicting values for ω_{{{},{}}}", d.g, d.n)));
        }
        Ok(Arc::clone(e))
    }

    pub fn entries(&self) -> Vec<Arc<OmegaDatum>> {
        self.cache.read().expect("cache lock").values().cloned().collect()
    }

    /// The lower correlators feeding the step for (g, n), computing any that are missing.
    pub fn lower_for(&self, g: u32, n: usize) -> Result<BTreeMap<(u32, usize), Arc<OmegaDatum>>> {
        required_lower(g, n).into_iter().map(|(h, k)| Ok(((h, k), self.omega(h, k)?))).collect()
    }

    /// ω_{g,n} for stable (g, n) with n ≥ 1.
    pub fn omega(&self, g: u32, n: usize) -> Result<Arc<OmegaDatum>> {
        if let Some(d) = self.cached(g, n) {
            return Ok(d);
        }
        let lower = self.lower_for(g, n)?;
        let d = recursion_step(self.a, g, n, &lower, self.config(g, n))?;
        self.insert(d)
    }

    /// Recomputes ω_{g,n} with two more orders of local series and compares.
    pub fn order_robust(&self, g: u32, n: usize) -> Result<bool> {
        let d = self.omega(g, n)?;
        let lower = self.lower_for(g, n)?;
        let again = recursion_step(self.a, g, n, &lower, StepConfig { order: self.order_for(g, n) + 2, ..self.config(g, n) })?;
        Ok(*d == again)
    }

    /// For a = 2: recomputes ω_{g,n} from the cached lower correlators along the
    /// other exact route and compares.
    pub fn routes_agree(&self, g: u32, n: usize) -> Result<bool> {
        let other = match self.route {
            Route::Etale => Route::RationalA2,
            Route::RationalA2 => Route::Etale,
        };
        let d = self.omega(g, n)?;
        let lower = self.lower_for(g, n)?;
        let again = recursion_step(self.a, g, n, &lower, StepConfig { route: other, ..self.config(g, n) })?;
        Ok(*d == again)
    }

    /// Recomputes ω_{g,n} numerically at the complex branch points and compares
    /// values at the given points to within 10^{−40}.
    pub fn numeric_check(&self, g: u32, n: usize, points: &[Vec<Rat>]) -> Result<bool> {
        let d = self.omega(g, n)?;
        let lower = self.lower_for(g, n)?;
        let num = numeric_step(self.a, g, n, &lower, self.config(g, n))?;
        numeric_agreement(&d, &num, points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_dependencies() {
        assert_eq!(required_lower(0, 3), vec![]);
        assert_eq!(required_lower(1, 1), vec![]);
        assert_eq!(required_lower(0, 4), vec![(0, 3)]);
        assert_eq!(required_lower(1, 2), vec![(0, 3), (1, 1)]);
        assert_eq!(required_lower(2, 1), vec![(1, 1), (1, 2)]);
    }

    #[test]
    fn a1_is_zero() {
        let t = OmegaTable::new(1);
        assert!(t.omega(0, 3).unwrap().is_zero());
        assert!(t.omega(2, 1).unwrap().is_zero());
    }

    #[test]
    fn low_types_are_well_formed() {
        for a in 2..=3 {
            let t = OmegaTable::new(a);
            for (g, n) in [(0, 3), (1, 1)] {
                let d = t.omega(g, n).unwrap();
                d.check_invariants().unwrap();
                assert!(!d.is_zero(), "a = {a}, ({g},{n})");
            }
        }
    }

    fn brute(a: u32, g: u32, b: &[u32]) -> Rat {
        use crate::permcount::{brute_force_m, EnumConfig, HypermapSpec};
        brute_force_m(&HypermapSpec::new(a, g, b.to_vec()), &EnumConfig::default()).unwrap()
    }

    #[test]
    fn a2_expansion_matches_enumeration() {
        use crate::specrec::expand_at_infinity;
        let t = OmegaTable::new(2);
        let rev = OmegaTable::new(2).with_orientation(Orientation::Reversed);
        for (g, n, total) in [(1u32, 1usize, 8u32), (0, 3, 7)] {
            let e = expand_at_infinity(&t.omega(g, n).unwrap(), total).unwrap();
            let r = expand_at_infinity(&rev.omega(g, n).unwrap(), total).unwrap();
            for (b, c) in &e {
                let prod: u32 = b.iter().product();
                let expect = brute(2, g, b) * rat_int(prod as i64);
                assert_eq!(c, &expect, "({g},{n}) at {b:?}");
                let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                assert_eq!(r[b], expect * sign, "reversed ({g},{n}) at {b:?}");
            }
        }
    }

    #[test]
    fn refinements_agree() {
        let t = OmegaTable::new(3);
        assert!(t.order_robust(1, 1).unwrap());
        assert!(t.order_robust(0, 3).unwrap());
        let pts = vec![vec![rat_int(2), Rat::new(1.into(), 3.into()), Rat::new((-5).into(), 7.into())]];
        assert!(t.numeric_check(0, 3, &pts).unwrap());
        assert!(OmegaTable::new(2).routes_agree(1, 2).unwrap());
    }

    #[test]
    fn splitting_branch_locus_is_handled() {
        // s² − 1 (a = 2) and s⁴·3 − 1 (a = 4) factor over Q, s³·2 − 1 does not
        for a in [2, 3, 4] {
            let d = OmegaTable::new(a).omega(0, 3).unwrap();
            d.check_invariants().unwrap();
        }
    }
}
