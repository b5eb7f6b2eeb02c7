//! Local coordinates at a branch point α, in which the involution is explicit.

use num_traits::One;

use crate::arith::{binomial, rat_int, Coeff, Invertible, Poly, Rat, TruncSeries};
use crate::error::{Error, Result};

/// Series data of one chart w ↦ z(w) around a branch point α, together with
/// the conjugate sheet z̄(w). All series are known at least to w^{order−1}.
#[derive(Clone, Debug)]
pub struct LocalChart<K> {
    pub alpha: K,
    /// z(w) − α
    pub delta: TruncSeries<K>,
    /// z̄(w) − α
    pub delta_bar: TruncSeries<K>,
    pub dz: TruncSeries<K>,
    pub dz_bar: TruncSeries<K>,
    /// d x(z(w)) / dw
    pub dx: TruncSeries<K>,
}

/// The Taylor coefficients of x(α + u) − x(α), indices 0..=top; the
/// linear coefficient is zero by definition of α and is set so exactly.
fn x_taylor<K: Invertible>(a: u32, alpha: &K, top: usize) -> Result<Vec<K>> {
    let inv = alpha.try_inv()?;
    let mut c = vec![alpha.zero_like(); top + 1];
    for (k, ck) in c.iter_mut().enumerate().skip(2) {
        let mut v = inv.power(k as u32 + 1);
        if k % 2 == 1 {
            v = v.negate();
        }
        if k < a as usize {
            let b = Rat::from_integer(binomial(a as i64 - 1, k as i64));
            v = v.plus(&alpha.power(a - 1 - k as u32).scale(&b));
        }
        *ck = v;
    }
    Ok(c)
}

impl<K: Invertible> LocalChart<K> {
    /// The chart t with x(z(t)) = x(α) + c₂t², where c₂ = x''(α)/2; then
    /// z̄(t) = z(−t). Normalising by c₂ keeps everything inside the ring of α.
    pub fn t_chart(a: u32, alpha: &K, order: i64) -> Result<Self> {
        if a < 2 {
            return Err(Error::Invalid("no branch points for a = 1".into()));
        }
        let top = order as usize + 2;
        let c = x_taylor(a, alpha, top)?;
        let c2inv = c[2].try_inv()?;
        // S(u) = (x(α+u) − x(α)) / (c₂u²), a unit series
        let mut s: Vec<K> = c[2..].iter().map(|ck| ck.times(&c2inv)).collect();
        s[0] = alpha.one_like();
        let s = TruncSeries::new(0, s, alpha.zero_like());
        let t_of_u = s.sqrt_unit()?.shift(1);
        let u_of_t = t_of_u.revert()?.truncate(order);
        let delta_bar = u_of_t.reflect();
        let dx = TruncSeries::monomial(c[2].scale(&rat_int(2)), 1, order);
        Ok(LocalChart {
            alpha: alpha.clone(),
            dz: u_of_t.derivative(),
            dz_bar: delta_bar.derivative(),
            delta: u_of_t,
            delta_bar,
            dx,
        })
    }

    /// The residue at w = 0 of a series.
    pub fn residue(s: &TruncSeries<K>) -> Result<K> {
        s.coeff(-1)
    }

    pub fn order(&self) -> i64 {
        self.delta.hi()
    }
}

impl LocalChart<Rat> {
    /// For a = 2 only: the plain chart z = α + u, α = ±1, with the global
    /// involution z̄ = 1/z of x = z + 1/z.
    pub fn u_chart_a2(alpha: &Rat, order: i64) -> Result<Self> {
        if alpha * alpha != Rat::one() {
            return Err(Error::Invalid("a = 2 branch points are ±1".into()));
        }
        let z = TruncSeries::from_poly(&[alpha.clone(), Rat::one()], rat_int(0), order);
        let zbar = z.inv()?;
        let zbar_sq = zbar.mul(&zbar);
        let one = TruncSeries::monomial(Rat::one(), 0, order);
        let alpha_s = TruncSeries::monomial(alpha.clone(), 0, order);
        Ok(LocalChart {
            alpha: alpha.clone(),
            delta: TruncSeries::monomial(Rat::one(), 1, order),
            delta_bar: zbar.sub(&alpha_s),
            dz: one.clone(),
            dz_bar: zbar_sq.neg(),
            dx: one.sub(&zbar_sq),
        })
    }
}

/// p(α + δ(w)) as a series, for a polynomial p over the chart's ring.
pub(crate) fn eval_poly_on<K: Coeff>(p: &Poly<K>, alpha: &K, delta: &TruncSeries<K>) -> TruncSeries<K> {
    let hi = delta.hi();
    let zero = alpha.zero_like();
    let z = TruncSeries::monomial(alpha.clone(), 0, hi).add(delta);
    let mut acc = TruncSeries::zero(zero, hi);
    let mut pw = TruncSeries::monomial(alpha.one_like(), 0, hi);
    for c in p.coeffs() {
        acc = acc.add(&pw.mul_coeff(c));
        pw = pw.mul(&z);
    }
    acc
}
