use std::sync::Arc;

use hypermaps::arith::{
    falling_factorial_neg_inv_hbar, rat, Coeff, EtaleElem, HbarPoly, Modulus, Poly, Rat, TruncSeries,
};
use hypermaps::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn hbar_poly() -> impl Strategy<Value = HbarPoly> {
    prop::collection::vec((-3i32..=3, small_rat()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(HbarPoly::zero(), |acc, (e, c)| acc.plus(&HbarPoly::monomial(c, e)))
    })
}

fn poly() -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(small_rat(), 0..6).prop_map(Poly::new)
}

const HI: i64 = 9;

fn series() -> impl Strategy<Value = TruncSeries<Rat>> {
    prop::collection::vec(small_rat(), (HI + 1) as usize).prop_map(|c| TruncSeries::from_rats(0, &c))
}

fn same_series(x: &TruncSeries<Rat>, y: &TruncSeries<Rat>) -> bool {
    (0..=HI).all(|k| x.coeff(k).unwrap() == y.coeff(k).unwrap())
}

fn ring_axioms<C: Coeff>(x: &C, y: &C, z: &C) {
    assert_eq!(x.times(y).times(z), x.times(&y.times(z)));
    assert_eq!(x.times(&y.plus(z)), x.times(y).plus(&x.times(z)));
    assert_eq!(x.plus(y).plus(z), x.plus(&y.plus(z)));
    assert_eq!(x.times(y), y.times(x));
    assert_eq!(x.minus(x), x.zero_like());
    assert_eq!(x.times(&x.one_like()), *x);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rationals_form_a_ring(x in small_rat(), y in small_rat(), z in small_rat()) {
        ring_axioms(&x, &y, &z);
    }

    #[test]
    fn laurent_polynomials_in_hbar_form_a_ring(x in hbar_poly(), y in hbar_poly(), z in hbar_poly()) {
        ring_axioms(&x, &y, &z);
    }

    #[test]
    fn polynomials_form_a_ring(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn truncated_series_form_a_ring(x in series(), y in series(), z in series()) {
        prop_assert!(same_series(&x.mul(&y).mul(&z), &x.mul(&y.mul(&z))));
        prop_assert!(same_series(&x.mul(&y.add(&z)), &x.mul(&y).add(&x.mul(&z))));
        prop_assert!(same_series(&x.mul(&y), &y.mul(&x)));
    }
}

fn etale(m: &Arc<Modulus>, c: &[Rat]) -> EtaleElem {
    EtaleElem::new(m, &Poly::new(c.to_vec()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn trace_is_linear(a in 2u32..=5, x in prop::collection::vec(small_rat(), 5),
                       y in prop::collection::vec(small_rat(), 5), p in small_rat(), q in small_rat()) {
        let m = Modulus::branch_locus(a).unwrap();
        let (x, y) = (etale(&m, &x), etale(&m, &y));
        let lhs = x.scale(&p).plus(&y.scale(&q)).trace();
        prop_assert_eq!(lhs, p * x.trace() + q * y.trace());
        prop_assert_eq!(x.one_like().trace(), Rat::from_integer((a as i64).into()));
    }

    #[test]
    fn inverse_or_split(a in 2u32..=5, u in prop::collection::vec(small_rat(), 5)) {
        let m = Modulus::branch_locus(a).unwrap();
        let u = etale(&m, &u);
        match u.quotient_invert() {
            Ok(Ok(inv)) => prop_assert_eq!(inv.times(&u), u.one_like()),
            Ok(Err(split)) => prop_assert_eq!(split.first.mul(&split.second).monic(), m.poly().monic()),
            Err(e) => prop_assert!(matches!(e, Error::ZeroDivisor) && u.vanishes()),
        }
    }

    /// Over a modulus with rational roots r_i, summing traces over the pieces produced by
    /// splitting equals Σ v(r_i)/u(r_i) over the roots where u does not vanish.
    #[test]
    fn splitting_preserves_traces(roots in prop::collection::btree_set(-6i64..=6, 2..=4),
                                  u in prop::collection::vec(-3i64..=3, 1..=3),
                                  v in prop::collection::vec(-3i64..=3, 1..=4)) {
        let m = roots.iter().fold(Poly::constant(Rat::one()), |acc, r| acc.mul(&Poly::from_ints(&[-r, 1])));
        let (up, vp) = (Poly::from_ints(&u), Poly::from_ints(&v));
        let mut expected = Rat::zero();
        for r in &roots {
            let r = Rat::from_integer((*r).into());
            let ur = up.eval(&r).unwrap_or_default();
            if !ur.is_zero() {
                expected += vp.eval(&r).unwrap_or_default() / ur;
            }
        }
        let mut work = vec![Modulus::new(m).unwrap()];
        let mut total = Rat::zero();
        while let Some(md) = work.pop() {
            let ue = EtaleElem::new(&md, &up);
            match ue.quotient_invert() {
                Ok(Ok(inv)) => total += EtaleElem::new(&md, &vp).times(&inv).trace(),
                Ok(Err(split)) => {
                    work.push(Modulus::new(split.first).unwrap());
                    work.push(Modulus::new(split.second).unwrap());
                }
                Err(_) => {} // u ≡ 0 on this piece: no contribution
            }
        }
        prop_assert_eq!(total, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exp_and_log_are_inverse(n in 1usize..=30, c in prop::collection::vec(small_rat(), 30)) {
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(c.into_iter().take(n));
        let f = TruncSeries::from_rats(0, &coeffs);
        let back = f.exp().unwrap().log().unwrap();
        for k in 0..=n as i64 {
            prop_assert_eq!(back.coeff(k).unwrap(), f.coeff(k).unwrap());
        }
        let one_plus = f.add(&TruncSeries::monomial(Rat::one(), 0, n as i64));
        let again = one_plus.log().unwrap().exp().unwrap();
        for k in 0..=n as i64 {
            prop_assert_eq!(again.coeff(k).unwrap(), one_plus.coeff(k).unwrap());
        }
    }
}

#[test]
fn falling_factorial_roots() {
    // (t)_k as a polynomial in t = −1/ħ vanishes at t = 1..k−1; t = 0 is ħ = ∞
    for k in 1..=12u32 {
        let f = falling_factorial_neg_inv_hbar(k);
        for t in 1..k as i64 {
            assert!(f.eval(&rat(-1, t)).is_zero(), "k = {k}, t = {t}");
        }
        assert!(!f.eval(&rat(-1, k as i64)).is_zero());
        assert_eq!(f.min_exponent(), Some(-(k as i32)));
    }
}
