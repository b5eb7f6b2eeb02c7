use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use hypermaps::arith::{factorial, Rat};
use hypermaps::permcount::{
    brute_force_m, closed_m01, connected_brute, connected_from_disconnected, disconnected_table, fbullet_brute,
    fbullet_closed, nb_recursion, sigma0_tallies, EnumConfig, HypermapSpec,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_are_nonnegative_with_small_denominators(
        a in 1u32..=4,
        g in 0u32..=2,
        b in prop::collection::vec(1u32..=10, 1..=4),
    ) {
        prop_assume!(b.iter().sum::<u32>() <= 10);
        let m = brute_force_m(&HypermapSpec::new(a, g, b.clone()), &EnumConfig::default()).unwrap();
        prop_assert!(!m.is_negative());
        let prod: BigInt = b.iter().map(|&x| BigInt::from(x)).product();
        prop_assert!((prod % m.denom()).is_zero(), "denominator {} of {m}", m.denom());
    }
}

fn pairs(max_ae: u32) -> Vec<(u32, u32)> {
    (1..=max_ae).flat_map(|a| (1..=max_ae / a).map(move |e| (a, e))).collect()
}

/// σ₀ tallies against a fixed σ₁, weighted by #σ₁/(ae)! = 1/(a^e e!).
fn weighted_tallies(a: u32, e: u32) -> (Vec<Rat>, Vec<Rat>) {
    let (all, conn) = sigma0_tallies(a, e, 12).unwrap();
    let w = Rat::new(1.into(), BigInt::from(a).pow(e) * factorial(e as u64));
    let scale = |t: Vec<u64>| t.into_iter().map(|c| &w * Rat::from_integer(c.into())).collect();
    (scale(all), scale(conn))
}

#[test]
fn disconnected_counts_by_enumeration() {
    for (a, e) in pairs(10) {
        let (all, _) = weighted_tallies(a, e);
        for v in 0..=a * e {
            let counted = all.get(v as usize).cloned().unwrap_or_default();
            assert_eq!(counted, fbullet_closed(a, v, e), "a = {a}, v = {v}, e = {e}");
        }
    }
    assert_eq!(fbullet_brute(2, 2, 2).unwrap(), fbullet_closed(2, 2, 2));
}

#[test]
fn disconnected_recursion_matches_closed_form() {
    for a in 1..=18u32 {
        let max_e = 18 / a;
        let t = disconnected_table(a, max_e);
        for e in 1..=max_e {
            for v in 0..=a * e {
                let rec = t[e as usize].get(v as usize).cloned().unwrap_or_default();
                let closed = fbullet_closed(a, v, e) * Rat::from_integer(factorial((a * e) as u64));
                assert_eq!(Rat::from_integer(rec), closed, "a = {a}, v = {v}, e = {e}");
            }
        }
    }
}

#[test]
fn connected_counts_by_enumeration() {
    for a in 1..=10u32 {
        let max_e = 10 / a;
        let f = connected_from_disconnected(a, max_e).unwrap();
        for e in 1..=max_e {
            let (_, conn) = weighted_tallies(a, e);
            for v in 0..=a * e {
                let counted = conn.get(v as usize).cloned().unwrap_or_default();
                assert_eq!(f[e as usize][v as usize], counted, "a = {a}, v = {v}, e = {e}");
            }
        }
    }
    assert_eq!(connected_brute(3, 2, 2).unwrap(), connected_from_disconnected(3, 2).unwrap()[2][2]);
}

#[test]
fn parity_balance() {
    // the swap of two angles pairs hypermaps with v and v ± 1 vertices; with a single
    // angle (a = e = 1) there is nothing to swap and the lone hypermap is unmatched
    for a in 1..=6u32 {
        for e in 1..=10u32 {
            let diff: Rat = (0..=a * e)
                .map(|v| if v % 2 == 0 { fbullet_closed(a, v, e) } else { -fbullet_closed(a, v, e) })
                .sum();
            if a * e == 1 {
                assert_eq!(diff, Rat::from_integer((-1).into()));
            } else {
                assert!(diff.is_zero(), "a = {a}, e = {e}: {diff}");
            }
        }
    }
}

#[test]
fn one_face_counts_three_ways() {
    for a in 1..=6u32 {
        let nb = nb_recursion(a, 30);
        for b in 1..=30u32 {
            let closed = closed_m01(a, b);
            assert_eq!(Rat::new(nb[b as usize].clone(), b.into()), closed, "a = {a}, b = {b}");
            if a <= 4 && b <= 12 {
                let brute = brute_force_m(&HypermapSpec::new(a, 0, vec![b]), &EnumConfig::default()).unwrap();
                assert_eq!(brute, closed, "a = {a}, b = {b}");
            }
        }
    }
}

#[test]
fn a1_stable_counts_vanish() {
    let cfg = EnumConfig::default();
    for n in 1..=10usize {
        for g in 0..=3u32 {
            if 2 * g as i64 - 2 + n as i64 <= 0 {
                continue;
            }
            for total in n as u32..=10 {
                let mut b = vec![1; n - 1];
                b.push(total + 1 - n as u32);
                let m = brute_force_m(&HypermapSpec::new(1, g, b.clone()), &cfg).unwrap();
                assert!(m.is_zero(), "g = {g}, b = {b:?}");
            }
        }
    }
}
