use hypermaps::arith::{rat, Rat};
use hypermaps::genfun::{apply_quantum_operator, contributing_types, compositions, zbar, zbar_closed, zbar_from_free_energies, ZbarRoute};
use hypermaps::permcount::{CountTable, HypermapSpec, Provenance};
use hypermaps::verify::{BruteForce, CountSource};
use num_traits::{One, Zero};

#[test]
fn routes_agree_and_are_annihilated() {
    for a in 1..=6 {
        let closed = zbar_closed(a, 30);
        for r in ZbarRoute::ALL {
            let z = zbar(a, 30, r).unwrap();
            assert_eq!(z, closed, "a = {a}, route {r}");
            assert!(apply_quantum_operator(a, &z).is_zero(), "a = {a}, route {r}");
        }
    }
}

#[test]
fn value_at_hbar_minus_one() {
    for a in 1..=6u32 {
        let z = zbar_closed(a, 30).eval_hbar(&rat(-1, 1));
        assert_eq!(z[0], Rat::one());
        for (b, c) in z.iter().enumerate().skip(1) {
            // a = 1 keeps the single one-angle hypermap at x^{−1}
            let expect = if a == 1 && b == 1 { rat(-1, 1) } else { Rat::zero() };
            assert_eq!(*c, expect, "a = {a}, b = {b}");
        }
    }
}

#[test]
fn partition_function_from_enumerated_counts() {
    let order = 10usize;
    for a in 1..=3u32 {
        let bf = BruteForce::default();
        let mut table = CountTable::new();
        for (g, n) in contributing_types(a, order) {
            for total in n as u32..=order as u32 {
                for b in compositions(total, n) {
                    let spec = HypermapSpec::new(a, g, b);
                    let m = bf.m(&spec).unwrap();
                    table.insert(spec, m, Provenance::BruteForce).unwrap();
                }
            }
        }
        assert_eq!(zbar_from_free_energies(a, order, &table).unwrap(), zbar_closed(a, order), "a = {a}");
    }
}
