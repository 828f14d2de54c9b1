mod common;

use brauer_core::residue::{Fq, FqElem};
use brauer_core::ring::Ring;
use brauer_core::witt::{Witt, WittVec};
use common::oracle::{ghost_index, ghost_tables};
use proptest::prelude::*;

fn v(a: u64, b: u64) -> WittVec<FqElem> {
    WittVec {
        comps: vec![FqElem(a as u32), FqElem(b as u32)],
    }
}

#[test]
fn oracle_is_a_bijection() {
    for p in [2u64, 3, 5] {
        let mut seen: Vec<u64> = (0..p)
            .flat_map(|a| (0..p).map(move |b| ghost_index(p, a, b)))
            .collect();
        seen.sort();
        assert_eq!(seen, (0..p * p).collect::<Vec<_>>());
    }
}

#[test]
fn exhaustive_agreement_with_oracle() {
    for p in [2u64, 3, 5] {
        let w = Witt::new(Fq::new(p as u32, 1).unwrap()).unwrap();
        let (sum, prod) = ghost_tables(p);
        for u in 0..p * p {
            for x in 0..p * p {
                let (a, b) = (v(u % p, u / p), v(x % p, x / p));
                let (s0, s1) = sum[u as usize][x as usize];
                let (m0, m1) = prod[u as usize][x as usize];
                assert_eq!(w.add(&a, &b).unwrap(), v(s0, s1), "p={p} {u}+{x}");
                assert_eq!(w.mul(&a, &b).unwrap(), v(m0, m1), "p={p} {u}*{x}");
                assert_eq!(w.add(&a, &w.neg(&a)).unwrap(), v(0, 0));
            }
        }
    }
}

fn fq_strategy() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((5, 1)), Just((2, 2)), Just((3, 2))]
}

proptest! {
    #[test]
    fn f_after_v_vanishes((p, n) in fq_strategy(), a in any::<u32>()) {
        let f = Fq::new(p, n).unwrap();
        let w = Witt::new(f.clone()).unwrap();
        let x = WittVec { comps: vec![FqElem(a % f.size())] };
        let fv = w.frobenius_f(&w.verschiebung(&x).unwrap()).unwrap();
        prop_assert!(f.is_zero(&fv.comps[0]));
    }

    #[test]
    fn as_map_is_additive((p, n) in fq_strategy(), c in prop::array::uniform4(any::<u32>())) {
        let f = Fq::new(p, n).unwrap();
        let w = Witt::new(f.clone()).unwrap();
        let q = f.size();
        let u = WittVec { comps: vec![FqElem(c[0] % q), FqElem(c[1] % q)] };
        let x = WittVec { comps: vec![FqElem(c[2] % q), FqElem(c[3] % q)] };
        let lhs = w.as_map(&w.add(&u, &x).unwrap());
        let rhs = w.add(&w.as_map(&u), &w.as_map(&x)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms((p, n) in fq_strategy(), c in prop::array::uniform6(any::<u32>())) {
        let f = Fq::new(p, n).unwrap();
        let w = Witt::new(f.clone()).unwrap();
        let q = f.size();
        let e = |i: usize| FqElem(c[i] % q);
        let a = WittVec { comps: vec![e(0), e(1)] };
        let b = WittVec { comps: vec![e(2), e(3)] };
        let d = WittVec { comps: vec![e(4), e(5)] };
        let l = w.mul(&a, &w.add(&b, &d).unwrap()).unwrap();
        let r = w.add(&w.mul(&a, &b).unwrap(), &w.mul(&a, &d).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let l = w.add(&w.add(&a, &b).unwrap(), &d).unwrap();
        let r = w.add(&a, &w.add(&b, &d).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let l = w.mul(&w.mul(&a, &b).unwrap(), &d).unwrap();
        let r = w.mul(&a, &w.mul(&b, &d).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
