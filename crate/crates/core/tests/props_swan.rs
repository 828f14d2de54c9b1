use brauer_core::forms::{CertStatus, FormSpace};
use brauer_core::residue::{Fq, LocalField, RatFuncField};
use brauer_core::ring::Ring;
use brauer_core::sample::{form, series, wild_form, Sample};
use brauer_core::swan::SymbolType;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sw<K: Sample>(s: &FormSpace<K>, w: &brauer_core::forms::Form1<K::Elem>) -> i64 {
    let rep = s.swan_conductor(w).map_err(brauer_core::Error::from).unwrap();
    assert_eq!(s.cert_verify(w, &rep.reduced_rep, &rep.certificate), CertStatus::Valid);
    rep.sw
}

fn subadditive<K: Sample>(s: &FormSpace<K>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (pa, pb) = (rng.gen_range(0..7), rng.gen_range(0..7));
    let a = form(s, &mut rng, pa, 2);
    let b = form(s, &mut rng, pb, 2);
    let (x, y) = (sw(s, &a), sw(s, &b));
    let z = sw(s, &s.add(&a, &b));
    prop_assert!(z <= x.max(y));
    if x != y {
        prop_assert_eq!(z, x.max(y));
    }
    Ok(())
}

fn graded<K: Sample>(s: &FormSpace<K>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = s.residue().characteristic() as i64;
    let j = loop {
        let j = rng.gen_range(1..12);
        if j % p != 0 {
            break j;
        }
    };
    let c = s.residue().sample_nonzero(&mut rng, 2);
    let w = s.dtheta(&s.field().monomial(c, -j));
    prop_assert_eq!(sw(s, &w), j);
    Ok(())
}

fn dlog_bounds<K: Sample>(s: &FormSpace<K>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let f = s.field();
    let i = rng.gen_range(0..8);
    let j = rng.gen_range(1..5);
    let a = loop {
        let a = series(f, &mut rng, -i, 3, 0.6, 2);
        if !f.is_zero(&a) {
            break a;
        }
    };
    let b = series(f, &mut rng, j, j + 4, 0.6, 2);
    let one_b = f.add(&f.one(), &b);
    let w1 = s.a_dlog_b(&a, &one_b).unwrap();
    prop_assert!(sw(s, &w1) <= (i - j).max(0));
    let w2 = s.add(&w1, &s.a_dlog_b(&f.mul(&a, &b), &a).unwrap());
    prop_assert!(sw(s, &w2) <= (i - 2 * j).max(0));
    Ok(())
}

fn shapes<K: Sample>(s: &FormSpace<K>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = s.residue().characteristic() as i64;
    let pole = rng.gen_range(1..8);
    let w = wild_form(s, &mut rng, pole, 2);
    let n = sw(s, &w);
    let sp = s.normal_form(&w).unwrap();
    prop_assert_eq!(sp.sw, n);
    let wild = sp.wild.as_ref().unwrap();
    prop_assert_eq!(wild.exponent, n);
    prop_assert_eq!(wild.kind, if n % p == 0 { SymbolType::II } else { SymbolType::III });
    let out = s.add(&sp.symbol_form, &sp.rest);
    prop_assert_eq!(s.cert_verify(&w, &out, &sp.certificate), CertStatus::Valid);
    Ok(())
}

fn ratfunc(p: u32) -> FormSpace<RatFuncField> {
    FormSpace::new(RatFuncField::new(Fq::new(p, 1).unwrap()), 40)
}

fn local(p: u32) -> FormSpace<LocalField> {
    FormSpace::new(LocalField::new(Fq::new(p, 1).unwrap(), "s", 24), 40)
}

fn primes() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subadditivity_ratfunc(p in primes(), seed in any::<u64>()) { subadditive(&ratfunc(p), seed)?; }

    #[test]
    fn subadditivity_local(p in primes(), seed in any::<u64>()) { subadditive(&local(p), seed)?; }

    #[test]
    fn graded_injectivity_ratfunc(p in primes(), seed in any::<u64>()) { graded(&ratfunc(p), seed)?; }

    #[test]
    fn graded_injectivity_local(p in primes(), seed in any::<u64>()) { graded(&local(p), seed)?; }

    #[test]
    fn dlog_bounds_ratfunc(p in primes(), seed in any::<u64>()) { dlog_bounds(&ratfunc(p), seed)?; }

    #[test]
    fn dlog_bounds_local(p in primes(), seed in any::<u64>()) { dlog_bounds(&local(p), seed)?; }

    #[test]
    fn normal_form_shapes_ratfunc(p in primes(), seed in any::<u64>()) { shapes(&ratfunc(p), seed)?; }
}
