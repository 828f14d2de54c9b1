use brauer_core::laurent::{Comparison, LaurentRing, Series};
use brauer_core::residue::{Fq, LocalField, RatFuncField};
use brauer_core::ring::Ring;
use brauer_core::sample::{series, Sample};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn eq<K: Sample>(f: &LaurentRing<K>, a: &Series<K::Elem>, b: &Series<K::Elem>) -> bool {
    f.compare(a, b) == Comparison::Equal
}

fn check<K: Sample>(f: &LaurentRing<K>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = series(f, &mut rng, -4, 6, 0.6, 2);
    let b = series(f, &mut rng, -3, 5, 0.6, 2);
    let c = series(f, &mut rng, -2, 4, 0.6, 2);

    let table = f.p_basis_decompose(&a).unwrap();
    prop_assert!(eq(f, &f.p_basis_reconstruct(&table), &a));

    let l = f.mul(&a, &f.add(&b, &c));
    let r = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
    prop_assert!(eq(f, &l, &r));
    let l = f.mul(&f.mul(&a, &b), &c);
    let r = f.mul(&a, &f.mul(&b, &c));
    prop_assert!(eq(f, &l, &r));

    if !f.is_zero(&a) {
        let prod = f.mul(&f.try_inv(&a).unwrap(), &a);
        let one = f.one();
        prop_assert!(prod.horizon().bound() >= 1);
        prop_assert_ne!(f.compare(&prod, &one), Comparison::Distinct);
    }

    let s = f.add(&a, &b);
    if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
        match s.valuation() {
            Some(vs) => prop_assert!(vs >= va.min(vb)),
            None => prop_assert_eq!(va, vb),
        }
        if va != vb {
            prop_assert_eq!(s.valuation(), Some(va.min(vb)));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn series_over_rational_functions(p in prop_oneof![Just(2u32), Just(3), Just(5)], seed in any::<u64>()) {
        check(&LaurentRing::new(RatFuncField::new(Fq::new(p, 1).unwrap()), "t", 20), seed)?;
    }

    #[test]
    fn series_over_finite_fields(q in prop_oneof![Just((2u32, 2u32)), Just((3, 1)), Just((3, 2))], seed in any::<u64>()) {
        check(&LaurentRing::new(Fq::new(q.0, q.1).unwrap(), "t", 20), seed)?;
    }

    #[test]
    fn series_over_local_fields(p in prop_oneof![Just(2u32), Just(3)], seed in any::<u64>()) {
        check(&LaurentRing::new(LocalField::new(Fq::new(p, 1).unwrap(), "s", 16), "t", 16), seed)?;
    }
}
