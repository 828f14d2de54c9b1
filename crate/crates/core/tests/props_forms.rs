use brauer_core::forms::{CertStatus, Certificate, FormSpace, Move};
use brauer_core::laurent::Comparison;
use brauer_core::residue::{Fq, LocalField, RatFuncField};
use brauer_core::ring::Ring;
use brauer_core::sample::{form, series, Sample};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn check<K: Sample>(s: &FormSpace<K>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let f = s.field();
    let k = s.residue();
    let g = series(f, &mut rng, -5, 6, 0.6, 2);

    // d(dg) has the single component ∂_θ(∂_t g) − ∂_t(∂_θ g)
    let w = s.d(&g);
    let dd = f.sub(&f.derivative_theta(&w.dt), &f.derivative_t(&w.dtheta));
    prop_assert!(f.is_zero(&dd));

    let unit = |rng: &mut StdRng| loop {
        let u = series(f, rng, 0, 3, 0.7, 1);
        if !k.is_zero(&f.coeff(&u, 0)) {
            break f.mul(&u, &f.var_pow(rng.gen_range(-2..3)));
        }
    };
    let u = unit(&mut rng);
    let v = unit(&mut rng);
    let lhs = s.dlog(&f.mul(&u, &v)).unwrap();
    let rhs = s.add(&s.dlog(&u).unwrap(), &s.dlog(&v).unwrap());
    let diff = s.sub(&lhs, &rhs);
    prop_assert_ne!(f.compare(&diff.dtheta, &f.zero()), Comparison::Distinct);
    prop_assert_ne!(f.compare(&diff.dt, &f.zero()), Comparison::Distinct);

    let om = form(s, &mut rng, 6, 2);
    let cert = Certificate { moves: vec![Move::Frob(om.clone())] };
    prop_assert_eq!(s.cert_verify(&s.f_minus_i(&om), &s.zero(), &cert), CertStatus::Valid);

    let a = series(f, &mut rng, -3, 3, 0.6, 2);
    prop_assert_eq!(s.frobenius(&s.dlog_t(&a)), s.dlog_t(&f.frobenius(&a)));
    if let Some(th) = k.theta() {
        // F(a dlog θ) = a^p dlog θ
        let inv = k.inv(&th).unwrap();
        let lhs = s.frobenius(&s.dtheta(&f.scale(&a, &inv)));
        let rhs = s.dtheta(&f.scale(&f.frobenius(&a), &inv));
        prop_assert!(s.is_zero(&s.sub(&lhs, &rhs)));
    }
    Ok(())
}

use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn forms_over_rational_functions(p in prop_oneof![Just(2u32), Just(3), Just(5)], seed in any::<u64>()) {
        check(&FormSpace::new(RatFuncField::new(Fq::new(p, 1).unwrap()), 12), seed)?;
    }


    #[test]
    fn forms_over_finite_fields(q in prop_oneof![Just((2u32, 2u32)), Just((3, 1))], seed in any::<u64>()) {
        check(&FormSpace::new(Fq::new(q.0, q.1).unwrap(), 30), seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn forms_over_local_fields(p in prop_oneof![Just(2u32), Just(3)], seed in any::<u64>()) {
        check(&FormSpace::new(LocalField::new(Fq::new(p, 1).unwrap(), "s", 12), 16), seed)?;
    }
}
