use brauer_core::forms::{CertStatus, FormSpace};
use brauer_core::residue::{Fq, LocalField, RatFuncField};
use brauer_core::sample::{self, Sample};
use brauer_core::swan::{SplitStatus, SymbolType};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn invariance<K: Sample>(space: &FormSpace<K>, seed: u64, rounds: usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..rounds {
        let pole = rng.gen_range(0..=6);
        let w = sample::form(space, &mut rng, pole, 2);
        let rep = space.swan_conductor(&w).expect("reduction");
        assert_eq!(
            space.cert_verify(&w, &rep.reduced_rep, &rep.certificate),
            CertStatus::Valid,
            "{}",
            space.format(&w)
        );
        for _ in 0..3 {
            let up = rng.gen_range(0..=4);
            let u = sample::form(space, &mut rng, up, 2);
            let v = sample::series(space.field(), &mut rng, -8, 3, 0.4, 2);
            let w2 = space.add(&space.add(&w, &space.f_minus_i(&u)), &space.d(&v));
            let rep2 = space.swan_conductor(&w2).expect("reduction");
            assert_eq!(rep.sw, rep2.sw, "{} vs {}", space.format(&w), space.format(&w2));
        }
    }
}

fn normal_forms<K: Sample>(space: &FormSpace<K>, seed: u64, rounds: usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = space.residue().characteristic() as i64;
    for _ in 0..rounds {
        let pole = rng.gen_range(1..=7);
        let w = sample::wild_form(space, &mut rng, pole, 2);
        let sp = space.normal_form(&w).expect("normal form");
        let out = space.add(&sp.symbol_form, &sp.rest);
        assert_eq!(space.cert_verify(&w, &out, &sp.certificate), CertStatus::Valid);
        let wild = sp.wild.as_ref().unwrap();
        assert_eq!(wild.exponent, sp.sw);
        let expect = if sp.sw % p == 0 { SymbolType::II } else { SymbolType::III };
        assert_eq!(wild.kind, expect);
        let split = space.split_certificate(&sp).unwrap();
        assert_eq!(split.status, SplitStatus::Verified, "{:?}", split);
    }
}

#[test]
fn invariance_ratfunc() {
    for p in [2, 3, 5] {
        let space = FormSpace::new(RatFuncField::new(Fq::new(p, 1).unwrap()), 40);
        invariance(&space, p as u64, 20);
    }
}

#[test]
fn normal_forms_ratfunc() {
    for p in [2, 3, 5] {
        let space = FormSpace::new(RatFuncField::new(Fq::new(p, 1).unwrap()), 40);
        normal_forms(&space, 10 + p as u64, 20);
    }
}

#[test]
fn invariance_local() {
    let space = FormSpace::new(LocalField::new(Fq::new(2, 1).unwrap(), "s", 30), 30);
    invariance(&space, 7, 5);
}
