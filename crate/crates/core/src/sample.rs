//! Random elements for property tests and benchmarks.

use rand::Rng;

use crate::forms::{Form1, FormSpace};
use crate::laurent::{Horizon, LaurentRing, Series};
use crate::residue::{Fq, FqElem, LocalField, RatFunc, RatFuncField, ResidueField};
use crate::ring::Ring;
use crate::surface::{Bivariate, BivariateClass, RestrictedSymbol, Surface};

/// Residue fields that can produce random elements of bounded size.
pub trait Sample: ResidueField {
    /// A random element; `size` bounds degrees and pole orders.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, size: u32) -> Self::Elem;

    fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, size: u32) -> Self::Elem {
        loop {
            let a = self.sample(rng, size);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }
}

pub fn fq_elem<R: Rng + ?Sized>(fq: &Fq, rng: &mut R) -> FqElem {
    FqElem(rng.gen_range(0..fq.size()))
}

fn poly<R: Rng + ?Sized>(fq: &Fq, rng: &mut R, deg: u32) -> Vec<FqElem> {
    (0..=deg).map(|_| fq_elem(fq, rng)).collect()
}

impl Sample for Fq {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _size: u32) -> FqElem {
        fq_elem(self, rng)
    }
}

impl Sample for RatFuncField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, size: u32) -> RatFunc {
        let fq = self.base();
        let deg = rng.gen_range(0..=size.max(1));
        let num = poly(fq, rng, deg);
        if rng.gen_bool(0.6) {
            return self.from_poly(num);
        }
        let deg = rng.gen_range(1..=size.clamp(1, 2));
        let mut den = poly(fq, rng, deg);
        let top = den.len() - 1;
        den[top] = fq.one();
        self.fraction(num, den)
    }
}

impl Sample for LocalField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, size: u32) -> Series<FqElem> {
        let fq = self.fq();
        let lo = -(rng.gen_range(0..=size as i64));
        let hi = rng.gen_range(0..=size as i64 + 2);
        let terms: Vec<(i64, FqElem)> = (lo..=hi).map(|e| (e, fq_elem(fq, rng))).collect();
        self.series().from_terms(terms, Horizon::Exact)
    }
}

/// An exact Laurent polynomial with exponents in `lo..=hi`.
pub fn series<K: Sample, R: Rng + ?Sized>(
    f: &LaurentRing<K>,
    rng: &mut R,
    lo: i64,
    hi: i64,
    density: f64,
    size: u32,
) -> Series<K::Elem> {
    let k = f.base();
    let mut terms = Vec::new();
    for e in lo..=hi {
        if rng.gen_bool(density) {
            terms.push((e, k.sample(rng, size)));
        }
    }
    f.from_terms(terms, Horizon::Exact)
}

/// A random exact form with pole order at most `pole`.
pub fn form<K: Sample, R: Rng + ?Sized>(
    space: &FormSpace<K>,
    rng: &mut R,
    pole: i64,
    size: u32,
) -> Form1<K::Elem> {
    let f = space.field();
    let a = series(f, rng, -pole, 2, 0.5, size);
    let b = series(f, rng, -pole - 1, 1, 0.5, size);
    space.form(a, b)
}

/// A random form with pole order exactly `pole` whose top layer is not a coboundary.
pub fn wild_form<K: Sample, R: Rng + ?Sized>(
    space: &FormSpace<K>,
    rng: &mut R,
    pole: i64,
    size: u32,
) -> Form1<K::Elem> {
    loop {
        let w = form(space, rng, pole, size);
        if let Ok(rep) = space.swan_conductor(&w) {
            if rep.sw > 0 {
                return w;
            }
        }
    }
}

fn pi_divisible<R: Rng + ?Sized>(s: &Surface, rng: &mut R, max_pole: i64) -> Bivariate {
    let mut f = s.zero();
    for j in 0..=max_pole {
        for i in 1..=3 {
            if rng.gen_bool(0.4) {
                f = s.add(&f, &s.monomial(fq_elem(s.fq(), rng), i, -j));
            }
        }
    }
    f
}

/// A class unramified along `(π)` whose pole order along `(t)` is at most `max_pole`.
pub fn restricted_class<R: Rng + ?Sized>(s: &Surface, rng: &mut R, max_pole: i64) -> BivariateClass {
    let fq = s.fq();
    let one = fq.one();
    let t = s.monomial(one, 0, 1);
    let pi = s.monomial(one, 1, 0);
    let mut symbols = vec![RestrictedSymbol {
        f: pi_divisible(s, rng, max_pole),
        g: if rng.gen_bool(0.5) {
            t.clone()
        } else {
            s.mul(&t, &s.add(&s.constant(one), &pi))
        },
    }];
    if rng.gen_bool(0.5) {
        symbols.push(RestrictedSymbol {
            f: pi_divisible(s, rng, max_pole),
            g: pi,
        });
    }
    if rng.gen_bool(0.3) {
        symbols.push(RestrictedSymbol {
            f: s.constant(fq_elem(fq, rng)),
            g: t,
        });
    }
    BivariateClass { symbols }
}
