//! Witt vectors of length at most two.
//!
//! The length-two laws come from the ghost components `w_0 = a_0`,
//! `w_1 = a_0^p + p a_1`: each law is expanded over the integers, divided
//! by `p` and reduced mod `p`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Monomial exponents in the variables `(a_0, a_1, b_0, b_1)`.
pub type Exps = [u32; 4];

/// A polynomial over `F_p` in `(a_0, a_1, b_0, b_1)`, sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPoly {
    pub terms: Vec<(Exps, u32)>,
}

#[derive(Clone, Debug)]
pub struct StructurePolys {
    pub p: u32,
    /// second component of `a + b`
    pub sum: WittPoly,
    /// second component of `a · b`
    pub prod: WittPoly,
    /// second component of `−a`
    pub neg: WittPoly,
}

type ZPoly = BTreeMap<Exps, i128>;

fn zvar(i: usize) -> ZPoly {
    let mut e = [0; 4];
    e[i] = 1;
    ZPoly::from([(e, 1)])
}

fn zconst(c: i128) -> ZPoly {
    ZPoly::from([([0; 4], c)])
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn zscale(a: &ZPoly, k: i128) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|(e, c)| (*e, c * k)).collect();
    out.retain(|_, c| *c != 0);
    out
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn zpow(a: &ZPoly, n: u32) -> ZPoly {
    (0..n).fold(zconst(1), |acc, _| zmul(&acc, a))
}

/// Exact division by `p` followed by reduction mod `p`.
fn reduce_over_p(a: &ZPoly, p: u32) -> WittPoly {
    let p = p as i128;
    let terms = a
        .iter()
        .filter_map(|(e, c)| {
            assert!(c % p == 0, "ghost expansion not divisible by p");
            let r = (c / p).rem_euclid(p) as u32;
            (r != 0).then_some((*e, r))
        })
        .collect();
    WittPoly { terms }
}

impl StructurePolys {
    pub fn compute(p: u32) -> StructurePolys {
        let pi = p as i128;
        let (a0, a1, b0, b1) = (zvar(0), zvar(1), zvar(2), zvar(3));
        let ghost_a = zadd(&zpow(&a0, p), &zscale(&a1, pi));
        let ghost_b = zadd(&zpow(&b0, p), &zscale(&b1, pi));
        let sum = zadd(&zadd(&ghost_a, &ghost_b), &zscale(&zpow(&zadd(&a0, &b0), p), -1));
        let prod = zadd(
            &zmul(&ghost_a, &ghost_b),
            &zscale(&zpow(&zmul(&a0, &b0), p), -1),
        );
        let neg = zadd(
            &zscale(&ghost_a, -1),
            &zscale(&zpow(&zscale(&a0, -1), p), -1),
        );
        StructurePolys {
            p,
            sum: reduce_over_p(&sum, p),
            prod: reduce_over_p(&prod, p),
            neg: reduce_over_p(&neg, p),
        }
    }

    /// Cached tables for `p ∈ {2, 3, 5, 7}`.
    pub fn get(p: u32) -> Result<&'static StructurePolys> {
        static CACHE: [OnceLock<StructurePolys>; 4] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        let slot = match p {
            2 => 0,
            3 => 1,
            5 => 2,
            7 => 3,
            _ => return Err(Error::InvalidContext(format!("Witt vectors need p ≤ 7, got {p}"))),
        };
        Ok(CACHE[slot].get_or_init(|| StructurePolys::compute(p)))
    }
}

impl WittPoly {
    pub fn eval<R: Ring>(&self, ring: &R, vars: [&R::Elem; 4]) -> R::Elem {
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut m = ring.from_int(*c as i64);
            for (v, k) in vars.iter().zip(e) {
                if *k > 0 {
                    m = ring.mul(&m, &ring.pow(v, *k as u64));
                }
            }
            acc = ring.add(&acc, &m);
        }
        acc
    }

    pub fn format(&self) -> String {
        let names = ["a0", "a1", "b0", "b1"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut factors: Vec<String> = Vec::new();
                if *c != 1 {
                    factors.push(c.to_string());
                }
                for (n, k) in names.iter().zip(e) {
                    match k {
                        0 => {}
                        1 => factors.push(n.to_string()),
                        _ => factors.push(format!("{n}^{k}")),
                    }
                }
                if factors.is_empty() {
                    "1".into()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVec<E> {
    pub comps: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

/// `W_r(R)` for `r ∈ {1, 2}` over a coefficient ring of characteristic `p`.
#[derive(Clone, Debug)]
pub struct Witt<R: Ring> {
    ring: R,
    polys: &'static StructurePolys,
}

impl<R: Ring> Witt<R> {
    pub fn new(ring: R) -> Result<Self> {
        let polys = StructurePolys::get(ring.characteristic())?;
        Ok(Witt { ring, polys })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn polys(&self) -> &'static StructurePolys {
        self.polys
    }

    pub fn vec(&self, comps: Vec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if comps.is_empty() || comps.len() > 2 {
            return Err(Error::Unsupported(format!("Witt length {}", comps.len())));
        }
        Ok(WittVec { comps })
    }

    pub fn zero(&self, len: usize) -> WittVec<R::Elem> {
        WittVec {
            comps: vec![self.ring.zero(); len],
        }
    }

    /// Teichmüller representative `[a] = (a, 0, …)`.
    pub fn teichmuller(&self, a: R::Elem, len: usize) -> WittVec<R::Elem> {
        let mut comps = vec![a];
        comps.resize(len, self.ring.zero());
        WittVec { comps }
    }

    fn same_len(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<usize> {
        if u.len() != v.len() {
            return Err(Error::ContextMismatch(format!(
                "Witt lengths {} and {}",
                u.len(),
                v.len()
            )));
        }
        Ok(u.len())
    }

    pub fn add(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        let r = &self.ring;
        let mut comps = vec![r.add(&u.comps[0], &v.comps[0])];
        if self.same_len(u, v)? == 2 {
            comps.push(self.polys.sum.eval(r, [&u.comps[0], &u.comps[1], &v.comps[0], &v.comps[1]]));
        }
        Ok(WittVec { comps })
    }

    pub fn mul(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        let r = &self.ring;
        let mut comps = vec![r.mul(&u.comps[0], &v.comps[0])];
        if self.same_len(u, v)? == 2 {
            comps.push(self.polys.prod.eval(r, [&u.comps[0], &u.comps[1], &v.comps[0], &v.comps[1]]));
        }
        Ok(WittVec { comps })
    }

    pub fn neg(&self, u: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let r = &self.ring;
        let mut comps = vec![r.neg(&u.comps[0])];
        if u.len() == 2 {
            let z = r.zero();
            comps.push(self.polys.neg.eval(r, [&u.comps[0], &u.comps[1], &z, &z]));
        }
        WittVec { comps }
    }

    pub fn sub(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.add(u, &self.neg(v))
    }

    /// `F: W_2 → W_1`, `(a_0, a_1) ↦ a_0^p`.
    pub fn frobenius_f(&self, u: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if u.len() != 2 {
            return Err(Error::ContextMismatch("F expects a length-2 Witt vector".into()));
        }
        Ok(WittVec {
            comps: vec![self.ring.frobenius(&u.comps[0])],
        })
    }

    /// `V: W_1 → W_2`, `a ↦ (0, a)`.
    pub fn verschiebung(&self, u: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if u.len() != 1 {
            return Err(Error::ContextMismatch("V expects a length-1 Witt vector".into()));
        }
        Ok(WittVec {
            comps: vec![self.ring.zero(), u.comps[0].clone()],
        })
    }

    /// `R: W_2 → W_1`, `(a_0, a_1) ↦ a_0`.
    pub fn restriction(&self, u: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if u.len() != 2 {
            return Err(Error::ContextMismatch("R expects a length-2 Witt vector".into()));
        }
        Ok(WittVec {
            comps: vec![u.comps[0].clone()],
        })
    }

    /// Artin–Schreier–Witt map `𝒫(u) = (u_0^p, u_1^p) − u`.
    pub fn as_map(&self, u: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let fu = WittVec {
            comps: u.comps.iter().map(|c| self.ring.frobenius(c)).collect(),
        };
        self.sub(&fu, u).expect("same length")
    }

    pub fn format(&self, u: &WittVec<R::Elem>) -> String {
        match u.comps.as_slice() {
            [a] => self.ring.format(a),
            [a, b] => format!("w2({}, {})", self.ring.format(a), self.ring.format(b)),
            _ => unreachable!("Witt vectors have length 1 or 2"),
        }
    }
}
