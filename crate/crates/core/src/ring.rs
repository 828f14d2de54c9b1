//! Context-passing ring traits.
//!
//! Elements are plain values; every operation goes through the ring
//! object that owns the tables (modulus, precision, ...).

use std::fmt::Debug;

pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    /// The characteristic `p` of the ring (all rings here are `F_p`-algebras).
    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Zero test. For truncated objects this means zero to the known precision.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Zero with nothing left unknown; differs from `is_zero` only for truncated objects.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a ↦ a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }

    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// Inverse of `n` modulo the prime `p` (n not divisible by p).
pub fn inv_mod_p(n: i64, p: u32) -> u32 {
    let p = p as i64;
    let a = n.rem_euclid(p);
    assert!(a != 0, "{n} is not invertible mod {p}");
    let mut r = 1i64;
    let mut base = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r as u32
}
