//! Finite fields `F_q`, `q = p^n`, in a fixed polynomial basis.
//!
//! The modulus is the first monic primitive polynomial of degree `n` in
//! the enumeration order "constant term fastest": coefficient vectors
//! `(c_0, ..., c_{n-1})` read as base-`p` integers `Σ c_i p^i`, ascending.
//! The generator `w` is the class of the variable, so `w` has order `q − 1`.
//! For `n = 1` this picks `x − g` with `g` the least primitive root mod `p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::residue::linalg::solve_mod_p;
use crate::ring::{Field, Ring};

/// Largest field size the tables are built for.
pub const MAX_FIELD_SIZE: u32 = 1 << 12;

/// An element of `F_q`, stored as its base-`p` digit vector packed into an integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FqElem(pub u32);

struct Tables {
    p: u32,
    n: u32,
    q: u32,
    /// monic modulus, low degree first, length n + 1
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    trace_one: u32,
}

#[derive(Clone)]
pub struct Fq {
    t: Arc<Tables>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.t.q)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn digits(mut v: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies a digit vector by the variable modulo a monic modulus.
fn times_x(v: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = v.len();
    let top = v[n - 1];
    let mut out = vec![0u32; n];
    for i in (1..n).rev() {
        out[i] = v[i - 1];
    }
    out[0] = 0;
    for i in 0..n {
        out[i] = (out[i] + p * p - top * modulus[i] % p) % p;
    }
    out
}

fn find_primitive_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    let q = p.pow(n);
    for code in 0..q {
        let mut modulus = digits(code, p, n);
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        if n == 1 {
            // x − g: the root is g = −c_0
            let g = (p - modulus[0]) % p;
            let mut x = 1u32;
            let mut order = 0;
            loop {
                x = x * g % p;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == p - 1 {
                return Some(modulus);
            }
            continue;
        }
        let one = {
            let mut v = vec![0u32; n as usize];
            v[0] = 1;
            v
        };
        let mut cur = one.clone();
        let mut order = 0u32;
        loop {
            cur = times_x(&cur, &modulus, p);
            order += 1;
            if cur == one || order > q {
                break;
            }
            if cur.iter().all(|&d| d == 0) {
                order = 0;
                break;
            }
        }
        if order == q - 1 {
            return Some(modulus);
        }
    }
    None
}

impl Fq {
    pub fn new(p: u32, n: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidContext("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::InvalidContext(format!("field size {p}^{n} exceeds {MAX_FIELD_SIZE}")))?;
        let modulus = find_primitive_modulus(p, n)
            .ok_or_else(|| Error::InvalidContext(format!("no primitive modulus for {p}^{n}")))?;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = {
            let mut v = vec![0u32; n as usize];
            v[0] = 1;
            v
        };
        for k in 0..q - 1 {
            let code = pack(&cur, p);
            exp.push(code);
            log[code as usize] = k;
            if n == 1 {
                let g = (p - modulus[0]) % p;
                cur[0] = cur[0] * g % p;
            } else {
                cur = times_x(&cur, &modulus, p);
            }
        }
        let mut t = Tables {
            p,
            n,
            q,
            modulus,
            exp,
            log,
            trace: vec![0; q as usize],
            trace_one: 0,
        };
        let tmp = Fq { t: Arc::new(Tables { trace: vec![], ..clone_tables(&t) }) };
        for code in 0..q {
            let a = FqElem(code);
            let mut acc = tmp.zero();
            let mut x = a;
            for _ in 0..n {
                acc = tmp.add(&acc, &x);
                x = tmp.frobenius(&x);
            }
            debug_assert!(acc.0 < p, "trace must land in the prime field");
            t.trace[code as usize] = acc.0;
        }
        t.trace_one = (0..q).find(|&c| t.trace[c as usize] == 1).expect("trace is surjective");
        Ok(Fq { t: Arc::new(t) })
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.n
    }

    pub fn size(&self) -> u32 {
        self.t.q
    }

    /// The modulus, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// The polynomial-basis generator `w`.
    pub fn generator(&self) -> FqElem {
        if self.t.n == 1 {
            FqElem((self.t.p - self.t.modulus[0]) % self.t.p)
        } else {
            FqElem(self.t.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.t.q).map(FqElem)
    }

    pub fn digits(&self, a: FqElem) -> Vec<u32> {
        digits(a.0, self.t.p, self.t.n)
    }

    pub fn from_digits(&self, ds: &[u32]) -> FqElem {
        let p = self.t.p;
        let mut v: Vec<u32> = ds.iter().map(|d| d % p).collect();
        v.resize(self.t.n as usize, 0);
        FqElem(pack(&v, p))
    }

    /// Absolute trace to the prime field, as an integer in `0..p`.
    pub fn trace(&self, a: FqElem) -> u32 {
        self.t.trace[a.0 as usize]
    }

    /// Fixed element of trace one (least code), used for canonical representatives of `F_q / ℘(F_q)`.
    pub fn trace_one(&self) -> FqElem {
        FqElem(self.t.trace_one)
    }

    pub fn prime_field_elem(&self, c: u32) -> FqElem {
        FqElem(c % self.t.p)
    }

    /// `a^(1/p)`, the inverse Frobenius.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        if a.0 == 0 {
            return a;
        }
        let t = &self.t;
        let e = (t.log[a.0 as usize] as u64 * (t.q / t.p) as u64) % (t.q - 1) as u64;
        FqElem(t.exp[e as usize])
    }

    /// Solves `u^p − u = a` over `F_q`; the solution set is `u + F_p`.
    /// Returns the solution with zero free coordinates.
    pub fn artin_schreier(&self, a: FqElem) -> Option<FqElem> {
        if self.trace(a) != 0 {
            return None;
        }
        let p = self.t.p;
        let n = self.t.n as usize;
        let columns: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = 1;
                let b = self.from_digits(&e);
                let img = self.sub(&self.frobenius(&b), &b);
                self.digits(img)
            })
            .collect();
        let rhs = self.digits(a);
        solve_mod_p(p, &columns, &rhs).map(|x| self.from_digits(&x))
    }

    /// Splits `a = ℘(u) + r` with `r = Tr(a)·trace_one()`.
    pub fn artin_schreier_reduce(&self, a: FqElem) -> (FqElem, FqElem) {
        let tr = self.trace(a);
        let r = self.scale_int(&self.trace_one(), tr as i64);
        let u = self
            .artin_schreier(self.sub(&a, &r))
            .expect("trace-zero elements lie in the image of u^p - u");
        (u, r)
    }
}

fn clone_tables(t: &Tables) -> Tables {
    Tables {
        p: t.p,
        n: t.n,
        q: t.q,
        modulus: t.modulus.clone(),
        exp: t.exp.clone(),
        log: t.log.clone(),
        trace: t.trace.clone(),
        trace_one: t.trace_one,
    }
}

impl Ring for Fq {
    type Elem = FqElem;

    fn characteristic(&self) -> u32 {
        self.t.p
    }

    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.t.p as i64) as u32)
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.t.p;
        if self.t.n == 1 {
            return FqElem((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FqElem(out)
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.t.p;
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FqElem(out)
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let t = &self.t;
        let e = (t.log[a.0 as usize] + t.log[b.0 as usize]) % (t.q - 1);
        FqElem(t.exp[e as usize])
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    fn pow(&self, a: &FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem(1);
        }
        if a.0 == 0 {
            return FqElem(0);
        }
        let t = &self.t;
        let k = (t.log[a.0 as usize] as u64 * (e % (t.q - 1) as u64)) % (t.q - 1) as u64;
        FqElem(t.exp[k as usize])
    }

    fn format(&self, a: &FqElem) -> String {
        let ds = self.digits(*a);
        if self.t.n == 1 {
            return ds[0].to_string();
        }
        let mut parts = Vec::new();
        for (i, &d) in ds.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            parts.push(match (d, i) {
                (_, 0) => d.to_string(),
                (1, _) => mono,
                _ => format!("{d}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl Field for Fq {
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.t;
        let e = (t.q - 1 - t.log[a.0 as usize]) % (t.q - 1);
        Some(FqElem(t.exp[e as usize]))
    }
}
