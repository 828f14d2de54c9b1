//! Dense univariate polynomials over `F_q`, coefficients low degree first.

use crate::residue::fq::{Fq, FqElem};
use crate::ring::{Field, Ring};

pub type Poly = Vec<FqElem>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.0 == 0) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[FqElem]) -> Option<usize> {
    a.iter().rposition(|c| c.0 != 0)
}

pub fn constant(c: FqElem) -> Poly {
    trim(vec![c])
}

pub fn monomial(c: FqElem, k: usize) -> Poly {
    if c.0 == 0 {
        return vec![];
    }
    let mut v = vec![FqElem(0); k + 1];
    v[k] = c;
    v
}

pub fn add(f: &Fq, a: &[FqElem], b: &[FqElem]) -> Poly {
    let n = a.len().max(b.len());
    let z = FqElem(0);
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(out)
}

pub fn neg(f: &Fq, a: &[FqElem]) -> Poly {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub(f: &Fq, a: &[FqElem], b: &[FqElem]) -> Poly {
    add(f, a, &neg(f, b))
}

pub fn scale(f: &Fq, a: &[FqElem], c: FqElem) -> Poly {
    trim(a.iter().map(|x| f.mul(x, &c)).collect())
}

pub fn mul(f: &Fq, a: &[FqElem], b: &[FqElem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![FqElem(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.0 == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(out)
}

pub fn pow(f: &Fq, a: &[FqElem], e: u64) -> Poly {
    let mut acc = vec![f.one()];
    for _ in 0..e {
        acc = mul(f, &acc, a);
    }
    acc
}

/// Coefficientwise Frobenius composed with `x ↦ x^p`: the map `a ↦ a^p`.
pub fn frobenius(f: &Fq, a: &[FqElem]) -> Poly {
    let p = f.p() as usize;
    let mut out = vec![FqElem(0); if a.is_empty() { 0 } else { (a.len() - 1) * p + 1 }];
    for (i, c) in a.iter().enumerate() {
        out[i * p] = f.frobenius(c);
    }
    trim(out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(f: &Fq, a: &[FqElem], b: &[FqElem]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r: Poly = trim(a.to_vec());
    let mut q = vec![FqElem(0); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        q[shift] = c;
        for (j, y) in b.iter().enumerate().take(db + 1) {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn make_monic(f: &Fq, a: &[FqElem]) -> (Poly, FqElem) {
    match degree(a) {
        None => (vec![], FqElem(0)),
        Some(d) => {
            let lc = a[d];
            let inv = f.inv(&lc).expect("nonzero");
            (scale(f, a, inv), lc)
        }
    }
}

/// Monic gcd (zero if both inputs vanish).
pub fn gcd(f: &Fq, a: &[FqElem], b: &[FqElem]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x).0
}

pub fn derivative(f: &Fq, a: &[FqElem]) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale_int(c, i as i64))
            .collect(),
    )
}

/// Leading coefficient, zero for the zero polynomial.
pub fn lead(a: &[FqElem]) -> FqElem {
    degree(a).map(|d| a[d]).unwrap_or(FqElem(0))
}

pub fn format(f: &Fq, a: &[FqElem], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.0 == 0 {
            continue;
        }
        let cs = f.format(c);
        let coef_is_sum = cs.contains('+');
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(if i == 0 {
            cs
        } else if c.0 == 1 {
            mono
        } else if coef_is_sum {
            format!("({cs})*{mono}")
        } else {
            format!("{cs}*{mono}")
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}
