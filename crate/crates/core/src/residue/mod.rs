//! Residue fields `k` of p-rank at most one, with their p-structure.

pub mod fq;
pub mod linalg;
pub mod local;
pub mod poly;
pub mod ratfunc;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ring::Field;

pub use fq::{Fq, FqElem};
pub use local::LocalField;
pub use ratfunc::{RatFunc, RatFuncField};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ResidueKind {
    Finite,
    RationalFunction,
    TruncatedLocal,
}

impl ResidueKind {
    pub fn label(self) -> &'static str {
        match self {
            ResidueKind::Finite => "fq",
            ResidueKind::RationalFunction => "ratfunc",
            ResidueKind::TruncatedLocal => "local",
        }
    }
}

/// Summary of a residue field for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub kind: ResidueKind,
    pub p_basis_label: Option<String>,
    /// Series horizon for truncated kinds.
    pub precision: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ZeroStatus {
    Zero,
    NonZero,
    Unknown,
}

impl ZeroStatus {
    pub fn label(self) -> &'static str {
        match self {
            ZeroStatus::Zero => "Zero",
            ZeroStatus::NonZero => "NonZero",
            ZeroStatus::Unknown => "Unknown",
        }
    }
}

/// A coboundary move on `Ω¹_k`: `Exact(g)` is `dg`, `Frob(a)` is `(F − I)(a dθ)`.
#[derive(Clone, Debug, PartialEq)]
pub enum KMove<E> {
    Exact(E),
    Frob(E),
}

/// Result of pushing `c dθ` through Cartier reductions: `c dθ − remainder dθ`
/// is the sum of the moves.
#[derive(Clone, Debug)]
pub struct UnramReduction<E> {
    pub moves: Vec<KMove<E>>,
    pub remainder: E,
    pub status: ZeroStatus,
}

pub trait ResidueField: Field + Send + Sync {
    fn kind(&self) -> ResidueKind;
    fn fq(&self) -> &Fq;
    fn embed(&self, c: FqElem) -> Self::Elem;
    /// The p-basis element, absent for finite fields.
    fn theta(&self) -> Option<Self::Elem>;
    fn theta_label(&self) -> Option<&str>;
    fn precision(&self) -> Option<i64> {
        None
    }

    fn p_rank(&self) -> u32 {
        if self.theta().is_some() {
            1
        } else {
            0
        }
    }

    fn context(&self) -> FieldContext {
        let f = self.fq();
        FieldContext {
            p: f.p(),
            n: f.degree(),
            q: f.size(),
            kind: self.kind(),
            p_basis_label: self.theta_label().map(str::to_string),
            precision: self.precision(),
        }
    }

    /// `u` with `u^p = f`, if it exists.
    fn pth_root(&self, f: &Self::Elem) -> Result<Option<Self::Elem>>;

    /// `(f_0, …, f_{p−1})` with `f = Σ f_i^p θ^i`; a single component `f^{1/p}` for finite fields.
    fn p_basis_decompose(&self, f: &Self::Elem) -> Result<Vec<Self::Elem>>;

    /// `d/dθ`; identically zero on a finite field.
    fn derivative(&self, f: &Self::Elem) -> Self::Elem;

    /// `u^p − u = a`, if solvable in `k`.
    fn artin_schreier_solve(&self, a: &Self::Elem) -> Result<Option<Self::Elem>>;

    /// `a = u^p − u + r` with `r` a reduced representative of `a` in `k/℘(k)`;
    /// `r = 0` exactly when `a ∈ ℘(k)`.
    fn as_reduce(&self, a: &Self::Elem) -> Result<(Self::Elem, Self::Elem)>;

    /// Exact zero test on the class of `c dθ` in `Ω¹_k / ((F − I)Ω¹_k + dk)`, as far
    /// as the field allows; see the implementations for the tiers.
    fn reduce_unram(&self, c: &Self::Elem) -> Result<UnramReduction<Self::Elem>>;

    fn p_basis_reconstruct(&self, comps: &[Self::Elem]) -> Self::Elem {
        match self.theta() {
            None => comps.first().map(|c| self.frobenius(c)).unwrap_or_else(|| self.zero()),
            Some(th) => {
                let mut acc = self.zero();
                let mut pw = self.one();
                for c in comps {
                    acc = self.add(&acc, &self.mul(&self.frobenius(c), &pw));
                    pw = self.mul(&pw, &th);
                }
                acc
            }
        }
    }

    /// `c dθ = a^p θ^{p−1} dθ + dg`.
    fn cartier_decompose(&self, c: &Self::Elem) -> Result<(Self::Elem, Self::Elem)> {
        let th = self
            .theta()
            .ok_or_else(|| Error::Unsupported("Cartier decomposition over a finite field".into()))?;
        let p = self.characteristic() as usize;
        let comps = self.p_basis_decompose(c)?;
        let mut g = self.zero();
        let mut pw = th.clone();
        for (i, ci) in comps.iter().enumerate().take(p - 1) {
            let inv = crate::ring::inv_mod_p((i + 1) as i64, p as u32);
            let term = self.mul(&self.frobenius(ci), &pw);
            g = self.add(&g, &self.scale_int(&term, inv as i64));
            pw = self.mul(&pw, &th);
        }
        Ok((comps[p - 1].clone(), g))
    }

    /// `Z/p`-valued invariant of the class of `c dθ`, for residue fields carrying one.
    fn local_invariant(&self, _c: &Self::Elem) -> Option<Result<u32>> {
        None
    }

    /// `Ω¹_k` is zero when `k` is perfect; otherwise reduce through the Cartier operator.
    fn is_perfect(&self) -> bool {
        self.theta().is_none()
    }
}

/// Iterates `c ↦ C(c)` recording the moves `c − C(c) = dg + (F − I)(C(c))`.
/// Stops at zero, at a repeat, or after `max_steps`.
pub(crate) fn cartier_iterate<K: ResidueField>(
    k: &K,
    c: &K::Elem,
    max_steps: usize,
    stop: impl Fn(&K::Elem) -> bool,
) -> Result<(Vec<KMove<K::Elem>>, K::Elem)>
where
    K::Elem: std::hash::Hash + Eq,
{
    let mut moves = Vec::new();
    let mut cur = c.clone();
    let mut seen = HashSet::new();
    for _ in 0..max_steps {
        if k.is_zero(&cur) || stop(&cur) || !seen.insert(cur.clone()) {
            break;
        }
        let (a, g) = k.cartier_decompose(&cur)?;
        if !k.is_zero(&g) {
            moves.push(KMove::Exact(g));
        }
        if !k.is_zero(&a) {
            moves.push(KMove::Frob(a.clone()));
        }
        cur = a;
    }
    Ok((moves, cur))
}

impl ResidueField for Fq {
    fn kind(&self) -> ResidueKind {
        ResidueKind::Finite
    }

    fn fq(&self) -> &Fq {
        self
    }

    fn embed(&self, c: FqElem) -> FqElem {
        c
    }

    fn theta(&self) -> Option<FqElem> {
        None
    }

    fn theta_label(&self) -> Option<&str> {
        None
    }

    fn pth_root(&self, f: &FqElem) -> Result<Option<FqElem>> {
        Ok(Some(Fq::pth_root(self, *f)))
    }

    fn p_basis_decompose(&self, f: &FqElem) -> Result<Vec<FqElem>> {
        Ok(vec![Fq::pth_root(self, *f)])
    }

    fn derivative(&self, _f: &FqElem) -> FqElem {
        FqElem(0)
    }

    fn artin_schreier_solve(&self, a: &FqElem) -> Result<Option<FqElem>> {
        Ok(self.artin_schreier(*a))
    }

    fn as_reduce(&self, a: &FqElem) -> Result<(FqElem, FqElem)> {
        Ok(self.artin_schreier_reduce(*a))
    }

    fn reduce_unram(&self, c: &FqElem) -> Result<UnramReduction<FqElem>> {
        // Ω¹ of a perfect field vanishes: dθ does not exist, only c = 0 occurs.
        Ok(UnramReduction {
            moves: vec![],
            remainder: FqElem(0),
            status: if c.0 == 0 { ZeroStatus::Zero } else { ZeroStatus::Unknown },
        })
    }
}
