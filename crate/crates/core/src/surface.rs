//! Classes over `Frac k[[π, t]]` given by restricted symbols, read along the
//! two coordinate divisors, and the reduction of classes ramified only along
//! `(t)` to a single symbol `[h, π)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{CertStatus, Certificate, Form1, FormSpace, Move};
use crate::laurent::{Horizon, Series};
use crate::residue::{Fq, FqElem, LocalField};
use crate::ring::Ring;
use crate::swan::{GradedSymbol, Reducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Divisor {
    Pi,
    T,
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Divisor::Pi => "(pi)",
            Divisor::T => "(t)",
        })
    }
}

/// A Laurent polynomial in `π, t`; keys are `(exp π, exp t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bivariate {
    terms: BTreeMap<(i64, i64), FqElem>,
}

impl Bivariate {
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), FqElem)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> FqElem {
        self.terms.get(&(i, j)).copied().unwrap_or(FqElem(0))
    }
}

/// `[f, g)` with `g` a unit times a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedSymbol {
    pub f: Bivariate,
    pub g: Bivariate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariateClass {
    pub symbols: Vec<RestrictedSymbol>,
}

#[derive(Clone, Debug)]
pub struct PiReduction {
    pub sw: i64,
    pub h: Bivariate,
    /// `c` with `[c, t)` left over, when `c ∉ ℘(F_q)`
    pub obstruction: Option<FqElem>,
    pub output: Form1<Series<FqElem>>,
    pub certificate: Certificate<Series<FqElem>>,
    pub cert_status: CertStatus,
}

pub const LIFT_CONVENTION: &str = "coefficients of pi-powers lifted verbatim";

/// `R = F_q[[π, t]]` with a precision box `(N_π, N_t)`.
#[derive(Clone, Debug)]
pub struct Surface {
    fq: Fq,
    n_pi: i64,
    n_t: i64,
}

impl Surface {
    pub fn new(fq: Fq, n_pi: i64, n_t: i64) -> Result<Self> {
        if n_pi < 2 || n_t < 2 {
            return Err(Error::InvalidContext(format!("precision box ({n_pi}, {n_t}) too small")));
        }
        Ok(Surface { fq, n_pi, n_t })
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn p(&self) -> u32 {
        self.fq.p()
    }

    pub fn zero(&self) -> Bivariate {
        Bivariate::default()
    }

    pub fn monomial(&self, c: FqElem, i: i64, j: i64) -> Bivariate {
        let mut b = Bivariate::default();
        if c.0 != 0 {
            b.terms.insert((i, j), c);
        }
        b
    }

    pub fn constant(&self, c: FqElem) -> Bivariate {
        self.monomial(c, 0, 0)
    }

    pub fn add(&self, a: &Bivariate, b: &Bivariate) -> Bivariate {
        let mut out = a.clone();
        for (k, v) in &b.terms {
            let s = self.fq.add(&out.coeff(k.0, k.1), v);
            if s.0 == 0 {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, s);
            }
        }
        out
    }

    pub fn neg(&self, a: &Bivariate) -> Bivariate {
        Bivariate {
            terms: a.terms.iter().map(|(k, v)| (*k, self.fq.neg(v))).collect(),
        }
    }

    pub fn sub(&self, a: &Bivariate, b: &Bivariate) -> Bivariate {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Bivariate, b: &Bivariate) -> Bivariate {
        let mut out = Bivariate::default();
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                let m = self.monomial(self.fq.mul(va, vb), ka.0 + kb.0, ka.1 + kb.1);
                out = self.add(&out, &m);
            }
        }
        out
    }

    /// `a / (c π^i t^j)`; other divisors are outside the restricted grammar.
    pub fn div(&self, a: &Bivariate, b: &Bivariate) -> Result<Bivariate> {
        let mut it = b.terms.iter();
        match (it.next(), it.next()) {
            (None, _) => Err(Error::DivisionByZero),
            (Some((&(i, j), c)), None) => {
                let inv = crate::ring::Field::inv(&self.fq, c).ok_or(Error::DivisionByZero)?;
                Ok(self.mul(a, &self.monomial(inv, -i, -j)))
            }
            _ => Err(Error::Unsupported(
                "division by a non-monomial in the restricted grammar".into(),
            )),
        }
    }

    pub fn pow(&self, a: &Bivariate, e: i64) -> Result<Bivariate> {
        if e < 0 {
            let inv = self.div(&self.constant(self.fq.one()), a)?;
            return self.pow(&inv, -e);
        }
        let mut acc = self.constant(self.fq.one());
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }

    /// `(a, b)` with `g = u π^a t^b`, `u(0, 0) ≠ 0`.
    pub fn slot_monomial(&self, g: &Bivariate) -> Result<(i64, i64)> {
        let a = g.terms.keys().map(|k| k.0).min().ok_or(Error::DivisionByZero)?;
        let b = g.terms.keys().map(|k| k.1).min().expect("nonempty");
        if g.coeff(a, b).0 == 0 {
            return Err(Error::Unsupported(format!(
                "slot {} is not a unit times a monomial",
                self.format(g)
            )));
        }
        Ok((a, b))
    }

    pub fn format(&self, a: &Bivariate) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<_> = a.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (j, i));
        let mut out = String::new();
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = a.coeff(i, j);
            let mut factors = Vec::new();
            let cs = self.fq.format(&c);
            let one = c == self.fq.one();
            if !one || (i == 0 && j == 0) {
                factors.push(if cs.contains('+') { format!("({cs})") } else { cs });
            }
            for (v, e) in [("pi", i), ("t", j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if n > 0 {
                out.push_str(" + ");
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn format_class(&self, w: &BivariateClass) -> String {
        if w.symbols.is_empty() {
            return "0".into();
        }
        w.symbols
            .iter()
            .map(|s| format!("sym({}; {})", self.format(&s.f), self.format(&s.g)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The completion at `d`: `κ((t))` with `κ = F_q((π))`, or the same with roles swapped.
    pub fn along(&self, d: Divisor) -> FormSpace<LocalField> {
        let (var, kp, np) = match d {
            Divisor::T => ("pi", self.n_pi, self.n_t),
            Divisor::Pi => ("t", self.n_t, self.n_pi),
        };
        FormSpace::new(LocalField::new(self.fq.clone(), var, kp), np)
    }

    /// Rewrites a Laurent polynomial as an exact series in the uniformizer of `d`.
    pub fn to_series(&self, space: &FormSpace<LocalField>, a: &Bivariate, d: Divisor) -> Series<Series<FqElem>> {
        let mut rows: BTreeMap<i64, Vec<(i64, FqElem)>> = BTreeMap::new();
        for (&(i, j), &c) in &a.terms {
            let (outer, inner) = match d {
                Divisor::T => (j, i),
                Divisor::Pi => (i, j),
            };
            rows.entry(outer).or_default().push((inner, c));
        }
        let k = space.residue().series();
        let f = space.field();
        f.from_terms(
            rows.into_iter()
                .map(|(e, row)| (e, k.from_terms(row, Horizon::Exact))),
            Horizon::Exact,
        )
    }

    /// Reads a series back coefficientwise, dropping the precision bookkeeping.
    pub fn from_series(&self, s: &Series<Series<FqElem>>, d: Divisor) -> Bivariate {
        let mut out = Bivariate::default();
        for (outer, row) in s.terms() {
            for (inner, c) in row.terms() {
                let (i, j) = match d {
                    Divisor::T => (inner, outer),
                    Divisor::Pi => (outer, inner),
                };
                out = self.add(&out, &self.monomial(*c, i, j));
            }
        }
        out
    }

    fn residue_in(&self, space: &FormSpace<LocalField>, w: &BivariateClass, d: Divisor) -> Result<Form1<Series<FqElem>>> {
        let mut acc = space.zero();
        for s in &w.symbols {
            self.slot_monomial(&s.g)?;
            let a = self.to_series(space, &s.f, d);
            let b = self.to_series(space, &s.g, d);
            acc = space.add(&acc, &space.a_dlog_b(&a, &b)?);
        }
        Ok(acc)
    }

    /// The class re-expanded over the completion at `d`.
    pub fn delta1_residue(&self, w: &BivariateClass, d: Divisor) -> Result<Form1<Series<FqElem>>> {
        self.residue_in(&self.along(d), w, d)
    }

    /// `(sw, ramified)` along `d`.
    pub fn ramification_at(&self, w: &BivariateClass, d: Divisor) -> Result<(i64, bool)> {
        let space = self.along(d);
        let form = self.residue_in(&space, w, d)?;
        let rep = space.swan_conductor(&form).map_err(Error::from)?;
        let tame_residue = match &rep.leading_symbol {
            GradedSymbol::Tame { as_residue, .. } => !space.residue().is_zero(as_residue),
            _ => false,
        };
        Ok((rep.sw, rep.sw > 0 || tame_residue))
    }

    pub fn ramification_locus(&self, w: &BivariateClass) -> Result<Vec<Divisor>> {
        let mut out = Vec::new();
        for d in [Divisor::Pi, Divisor::T] {
            if self.ramification_at(w, d)?.1 {
                out.push(d);
            }
        }
        Ok(out)
    }

    /// Writes a class ramified only along `(t)` with `sw < p` as `[h, π)`, plus
    /// the residue `[c, t)` when `c` is not Artin–Schreier trivial over `F_q`.
    pub fn reduce_to_pi_symbol(&self, w: &BivariateClass) -> Result<PiReduction> {
        let p = self.p() as i64;
        if self.ramification_at(w, Divisor::Pi)?.1 {
            return Err(Error::Precondition("class is ramified along (pi)".into()));
        }
        let space = self.along(Divisor::T);
        let form = self.residue_in(&space, w, Divisor::T)?;
        let rep = space.swan_conductor(&form).map_err(Error::from)?;
        if rep.sw >= p {
            return Err(Error::Precondition(format!(
                "sw along (t) is {}, the reduction needs sw < p = {p}",
                rep.sw
            )));
        }
        let k = space.residue();
        let f = space.field();
        let mut r = Reducer::new(&space, &rep.reduced_rep);
        r.cert = rep.certificate;
        // dθ layers moved into [h, π), as a form
        let mut extracted = space.zero();
        for j in (1..=rep.sw).rev() {
            let beta = space.beta(&r.cur, j);
            if !k.is_zero(&beta) {
                let inv_j = crate::ring::inv_mod_p(j, p as u32) as i64;
                r.apply(Move::Exact(f.monomial(k.neg(&k.scale_int(&beta, inv_j)), -j)));
            }
            let rho = space.alpha(&r.cur, j);
            let layer = space.dtheta(&f.monomial(rho, -j));
            r.cur = space.sub(&r.cur, &layer);
            extracted = space.add(&extracted, &layer);
        }
        let (symbol, tame_rep, _, _) = space.tame_reduce(&mut r)?;
        let GradedSymbol::Tame { unram, as_residue } = symbol else {
            unreachable!("tame reduction yields a tame symbol");
        };
        let ks = k.series();
        let obstruction = if k.is_zero(&as_residue) {
            None
        } else {
            let c = ks.coeff(&as_residue, 0);
            if as_residue.terms().any(|(e, x)| e != 0 && x.0 != 0) {
                return Err(Error::Reduction(format!(
                    "tame residue {} is not a constant",
                    k.format(&as_residue)
                )));
            }
            Some(c)
        };
        let pi_part = space.add(&extracted, &space.dtheta(&f.constant(unram)));
        let output = space.add(&pi_part, &space.form(f.zero(), tame_rep.dt));
        let h_series = f.map_coeffs(&pi_part.dtheta, |c| ks.shift(c, 1));
        let cert_status = space.cert_verify(&form, &output, &r.cert);
        Ok(PiReduction {
            sw: rep.sw,
            h: self.from_series(&h_series, Divisor::T),
            obstruction,
            output,
            certificate: r.cert,
            cert_status,
        })
    }
}
