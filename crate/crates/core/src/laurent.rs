//! Truncated Laurent series `k((t))` with an explicit precision horizon.
//!
//! A series with horizon `Known(N)` stands for `Σ_{e<N} c_e t^e + O(t^N)`;
//! `Exact` series are Laurent polynomials with no error term.

use crate::error::{Error, Result};
use crate::residue::ResidueField;
use crate::ring::{Field, Ring};

/// Default number of coefficients carried by inexact results.
pub const DEFAULT_PRECISION: i64 = 40;

const UNBOUNDED: i64 = i64::MAX / 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Horizon {
    Exact,
    Known(i64),
}

impl Horizon {
    pub fn value(self) -> Option<i64> {
        match self {
            Horizon::Exact => None,
            Horizon::Known(n) => Some(n),
        }
    }

    pub fn bound(self) -> i64 {
        self.value().unwrap_or(UNBOUNDED)
    }

    pub fn min(self, other: Horizon) -> Horizon {
        match (self, other) {
            (Horizon::Exact, h) | (h, Horizon::Exact) => h,
            (Horizon::Known(a), Horizon::Known(b)) => Horizon::Known(a.min(b)),
        }
    }

    pub fn shift(self, d: i64) -> Horizon {
        match self {
            Horizon::Exact => Horizon::Exact,
            Horizon::Known(n) => Horizon::Known(n + d),
        }
    }

    fn from_bound(b: i64) -> Horizon {
        if b >= UNBOUNDED / 2 {
            Horizon::Exact
        } else {
            Horizon::Known(b)
        }
    }
}

/// Outcome of comparing two truncated series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Comparison {
    Equal,
    Distinct,
    /// Agree on every coefficient both operands know.
    Indistinguishable,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series<E> {
    start: i64,
    coeffs: Vec<E>,
    horizon: Horizon,
    /// first coefficient not zero to precision; leading coefficients that are
    /// only zero to precision are kept so their horizons survive addition
    val: Option<i64>,
}

impl<E> Series<E> {
    pub fn horizon(&self) -> Horizon {
        self.horizon
    }

    pub fn is_exact(&self) -> bool {
        self.horizon == Horizon::Exact
    }

    /// Valuation, or `None` when zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        self.val
    }

    /// A lower bound for the valuation (the horizon for zero-to-precision series).
    pub fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or_else(|| self.horizon.bound())
    }

    /// Exponent one past the last stored coefficient.
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// `(exponent, coefficient)` pairs of the stored range, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &E)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
    }
}

#[derive(Clone, Debug)]
pub struct LaurentRing<K: Ring> {
    k: K,
    var: String,
    prec: i64,
}

impl<K: Ring> LaurentRing<K> {
    pub fn new(k: K, var: &str, prec: i64) -> Self {
        LaurentRing {
            k,
            var: var.to_string(),
            prec: prec.max(1),
        }
    }

    pub fn base(&self) -> &K {
        &self.k
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn make(&self, start: i64, coeffs: Vec<K::Elem>, horizon: Horizon) -> Series<K::Elem> {
        let mut coeffs = coeffs;
        let mut start = start;
        let h = horizon.bound();
        if start + (coeffs.len() as i64) > h {
            let keep = (h - start).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| self.k.is_exact_zero(c)) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| self.k.is_exact_zero(c)).count();
        if lead > 0 {
            coeffs.drain(..lead);
            start += lead as i64;
        }
        if coeffs.is_empty() {
            start = 0;
        }
        let val = coeffs
            .iter()
            .position(|c| !self.k.is_zero(c))
            .map(|i| start + i as i64);
        Series {
            start,
            coeffs,
            horizon,
            val,
        }
    }

    pub fn monomial(&self, c: K::Elem, e: i64) -> Series<K::Elem> {
        self.make(e, vec![c], Horizon::Exact)
    }

    pub fn constant(&self, c: K::Elem) -> Series<K::Elem> {
        self.monomial(c, 0)
    }

    /// `t^e`.
    pub fn var_pow(&self, e: i64) -> Series<K::Elem> {
        self.monomial(self.k.one(), e)
    }

    /// Zero known only below `n`.
    pub fn zero_to(&self, n: i64) -> Series<K::Elem> {
        self.make(0, vec![], Horizon::Known(n))
    }

    /// Builds a series from `(exponent, coefficient)` pairs (repeats are summed).
    pub fn from_terms<I>(&self, terms: I, horizon: Horizon) -> Series<K::Elem>
    where
        I: IntoIterator<Item = (i64, K::Elem)>,
    {
        let terms: Vec<(i64, K::Elem)> = terms.into_iter().collect();
        if terms.is_empty() {
            return self.make(0, vec![], horizon);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let hi = hi.min(horizon.bound() - 1);
        if hi < lo {
            return self.make(0, vec![], horizon);
        }
        let mut coeffs = vec![self.k.zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            if e <= hi {
                let slot = &mut coeffs[(e - lo) as usize];
                *slot = self.k.add(slot, &c);
            }
        }
        self.make(lo, coeffs, horizon)
    }

    pub fn coeff(&self, s: &Series<K::Elem>, e: i64) -> K::Elem {
        if e < s.start || e >= s.end() {
            self.k.zero()
        } else {
            s.coeffs[(e - s.start) as usize].clone()
        }
    }

    /// Coefficient of `t^e`, failing when `e` lies beyond the horizon.
    pub fn coeff_checked(&self, s: &Series<K::Elem>, e: i64) -> Result<K::Elem> {
        if e >= s.horizon.bound() {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of {}^{e} requested beyond horizon {}",
                self.var,
                s.horizon.bound()
            )));
        }
        Ok(self.coeff(s, e))
    }

    pub fn leading(&self, s: &Series<K::Elem>) -> Option<K::Elem> {
        s.val.map(|v| self.coeff(s, v))
    }

    pub fn truncate(&self, s: &Series<K::Elem>, n: i64) -> Series<K::Elem> {
        self.make(s.start, s.coeffs.clone(), s.horizon.min(Horizon::Known(n)))
    }

    /// Part with exponents in `lo..hi`, marked exact (the caller owns the truncation).
    pub fn slice(&self, s: &Series<K::Elem>, lo: i64, hi: i64) -> Series<K::Elem> {
        self.from_terms(
            s.terms()
                .filter(|(e, _)| *e >= lo && *e < hi)
                .map(|(e, c)| (e, c.clone())),
            Horizon::Exact,
        )
    }

    pub fn with_horizon(&self, s: &Series<K::Elem>, h: Horizon) -> Series<K::Elem> {
        self.make(s.start, s.coeffs.clone(), h)
    }

    /// Multiplication by `t^d`.
    pub fn shift(&self, s: &Series<K::Elem>, d: i64) -> Series<K::Elem> {
        Series {
            start: if s.coeffs.is_empty() { 0 } else { s.start + d },
            coeffs: s.coeffs.clone(),
            horizon: s.horizon.shift(d),
            val: s.val.map(|v| v + d),
        }
    }

    pub fn scale(&self, s: &Series<K::Elem>, c: &K::Elem) -> Series<K::Elem> {
        self.make(
            s.start,
            s.coeffs.iter().map(|x| self.k.mul(x, c)).collect(),
            s.horizon,
        )
    }

    pub fn map_coeffs(
        &self,
        s: &Series<K::Elem>,
        f: impl Fn(&K::Elem) -> K::Elem,
    ) -> Series<K::Elem> {
        self.make(s.start, s.coeffs.iter().map(f).collect(), s.horizon)
    }

    /// `d/dt`; the horizon drops by one.
    pub fn derivative_t(&self, s: &Series<K::Elem>) -> Series<K::Elem> {
        let terms: Vec<_> = s
            .terms()
            .map(|(e, c)| (e - 1, self.k.scale_int(c, e)))
            .collect();
        self.from_terms(terms, s.horizon.shift(-1))
    }

    pub fn compare(&self, a: &Series<K::Elem>, b: &Series<K::Elem>) -> Comparison {
        let d = self.sub(a, b);
        if d.val.is_some() {
            Comparison::Distinct
        } else if d.is_exact() {
            Comparison::Equal
        } else {
            Comparison::Indistinguishable
        }
    }

    /// `(v, u)` with `s = t^v u` and `u` a unit.
    pub fn unit_part(&self, s: &Series<K::Elem>) -> Result<(i64, Series<K::Elem>)> {
        let v = s
            .valuation()
            .ok_or_else(|| Error::PrecisionExhausted("unit part of a series that is zero to precision".into()))?;
        Ok((v, self.shift(s, -v)))
    }

    pub fn format_terms(&self, s: &Series<K::Elem>) -> String {
        let mut parts = Vec::new();
        for (e, c) in s.terms() {
            if self.k.is_zero(c) {
                continue;
            }
            let cs = self.k.format(c);
            let mono = match e {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, e),
            };
            let simple = !cs.contains(['+', '-', '/']);
            parts.push(if e == 0 {
                if simple {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if cs == "1" {
                mono
            } else if simple {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn format_series(&self, s: &Series<K::Elem>) -> String {
        let body = self.format_terms(s);
        match s.horizon {
            Horizon::Exact => body,
            Horizon::Known(n) if body == "0" => format!("O({}^{n})", self.var),
            Horizon::Known(n) => format!("{body}+O({}^{n})", self.var),
        }
    }
}

impl<K: Field> LaurentRing<K> {
    /// Inverse; exact for monomials, otherwise to relative precision
    /// (the operand's, or the ring default for exact operands).
    pub fn try_inv(&self, s: &Series<K::Elem>) -> Result<Series<K::Elem>> {
        let v = match s.valuation() {
            Some(v) => v,
            None if s.is_exact() => return Err(Error::DivisionByZero),
            None => {
                return Err(Error::PrecisionExhausted(
                    "inverting a series that is zero to precision".into(),
                ))
            }
        };
        let off = (v - s.start) as usize;
        let sc = &s.coeffs[off..];
        let c0inv = self.k.inv(&sc[0]).ok_or(Error::DivisionByZero)?;
        if s.coeffs.len() == 1 && s.is_exact() {
            return Ok(self.monomial(c0inv, -v));
        }
        let rel = match s.horizon {
            Horizon::Exact => self.prec,
            Horizon::Known(n) => n - v,
        };
        let len = rel.max(0) as usize;
        let mut d: Vec<K::Elem> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                d.push(c0inv.clone());
                continue;
            }
            let mut acc = self.k.zero();
            for i in 1..=k.min(sc.len() - 1) {
                acc = self.k.add(&acc, &self.k.mul(&sc[i], &d[k - i]));
            }
            d.push(self.k.neg(&self.k.mul(&c0inv, &acc)));
        }
        Ok(self.make(-v, d, Horizon::Known(-v + rel)))
    }

    pub fn try_div(&self, a: &Series<K::Elem>, b: &Series<K::Elem>) -> Result<Series<K::Elem>> {
        Ok(self.mul(a, &self.try_inv(b)?))
    }
}

impl<K: Ring> Ring for LaurentRing<K> {
    type Elem = Series<K::Elem>;

    fn characteristic(&self) -> u32 {
        self.k.characteristic()
    }

    fn zero(&self) -> Self::Elem {
        self.make(0, vec![], Horizon::Exact)
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.k.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.k.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let h = a.horizon.min(b.horizon);
        if a.coeffs.is_empty() {
            return self.with_horizon(b, h);
        }
        if b.coeffs.is_empty() {
            return self.with_horizon(a, h);
        }
        let lo = a.start.min(b.start);
        let hi = a.end().max(b.end()).min(h.bound());
        if hi <= lo {
            return self.make(0, vec![], h);
        }
        let coeffs = (lo..hi)
            .map(|e| {
                let x = self.coeff(a, e);
                let y = self.coeff(b, e);
                self.k.add(&x, &y)
            })
            .collect();
        self.make(lo, coeffs, h)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Series {
            start: a.start,
            coeffs: a.coeffs.iter().map(|c| self.k.neg(c)).collect(),
            horizon: a.horizon,
            val: a.val,
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let exact_zero = |s: &Self::Elem| s.coeffs.is_empty() && s.is_exact();
        if exact_zero(a) || exact_zero(b) {
            return self.zero();
        }
        let mut h = UNBOUNDED;
        if let Horizon::Known(na) = a.horizon {
            h = h.min(na + b.valuation_bound());
        }
        if let Horizon::Known(nb) = b.horizon {
            h = h.min(nb + a.valuation_bound());
        }
        let horizon = Horizon::from_bound(h);
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.make(0, vec![], horizon);
        }
        let start = a.start + b.start;
        let full = a.coeffs.len() + b.coeffs.len() - 1;
        let len = match horizon {
            Horizon::Exact => full,
            Horizon::Known(n) => ((n - start).max(0) as usize).min(full),
        };
        let mut out = vec![self.k.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if self.k.is_exact_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = self.k.add(&out[i + j], &self.k.mul(x, y));
            }
        }
        self.make(start, out, horizon)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.val.is_none()
    }

    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty() && a.is_exact()
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        let p = self.characteristic() as i64;
        let terms: Vec<_> = a.terms().map(|(e, c)| (p * e, self.k.frobenius(c))).collect();
        let h = match a.horizon {
            Horizon::Exact => Horizon::Exact,
            Horizon::Known(n) => Horizon::Known(p * n),
        };
        self.from_terms(terms, h)
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.format_series(a)
    }
}

impl<K: Field> Field for LaurentRing<K> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.try_inv(a).ok()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

impl<K: ResidueField> LaurentRing<K> {
    /// Coefficientwise `d/dθ`.
    pub fn derivative_theta(&self, s: &Series<K::Elem>) -> Series<K::Elem> {
        self.map_coeffs(s, |c| self.k.derivative(c))
    }

    /// Table `f[i][j]` with `f = Σ f_ij^p θ^i t^j`; one row when `k` is perfect.
    pub fn p_basis_decompose(&self, s: &Series<K::Elem>) -> Result<Vec<Vec<Series<K::Elem>>>> {
        let p = self.characteristic() as i64;
        let rows = if self.k.theta().is_some() { p as usize } else { 1 };
        let mut terms: Vec<Vec<Vec<(i64, K::Elem)>>> = vec![vec![vec![]; p as usize]; rows];
        for (e, c) in s.terms() {
            if self.k.is_zero(c) {
                continue;
            }
            let j = e.rem_euclid(p);
            let comps = self.k.p_basis_decompose(c)?;
            for (i, ci) in comps.into_iter().enumerate() {
                terms[i][j as usize].push(((e - j) / p, ci));
            }
        }
        Ok(terms
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, ts)| {
                        let h = match s.horizon {
                            Horizon::Exact => Horizon::Exact,
                            Horizon::Known(n) => Horizon::Known(ceil_div(n - j as i64, p)),
                        };
                        self.from_terms(ts, h)
                    })
                    .collect()
            })
            .collect())
    }

    pub fn p_basis_reconstruct(&self, table: &[Vec<Series<K::Elem>>]) -> Series<K::Elem> {
        let mut acc = self.zero();
        let theta = self.k.theta();
        for (i, row) in table.iter().enumerate() {
            let th_i = match &theta {
                Some(th) => self.constant(self.k.pow(th, i as u64)),
                None => self.one(),
            };
            for (j, f) in row.iter().enumerate() {
                let term = self.mul(&self.shift(&self.frobenius(f), j as i64), &th_i);
                acc = self.add(&acc, &term);
            }
        }
        acc
    }

    /// `u` with `u^p = s`, when every exponent is divisible by `p` and every
    /// coefficient is a p-th power in `k`.
    pub fn pth_root(&self, s: &Series<K::Elem>) -> Result<Option<Series<K::Elem>>> {
        let p = self.characteristic() as i64;
        let mut terms = Vec::new();
        for (e, c) in s.terms() {
            if self.k.is_zero(c) {
                continue;
            }
            if e.rem_euclid(p) != 0 {
                return Ok(None);
            }
            match self.k.pth_root(c)? {
                Some(r) => terms.push((e / p, r)),
                None => return Ok(None),
            }
        }
        let h = match s.horizon {
            Horizon::Exact => Horizon::Exact,
            Horizon::Known(n) => Horizon::Known(ceil_div(n, p)),
        };
        Ok(Some(self.from_terms(terms, h)))
    }

    /// `a = u^p − u + r` over `k((t))`: polar terms `c t^{−pm}` with `c ∈ k^p` are
    /// lowered, the constant is reduced in `k`, the integral tail is absorbed
    /// into `u` (up to the horizon, or the ring precision for exact input).
    pub fn as_reduce(&self, a: &Series<K::Elem>) -> Result<(Series<K::Elem>, Series<K::Elem>)> {
        let p = self.characteristic() as i64;
        let mut cur = a.clone();
        let mut u = self.zero();
        let mut e = cur.start;
        while e < 0 && !self.is_zero(&cur) {
            let c = self.coeff(&cur, e);
            if !self.k.is_zero(&c) && e.rem_euclid(p) == 0 {
                if let Some(r) = self.k.pth_root(&c)? {
                    let w = self.monomial(r, e / p);
                    cur = self.sub(&cur, &self.sub(&self.frobenius(&w), &w));
                    u = self.add(&u, &w);
                }
            }
            e += 1;
        }
        let c0 = self.coeff_checked(&cur, 0)?;
        let (u0, _) = self.k.as_reduce(&c0)?;
        let w0 = self.constant(u0);
        cur = self.sub(&cur, &self.sub(&self.frobenius(&w0), &w0));
        u = self.add(&u, &w0);
        let tail = self.with_horizon(&self.slice(&cur, 1, cur.end()), Horizon::Exact);
        if !self.is_zero(&tail) {
            let h = match cur.horizon {
                Horizon::Exact => self.prec,
                Horizon::Known(n) => n,
            };
            let mut w = self.zero();
            let mut pw = tail.clone();
            while pw.valuation().is_some_and(|v| v < h) {
                w = self.sub(&w, &pw);
                pw = self.truncate(&self.frobenius(&pw), h);
            }
            let w = self.truncate(&w, h);
            cur = self.sub(&cur, &self.sub(&self.frobenius(&w), &w));
            u = self.add(&u, &w);
        }
        Ok((u, cur))
    }
}
