//! The rational function field `F_q(x)` with p-basis `{x}`.

use crate::error::Result;
use crate::residue::fq::{Fq, FqElem};
use crate::residue::linalg::solve_mod_p;
use crate::residue::poly::{self, Poly};
use crate::residue::{cartier_iterate, ResidueField, ResidueKind, UnramReduction, ZeroStatus};
use crate::ring::{Field, Ring};

/// `num / den` with `den` monic and coprime to `num`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

#[derive(Clone, Debug)]
pub struct RatFuncField {
    fq: Fq,
}

impl RatFuncField {
    pub fn new(fq: Fq) -> Self {
        RatFuncField { fq }
    }

    pub fn base(&self) -> &Fq {
        &self.fq
    }

    /// Normalizes an arbitrary fraction; panics on a zero denominator.
    pub fn fraction(&self, num: Poly, den: Poly) -> RatFunc {
        let f = &self.fq;
        let num = poly::trim(num);
        let den = poly::trim(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let g = poly::gcd(f, &num, &den);
        let (n, _) = poly::divrem(f, &num, &g);
        let (d, _) = poly::divrem(f, &den, &g);
        let (d, lc) = poly::make_monic(f, &d);
        let n = poly::scale(f, &n, f.inv(&lc).expect("nonzero"));
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(&self, num: Poly) -> RatFunc {
        RatFunc {
            num: poly::trim(num),
            den: vec![self.fq.one()],
        }
    }

    pub fn x(&self) -> RatFunc {
        self.from_poly(vec![FqElem(0), self.fq.one()])
    }

    pub fn constant(&self, c: FqElem) -> RatFunc {
        self.from_poly(vec![c])
    }

    pub fn is_polynomial(&self, a: &RatFunc) -> bool {
        a.den.len() == 1
    }

    /// Coefficientwise p-th root of a polynomial supported on exponents divisible by p.
    fn poly_pth_root(&self, a: &[FqElem]) -> Option<Poly> {
        let p = self.fq.p() as usize;
        let mut out = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.0 != 0 && i % p != 0 {
                return None;
            }
            if i % p == 0 {
                out.push(self.fq.pth_root(*c));
            }
        }
        Some(poly::trim(out))
    }

    /// `num · den^{p−1}`, so that `a = m / den^p`.
    fn over_pth_power(&self, a: &RatFunc) -> Poly {
        let f = &self.fq;
        poly::mul(f, &a.num, &poly::pow(f, &a.den, (f.p() - 1) as u64))
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn characteristic(&self) -> u32 {
        self.fq.p()
    }

    fn zero(&self) -> RatFunc {
        RatFunc {
            num: vec![],
            den: vec![self.fq.one()],
        }
    }

    fn one(&self) -> RatFunc {
        self.constant(self.fq.one())
    }

    fn from_int(&self, n: i64) -> RatFunc {
        self.constant(self.fq.from_int(n))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &self.fq;
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return self.fraction(poly::add(f, &a.num, &b.num), a.den.clone());
        }
        let num = poly::add(f, &poly::mul(f, &a.num, &b.den), &poly::mul(f, &b.num, &a.den));
        self.fraction(num, poly::mul(f, &a.den, &b.den))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: poly::neg(&self.fq, &a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &self.fq;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        if self.is_polynomial(a) && self.is_polynomial(b) {
            return self.from_poly(poly::mul(f, &a.num, &b.num));
        }
        self.fraction(poly::mul(f, &a.num, &b.num), poly::mul(f, &a.den, &b.den))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_empty()
    }

    fn frobenius(&self, a: &RatFunc) -> RatFunc {
        let f = &self.fq;
        RatFunc {
            num: poly::frobenius(f, &a.num),
            den: poly::frobenius(f, &a.den),
        }
    }

    fn format(&self, a: &RatFunc) -> String {
        let f = &self.fq;
        let n = poly::format(f, &a.num, "x");
        if self.is_polynomial(a) {
            return n;
        }
        let d = poly::format(f, &a.den, "x");
        let wrap = |s: String| {
            if s.contains('+') || s.contains('*') || s.contains('^') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl Field for RatFuncField {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.num.is_empty() {
            return None;
        }
        Some(self.fraction(a.den.clone(), a.num.clone()))
    }
}

impl ResidueField for RatFuncField {
    fn kind(&self) -> ResidueKind {
        ResidueKind::RationalFunction
    }

    fn fq(&self) -> &Fq {
        &self.fq
    }

    fn embed(&self, c: FqElem) -> RatFunc {
        self.constant(c)
    }

    fn theta(&self) -> Option<RatFunc> {
        Some(self.x())
    }

    fn theta_label(&self) -> Option<&str> {
        Some("x")
    }

    fn pth_root(&self, a: &RatFunc) -> Result<Option<RatFunc>> {
        let m = self.over_pth_power(a);
        Ok(self
            .poly_pth_root(&m)
            .map(|r| self.fraction(r, a.den.clone())))
    }

    fn p_basis_decompose(&self, a: &RatFunc) -> Result<Vec<RatFunc>> {
        let p = self.fq.p() as usize;
        let m = self.over_pth_power(a);
        let mut parts: Vec<Poly> = vec![vec![]; p];
        for (i, c) in m.iter().enumerate() {
            if c.0 == 0 {
                continue;
            }
            let slot = &mut parts[i % p];
            let k = i / p;
            if slot.len() <= k {
                slot.resize(k + 1, FqElem(0));
            }
            slot[k] = self.fq.pth_root(*c);
        }
        Ok(parts
            .into_iter()
            .map(|g| self.fraction(g, a.den.clone()))
            .collect())
    }

    fn derivative(&self, a: &RatFunc) -> RatFunc {
        let f = &self.fq;
        if self.is_polynomial(a) {
            return self.from_poly(poly::derivative(f, &a.num));
        }
        let num = poly::sub(
            f,
            &poly::mul(f, &poly::derivative(f, &a.num), &a.den),
            &poly::mul(f, &a.num, &poly::derivative(f, &a.den)),
        );
        self.fraction(num, poly::mul(f, &a.den, &a.den))
    }

    /// Writes a solution as `M / E` with `E^p = den`; then `M^p − M E^{p−1} = num`
    /// is linear over `F_p` in the coefficients of `M`, whose degree is at most
    /// `max(deg E, deg num / p)`.
    fn artin_schreier_solve(&self, a: &RatFunc) -> Result<Option<RatFunc>> {
        let f = &self.fq;
        if a.num.is_empty() {
            return Ok(Some(self.zero()));
        }
        let Some(e) = self.poly_pth_root(&a.den) else {
            return Ok(None);
        };
        let p = f.p() as usize;
        let n = f.degree() as usize;
        let deg_e = poly::degree(&e).unwrap_or(0);
        let deg_n = poly::degree(&a.num).unwrap_or(0);
        let bound = deg_e.max(deg_n / p);
        let out_len = p * bound + 1;
        if deg_n >= out_len {
            return Ok(None);
        }
        let e_pow = poly::pow(f, &e, (p - 1) as u64);
        let flatten = |q: &[FqElem]| -> Vec<u32> {
            let mut v = Vec::with_capacity(out_len * n);
            for i in 0..out_len {
                v.extend(f.digits(q.get(i).copied().unwrap_or(FqElem(0))));
            }
            v
        };
        let mut columns = Vec::with_capacity((bound + 1) * n);
        for i in 0..=bound {
            for r in 0..n {
                let mut ds = vec![0u32; n];
                ds[r] = 1;
                let b = poly::monomial(f.from_digits(&ds), i);
                let img = poly::sub(f, &poly::frobenius(f, &b), &poly::mul(f, &b, &e_pow));
                columns.push(flatten(&img));
            }
        }
        let Some(sol) = solve_mod_p(f.p(), &columns, &flatten(&a.num)) else {
            return Ok(None);
        };
        let m: Poly = sol.chunks(n).map(|ds| f.from_digits(ds)).collect();
        let u = self.fraction(m, e);
        debug_assert_eq!(&self.sub(&self.frobenius(&u), &u), a);
        Ok(Some(u))
    }

    /// Exact solve when possible; otherwise lowers `c x^{pm}` terms of the
    /// polynomial part to `c^{1/p} x^m` and reduces the constant by its trace.
    fn as_reduce(&self, a: &RatFunc) -> Result<(RatFunc, RatFunc)> {
        if let Some(u) = self.artin_schreier_solve(a)? {
            return Ok((u, self.zero()));
        }
        let f = &self.fq;
        let p = f.p() as usize;
        let (mut pol, rem) = poly::divrem(f, &a.num, &a.den);
        let mut u: Poly = vec![];
        let mut d = poly::degree(&pol).unwrap_or(0);
        while d >= 1 {
            if d % p == 0 && d < pol.len() && pol[d].0 != 0 {
                let c = pol[d];
                let r = f.pth_root(c);
                let m = d / p;
                pol[d] = FqElem(0);
                pol[m] = f.add(&pol[m], &r);
                u = poly::add(f, &u, &poly::monomial(r, m));
            }
            d -= 1;
        }
        if let Some(c0) = pol.first().copied() {
            let (u0, r0) = f.artin_schreier_reduce(c0);
            pol[0] = r0;
            u = poly::add(f, &u, &poly::constant(u0));
        }
        let r = self.add(&self.from_poly(pol), &self.fraction(rem, a.den.clone()));
        Ok((self.from_poly(u), r))
    }

    /// Cartier iteration; a literal zero certifies the class, anything else is
    /// left undecided.
    fn reduce_unram(&self, c: &RatFunc) -> Result<UnramReduction<RatFunc>> {
        let (moves, remainder) = cartier_iterate(self, c, 64, |_| false)?;
        let status = if self.is_zero(&remainder) {
            ZeroStatus::Zero
        } else {
            ZeroStatus::Unknown
        };
        Ok(UnramReduction {
            moves,
            remainder,
            status,
        })
    }
}
