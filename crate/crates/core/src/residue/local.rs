//! Truncated local fields `F_q((s))`, p-basis `{s}`.

use crate::error::{Error, Result};
use crate::laurent::{Horizon, LaurentRing, Series};
use crate::residue::fq::{Fq, FqElem};
use crate::residue::{cartier_iterate, KMove, ResidueField, ResidueKind, UnramReduction, ZeroStatus};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug)]
pub struct LocalField {
    series: LaurentRing<Fq>,
}

impl LocalField {
    pub fn new(fq: Fq, var: &str, prec: i64) -> Self {
        LocalField {
            series: LaurentRing::new(fq, var, prec),
        }
    }

    /// The underlying series ring over `F_q`.
    pub fn series(&self) -> &LaurentRing<Fq> {
        &self.series
    }

    pub fn var(&self) -> &str {
        self.series.var()
    }

    /// `Tr_{F_q/F_p}(res_s(b · dc/c))`, the local invariant of `[b, c)`.
    pub fn schmid_invariant(&self, b: &Series<FqElem>, c: &Series<FqElem>) -> Result<u32> {
        let r = &self.series;
        let dlog = r.try_div(&r.derivative_t(c), c)?;
        let prod = r.mul(b, &dlog);
        let res = r.coeff_checked(&prod, -1)?;
        Ok(self.series.base().trace(res))
    }

    fn is_residue_only(&self, c: &Series<FqElem>) -> bool {
        c.terms()
            .all(|(e, x)| e == -1 || x.0 == 0)
    }
}

impl Ring for LocalField {
    type Elem = Series<FqElem>;

    fn characteristic(&self) -> u32 {
        self.series.characteristic()
    }
    fn zero(&self) -> Self::Elem {
        self.series.zero()
    }
    fn one(&self) -> Self::Elem {
        self.series.one()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.series.from_int(n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.series.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.series.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.series.mul(a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.series.is_zero(a)
    }
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        self.series.is_exact_zero(a)
    }
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.series.frobenius(a)
    }
    fn format(&self, a: &Self::Elem) -> String {
        self.series.format_terms(a)
    }
}

impl Field for LocalField {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.series.try_inv(a).ok()
    }
}

impl ResidueField for LocalField {
    fn kind(&self) -> ResidueKind {
        ResidueKind::TruncatedLocal
    }

    fn fq(&self) -> &Fq {
        self.series.base()
    }

    fn embed(&self, c: FqElem) -> Self::Elem {
        self.series.constant(c)
    }

    fn theta(&self) -> Option<Self::Elem> {
        Some(self.series.var_pow(1))
    }

    fn theta_label(&self) -> Option<&str> {
        Some(self.series.var())
    }

    fn precision(&self) -> Option<i64> {
        Some(self.series.precision())
    }

    fn pth_root(&self, f: &Self::Elem) -> Result<Option<Self::Elem>> {
        self.series.pth_root(f)
    }

    fn p_basis_decompose(&self, f: &Self::Elem) -> Result<Vec<Self::Elem>> {
        let mut table = self.series.p_basis_decompose(f)?;
        Ok(table.swap_remove(0))
    }

    fn derivative(&self, f: &Self::Elem) -> Self::Elem {
        self.series.derivative_t(f)
    }

    /// Hensel lifting from the constant term; polar input is rejected.
    fn artin_schreier_solve(&self, a: &Self::Elem) -> Result<Option<Self::Elem>> {
        if a.valuation().is_some_and(|v| v < 0) {
            return Err(Error::NonIntegral);
        }
        let (u, r) = self.series.as_reduce(a)?;
        Ok(if self.is_zero(&r) { Some(u) } else { None })
    }

    fn as_reduce(&self, a: &Self::Elem) -> Result<(Self::Elem, Self::Elem)> {
        self.series.as_reduce(a)
    }

    /// Cartier iteration down to `σ s^{−1}`, then the trace of `σ` decides.
    fn local_invariant(&self, c: &Self::Elem) -> Option<Result<u32>> {
        let s = self.series.var_pow(1);
        Some(self.schmid_invariant(&self.mul(c, &s), &s))
    }

    fn reduce_unram(&self, c: &Self::Elem) -> Result<UnramReduction<Self::Elem>> {
        if c.horizon().bound() < 0 {
            return Err(Error::PrecisionExhausted(format!(
                "residue of {} is not determined",
                self.format(c)
            )));
        }
        let (mut moves, rem) = cartier_iterate(self, c, 64, |x| self.is_residue_only(x))?;
        if !self.is_residue_only(&rem) {
            return Err(Error::Reduction("Cartier iteration did not settle".into()));
        }
        let fq = self.fq();
        let sigma = self.series.coeff(&rem, -1);
        let tr = fq.trace(sigma);
        let target = fq.scale_int(&fq.trace_one(), tr as i64);
        let (u, _) = fq.artin_schreier_reduce(sigma);
        if u.0 != 0 {
            moves.push(KMove::Frob(self.series.monomial(u, -1)));
        }
        let remainder = self.series.make(-1, vec![target], Horizon::Exact);
        let remainder = self.series.with_horizon(&remainder, rem.horizon());
        Ok(UnramReduction {
            moves,
            status: if tr == 0 { ZeroStatus::Zero } else { ZeroStatus::NonZero },
            remainder,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2s() -> LocalField {
        LocalField::new(Fq::new(2, 1).unwrap(), "s", 40)
    }

    #[test]
    fn schmid_examples() {
        let k = f2s();
        let r = k.series();
        let s = r.var_pow(1);
        let sinv = r.var_pow(-1);
        assert_eq!(k.schmid_invariant(&k.zero(), &s).unwrap(), 0);
        assert_eq!(k.schmid_invariant(&sinv, &s).unwrap(), 0);
        let one_plus_s = r.add(&r.one(), &s);
        assert_eq!(k.schmid_invariant(&sinv, &one_plus_s).unwrap(), 1);
    }

    #[test]
    fn hensel_solves_integral_trace_zero() {
        let fq = Fq::new(2, 2).unwrap();
        let k = LocalField::new(fq.clone(), "s", 30);
        let r = k.series();
        let w = fq.generator();
        // constant 1 has trace 0 over F_4
        let a = r.add(&r.one(), &r.monomial(w, 3));
        let u = k.artin_schreier_solve(&a).unwrap().unwrap();
        let back = k.sub(&k.frobenius(&u), &u);
        assert!(k.is_zero(&k.sub(&back, &a)));
        assert_eq!(k.artin_schreier_solve(&r.var_pow(-1)), Err(Error::NonIntegral));
    }

    #[test]
    fn unram_reduction_reads_trace_of_residue() {
        let k = f2s();
        let r = k.series();
        // s^{-1} ds = dlog s: invariant 1
        let red = k.reduce_unram(&r.var_pow(-1)).unwrap();
        assert_eq!(red.status, ZeroStatus::NonZero);
        // s^{-3} ds: Cartier gives s^{-2} → 0 class
        let red = k.reduce_unram(&r.var_pow(-3)).unwrap();
        assert_eq!(red.status, ZeroStatus::Zero);
    }
}
