//! Symbol normal forms `[a, t)`, `[f/t^{pm}, et)`, `[c/t^n, g)`.
//!
//! Starting from the leading graded symbol, the slots are corrected one
//! filtration level at a time: the difference `ω − [a, b)` is pushed through
//! the Swan reduction and its leading symbol tells which slot to perturb.

use crate::error::{Error, Result};
use crate::forms::{Certificate, Form1, FormSpace};
use crate::laurent::Series;
use crate::residue::{ResidueField, ZeroStatus};
use crate::ring::Ring;
use crate::swan::{GradedSymbol, SwanReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolType {
    I,
    II,
    III,
}

impl SymbolType {
    pub fn label(self) -> &'static str {
        match self {
            SymbolType::I => "I",
            SymbolType::II => "II",
            SymbolType::III => "III",
        }
    }
}

/// `[a, b)` of type II (`a = f/t^{pm}`, `b = e t`) or III (`a = c/t^n`, `b = g`).
#[derive(Clone, Debug, PartialEq)]
pub struct WildSymbol<E> {
    pub a: Series<E>,
    pub b: Series<E>,
    pub kind: SymbolType,
    pub exponent: i64,
}

/// `[a, t)` with `a` integral.
#[derive(Clone, Debug, PartialEq)]
pub struct TameSymbol<E> {
    pub a: Series<E>,
}

#[derive(Clone, Debug)]
pub struct SymbolPresentation<E> {
    pub sw: i64,
    pub wild: Option<WildSymbol<E>>,
    pub tame: Option<TameSymbol<E>>,
    /// `ρ` for a leftover class `ρ dθ` over `k` not certified to vanish.
    pub unram_remainder: Option<E>,
    pub unram_status: ZeroStatus,
    /// `a dlog b` of the emitted symbol (zero if none).
    pub symbol_form: Form1<E>,
    /// Representative of what is left after removing the symbol.
    pub rest: Form1<E>,
    /// `ω − symbol_form − rest` as a sum of moves.
    pub certificate: Certificate<E>,
}

impl<E> SymbolPresentation<E> {
    pub fn kind(&self) -> SymbolType {
        match &self.wild {
            Some(w) => w.kind,
            None => SymbolType::I,
        }
    }
}

impl<K: ResidueField> FormSpace<K> {
    fn report(&self, w: &Form1<K::Elem>) -> Result<SwanReport<K::Elem>> {
        self.swan_conductor(w).map_err(Error::from)
    }

    /// Normal form of `ω` with a certificate to `symbol_form + rest`.
    pub fn normal_form(&self, w: &Form1<K::Elem>) -> Result<SymbolPresentation<K::Elem>> {
        let p = self.residue().characteristic() as i64;
        let rep = self.report(w)?;
        match rep.sw {
            0 => self.type_one(rep),
            n if n % p == 0 => self.type_two(w, &rep),
            _ => self.type_three(w, &rep),
        }
    }

    fn type_one(&self, rep: SwanReport<K::Elem>) -> Result<SymbolPresentation<K::Elem>> {
        let k = self.residue();
        let f = self.field();
        let GradedSymbol::Tame { unram, as_residue } = rep.leading_symbol else {
            unreachable!("sw = 0 reports carry tame data");
        };
        let a = f.constant(as_residue.clone());
        let symbol_form = self.dlog_t(&a);
        let rest = self.dtheta(&f.constant(unram.clone()));
        let unram_status = if k.is_zero(&unram) {
            ZeroStatus::Zero
        } else {
            // NonZero on the total is driven by the AS residue; the unramified part has its own status.
            let red = k.reduce_unram(&unram)?;
            red.status
        };
        Ok(SymbolPresentation {
            sw: 0,
            wild: None,
            tame: (!k.is_zero(&as_residue)).then_some(TameSymbol { a }),
            unram_remainder: (unram_status != ZeroStatus::Zero).then_some(unram),
            unram_status,
            symbol_form,
            rest,
            certificate: rep.certificate,
        })
    }

    fn finish(
        &self,
        sw: i64,
        wild: WildSymbol<K::Elem>,
        symbol_form: Form1<K::Elem>,
        rd: SwanReport<K::Elem>,
    ) -> SymbolPresentation<K::Elem> {
        let k = self.residue();
        let unram = match &rd.leading_symbol {
            GradedSymbol::Tame { unram, .. } => unram.clone(),
            _ => k.zero(),
        };
        let unram_status = if k.is_zero(&unram) {
            ZeroStatus::Zero
        } else {
            rd.zero_status
        };
        SymbolPresentation {
            sw,
            wild: Some(wild),
            tame: None,
            unram_remainder: (unram_status != ZeroStatus::Zero).then_some(unram),
            unram_status,
            symbol_form,
            rest: rd.reduced_rep,
            certificate: rd.certificate,
        }
    }

    fn check_lowered(&self, last: i64, next: i64) -> Result<()> {
        if next >= last {
            return Err(Error::Reduction(format!(
                "slot correction at level {last} left conductor {next}"
            )));
        }
        Ok(())
    }

    /// Type II `[f/t^{pm}, e t)`.
    fn type_two(
        &self,
        w: &Form1<K::Elem>,
        rep: &SwanReport<K::Elem>,
    ) -> Result<SymbolPresentation<K::Elem>> {
        let k = self.residue();
        let f = self.field();
        let n = rep.sw;
        let GradedSymbol::WildDivisibleByP(beta) = &rep.leading_symbol else {
            return Err(Error::Reduction("expected a k/k^p symbol".into()));
        };
        let fbar = beta.clone();
        let dfbar = k.derivative(&fbar);
        let dfbar_inv = k
            .inv(&dfbar)
            .ok_or_else(|| Error::Reduction("leading symbol is a p-th power".into()))?;
        let mut fs = f.constant(fbar);
        let mut e = f.one();
        let mut last = n;
        let mut as_done = false;
        let mut unram_done = false;
        loop {
            let a = f.shift(&fs, -n);
            let b = f.shift(&e, 1);
            let s = self.a_dlog_b(&a, &b)?;
            let rd = self.report(&self.sub(w, &s))?;
            if rd.sw > 0 {
                self.check_lowered(last, rd.sw)?;
                let i = rd.sw;
                last = i;
                match &rd.leading_symbol {
                    GradedSymbol::WildDivisibleByP(gamma) => {
                        fs = f.add(&fs, &f.monomial(gamma.clone(), n - i));
                    }
                    GradedSymbol::WildPrimeToP(rho) => {
                        let h = k.neg(&k.mul(rho, &dfbar_inv));
                        e = f.mul(&e, &f.add(&f.one(), &f.monomial(h, n - i)));
                    }
                    GradedSymbol::Tame { .. } => unreachable!("positive conductor"),
                }
                continue;
            }
            last = 0;
            let GradedSymbol::Tame { as_residue, .. } = &rd.leading_symbol else {
                unreachable!("sw = 0");
            };
            if !k.is_zero(as_residue) && !as_done {
                as_done = true;
                fs = f.add(&fs, &f.monomial(as_residue.clone(), n));
                continue;
            }
            let c = rd.unram_input.clone().unwrap_or_else(|| k.zero());
            if rd.zero_status != ZeroStatus::Zero && !k.is_zero(&c) && !unram_done {
                unram_done = true;
                let h = k.neg(&k.mul(&c, &dfbar_inv));
                e = f.mul(&e, &f.add(&f.one(), &f.monomial(h, n)));
                continue;
            }
            let wild = WildSymbol {
                a,
                b,
                kind: SymbolType::II,
                exponent: n,
            };
            return Ok(self.finish(n, wild, s, rd));
        }
    }

    /// Type III `[c/t^n, g)`, `p ∤ n`.
    fn type_three(
        &self,
        w: &Form1<K::Elem>,
        rep: &SwanReport<K::Elem>,
    ) -> Result<SymbolPresentation<K::Elem>> {
        let k = self.residue();
        let f = self.field();
        let n = rep.sw;
        let GradedSymbol::WildPrimeToP(rho) = &rep.leading_symbol else {
            return Err(Error::Reduction("expected an Ω¹_k symbol".into()));
        };
        let theta = k
            .theta()
            .ok_or_else(|| Error::Reduction("wild symbol over a perfect residue field".into()))?;
        let cbar = k.mul(rho, &theta);
        let ncbar_inv = k
            .inv(&k.scale_int(&cbar, n))
            .ok_or_else(|| Error::Reduction("vanishing leading coefficient".into()))?;
        let mut c = f.constant(cbar);
        let mut g = f.constant(theta.clone());
        let mut last = n;
        let mut as_done = false;
        let mut unram_done = false;
        loop {
            let a = f.shift(&c, -n);
            let s = self.a_dlog_b(&a, &g)?;
            let rd = self.report(&self.sub(w, &s))?;
            if rd.sw > 0 {
                self.check_lowered(last, rd.sw)?;
                let i = rd.sw;
                last = i;
                match &rd.leading_symbol {
                    GradedSymbol::WildPrimeToP(sigma) => {
                        c = f.add(&c, &f.monomial(k.mul(sigma, &theta), n - i));
                    }
                    GradedSymbol::WildDivisibleByP(gamma) => {
                        let e = k.mul(gamma, &ncbar_inv);
                        g = f.mul(&g, &f.add(&f.one(), &f.monomial(e, n - i)));
                    }
                    GradedSymbol::Tame { .. } => unreachable!("positive conductor"),
                }
                continue;
            }
            last = 0;
            let GradedSymbol::Tame { as_residue, .. } = &rd.leading_symbol else {
                unreachable!("sw = 0");
            };
            if !k.is_zero(as_residue) && !as_done {
                as_done = true;
                let e = k.mul(as_residue, &ncbar_inv);
                g = f.mul(&g, &f.add(&f.one(), &f.monomial(e, n)));
                continue;
            }
            let c0 = rd.unram_input.clone().unwrap_or_else(|| k.zero());
            if rd.zero_status != ZeroStatus::Zero && !k.is_zero(&c0) && !unram_done {
                unram_done = true;
                c = f.add(&c, &f.monomial(k.mul(&c0, &theta), n));
                continue;
            }
            let wild = WildSymbol {
                a,
                b: g,
                kind: SymbolType::III,
                exponent: n,
            };
            return Ok(self.finish(n, wild, s, rd));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::CertStatus;
    use crate::residue::{Fq, RatFuncField};

    fn space() -> FormSpace<RatFuncField> {
        FormSpace::new(RatFuncField::new(Fq::new(2, 1).unwrap()), 40)
    }

    fn check(s: &FormSpace<RatFuncField>, w: &Form1<crate::residue::RatFunc>, sp: &SymbolPresentation<crate::residue::RatFunc>) {
        let out = s.add(&sp.symbol_form, &sp.rest);
        assert_eq!(s.cert_verify(w, &out, &sp.certificate), CertStatus::Valid);
    }

    #[test]
    fn type_two_example() {
        let s = space();
        let f = s.field();
        let x = s.residue().x();
        let w = s.dlog_t(&f.monomial(x.clone(), -2));
        let sp = s.normal_form(&w).unwrap();
        check(&s, &w, &sp);
        let wild = sp.wild.as_ref().unwrap();
        assert_eq!(wild.kind, SymbolType::II);
        assert_eq!(wild.a, f.monomial(x, -2));
        assert_eq!(wild.b, f.var_pow(1));
        assert!(sp.unram_remainder.is_none());
    }

    #[test]
    fn type_three_example() {
        let s = space();
        let f = s.field();
        let x = s.residue().x();
        let w = s.dlog_t(&f.monomial(x.clone(), -3));
        let sp = s.normal_form(&w).unwrap();
        check(&s, &w, &sp);
        let wild = sp.wild.as_ref().unwrap();
        assert_eq!(wild.kind, SymbolType::III);
        assert_eq!(wild.exponent, 3);
        assert_eq!(wild.a, f.monomial(x.clone(), -3));
        assert_eq!(wild.b, f.constant(x));
    }

    #[test]
    fn type_one_example() {
        let s = space();
        let f = s.field();
        let w = s.dlog_t(&f.one());
        let sp = s.normal_form(&w).unwrap();
        check(&s, &w, &sp);
        assert_eq!(sp.kind(), SymbolType::I);
        assert_eq!(sp.tame.as_ref().unwrap().a, f.one());
        assert!(sp.unram_remainder.is_none());
    }
}
