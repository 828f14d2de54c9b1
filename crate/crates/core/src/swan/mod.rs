//! Kato's filtration `M_j`, graded symbols and the Swan conductor, computed by
//! certified pole-lowering moves. All uniformizer-dependent data is relative to `t`.

mod normal;
mod split;

pub use normal::{SymbolPresentation, SymbolType, TameSymbol, WildSymbol};
pub use split::{SplitCertificate, SplitStatus};

use crate::error::{Error, Result};
use crate::forms::{Certificate, Form1, FormSpace, Move};
use crate::laurent::Series;
use crate::residue::{KMove, ResidueField, ZeroStatus};
use crate::ring::inv_mod_p;

/// Image of a class in `M_j / M_{j−1}`, or the tame data at `j = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum GradedSymbol<E> {
    /// `ρ` standing for `ρ dθ ∈ Ω¹_k` (`p ∤ j`).
    WildPrimeToP(E),
    /// `β̄ ∈ k/k^p`, reduced by removing its `k^p`-component (`p | j`).
    WildDivisibleByP(E),
    /// `unram dθ` over `k` and the Artin–Schreier residue in `k/℘(k)`.
    Tame { unram: E, as_residue: E },
}

impl<E> GradedSymbol<E> {
    pub fn label(&self) -> &'static str {
        match self {
            GradedSymbol::WildPrimeToP(_) => "WildPrimeToP",
            GradedSymbol::WildDivisibleByP(_) => "WildDivisibleByP",
            GradedSymbol::Tame { .. } => "Tame",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SwanReport<E> {
    pub sw: i64,
    pub leading_symbol: GradedSymbol<E>,
    pub reduced_rep: Form1<E>,
    /// `input − reduced_rep` as a sum of moves
    pub certificate: Certificate<E>,
    pub zero_status: ZeroStatus,
    /// Level-0 `dθ` coefficient before the Cartier reduction (tame reports only).
    pub unram_input: Option<E>,
}

/// A reduction that stopped early, with the work done so far.
#[derive(Clone, Debug)]
pub struct SwanFailure<E> {
    pub error: Error,
    pub partial: Form1<E>,
    pub certificate: Certificate<E>,
}

impl<E> From<SwanFailure<E>> for Error {
    fn from(f: SwanFailure<E>) -> Error {
        f.error
    }
}

/// Running state of a reduction: the current representative and its certificate.
pub(crate) struct Reducer<'a, K: ResidueField> {
    pub space: &'a FormSpace<K>,
    pub cur: Form1<K::Elem>,
    pub cert: Certificate<K::Elem>,
}

impl<'a, K: ResidueField> Reducer<'a, K> {
    pub fn new(space: &'a FormSpace<K>, w: &Form1<K::Elem>) -> Self {
        Reducer {
            space,
            cur: w.clone(),
            cert: Certificate::new(),
        }
    }

    pub fn apply(&mut self, m: Move<K::Elem>) {
        self.cur = self.space.apply(&self.cur, &m);
        self.cert.moves.push(m);
    }

    pub fn fail(self, error: Error) -> SwanFailure<K::Elem> {
        SwanFailure {
            error,
            partial: self.cur,
            certificate: self.cert,
        }
    }
}

impl<K: ResidueField> FormSpace<K> {
    fn layer(&self, c: K::Elem, e: i64) -> Series<K::Elem> {
        self.field().monomial(c, e)
    }

    /// `β̄` minus its `k^p`-component.
    fn strip_pth_power(&self, beta: &K::Elem) -> Result<K::Elem> {
        let k = self.residue();
        if k.theta().is_none() {
            return Ok(k.zero());
        }
        let comps = k.p_basis_decompose(beta)?;
        Ok(k.sub(beta, &k.frobenius(&comps[0])))
    }

    /// The class of `ω` in `M_j / M_{j−1}`.
    pub fn graded_symbol(&self, w: &Form1<K::Elem>, j: i64) -> Result<GradedSymbol<K::Elem>> {
        let k = self.residue();
        let p = k.characteristic() as i64;
        let pole = self.pole_order(w)?;
        if j < pole {
            return Err(Error::Precondition(format!(
                "graded symbol at level {j} below the pole order {pole}"
            )));
        }
        if j <= 0 {
            return Err(Error::Precondition("graded symbols need j > 0".into()));
        }
        let alpha = self.alpha(w, j);
        let beta = self.beta(w, j);
        if j % p != 0 {
            let inv_j = inv_mod_p(j, p as u32) as i64;
            let rho = k.add(&alpha, &k.scale_int(&k.derivative(&beta), inv_j));
            Ok(GradedSymbol::WildPrimeToP(rho))
        } else {
            Ok(GradedSymbol::WildDivisibleByP(self.strip_pth_power(&beta)?))
        }
    }

    /// Sw conductor with a certificate to a representative of pole order `sw`.
    pub fn swan_conductor(
        &self,
        w: &Form1<K::Elem>,
    ) -> std::result::Result<SwanReport<K::Elem>, SwanFailure<K::Elem>> {
        let mut r = Reducer::new(self, w);
        let p = self.residue().characteristic() as i64;
        let pole = match self.pole_order(w) {
            Ok(j) => j,
            Err(e) => return Err(r.fail(e)),
        };
        let h = self.horizon(w).bound();
        if h <= pole + p {
            return Err(r.fail(Error::PrecisionExhausted(format!(
                "horizon {h} must exceed pole order {pole} + p"
            ))));
        }
        loop {
            let j = match self.pole_order(&r.cur) {
                Ok(j) => j,
                Err(e) => return Err(r.fail(e)),
            };
            if j == 0 {
                return self.finish_tame(r);
            }
            match self.lower_layer(&mut r, j) {
                Ok(None) => continue,
                Ok(Some(symbol)) => {
                    return Ok(SwanReport {
                        sw: j,
                        leading_symbol: symbol,
                        reduced_rep: r.cur,
                        certificate: r.cert,
                        zero_status: ZeroStatus::NonZero,
                        unram_input: None,
                    })
                }
                Err(e) => return Err(r.fail(e)),
            }
        }
    }

    /// Clears level `j > 0` if its graded symbol vanishes, otherwise returns the symbol.
    fn lower_layer(
        &self,
        r: &mut Reducer<'_, K>,
        j: i64,
    ) -> Result<Option<GradedSymbol<K::Elem>>> {
        let k = self.residue();
        let p = k.characteristic() as i64;
        if j % p != 0 {
            let beta = self.beta(&r.cur, j);
            if !k.is_zero(&beta) {
                let inv_j = inv_mod_p(j, p as u32) as i64;
                let v = self.layer(k.neg(&k.scale_int(&beta, inv_j)), -j);
                r.apply(Move::Exact(v));
            }
            let rho = self.alpha(&r.cur, j);
            if !k.is_zero(&rho) {
                return Ok(Some(GradedSymbol::WildPrimeToP(rho)));
            }
            return Ok(None);
        }
        let alpha = self.alpha(&r.cur, j);
        if !k.is_zero(&alpha) {
            let (a, g) = k.cartier_decompose(&alpha)?;
            if !k.is_zero(&g) {
                r.apply(Move::Exact(self.layer(g, -j)));
            }
            if !k.is_zero(&a) {
                r.apply(Move::Frob(self.dtheta(&self.layer(a, -j / p))));
            }
        }
        let beta = self.beta(&r.cur, j);
        if k.is_zero(&beta) {
            return Ok(None);
        }
        if let Some(b) = k.pth_root(&beta)? {
            r.apply(Move::Frob(self.dlog_t(&self.layer(b, -j / p))));
            return Ok(None);
        }
        let comps = k.p_basis_decompose(&beta)?;
        if !k.is_zero(&comps[0]) {
            r.apply(Move::Frob(self.dlog_t(&self.layer(comps[0].clone(), -j / p))));
        }
        Ok(Some(GradedSymbol::WildDivisibleByP(self.beta(&r.cur, j))))
    }

    /// Kills the `t`-adically positive tail of a form with no poles.
    fn clear_tail(&self, r: &mut Reducer<'_, K>) {
        let f = self.field();
        let h = self.horizon(&r.cur).bound().min(self.precision());
        let tail = self.form(
            f.slice(&r.cur.dtheta, 1, h),
            f.slice(&r.cur.dt, 0, h - 1),
        );
        if self.is_zero(&tail) {
            return;
        }
        let mut u = self.zero();
        let mut pw = tail;
        while !self.is_zero(&pw) {
            u = self.add(&u, &pw);
            pw = self.truncate(&self.frobenius(&pw), h);
        }
        r.apply(Move::Frob(self.neg(&u)));
        r.cur = self.truncate(&r.cur, h);
    }

    fn finish_tame(
        &self,
        mut r: Reducer<'_, K>,
    ) -> std::result::Result<SwanReport<K::Elem>, SwanFailure<K::Elem>> {
        match self.tame_reduce(&mut r) {
            Ok((symbol, rep, status, alpha)) => Ok(SwanReport {
                sw: 0,
                leading_symbol: symbol,
                reduced_rep: rep,
                certificate: r.cert,
                zero_status: status,
                unram_input: Some(alpha),
            }),
            Err(e) => Err(r.fail(e)),
        }
    }

    pub(crate) fn tame_reduce(
        &self,
        r: &mut Reducer<'_, K>,
    ) -> Result<(GradedSymbol<K::Elem>, Form1<K::Elem>, ZeroStatus, K::Elem)> {
        let k = self.residue();
        let f = self.field();
        self.clear_tail(r);
        let beta = f.coeff_checked(&r.cur.dt, -1)?;
        let (u, as_res) = k.as_reduce(&beta)?;
        if !k.is_zero(&u) {
            r.apply(Move::Frob(self.dlog_t(&f.constant(u))));
        }
        let alpha = f.coeff_checked(&r.cur.dtheta, 0)?;
        let red = k.reduce_unram(&alpha)?;
        let alpha_in = alpha;
        for m in red.moves {
            match m {
                KMove::Exact(g) => r.apply(Move::Exact(f.constant(g))),
                KMove::Frob(a) => r.apply(Move::Frob(self.dtheta(&f.constant(a)))),
            }
        }
        let unram = red.remainder;
        let rep = self.add(
            &self.dtheta(&f.constant(unram.clone())),
            &self.dlog_t(&f.constant(as_res.clone())),
        );
        let status = if !k.is_zero(&as_res) {
            ZeroStatus::NonZero
        } else {
            red.status
        };
        Ok((
            GradedSymbol::Tame {
                unram,
                as_residue: as_res,
            },
            rep,
            status,
            alpha_in,
        ))
    }

    /// `(as_residue, unram)` of a form without poles.
    pub fn tame_residue(&self, w: &Form1<K::Elem>) -> Result<(K::Elem, K::Elem)> {
        if self.pole_order(w)? != 0 {
            return Err(Error::Precondition("tame residue needs pole order 0".into()));
        }
        let mut r = Reducer::new(self, w);
        match self.tame_reduce(&mut r)?.0 {
            GradedSymbol::Tame { unram, as_residue } => Ok((as_residue, unram)),
            _ => unreachable!("tame reduction yields a tame symbol"),
        }
    }
}
