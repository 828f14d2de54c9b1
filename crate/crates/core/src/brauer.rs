//! Brauer classes of level `p` (forms) and `p²` (Witt symbols), zero tests,
//! period and index reports.

use crate::error::{Error, Result};
use crate::forms::{Form1, FormSpace};
use crate::laurent::{LaurentRing, Series};
use crate::residue::{ResidueField, ResidueKind, ZeroStatus};
use crate::ring::Ring;
use crate::swan::{GradedSymbol, SplitStatus, SwanReport, SymbolType};
use crate::witt::{Witt, WittVec};

/// `[a, b)_2` with `a ∈ W_2(F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittSymbol<E> {
    pub a: WittVec<Series<E>>,
    pub b: Series<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BrauerRep<E> {
    Level1(Form1<E>),
    /// A sum of symbols; the empty sum is the zero class.
    Level2(Vec<WittSymbol<E>>),
}

impl<E> BrauerRep<E> {
    pub fn level(&self) -> u32 {
        match self {
            BrauerRep::Level1(_) => 1,
            BrauerRep::Level2(_) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroVerdict {
    pub status: ZeroStatus,
    pub reason: String,
}

/// The integers `d = w(π)`, `J^e = m_F B`, `e' = [k':k]`, `f² = [Δ:k']`, `n = deg D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationData {
    pub d: u64,
    pub e: u64,
    pub e_prime: u64,
    pub f: u64,
    pub n: u64,
}

impl ValuationData {
    pub fn relations_hold(&self) -> bool {
        self.e * self.d == self.n && self.e * self.e_prime * self.f * self.f == self.n * self.n
    }
}

#[derive(Clone, Debug)]
pub struct IndexReport {
    pub status: ZeroStatus,
    pub per: Option<u64>,
    pub ind: Option<u64>,
    pub splitting: Vec<String>,
    pub split_status: SplitStatus,
    pub valuation: Option<ValuationData>,
    pub sw: Option<i64>,
    pub normal_form: Option<SymbolType>,
    /// least `j` with `p^j x` tame
    pub m: Option<u32>,
    /// `([l:k]_s, [l:k]_i)` of the residue extension of a splitting field
    pub residue_degrees: Option<(u64, u64)>,
    pub assumptions: Vec<String>,
}

pub const ASSUME_UNIFORMIZER: &str = "uniformizer fixed to t";
pub const ASSUME_BRDIM: &str = "residue degrees assume Br.dim_p(l) = 0 for every finite extension l of k";
pub const ASSUME_SPLIT: &str = "index certified by an explicit degree-p splitting field";
pub const ASSUME_LEVEL2_INDEX: &str = "level-2 index taken equal to the period (Brauer dimension one), not certified";

#[derive(Clone, Debug)]
pub struct Brauer<K: ResidueField> {
    space: FormSpace<K>,
    witt: Witt<LaurentRing<K>>,
}

impl<K: ResidueField> Brauer<K> {
    pub fn new(space: FormSpace<K>) -> Result<Self> {
        let witt = Witt::new(space.field().clone())?;
        Ok(Brauer { space, witt })
    }

    pub fn space(&self) -> &FormSpace<K> {
        &self.space
    }

    pub fn witt(&self) -> &Witt<LaurentRing<K>> {
        &self.witt
    }

    fn p(&self) -> u64 {
        self.space.residue().characteristic() as u64
    }

    /// `[a, b)` as a class of level `len(a)`.
    pub fn symbol_class(
        &self,
        a: &WittVec<Series<K::Elem>>,
        b: &Series<K::Elem>,
    ) -> Result<BrauerRep<K::Elem>> {
        if self.space.field().is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        match a.len() {
            1 => Ok(BrauerRep::Level1(self.space.a_dlog_b(&a.comps[0], b)?)),
            2 => Ok(BrauerRep::Level2(vec![WittSymbol {
                a: a.clone(),
                b: b.clone(),
            }])),
            n => Err(Error::Unsupported(format!("Witt length {n}"))),
        }
    }

    pub fn add(&self, x: &BrauerRep<K::Elem>, y: &BrauerRep<K::Elem>) -> Result<BrauerRep<K::Elem>> {
        match (x, y) {
            (BrauerRep::Level1(a), BrauerRep::Level1(b)) => Ok(BrauerRep::Level1(self.space.add(a, b))),
            (BrauerRep::Level2(a), BrauerRep::Level2(b)) => {
                Ok(BrauerRep::Level2(a.iter().chain(b).cloned().collect()))
            }
            _ => Err(Error::ContextMismatch("adding classes of different levels".into())),
        }
    }

    pub fn neg(&self, x: &BrauerRep<K::Elem>) -> BrauerRep<K::Elem> {
        match x {
            BrauerRep::Level1(a) => BrauerRep::Level1(self.space.neg(a)),
            BrauerRep::Level2(syms) => BrauerRep::Level2(
                syms.iter()
                    .map(|s| WittSymbol {
                        a: self.witt.neg(&s.a),
                        b: s.b.clone(),
                    })
                    .collect(),
            ),
        }
    }

    /// `V`: `A dθ + B dt = [Aθ, θ) + [tB, t)` goes to `[(0, Aθ), θ)_2 + [(0, tB), t)_2`.
    pub fn map_v(&self, x: &BrauerRep<K::Elem>) -> Result<BrauerRep<K::Elem>> {
        let BrauerRep::Level1(w) = x else {
            return Err(Error::ContextMismatch("V expects a level-1 class".into()));
        };
        let f = self.space.field();
        let k = self.space.residue();
        let mut syms = Vec::new();
        if let Some(th) = k.theta() {
            let a = f.scale(&w.dtheta, &th);
            if !f.is_zero(&a) {
                syms.push(WittSymbol {
                    a: self.witt.verschiebung(&WittVec { comps: vec![a] })?,
                    b: f.constant(th),
                });
            }
        }
        let a = f.shift(&w.dt, 1);
        if !f.is_zero(&a) {
            syms.push(WittSymbol {
                a: self.witt.verschiebung(&WittVec { comps: vec![a] })?,
                b: f.var_pow(1),
            });
        }
        Ok(BrauerRep::Level2(syms))
    }

    /// `R¹`: `[(a_0, a_1), b)_2 ↦ a_0 dlog b`.
    pub fn map_r1(&self, x: &BrauerRep<K::Elem>) -> Result<BrauerRep<K::Elem>> {
        let BrauerRep::Level2(syms) = x else {
            return Err(Error::ContextMismatch("R¹ expects a level-2 class".into()));
        };
        let mut acc = self.space.zero();
        for s in syms {
            let a0 = &self.witt.restriction(&s.a)?.comps[0];
            acc = self.space.add(&acc, &self.space.a_dlog_b(a0, &s.b)?);
        }
        Ok(BrauerRep::Level1(acc))
    }

    /// Writes a level-2 class with vanishing `R¹` image as `V(y)`, symbol by symbol.
    pub fn peel(&self, x: &BrauerRep<K::Elem>) -> Result<Option<Form1<K::Elem>>> {
        let BrauerRep::Level2(syms) = x else {
            return Err(Error::ContextMismatch("peeling expects a level-2 class".into()));
        };
        let f = self.space.field();
        // [w, b) + [w', b) = [w + w', b)
        let mut grouped: Vec<WittSymbol<K::Elem>> = Vec::new();
        for s in syms {
            match grouped.iter_mut().find(|g| g.b == s.b) {
                Some(g) => g.a = self.witt.add(&g.a, &s.a)?,
                None => grouped.push(s.clone()),
            }
        }
        let mut acc = self.space.zero();
        for s in &grouped {
            let (a0, a1) = (&s.a.comps[0], &s.a.comps[1]);
            let piece = if f.is_zero(a0) {
                self.space.a_dlog_b(a1, &s.b)?
            } else if let Some(c) = f.pth_root(&s.b)? {
                // [w, c^p)_2 = p[w, c)_2 = V([a_0^p, c))
                self.space.a_dlog_b(&f.frobenius(a0), &c)?
            } else {
                let (u, r) = f.as_reduce(a0)?;
                if !f.is_zero(&r) {
                    return Ok(None);
                }
                let shifted = self.witt.sub(&s.a, &self.witt.as_map(&self.witt.teichmuller(u, 2)))?;
                self.space.a_dlog_b(&shifted.comps[1], &s.b)?
            };
            acc = self.space.add(&acc, &piece);
        }
        Ok(Some(acc))
    }

    fn swan(&self, w: &Form1<K::Elem>) -> Result<SwanReport<K::Elem>> {
        self.space.swan_conductor(w).map_err(Error::from)
    }

    fn is_zero_form(&self, w: &Form1<K::Elem>) -> Result<ZeroVerdict> {
        let rep = self.swan(w)?;
        let k = self.space.residue();
        if rep.sw > 0 {
            return Ok(ZeroVerdict {
                status: ZeroStatus::NonZero,
                reason: format!("sw = {} > 0", rep.sw),
            });
        }
        let GradedSymbol::Tame { unram, as_residue } = &rep.leading_symbol else {
            unreachable!("sw = 0 reports carry tame data");
        };
        if !k.is_zero(as_residue) {
            return Ok(ZeroVerdict {
                status: ZeroStatus::NonZero,
                reason: format!("tame residue {} not in P(k)", k.format(as_residue)),
            });
        }
        let reason = match (k.kind(), rep.zero_status) {
            (ResidueKind::Finite, _) => "tame, unramified over a finite residue field".to_string(),
            (ResidueKind::TruncatedLocal, s) => {
                let inv = k
                    .local_invariant(unram)
                    .ok_or_else(|| Error::Unsupported("local invariant".into()))??;
                if (inv == 0) != (s == ZeroStatus::Zero) {
                    return Err(Error::Reduction(format!(
                        "local invariant {inv} disagrees with the Cartier reduction"
                    )));
                }
                format!("unramified part has local invariant {inv}")
            }
            (ResidueKind::RationalFunction, ZeroStatus::Zero) => {
                "unramified part reduces to zero".to_string()
            }
            (ResidueKind::RationalFunction, _) => format!(
                "unramified remainder {} dθ over k not decided",
                k.format(unram)
            ),
        };
        Ok(ZeroVerdict {
            status: rep.zero_status,
            reason,
        })
    }

    pub fn is_zero(&self, x: &BrauerRep<K::Elem>) -> Result<ZeroVerdict> {
        match x {
            BrauerRep::Level1(w) => self.is_zero_form(w),
            BrauerRep::Level2(_) => {
                let BrauerRep::Level1(r1) = self.map_r1(x)? else { unreachable!() };
                let v = self.is_zero_form(&r1)?;
                match v.status {
                    ZeroStatus::NonZero => Ok(ZeroVerdict {
                        status: ZeroStatus::NonZero,
                        reason: format!("R1 image is nonzero ({})", v.reason),
                    }),
                    ZeroStatus::Unknown => Ok(ZeroVerdict {
                        status: ZeroStatus::Unknown,
                        reason: format!("R1 image undecided ({})", v.reason),
                    }),
                    ZeroStatus::Zero => match self.peel(x)? {
                        Some(y) => {
                            let inner = self.is_zero_form(&y)?;
                            Ok(ZeroVerdict {
                                status: inner.status,
                                reason: format!("in the image of V; {}", inner.reason),
                            })
                        }
                        None => Ok(ZeroVerdict {
                            status: ZeroStatus::Unknown,
                            reason: "R1 image vanishes but no V-preimage was found".into(),
                        }),
                    },
                }
            }
        }
    }

    pub fn period(&self, x: &BrauerRep<K::Elem>) -> Result<Option<u64>> {
        let p = self.p();
        let v = self.is_zero(x)?;
        Ok(match (x, v.status) {
            (_, ZeroStatus::Zero) => Some(1),
            (_, ZeroStatus::Unknown) => None,
            (BrauerRep::Level1(_), ZeroStatus::NonZero) => Some(p),
            (BrauerRep::Level2(_), ZeroStatus::NonZero) => {
                let r1 = self.map_r1(x)?;
                if self.is_zero(&r1)?.status == ZeroStatus::NonZero {
                    Some(p * p)
                } else {
                    Some(p)
                }
            }
        })
    }

    fn valuation_data(&self, status: ZeroStatus, rep: &SwanReport<K::Elem>) -> Option<ValuationData> {
        let p = self.p();
        let k = self.space.residue();
        match status {
            ZeroStatus::Zero => Some(ValuationData { d: 1, e: 1, e_prime: 1, f: 1, n: 1 }),
            ZeroStatus::Unknown => None,
            ZeroStatus::NonZero => {
                let ramified = rep.sw > 0
                    || matches!(&rep.leading_symbol, GradedSymbol::Tame { as_residue, .. } if !k.is_zero(as_residue));
                Some(if ramified {
                    ValuationData { d: 1, e: p, e_prime: p, f: 1, n: p }
                } else {
                    ValuationData { d: p, e: 1, e_prime: 1, f: p, n: p }
                })
            }
        }
    }

    fn degrees(&self, per: u64, m: u32) -> (u64, u64) {
        let p = self.p();
        let n = ilog(per, p);
        (p.pow(n.saturating_sub(m)), p.pow(m.min(n)))
    }

    pub fn index_report(&self, x: &BrauerRep<K::Elem>) -> Result<IndexReport> {
        match x {
            BrauerRep::Level1(w) => self.index_report_level1(w),
            BrauerRep::Level2(_) => self.index_report_level2(x),
        }
    }

    fn index_report_level1(&self, w: &Form1<K::Elem>) -> Result<IndexReport> {
        let p = self.p();
        let verdict = self.is_zero_form(w)?;
        let rep = self.swan(w)?;
        let mut assumptions = vec![ASSUME_UNIFORMIZER.to_string()];
        let per = match verdict.status {
            ZeroStatus::Zero => Some(1),
            ZeroStatus::NonZero => Some(p),
            ZeroStatus::Unknown => None,
        };
        let sp = self.space.normal_form(w)?;
        let split = self.space.split_certificate(&sp)?;
        let ind = match (per, split.status) {
            (Some(per), SplitStatus::Verified) if split.degree == per => {
                assumptions.push(ASSUME_SPLIT.to_string());
                Some(per)
            }
            _ => None,
        };
        let m = per.map(|_| if rep.sw > 0 { 1 } else { 0 });
        let residue_degrees = match (per, m) {
            (Some(per), Some(m)) if per > 1 => {
                assumptions.push(ASSUME_BRDIM.to_string());
                Some(self.degrees(per, m))
            }
            _ => None,
        };
        Ok(IndexReport {
            status: verdict.status,
            per,
            ind,
            splitting: split.descriptors,
            split_status: split.status,
            valuation: self.valuation_data(verdict.status, &rep),
            sw: Some(rep.sw),
            normal_form: Some(sp.kind()),
            m,
            residue_degrees,
            assumptions,
        })
    }

    fn index_report_level2(&self, x: &BrauerRep<K::Elem>) -> Result<IndexReport> {
        let p = self.p();
        let BrauerRep::Level1(r1) = self.map_r1(x)? else { unreachable!() };
        let r1_rep = self.swan(&r1)?;
        let r1_verdict = self.is_zero_form(&r1)?;
        let mut assumptions = vec![ASSUME_UNIFORMIZER.to_string()];
        let mut report = IndexReport {
            status: ZeroStatus::Unknown,
            per: None,
            ind: None,
            splitting: vec![],
            split_status: SplitStatus::Unknown,
            valuation: None,
            sw: None,
            normal_form: None,
            m: None,
            residue_degrees: None,
            assumptions: vec![],
        };
        match r1_verdict.status {
            ZeroStatus::Unknown => {}
            ZeroStatus::NonZero => {
                report.status = ZeroStatus::NonZero;
                report.per = Some(p * p);
                report.ind = Some(p * p);
                assumptions.push(ASSUME_LEVEL2_INDEX.to_string());
                report.m = if r1_rep.sw > 0 {
                    Some(2)
                } else {
                    let BrauerRep::Level2(syms) = x else { unreachable!() };
                    let integral = syms
                        .iter()
                        .all(|s| s.a.comps[0].valuation_bound() >= 0 && s.b.valuation().is_some());
                    if integral {
                        let mut z1 = self.space.zero();
                        for s in syms {
                            z1 = self.space.add(&z1, &self.space.a_dlog_b(&s.a.comps[1], &s.b)?);
                        }
                        Some(if self.swan(&z1)?.sw > 0 { 1 } else { 0 })
                    } else {
                        None
                    }
                };
            }
            ZeroStatus::Zero => {
                if let Some(y) = self.peel(x)? {
                    let inner = self.index_report_level1(&y)?;
                    assumptions.push("class lies in the image of V".to_string());
                    assumptions.extend(
                        inner.assumptions.iter().filter(|a| a.as_str() != ASSUME_UNIFORMIZER).cloned(),
                    );
                    report = IndexReport {
                        assumptions: vec![],
                        valuation: None,
                        ..inner
                    };
                }
            }
        }
        if let (Some(per), Some(m)) = (report.per, report.m) {
            if per > 1 {
                report.residue_degrees = Some(self.degrees(per, m));
                if !assumptions.iter().any(|a| a == ASSUME_BRDIM) {
                    assumptions.push(ASSUME_BRDIM.to_string());
                }
            }
        }
        assumptions.dedup();
        report.assumptions = assumptions;
        Ok(report)
    }
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut n = 0;
    while x > 1 {
        x /= p;
        n += 1;
    }
    n
}
