//! Evaluation of syntax trees in a configured field.

use brauer_core::brauer::{Brauer, BrauerRep};
use brauer_core::laurent::Series;
use brauer_core::residue::ResidueField;
use brauer_core::ring::Ring;
use brauer_core::surface::{Bivariate, BivariateClass, RestrictedSymbol, Surface};
use brauer_core::witt::WittVec;
use brauer_core::{Error, Result};

use crate::ast::{Atom, Elem, FormAst, Var, WittAst};

const MAX_EXPONENT: i64 = 4096;

fn check_exponent(n: i64) -> Result<()> {
    if n.abs() > MAX_EXPONENT {
        return Err(Error::Unsupported(format!("exponent {n} exceeds {MAX_EXPONENT}")));
    }
    Ok(())
}

fn int_mod(n: u64, p: u32) -> i64 {
    (n % p as u64) as i64
}

/// `elem` as an element of `F = k((t))`.
pub fn elem<K: ResidueField>(b: &Brauer<K>, e: &Elem) -> Result<Series<K::Elem>> {
    let f = b.space().field();
    let k = b.space().residue();
    Ok(match e {
        Elem::Int(n) => f.from_int(int_mod(*n, k.characteristic())),
        Elem::Var(Var::T) => f.var_pow(1),
        Elem::Var(Var::W) => f.constant(k.embed(k.fq().generator())),
        Elem::Var(v @ (Var::X | Var::S)) => {
            let th = k
                .theta()
                .filter(|_| k.theta_label() == Some(v.name()))
                .ok_or_else(|| Error::ContextMismatch(format!("variable {} is not defined here", v.name())))?;
            f.constant(th)
        }
        Elem::Var(Var::Pi) => {
            return Err(Error::ContextMismatch("pi is only defined for local2d".into()));
        }
        Elem::Neg(a) => f.neg(&elem(b, a)?),
        Elem::Add(x, y) => f.add(&elem(b, x)?, &elem(b, y)?),
        Elem::Sub(x, y) => f.sub(&elem(b, x)?, &elem(b, y)?),
        Elem::Mul(x, y) => f.mul(&elem(b, x)?, &elem(b, y)?),
        Elem::Div(x, y) => f.try_div(&elem(b, x)?, &elem(b, y)?)?,
        Elem::Pow(x, n) => {
            check_exponent(*n)?;
            let base = elem(b, x)?;
            let base = if *n < 0 { f.try_inv(&base)? } else { base };
            pow(f, &base, n.unsigned_abs())
        }
    })
}

fn pow<R: Ring>(r: &R, x: &R::Elem, mut n: u64) -> R::Elem {
    let mut acc = r.one();
    let mut sq = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = r.mul(&acc, &sq);
        }
        n >>= 1;
        if n > 0 {
            sq = r.mul(&sq, &sq);
        }
    }
    acc
}

/// The class of a form expression. Inputs with a length-2 Witt vector are
/// level 2; their plain terms are included through `V`.
pub fn class<K: ResidueField>(b: &Brauer<K>, ast: &FormAst) -> Result<BrauerRep<K::Elem>> {
    let space = b.space();
    let level = ast.level();
    let mut acc = match level {
        1 => BrauerRep::Level1(space.zero()),
        _ => BrauerRep::Level2(vec![]),
    };
    for term in &ast.terms {
        let coef = term.coef.as_ref().map(|c| elem(b, c)).transpose()?;
        let scale = |w| match &coef {
            Some(c) => space.scale(c, &w),
            None => w,
        };
        let x = match &term.atom {
            Atom::D(e) => BrauerRep::Level1(scale(space.d(&elem(b, e)?))),
            Atom::Dlog(e) => BrauerRep::Level1(scale(space.dlog(&elem(b, e)?)?)),
            Atom::Sym(WittAst::One(a), g) => {
                BrauerRep::Level1(space.a_dlog_b(&elem(b, a)?, &elem(b, g)?)?)
            }
            Atom::Sym(WittAst::W2(a0, a1), g) => {
                let a = WittVec {
                    comps: vec![elem(b, a0)?, elem(b, a1)?],
                };
                b.symbol_class(&a, &elem(b, g)?)?
            }
        };
        let x = match (level, &x) {
            (2, BrauerRep::Level1(_)) => b.map_v(&x)?,
            _ => x,
        };
        let x = if term.neg { b.neg(&x) } else { x };
        acc = b.add(&acc, &x)?;
    }
    Ok(acc)
}

/// `elem` as a Laurent polynomial in `π, t` over `F_q`.
pub fn bivariate(s: &Surface, e: &Elem) -> Result<Bivariate> {
    let fq = s.fq();
    Ok(match e {
        Elem::Int(n) => s.constant(fq.prime_field_elem(int_mod(*n, s.p()) as u32)),
        Elem::Var(Var::T) => s.monomial(fq.one(), 0, 1),
        Elem::Var(Var::Pi) => s.monomial(fq.one(), 1, 0),
        Elem::Var(Var::W) => s.constant(fq.generator()),
        Elem::Var(v) => {
            return Err(Error::ContextMismatch(format!("variable {} is not defined for local2d", v.name())));
        }
        Elem::Neg(a) => s.neg(&bivariate(s, a)?),
        Elem::Add(x, y) => s.add(&bivariate(s, x)?, &bivariate(s, y)?),
        Elem::Sub(x, y) => s.sub(&bivariate(s, x)?, &bivariate(s, y)?),
        Elem::Mul(x, y) => s.mul(&bivariate(s, x)?, &bivariate(s, y)?),
        Elem::Div(x, y) => s.div(&bivariate(s, x)?, &bivariate(s, y)?)?,
        Elem::Pow(x, n) => {
            check_exponent(*n)?;
            s.pow(&bivariate(s, x)?, *n)?
        }
    })
}

/// A class in the restricted symbol grammar: `sym(f; g)` and `f*dlog(g)` terms.
pub fn restricted_class(s: &Surface, ast: &FormAst) -> Result<BivariateClass> {
    let one = s.constant(s.fq().one());
    let mut symbols = Vec::new();
    for term in &ast.terms {
        let (f, g) = match &term.atom {
            Atom::Sym(WittAst::One(f), g) => (bivariate(s, f)?, bivariate(s, g)?),
            Atom::Dlog(g) => {
                let f = match &term.coef {
                    Some(c) => bivariate(s, c)?,
                    None => one.clone(),
                };
                (f, bivariate(s, g)?)
            }
            Atom::D(_) => {
                return Err(Error::Unsupported("d(...) terms are outside the restricted symbol grammar".into()));
            }
            Atom::Sym(WittAst::W2(..), _) => {
                return Err(Error::Unsupported("local2d takes level-1 symbols only".into()));
            }
        };
        s.slot_monomial(&g)?;
        let f = if term.neg { s.neg(&f) } else { f };
        symbols.push(RestrictedSymbol { f, g });
    }
    Ok(BivariateClass { symbols })
}
