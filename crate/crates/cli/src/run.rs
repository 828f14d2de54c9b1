//! Command dispatch.

use std::fmt;

use brauer_core::brauer::{Brauer, BrauerRep, IndexReport};
use brauer_core::forms::{Form1, FormSpace};
use brauer_core::laurent::DEFAULT_PRECISION;
use brauer_core::residue::{Fq, LocalField, RatFuncField, ResidueField};
use brauer_core::ring::Ring;
use brauer_core::surface::{Divisor, Surface, LIFT_CONVENTION};
use brauer_core::swan::GradedSymbol;
use brauer_core::Error;
use rayon::prelude::*;

use crate::ast::{FormAst, Var};
use crate::eval;
use crate::parse::{parse, ParseError};
use crate::report::{Context, NormalForm, Report, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Sw,
    NormalForm,
    IsZero,
    PerInd,
    Witt,
    Local2d,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sw => "sw",
            Command::NormalForm => "normal-form",
            Command::IsZero => "is-zero",
            Command::PerInd => "per-ind",
            Command::Witt => "witt",
            Command::Local2d => "local2d",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Residue {
    Fq,
    RatFunc,
    Local,
}

impl Residue {
    pub fn name(self) -> &'static str {
        match self {
            Residue::Fq => "fq",
            Residue::RatFunc => "ratfunc",
            Residue::Local => "local",
        }
    }
}

/// Default precision of the residue series for `local` and of `π` for `local2d`.
pub const DEFAULT_INNER_PRECISION: i64 = 24;
/// Default `t`-precision for `local2d`, where both directions are truncated.
pub const DEFAULT_SURFACE_PRECISION: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub command: Command,
    pub p: u32,
    pub q: Option<u32>,
    pub residue: Residue,
    pub prec: Option<i64>,
    pub inner_prec: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(ParseError),
    Precondition(String),
    Precision(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Precision(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Precondition(_) => "precondition",
            CliError::Precision(_) => "precision",
            CliError::Other(_) => "error",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "syntax error {e}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Precision(m) => write!(f, "precision exhausted: {m}"),
            CliError::Other(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => CliError::Precondition(m),
            Error::PrecisionExhausted(m) => CliError::Precision(m),
            other => CliError::Other(other.to_string()),
        }
    }
}

type Out<T> = std::result::Result<T, CliError>;

impl Session {
    fn q(&self) -> u32 {
        self.q.unwrap_or(self.p)
    }

    fn fq(&self) -> Out<Fq> {
        let q = self.q();
        let mut n = 0;
        let mut r = q;
        while r > 1 && r % self.p == 0 {
            r /= self.p;
            n += 1;
        }
        if r != 1 || n == 0 {
            return Err(CliError::Other(format!("q = {q} is not a power of p = {}", self.p)));
        }
        Ok(Fq::new(self.p, n)?)
    }

    fn prec(&self) -> Out<i64> {
        let default = match self.command {
            Command::Local2d => DEFAULT_SURFACE_PRECISION,
            _ => DEFAULT_PRECISION,
        };
        positive(self.prec.unwrap_or(default), "--prec")
    }

    fn inner_prec(&self) -> Out<i64> {
        positive(self.inner_prec.unwrap_or(DEFAULT_INNER_PRECISION), "--inner-prec")
    }

    /// Variables valid in this context.
    pub fn vars(&self) -> Vec<Var> {
        match (self.command, self.residue) {
            (Command::Local2d, _) => vec![Var::Pi, Var::T, Var::W],
            (_, Residue::Fq) => vec![Var::T, Var::W],
            (_, Residue::RatFunc) => vec![Var::X, Var::T, Var::W],
            (_, Residue::Local) => vec![Var::S, Var::T, Var::W],
        }
    }

    fn context(&self) -> Out<Context> {
        Ok(match (self.command, self.residue) {
            (Command::Local2d, _) => Context {
                p: self.p,
                q: self.q(),
                residue: "fq".into(),
                prec: self.prec()?,
                inner_prec: Some(positive(
                    self.inner_prec.unwrap_or(DEFAULT_SURFACE_PRECISION),
                    "--inner-prec",
                )?),
            },
            (_, r) => Context {
                p: self.p,
                q: self.q(),
                residue: r.name().into(),
                prec: self.prec()?,
                inner_prec: (r == Residue::Local).then_some(self.inner_prec()?),
            },
        })
    }

    pub fn parse(&self, input: &str) -> Out<FormAst> {
        parse(input, &self.vars()).map_err(CliError::Parse)
    }

    /// Parses and evaluates one input.
    pub fn run(&self, input: &str) -> Out<Report> {
        let ast = self.parse(input)?;
        self.run_ast(&ast)
    }

    pub fn run_ast(&self, ast: &FormAst) -> Out<Report> {
        let ctx = self.context()?;
        let mut report = Report::new(self.command.name(), ctx.clone(), ast.to_string());
        let fq = self.fq()?;
        if self.command == Command::Local2d {
            let n_pi = ctx.inner_prec.expect("local2d carries both precisions");
            local2d(&Surface::new(fq, n_pi, ctx.prec)?, ast, &mut report)?;
            return Ok(report);
        }
        match self.residue {
            Residue::Fq => dispatch(self.command, &Brauer::new(FormSpace::new(fq, ctx.prec))?, ast, &mut report)?,
            Residue::RatFunc => dispatch(
                self.command,
                &Brauer::new(FormSpace::new(RatFuncField::new(fq), ctx.prec))?,
                ast,
                &mut report,
            )?,
            Residue::Local => dispatch(
                self.command,
                &Brauer::new(FormSpace::new(LocalField::new(fq, "s", self.inner_prec()?), ctx.prec))?,
                ast,
                &mut report,
            )?,
        }
        Ok(report)
    }

    /// Evaluates every input in parallel; results keep the input order.
    pub fn run_batch(&self, inputs: &[String]) -> Vec<Out<Report>> {
        inputs.par_iter().map(|s| self.run(s)).collect()
    }
}

fn positive(n: i64, flag: &str) -> Out<i64> {
    if n < 1 {
        return Err(CliError::Other(format!("{flag} must be positive")));
    }
    Ok(n)
}

fn level_one<E: Clone>(x: &BrauerRep<E>, cmd: Command) -> Out<Form1<E>> {
    match x {
        BrauerRep::Level1(w) => Ok(w.clone()),
        BrauerRep::Level2(_) => Err(CliError::Precondition(format!(
            "{} expects a class killed by p; use witt or per-ind for length-2 Witt symbols",
            cmd.name()
        ))),
    }
}

fn dispatch<K: ResidueField>(cmd: Command, b: &Brauer<K>, ast: &FormAst, report: &mut Report) -> Out<()> {
    let x = eval::class(b, ast)?;
    match cmd {
        Command::Sw => sw(b, &level_one(&x, cmd)?, report),
        Command::NormalForm => normal_form(b, &level_one(&x, cmd)?, report),
        Command::IsZero => is_zero(b, &x, report),
        Command::PerInd => per_ind(b, &x, report),
        Command::Witt => witt(b, &x, report),
        Command::Local2d => unreachable!("handled by the caller"),
    }
}

fn leading_label<K: ResidueField>(b: &Brauer<K>, g: &GradedSymbol<K::Elem>) -> String {
    let k = b.space().residue();
    match g {
        GradedSymbol::Tame { unram, as_residue } => {
            format!("tame(unram = {}, as_residue = {})", k.format(unram), k.format(as_residue))
        }
        GradedSymbol::WildPrimeToP(rho) => format!("rho = {} (p does not divide sw)", k.format(rho)),
        GradedSymbol::WildDivisibleByP(beta) => format!("beta = {} mod k^p (p divides sw)", k.format(beta)),
    }
}

fn sw<K: ResidueField>(b: &Brauer<K>, w: &Form1<K::Elem>, report: &mut Report) -> Out<()> {
    let space = b.space();
    let rep = space.swan_conductor(w).map_err(Error::from)?;
    let verdict = b.is_zero(&BrauerRep::Level1(w.clone()))?;
    report.sw = Some(rep.sw);
    report.zero_status = Some(verdict.status.label().into());
    report.certificate_status = Some(space.cert_verify(w, &rep.reduced_rep, &rep.certificate).label().into());
    report.extras.level = Some(1);
    report.extras.reason = Some(verdict.reason);
    report.extras.leading_symbol = Some(leading_label(b, &rep.leading_symbol));
    report.extras.reduced = Some(space.format(&rep.reduced_rep));
    report.extras.moves = Some(rep.certificate.len());
    Ok(())
}

fn normal_form<K: ResidueField>(b: &Brauer<K>, w: &Form1<K::Elem>, report: &mut Report) -> Out<()> {
    let space = b.space();
    let f = space.field();
    let k = space.residue();
    let sp = space.normal_form(w)?;
    let verdict = b.is_zero(&BrauerRep::Level1(w.clone()))?;
    let out = space.add(&sp.symbol_form, &sp.rest);
    let (a, sym_b) = match (&sp.wild, &sp.tame) {
        (Some(wild), _) => (Some(f.format_series(&wild.a)), Some(f.format_series(&wild.b))),
        (None, Some(t)) => (Some(f.format_series(&t.a)), Some("t".to_string())),
        (None, None) => (None, None),
    };
    let split = space.split_certificate(&sp)?;
    report.sw = Some(sp.sw);
    report.zero_status = Some(verdict.status.label().into());
    report.normal_form = Some(NormalForm {
        kind: sp.kind().label().into(),
        a,
        b: sym_b,
    });
    report.splitting = split.descriptors;
    report.certificate_status = Some(space.cert_verify(w, &out, &sp.certificate).label().into());
    report.extras.level = Some(1);
    report.extras.moves = Some(sp.certificate.len());
    report.extras.unram_remainder = sp.unram_remainder.as_ref().map(|r| k.format(r));
    report.extras.split_status = Some(split.status.label().into());
    Ok(())
}

fn is_zero<K: ResidueField>(b: &Brauer<K>, x: &BrauerRep<K::Elem>, report: &mut Report) -> Out<()> {
    let verdict = b.is_zero(x)?;
    if let BrauerRep::Level1(w) = x {
        let rep = b.space().swan_conductor(w).map_err(Error::from)?;
        report.sw = Some(rep.sw);
    }
    report.zero_status = Some(verdict.status.label().into());
    report.extras.level = Some(x.level());
    report.extras.reason = Some(verdict.reason);
    Ok(())
}

fn fill_index(report: &mut Report, ir: IndexReport) {
    report.zero_status = Some(ir.status.label().into());
    report.sw = ir.sw;
    report.per = ir.per;
    report.ind = ir.ind;
    report.splitting = ir.splitting;
    report.assumptions = ir.assumptions;
    report.extras.split_status = Some(ir.split_status.label().into());
    report.extras.valuation = ir.valuation.map(|v| Valuation {
        d: v.d,
        e: v.e,
        e_prime: v.e_prime,
        f: v.f,
        n: v.n,
    });
    report.extras.m = ir.m;
    report.extras.residue_degrees = ir.residue_degrees.map(|(s, i)| [s, i]);
}

fn per_ind<K: ResidueField>(b: &Brauer<K>, x: &BrauerRep<K::Elem>, report: &mut Report) -> Out<()> {
    let ir = b.index_report(x)?;
    if let BrauerRep::Level1(w) = x {
        let space = b.space();
        let f = space.field();
        let sp = space.normal_form(w)?;
        let out = space.add(&sp.symbol_form, &sp.rest);
        let (a, sym_b) = match (&sp.wild, &sp.tame) {
            (Some(wild), _) => (Some(f.format_series(&wild.a)), Some(f.format_series(&wild.b))),
            (None, Some(t)) => (Some(f.format_series(&t.a)), Some("t".to_string())),
            (None, None) => (None, None),
        };
        report.normal_form = Some(NormalForm {
            kind: sp.kind().label().into(),
            a,
            b: sym_b,
        });
        report.certificate_status = Some(space.cert_verify(w, &out, &sp.certificate).label().into());
    }
    fill_index(report, ir);
    report.extras.level = Some(x.level());
    Ok(())
}

fn witt<K: ResidueField>(b: &Brauer<K>, x: &BrauerRep<K::Elem>, report: &mut Report) -> Out<()> {
    let space = b.space();
    let x = match x {
        BrauerRep::Level1(_) => b.map_v(x)?,
        BrauerRep::Level2(_) => x.clone(),
    };
    let BrauerRep::Level1(r1) = b.map_r1(&x)? else {
        unreachable!("R1 lands in level 1")
    };
    let r1_verdict = b.is_zero(&BrauerRep::Level1(r1.clone()))?;
    let r1_rep = space.swan_conductor(&r1).map_err(Error::from)?;
    let verdict = b.is_zero(&x)?;
    let ir = b.index_report(&x)?;
    fill_index(report, ir);
    report.sw = None;
    report.zero_status = Some(verdict.status.label().into());
    report.extras.level = Some(2);
    report.extras.reason = Some(verdict.reason);
    report.extras.r1 = Some(space.format(&r1));
    report.extras.r1_sw = Some(r1_rep.sw);
    if r1_verdict.status == brauer_core::residue::ZeroStatus::Zero {
        report.extras.v_part = b.peel(&x)?.map(|y| space.format(&y));
    }
    Ok(())
}

fn local2d(s: &Surface, ast: &FormAst, report: &mut Report) -> Out<()> {
    let w = eval::restricted_class(s, ast)?;
    let locus = s.ramification_locus(&w)?;
    report.extras.locus = Some(locus.iter().map(|d| d.to_string()).collect());
    let r = s.reduce_to_pi_symbol(&w)?;
    report.sw = Some(r.sw);
    report.obstruction = r.obstruction.map(|c| format!("sym({}; t)", s.fq().format(&c)));
    report.certificate_status = Some(r.cert_status.label().into());
    report.assumptions = vec![LIFT_CONVENTION.to_string()];
    report.extras.pi_symbol = Some(format!("sym({}; pi)", s.format(&r.h)));
    report.extras.moves = Some(r.certificate.len());
    debug_assert!(locus.iter().all(|d| *d == Divisor::T));
    Ok(())
}
