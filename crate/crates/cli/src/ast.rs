//! Syntax trees for form expressions and their canonical printing.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    S,
    T,
    Pi,
    /// generator of `F_q` over `F_p`
    W,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::S => "s",
            Var::T => "t",
            Var::Pi => "pi",
            Var::W => "w",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Int(u64),
    Var(Var),
    Neg(Box<Elem>),
    Add(Box<Elem>, Box<Elem>),
    Sub(Box<Elem>, Box<Elem>),
    Mul(Box<Elem>, Box<Elem>),
    Div(Box<Elem>, Box<Elem>),
    Pow(Box<Elem>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittAst {
    One(Elem),
    W2(Elem, Elem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    D(Elem),
    Dlog(Elem),
    Sym(WittAst, Elem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub neg: bool,
    pub coef: Option<Elem>,
    pub atom: Atom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormAst {
    pub terms: Vec<Term>,
}

impl FormAst {
    /// Length-2 Witt vectors anywhere make the whole input a level-2 class.
    pub fn level(&self) -> u32 {
        let two = self
            .terms
            .iter()
            .any(|t| matches!(t.atom, Atom::Sym(WittAst::W2(..), _)));
        if two {
            2
        } else {
            1
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for t in &self.terms {
            if let Some(c) = &t.coef {
                c.collect_vars(&mut out);
            }
            match &t.atom {
                Atom::D(e) | Atom::Dlog(e) => e.collect_vars(&mut out),
                Atom::Sym(a, b) => {
                    match a {
                        WittAst::One(e) => e.collect_vars(&mut out),
                        WittAst::W2(e0, e1) => {
                            e0.collect_vars(&mut out);
                            e1.collect_vars(&mut out);
                        }
                    }
                    b.collect_vars(&mut out);
                }
            }
        }
        out
    }
}

impl Elem {
    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Elem::Int(_) => {}
            Elem::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Elem::Neg(a) | Elem::Pow(a, _) => a.collect_vars(out),
            Elem::Add(a, b) | Elem::Sub(a, b) | Elem::Mul(a, b) | Elem::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    // 1 sums, 2 products, 3 unary minus, 4 powers and atoms
    fn prec(&self) -> u8 {
        match self {
            Elem::Add(..) | Elem::Sub(..) => 1,
            Elem::Mul(..) | Elem::Div(..) => 2,
            Elem::Neg(_) => 3,
            Elem::Int(_) | Elem::Var(_) | Elem::Pow(..) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Elem::Int(n) => write!(f, "{n}"),
            Elem::Var(v) => write!(f, "{}", v.name()),
            Elem::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Elem::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Elem::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Elem::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Elem::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "/")?;
                b.write_at(f, 3)
            }
            Elem::Pow(a, e) => {
                // bases are atoms: x^2, (x^2)^3, (-x)^2
                if a.is_atomic() {
                    a.write_at(f, 4)?;
                } else {
                    write!(f, "({a})")?;
                }
                write!(f, "^{e}")
            }
        }
    }
}

impl Elem {
    fn is_atomic(&self) -> bool {
        matches!(self, Elem::Int(_) | Elem::Var(_))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for WittAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittAst::One(e) => write!(f, "{e}"),
            WittAst::W2(a, b) => write!(f, "w2({a}, {b})"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::D(e) => write!(f, "d({e})"),
            Atom::Dlog(e) => write!(f, "dlog({e})"),
            Atom::Sym(a, b) => write!(f, "sym({a}; {b})"),
        }
    }
}

impl fmt::Display for FormAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if let Some(c) = &t.coef {
                let s = c.to_string();
                // a leading minus would be read back as the term sign
                if c.prec() < 2 || s.starts_with('-') {
                    write!(f, "({s})*")?;
                } else {
                    write!(f, "{s}*")?;
                }
            }
            write!(f, "{}", t.atom)?;
        }
        Ok(())
    }
}
