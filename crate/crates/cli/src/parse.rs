//! Recursive-descent parser for form expressions.
//!
//! ```text
//! form   := '0' | ['-'] term (('+' | '-') term)*
//! term   := [coef ['*']] ('d' '(' elem ')' | 'dlog' '(' elem ')' | 'sym' '(' witt ';' elem ')')
//! coef   := power (('*' | '/') unary)*
//! witt   := elem | 'w2' '(' elem ',' elem ')'
//! elem   := unary (('+' | '-') prod)*        prod := unary (('*' | '/') unary)*
//! unary  := '-' unary | power                power := atom ['^' ['-'] int]
//! atom   := int | x | s | t | pi | w | '(' elem ')'
//! ```

use std::fmt;

use crate::ast::{Atom, Elem, FormAst, Term, Var, WittAst};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// byte offset into the input
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.message {
            return write!(f, "at {}: {m}", self.pos);
        }
        write!(f, "at {}: expected {}, found {}", self.pos, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(&(_, d)) = it.peek() {
                let Some(v) = d.to_digit(10) else { break };
                n = n.checked_mul(10).and_then(|n| n.checked_add(v as u64)).ok_or_else(|| ParseError {
                    pos: i,
                    expected: vec![],
                    found: String::new(),
                    message: Some("integer literal too large".into()),
                })?;
                it.next();
            }
            out.push((i, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((i, Tok::Ident(s)));
        } else if c == 'π' {
            it.next();
            out.push((i, Tok::Ident("pi".into())));
        } else if "+-*/^();,".contains(c) {
            it.next();
            out.push((i, Tok::Sym(c)));
        } else {
            return Err(ParseError {
                pos: i,
                expected: vec![],
                found: format!("'{c}'"),
                message: Some(format!("unexpected character '{c}'")),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    vars: &'a [Var],
}

const FORM_HEADS: [&str; 3] = ["d", "dlog", "sym"];

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].1
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
            message: None,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&[&format!("'{c}'")]))
        }
    }

    fn at_form_head(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if FORM_HEADS.contains(&s.as_str()))
            && *self.peek_at(1) == Tok::Sym('(')
    }

    fn form(&mut self) -> Result<FormAst, ParseError> {
        if *self.peek() == Tok::Int(0) && *self.peek_at(1) == Tok::End {
            return Ok(FormAst { terms: vec![] });
        }
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        loop {
            terms.push(self.term(neg)?);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else if *self.peek() == Tok::End {
                return Ok(FormAst { terms });
            } else {
                return Err(self.err(&["'+'", "'-'", "end of input"]));
            }
        }
    }

    fn term(&mut self, neg: bool) -> Result<Term, ParseError> {
        let mut coef: Option<Elem> = None;
        while !self.at_form_head() {
            let op = match &coef {
                None => None,
                Some(_) if self.eat('*') => Some('*'),
                Some(_) if self.eat('/') => Some('/'),
                Some(_) => return Err(self.err(&["'*'", "'/'", "'d('", "'dlog('", "'sym('"])),
            };
            if op == Some('*') && self.at_form_head() {
                break;
            }
            coef = Some(match (coef, op) {
                (None, _) => self.power()?,
                (Some(c), Some('*')) => Elem::Mul(Box::new(c), Box::new(self.unary()?)),
                (Some(c), _) => Elem::Div(Box::new(c), Box::new(self.unary()?)),
            });
        }
        let Tok::Ident(head) = self.peek().clone() else { unreachable!() };
        let head_pos = self.pos();
        self.i += 2;
        let atom = match head.as_str() {
            "d" => Atom::D(self.elem()?),
            "dlog" => Atom::Dlog(self.elem()?),
            _ => {
                if coef.is_some() {
                    return Err(ParseError {
                        pos: head_pos,
                        expected: vec![],
                        found: "'sym'".into(),
                        message: Some("a symbol takes no coefficient; scale its first slot".into()),
                    });
                }
                let a = self.witt()?;
                self.expect(';')?;
                Atom::Sym(a, self.elem()?)
            }
        };
        self.expect(')')?;
        Ok(Term { neg, coef, atom })
    }

    fn witt(&mut self) -> Result<WittAst, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "w2") && *self.peek_at(1) == Tok::Sym('(') {
            self.i += 2;
            let a0 = self.elem()?;
            self.expect(',')?;
            let a1 = self.elem()?;
            self.expect(')')?;
            Ok(WittAst::W2(a0, a1))
        } else {
            Ok(WittAst::One(self.elem()?))
        }
    }

    fn elem(&mut self) -> Result<Elem, ParseError> {
        let mut acc = self.prod()?;
        loop {
            if self.eat('+') {
                acc = Elem::Add(Box::new(acc), Box::new(self.prod()?));
            } else if self.eat('-') {
                acc = Elem::Sub(Box::new(acc), Box::new(self.prod()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<Elem, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Elem::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat('/') {
                acc = Elem::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem, ParseError> {
        if self.eat('-') {
            Ok(Elem::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Elem, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match *self.peek() {
            Tok::Int(n) => {
                self.i += 1;
                let e = i64::try_from(n).map_err(|_| self.err(&["exponent"]))?;
                Ok(Elem::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => Err(self.err(&["integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Elem, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.i += 1;
                Ok(Elem::Int(n))
            }
            Tok::Sym('(') => {
                self.i += 1;
                let e = self.elem()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(s) => {
                let v = match s.as_str() {
                    "x" => Var::X,
                    "s" => Var::S,
                    "t" => Var::T,
                    "pi" => Var::Pi,
                    "w" => Var::W,
                    _ => return Err(self.err(&["variable", "integer", "'('"])),
                };
                if !self.vars.contains(&v) {
                    let allowed: Vec<&str> = self.vars.iter().map(|v| v.name()).collect();
                    return Err(ParseError {
                        pos,
                        expected: allowed.iter().map(|s| format!("'{s}'")).collect(),
                        found: format!("'{s}'"),
                        message: Some(format!(
                            "unknown variable '{s}' for this context (allowed: {})",
                            allowed.join(", ")
                        )),
                    });
                }
                self.i += 1;
                Ok(Elem::Var(v))
            }
            _ => Err(self.err(&["variable", "integer", "'('"])),
        }
    }
}

/// Parses a form; `vars` lists the variables valid in the current context.
pub fn parse(src: &str, vars: &[Var]) -> Result<FormAst, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        vars,
    };
    p.form()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Var; 5] = [Var::X, Var::S, Var::T, Var::Pi, Var::W];

    fn roundtrip(s: &str) -> FormAst {
        let a = parse(s, &ALL).unwrap_or_else(|e| panic!("{s}: {e}"));
        let printed = a.to_string();
        let b = parse(&printed, &ALL).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(a, b, "{s} -> {printed}");
        a
    }

    #[test]
    fn examples() {
        let a = roundtrip("sym(x/t^2; t)");
        assert_eq!(a.terms.len(), 1);
        assert_eq!(a.to_string(), "sym(x/t^2; t)");
        let a = roundtrip("d(x*t) + (x/t^3)*dlog(t)");
        assert_eq!(a.terms.len(), 2);
        assert_eq!(a.to_string(), "d(x*t) + x/t^3*dlog(t)");
        let a = roundtrip("sym(w2(x/t^2, 0); t)");
        assert_eq!(a.level(), 2);
    }

    #[test]
    fn printing_keeps_structure() {
        for s in [
            "-x*dlog(t)",
            "(-x)*dlog(t)",
            "x*-t*dlog(t)",
            "(x + 1)*dlog(t) - d(t^-3)",
            "sym(-(x - t)^2; 1 + t)",
            "(x^2)^3 dlog(t)",
            "(2*w + 1)*x/t^4/x dlog(1 + pi*t)",
            "sym(1 - -x; -(t))",
            "0",
            "π*t^-2 * dlog(t)",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x + t*dlog(t)", &ALL).unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse("sym(x; t", &ALL).unwrap_err();
        assert_eq!(e.pos, 8);
        assert_eq!(e.found, "end of input");
        let e = parse("sym(s/t; t)", &[Var::X, Var::T]).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.to_string().contains("unknown variable"));
        assert!(parse("2*sym(x; t)", &ALL).is_err());
        assert!(parse("dlog(t) $", &ALL).is_err());
    }
}
