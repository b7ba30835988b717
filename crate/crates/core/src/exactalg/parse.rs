//! Recursive-descent parser for the canonical expression syntax.
//!
//! Grammar: sums and products of rational integers and symbols with `+ - * / ^`
//! and parentheses. Exponents are integer literals and may be negative.
//! Symbol names are `z`, `atilde`, `a<i>`, `d<k>a<i>`, `t<k>` and `s<i>_<j>`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::expr::DiffExpr;
use super::ratfunc::RatFunc;
use super::rational::Q;
use super::symbol::Symbol;
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

/// Resolves a symbol name.
pub fn parse_symbol(name: &str) -> Option<Symbol> {
    fn idx(s: &str) -> Option<usize> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match name {
        "z" => return Some(Symbol::Z),
        "atilde" => return Some(Symbol::ATilde),
        _ => {}
    }
    if let Some(r) = name.strip_prefix('t') {
        return idx(r).filter(|&k| k < u16::MAX as usize).map(Symbol::t);
    }
    if let Some(r) = name.strip_prefix('s') {
        let (i, j) = r.split_once('_')?;
        let (i, j) = (idx(i)?, idx(j)?);
        return (i < 256 && j < 256).then(|| Symbol::s(i, j));
    }
    if let Some(r) = name.strip_prefix('a') {
        return idx(r).filter(|&i| i < 256).map(|i| Symbol::jet(i, 0));
    }
    if let Some(r) = name.strip_prefix('d') {
        let (k, i) = r.split_once('a')?;
        let (k, i) = (idx(k)?, idx(i)?);
        return (k > 0 && k < 256 && i < 256).then(|| Symbol::jet(i, k));
    }
    None
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.at(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DiffExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.at();
                let d = self.unary()?;
                acc = acc
                    .div(&d)
                    .ok_or(Error::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<DiffExpr> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<DiffExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.at();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        self.pos += 1;
        let e: i32 = n
            .try_into()
            .map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
        let e = if neg { -e } else { e };
        base.pow(e).ok_or(Error::Parse { pos: at, msg: "negative power of zero".into() })
    }

    fn atom(&mut self) -> Result<DiffExpr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(DiffExpr::constant(Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match parse_symbol(&name) {
                Some(s) => {
                    self.pos += 1;
                    Ok(DiffExpr::sym(s))
                }
                None => self.err(format!("unknown symbol '{name}'")),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<DiffExpr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a rational function of `z` alone.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let e = parse_expr(s)?;
    expr_to_ratfunc(&e).ok_or(Error::Parse {
        pos: 0,
        msg: "expected a rational function of z only".into(),
    })
}

pub fn expr_to_ratfunc(e: &DiffExpr) -> Option<RatFunc> {
    if e.symbols().iter().any(|&s| s != Symbol::Z) {
        return None;
    }
    let to_u = |p: &super::mpoly::MPoly| {
        let mut c = Vec::new();
        for (m, x) in p.terms() {
            let k = m.exp(Symbol::Z) as usize;
            if c.len() <= k {
                c.resize(k + 1, Q::zero());
            }
            c[k] += x;
        }
        UPoly::new(c)
    };
    Some(RatFunc::new(to_u(e.num()), to_u(e.den())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::expr::expr_equal;

    #[test]
    fn round_trip() {
        let e = parse_expr("(3*atilde*t3*t5 - 6*t3*a4) / (3*atilde*t1*t6)").unwrap();
        let back = parse_expr(&e.to_string()).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn precedence() {
        let e = parse_expr("2 - 3 * z^2 / 6 + -z^-1 * z").unwrap();
        assert!(expr_equal(&e, &parse_expr("1 - z^2/2").unwrap()));
    }

    #[test]
    fn errors_have_positions() {
        match parse_expr("a1 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_expr("a1 + q7") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("(a1").is_err());
        assert!(parse_expr("1/0").is_err());
    }

    #[test]
    fn symbols() {
        assert_eq!(parse_symbol("d12a3"), Some(Symbol::jet(3, 12)));
        assert_eq!(parse_symbol("s4_2"), Some(Symbol::s(4, 2)));
        assert_eq!(parse_symbol("d0a3"), None);
        assert_eq!(parse_symbol("x"), None);
    }

    #[test]
    fn ratfunc() {
        let r = parse_ratfunc("2*3125*z/(1-3125*z)").unwrap();
        assert_eq!(r.den().degree(), Some(1));
        assert!(parse_ratfunc("a3").is_err());
    }
}
