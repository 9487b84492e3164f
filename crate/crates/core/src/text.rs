//! Tokenizer and expression parser shared by every textual input format.
//!
//! The grammar is deliberately small:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' ['-'] INT)?
//! atom    := INT | IDENT | IDENT '[' args ']' | '(' expr ')' | ket
//! args    := group (';' group)*        group := [expr (',' expr)*]
//! ket     := '|' (atom ['^' INT])* '>'
//! ```
//!
//! Each domain (scalars, torus elements, generator combinations, Fock
//! states) evaluates the same syntax tree with its own meaning.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(String),
    Ident(String),
    /// `name[a, b; c, d]`, arguments split into `;`-separated groups.
    Gen { name: String, groups: Vec<Vec<Expr>> },
    /// `|item item ...>` where each item carries an optional `^count`.
    Ket(Vec<(Expr, u32)>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// A node of the syntax tree with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

impl Expr {
    fn new(kind: ExprKind, pos: usize) -> Self {
        Expr { kind, pos }
    }

    /// Interprets the node as a (possibly negated) integer literal.
    pub fn as_int(&self) -> Result<i64> {
        match &self.kind {
            ExprKind::Int(s) => s
                .parse::<i64>()
                .map_err(|_| Error::syntax(self.pos, format!("integer out of range: {s}"))),
            ExprKind::Neg(inner) => inner.as_int().map(|v| -v),
            _ => Err(Error::syntax(self.pos, "expected an integer")),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(s) | ExprKind::Ident(s) => write!(f, "{s}"),
            ExprKind::Gen { name, groups } => {
                write!(f, "{name}[")?;
                for (gi, g) in groups.iter().enumerate() {
                    if gi > 0 {
                        write!(f, ";")?;
                    }
                    for (ai, a) in g.iter().enumerate() {
                        if ai > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{a}")?;
                    }
                }
                write!(f, "]")
            }
            ExprKind::Ket(items) => {
                write!(f, "|")?;
                for (k, (it, c)) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                    if *c != 1 {
                        write!(f, "^{c}")?;
                    }
                }
                write!(f, ">")
            }
            ExprKind::Neg(a) => write!(f, "-({a})"),
            ExprKind::Add(a, b) => write!(f, "({a} + {b})"),
            ExprKind::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprKind::Mul(a, b) => write!(f, "({a} * {b})"),
            ExprKind::Div(a, b) => write!(f, "({a} / {b})"),
            ExprKind::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(src[start..i].to_string()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*/^()[],;|>".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::syntax(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = Expr::new(ExprKind::Add(Box::new(lhs), Box::new(rhs)), pos);
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = Expr::new(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = Expr::new(ExprKind::Div(Box::new(lhs), Box::new(rhs)), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let pos = self.pos();
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.at += 1;
                let v: i64 = s
                    .parse()
                    .map_err(|_| Error::syntax(pos, format!("integer out of range: {s}")))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::syntax(self.pos(), "expected an integer exponent")),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let pos = self.pos();
        if self.eat('^') {
            let k = self.signed_int()?;
            return Ok(Expr::new(ExprKind::Pow(Box::new(base), k), pos));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.at += 1;
                Ok(Expr::new(ExprKind::Int(s), pos))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if self.eat('[') {
                    let groups = self.args()?;
                    self.expect(']')?;
                    Ok(Expr::new(ExprKind::Gen { name, groups }, pos))
                } else {
                    Ok(Expr::new(ExprKind::Ident(name), pos))
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('|')) => {
                self.at += 1;
                let mut items = Vec::new();
                while !self.eat('>') {
                    if self.peek().is_none() {
                        return Err(Error::syntax(self.pos(), "unterminated ket, expected '>'"));
                    }
                    let item = self.atom()?;
                    let count = if self.eat('^') {
                        let p = self.pos();
                        let k = self.signed_int()?;
                        u32::try_from(k).ok().filter(|&k| k > 0).ok_or_else(|| {
                            Error::syntax(p, "occupation count must be positive")
                        })?
                    } else {
                        1
                    };
                    items.push((item, count));
                }
                Ok(Expr::new(ExprKind::Ket(items), pos))
            }
            Some(Tok::Sym(c)) => Err(Error::syntax(pos, format!("unexpected '{c}'"))),
            None => Err(Error::syntax(pos, "unexpected end of input")),
        }
    }

    fn args(&mut self) -> Result<Vec<Vec<Expr>>> {
        let mut groups = vec![Vec::new()];
        if self.peek() == Some(&Tok::Sym(']')) {
            return Ok(groups);
        }
        loop {
            let e = self.expr()?;
            groups.last_mut().expect("nonempty").push(e);
            if self.eat(',') {
                continue;
            }
            if self.eat(';') {
                groups.push(Vec::new());
                continue;
            }
            return Ok(groups);
        }
    }
}

/// Parses a complete expression; trailing input is a syntax error.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(Error::syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Flattens a sum into signed summands: `a - b + c` gives
/// `[(+1, a), (-1, b), (+1, c)]`.
pub fn summands(e: &Expr) -> Vec<(i64, &Expr)> {
    fn go<'a>(e: &'a Expr, sign: i64, out: &mut Vec<(i64, &'a Expr)>) {
        match &e.kind {
            ExprKind::Add(a, b) => {
                go(a, sign, out);
                go(b, sign, out);
            }
            ExprKind::Sub(a, b) => {
                go(a, sign, out);
                go(b, -sign, out);
            }
            ExprKind::Neg(a) => go(a, -sign, out),
            _ => out.push((sign, e)),
        }
    }
    let mut out = Vec::new();
    go(e, 1, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("1 + 2*q^-3").unwrap();
        assert_eq!(e.to_string(), "(1 + (2 * (q)^-3))");
    }

    #[test]
    fn generators_and_groups() {
        let e = parse("f[1,2;0,-1] - 2*c[0]").unwrap();
        assert_eq!(e.to_string(), "(f[1,2;0,-(1)] - (2 * c[0]))");
        let es = parse("es[1;0,1]").unwrap();
        assert!(matches!(es.kind, ExprKind::Gen { ref name, .. } if name == "es"));
    }

    #[test]
    fn kets() {
        let e = parse("|a[1;0] as[2;-1] e[-1]^2>").unwrap();
        match e.kind {
            ExprKind::Ket(items) => {
                assert_eq!(items.len(), 3);
                assert_eq!(items[2].1, 2);
            }
            _ => panic!("not a ket"),
        }
        assert!(matches!(parse("|0>").unwrap().kind, ExprKind::Ket(_)));
    }

    #[test]
    fn error_positions() {
        let err = parse("f[1,2;0").unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 7, .. }), "{err:?}");
        let err = parse("q + $").unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 4, .. }));
        assert!(parse("q)").is_err());
    }
}
