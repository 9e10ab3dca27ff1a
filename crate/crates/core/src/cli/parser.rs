//! Expressions: integers, rationals `p/q`, the identifiers of the working
//! context, `+ - * ^`, unary minus and parentheses.
//!
//! `^` binds tighter than `*`, which binds tighter than `+` and `-`. The
//! exponent is a nonnegative integer literal. The only implicit product is a
//! numeric literal written directly against an identifier (`2x1`, `1/6s`),
//! which is how operators are rendered.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ratpoly::Rational;
use crate::weyl::{WeylContext, WeylOp};

/// Identifiers an expression may use.
pub const IDENTIFIERS: [&str; 9] = ["x1", "x2", "d1", "d2", "s", "lambda", "m", "n", "nu"];

/// The context carrying every identifier: central `s, lambda, m, n, nu`.
pub fn universal_context() -> Arc<WeylContext> {
    WeylContext::plane(&["s", "lambda", "m", "n", "nu"], &[])
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token { tok, start, end: i });
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text = &src[start..i];
            let q: Rational = text.parse().map_err(|_| syntax(start, format!("invalid number `{text}`")))?;
            out.push(Token { tok: Tok::Num(q), start, end: i });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(src[start..i].to_string()), start, end: i });
        } else if c == b'/' {
            return Err(syntax(start, "division is only allowed inside a rational literal p/q"));
        } else {
            let ch = src[start..].chars().next().expect("in bounds");
            return Err(syntax(start, format!("unexpected character `{ch}`")));
        }
    }
    out.push(Token { tok: Tok::End, start: src.len(), end: src.len() });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ctx: &'a Arc<WeylContext>,
    /// Offsets of the currently open parentheses.
    open: Vec<usize>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, t: &Token, wanted: &str) -> Error {
        match (&t.tok, self.open.last()) {
            (Tok::End, Some(&p)) => syntax(p, "unclosed `(`"),
            (Tok::End, None) => syntax(t.start, format!("unexpected end of input, expected {wanted}")),
            _ => syntax(t.start, format!("expected {wanted}")),
        }
    }

    fn expr(&mut self) -> Result<WeylOp> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylOp> {
        let mut acc = self.unary()?;
        loop {
            let prev_end = self.toks[self.pos - 1].end;
            let prev_num = matches!(self.toks[self.pos - 1].tok, Tok::Num(_));
            let next = self.peek().clone();
            match next.tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Ident(_) if prev_num && next.start == prev_end => {
                    acc = &acc * &self.power()?;
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(syntax(next.start, "implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<WeylOp> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeylOp> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Num(q) if q.is_integer() => {
                let e = q.to_i64().filter(|e| (0..=u16::MAX as i64).contains(e));
                let e = e.ok_or_else(|| syntax(t.start, "exponent out of range"))?;
                if self.peek().tok == Tok::Caret {
                    return Err(syntax(self.peek().start, "chained `^` needs parentheses"));
                }
                Ok(base.pow(e as u32))
            }
            _ => Err(self.unexpected(&t, "a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<WeylOp> {
        let t = self.bump();
        match t.tok {
            Tok::Num(q) => Ok(WeylOp::constant(self.ctx, q)),
            Tok::Ident(ref name) => {
                if !IDENTIFIERS.contains(&name.as_str()) || self.ctx.index_of(name).is_none() {
                    return Err(Error::UnknownIdentifier(name.clone()));
                }
                WeylOp::var(self.ctx, name)
            }
            Tok::LParen => {
                self.open.push(t.start);
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.unexpected(&close, "`)`"));
                }
                self.open.pop();
                Ok(inner)
            }
            _ => Err(self.unexpected(&t, "a number, identifier or `(`")),
        }
    }
}

/// Parses `src` into a normally ordered operator of `ctx`.
pub fn parse_expression(src: &str, ctx: &Arc<WeylContext>) -> Result<WeylOp> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, ctx, open: Vec::new() };
    if p.peek().tok == Tok::End {
        return Err(syntax(0, "empty expression"));
    }
    let out = p.expr()?;
    let t = p.bump();
    match t.tok {
        Tok::End => Ok(out),
        Tok::RParen => Err(syntax(t.start, "unmatched `)`")),
        _ => Err(syntax(t.start, "unexpected token")),
    }
}
