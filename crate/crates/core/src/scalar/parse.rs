//! A small expression parser for symbolic scalars.
//!
//! Grammar: sums and differences of terms, `*` and `/` for products,
//! `^` for non-negative integer powers, parentheses, rational literals
//! (`3`, `3/4`, `1.25`) and symbol names.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::polyrat::PolyRat;
use crate::scalar::rational::Rat;
use crate::scalar::symbol::{Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(Rat::parse_str(&text)?));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    table: &'a Arc<SymbolTable>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<PolyRat> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyRat> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let d = self.factor()?;
                    acc = acc.div(&d).ok_or(Error::DivisionByZero)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyRat> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let mut neg = false;
            if self.peek() == Some(&Tok::Minus) {
                self.next();
                neg = true;
            }
            match self.next() {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    let e: u32 = n
                        .numer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    let mut acc = PolyRat::int(1);
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    if neg {
                        acc = acc.inv().ok_or(Error::DivisionByZero)?;
                    }
                    return Ok(acc);
                }
                _ => return Err(Error::Parse("expected integer exponent after `^`".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyRat> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(PolyRat::constant(n)),
            Some(Tok::Name(name)) => {
                let s = Symbol::new(&name);
                if !self.table.contains(s) {
                    return Err(Error::UnknownSymbol(name));
                }
                Ok(PolyRat::var(self.table, s))
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse an expression whose symbols must all be declared in `table`.
pub fn parse_polyrat(table: &Arc<SymbolTable>, input: &str) -> Result<PolyRat> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        table,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(e)
}

/// Parse an expression, declaring every symbol it mentions as free.
pub fn parse_polyrat_free(input: &str) -> Result<PolyRat> {
    let toks = lex(input)?;
    let mut builder = SymbolTable::builder();
    for t in &toks {
        if let Tok::Name(name) = t {
            builder.free(name);
        }
    }
    let table = builder.freeze();
    let mut p = Parser {
        toks,
        pos: 0,
        table: &table,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(e)
}
