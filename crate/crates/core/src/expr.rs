//! Integer linear combinations of named symbols, e.g. `6e0 - 2*(e1 + e2) + K`.

use std::collections::BTreeMap;

use crate::error::{self, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Name(String),
    Call(String, String),
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Symbol::Name(n) => write!(f, "{n}"),
            Symbol::Call(func, arg) => write!(f, "{func}({arg})"),
        }
    }
}

/// A parsed expression: coefficient per symbol, plus a constant term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearExpr {
    pub terms: BTreeMap<Symbol, i64>,
    pub constant: i64,
}

impl LinearExpr {
    fn add_scaled(&mut self, other: &LinearExpr, c: i64) -> Result<()> {
        for (s, v) in &other.terms {
            let entry = self.terms.entry(s.clone()).or_insert(0);
            *entry = error::add(*entry, error::mul(*v, c)?)?;
        }
        self.constant = error::add(self.constant, error::mul(other.constant, c)?)?;
        self.terms.retain(|_, v| *v != 0);
        Ok(())
    }

    /// Evaluate by resolving every symbol to a vector of length `dim`.
    pub fn evaluate<F>(&self, dim: usize, mut resolve: F) -> Result<Vec<i64>>
    where
        F: FnMut(&Symbol) -> Result<Vec<i64>>,
    {
        if self.constant != 0 {
            return Err(Error::Invalid(format!(
                "bare integer {} has no class meaning",
                self.constant
            )));
        }
        let mut out = vec![0i64; dim];
        for (s, c) in &self.terms {
            let v = resolve(s)?;
            if v.len() != dim {
                return Err(Error::RankMismatch { expected: dim, got: v.len() });
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o = error::add(*o, error::mul(*c, x)?)?;
            }
        }
        Ok(out)
    }
}

pub fn parse(input: &str) -> Result<LinearExpr> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LinearExpr> {
        let mut acc = LinearExpr::default();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc.add_scaled(&t, sign)?;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<i64>()
            .map(Some)
            .map_err(|_| Error::Parse { pos: start, msg: "integer out of range".into() })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        if self.pos < self.src.len() && is_ident_start(self.src[self.pos]) {
            let start = self.pos;
            while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
                self.pos += 1;
            }
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        } else {
            None
        }
    }

    fn term(&mut self) -> Result<LinearExpr> {
        let coef = self.integer()?;
        if coef.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
        }
        let atom = self.atom()?;
        match (coef, atom) {
            (None, None) => Err(self.err("expected a term")),
            (Some(c), None) => Ok(LinearExpr { terms: BTreeMap::new(), constant: c }),
            (c, Some(a)) => {
                let mut out = LinearExpr::default();
                out.add_scaled(&a, c.unwrap_or(1))?;
                Ok(out)
            }
        }
    }

    fn atom(&mut self) -> Result<Option<LinearExpr>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(Some(inner))
            }
            Some(c) if is_ident_start(c) => {
                let name = self.ident().expect("checked start");
                let sym = if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let arg = self.ident().ok_or_else(|| self.err("expected a label"))?;
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected `)`"));
                    }
                    self.pos += 1;
                    Symbol::Call(name, arg)
                } else {
                    Symbol::Name(name)
                };
                let mut e = LinearExpr::default();
                e.terms.insert(sym, 1);
                Ok(Some(e))
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> Symbol {
        Symbol::Name(s.into())
    }

    #[test]
    fn parses_juxtaposed_coefficients() {
        let e = parse("6e0 - 2e1 - 2*e2").unwrap();
        assert_eq!(e.terms[&name("e0")], 6);
        assert_eq!(e.terms[&name("e1")], -2);
        assert_eq!(e.terms[&name("e2")], -2);
    }

    #[test]
    fn distributes_over_groups_and_cancels() {
        let e = parse("-2*(e1 + K) + e1 + 2K").unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[&name("e1")], -1);
    }

    #[test]
    fn parses_calls_and_primes() {
        let e = parse("tot(p1) + L1' - e(q)").unwrap();
        assert_eq!(e.terms[&Symbol::Call("tot".into(), "p1".into())], 1);
        assert_eq!(e.terms[&name("L1'")], 1);
        assert_eq!(e.terms[&Symbol::Call("e".into(), "q".into())], -1);
    }

    #[test]
    fn reports_error_position() {
        match parse("e0 + + e1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("(e0").is_err());
        assert!(parse("e0 e1").is_err());
    }
}
