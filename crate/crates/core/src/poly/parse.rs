//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := variable | coefficient | '(' expr ')'
//! coefficient := integer | integer '/' positive-integer | 'z'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, Vars};
use crate::field::{Field, FieldElement};

/// Names accepted as polynomial variables.
pub const ALLOWED_VARIABLES: [&str; 9] = ["X", "Y", "Z", "x", "y", "u", "v", "t", "s"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    vars: &'a Vars,
}

/// Parses `text` as a polynomial in `vars` over `field`.
pub fn parse_poly(text: &str, field: &Field, vars: &Vars) -> Result<MultiPoly, ParseError> {
    for v in vars.iter() {
        if !ALLOWED_VARIABLES.contains(&v.as_str()) {
            return Err(ParseError { pos: 0, msg: format!("variable name {v:?} is not allowed") });
        }
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, field, vars };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(&format!("unexpected {:?}", c as char)));
    }
    Ok(out)
}

/// Parses a field element written in the polynomial grammar with no variables.
pub fn parse_field_element(text: &str, field: &Field) -> Result<FieldElement, ParseError> {
    let vars: Vars = Vec::<String>::new().into();
    let p = parse_poly(text, field, &vars)?;
    Ok(p.constant_term())
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                Err(self.err("expected an operator (multiplication needs an explicit '*')"))
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.integer().ok_or_else(|| self.err("expected an exponent"))?;
            let e: u32 = n.try_into().map_err(|_| ParseError { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer().expect("digit present");
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let dpos = self.pos;
                    let den = self.integer().ok_or_else(|| self.err("expected a positive integer denominator"))?;
                    if den.is_zero() {
                        return Err(ParseError { pos: dpos, msg: "zero denominator".into() });
                    }
                    let c = self.field.from_ratio(&num, &den).map_err(|_| ParseError {
                        pos: start,
                        msg: format!("{num}/{den} is not in {}", self.field.descriptor()),
                    })?;
                    return Ok(MultiPoly::constant(c, self.vars));
                }
                self.pos = save;
                Ok(MultiPoly::constant(self.field.from_bigint(&num), self.vars))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let name = (c as char).to_string();
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok(MultiPoly::var(self.field, self.vars, i));
                }
                if c == b'z' {
                    return match self.field.generator() {
                        Some(z) => Ok(MultiPoly::constant(z, self.vars)),
                        None => Err(ParseError { pos: start, msg: format!("z is not in {}", self.field.descriptor()) }),
                    };
                }
                Err(ParseError { pos: start, msg: format!("undeclared variable {name:?}") })
            }
            Some(c) => Err(self.err(&format!("unexpected {:?}", c as char))),
        }
    }
}
