//! Text form of vacuum-module vectors, e.g. `L(-4)J(-3)^2|0>` or
//! `-(5/3)*L(-2)^2|0> + 2 J(-1)J(-3)|0>`.
//!
//! ```text
//! expr  := '0' | ['+'|'-'] term (('+'|'-') term)*
//! term  := [coef ['*']] word '|0>'
//! coef  := int ['/' int] | '(' ['-'] int ['/' int] ')'
//! word  := (('L'|'J') '(' ['-'|'+'] int ')' ['^' int])*
//! ```
//!
//! Words need not be in normal form; they are reduced by the engine.

use crate::error::{Error, Result};
use crate::exactnum::Rat;

use super::{Engine, Mode, StateVector};

/// Largest accepted mode index magnitude and power.
pub const MAX_INDEX: i64 = 1000;
pub const MAX_POWER: u32 = 64;

/// Parsed, unevaluated vector: a sum of coefficient × word applied to the vacuum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorExpr {
    pub terms: Vec<(Rat, Vec<Mode>)>,
}

impl VectorExpr {
    pub fn evaluate(&self, engine: &Engine) -> StateVector {
        let mut out = StateVector::zero();
        for (c, word) in &self.terms {
            out.add_scaled(&engine.apply_word(word, &StateVector::vacuum()), c);
        }
        out
    }
}

pub fn parse_vector(src: &str) -> Result<VectorExpr> {
    if src.trim() == "0" {
        return Ok(VectorExpr { terms: Vec::new() });
    }
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::VectorSyntax { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_int(&mut self, max: i64) -> Result<i64> {
        let d = self.digits()?;
        match d.parse::<i64>() {
            Ok(v) if v <= max => Ok(v),
            _ => Err(self.err("integer out of range")),
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let neg = self.eat(b'-');
        let num = self.digits()?.to_string();
        let den = if self.eat(b'/') { self.digits()?.to_string() } else { "1".to_string() };
        let r: Rat = format!("{}{}/{}", if neg { "-" } else { "" }, num, den)
            .parse()
            .map_err(|_| self.err("invalid rational"))?;
        Ok(r)
    }

    fn expr(&mut self) -> Result<VectorExpr> {
        let mut terms = Vec::new();
        let mut sign = Rat::one();
        if self.eat(b'-') {
            sign = Rat::int(-1);
        } else {
            self.eat(b'+');
        }
        loop {
            let (c, word) = self.term()?;
            terms.push((&sign * &c, word));
            if self.eat(b'+') {
                sign = Rat::one();
            } else if self.eat(b'-') {
                sign = Rat::int(-1);
            } else {
                break;
            }
        }
        Ok(VectorExpr { terms })
    }

    fn term(&mut self) -> Result<(Rat, Vec<Mode>)> {
        let coef = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.rational()?;
                self.expect(b')')?;
                self.eat(b'*');
                r
            }
            Some(b) if b.is_ascii_digit() => {
                let r = self.rational()?;
                self.eat(b'*');
                r
            }
            _ => Rat::one(),
        };
        let mut word = Vec::new();
        loop {
            let mode = match self.peek() {
                Some(b'L') => Mode::l(0),
                Some(b'J') => Mode::j(0),
                _ => break,
            };
            self.pos += 1;
            self.expect(b'(')?;
            let neg = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let idx = self.small_int(MAX_INDEX)?;
            self.expect(b')')?;
            let power = if self.eat(b'^') { self.small_int(i64::from(MAX_POWER))? as usize } else { 1 };
            let index = if neg { -idx } else { idx };
            word.extend(std::iter::repeat_n(Mode { index, ..mode }, power));
        }
        self.expect(b'|')?;
        self.expect(b'0')?;
        self.expect(b'>')?;
        Ok((coef, word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::NormalMonomial;

    #[test]
    fn parses_normal_words() {
        let e = parse_vector("L(-4)J(-3)^2|0>").unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].1, vec![Mode::l(-4), Mode::j(-3), Mode::j(-3)]);
        let v = e.evaluate(&Engine::new());
        let m = NormalMonomial::new(vec![4], vec![3, 3]).unwrap();
        assert_eq!(v, StateVector::monomial(m));
    }

    #[test]
    fn bare_zero_is_the_zero_vector() {
        assert_eq!(parse_vector(" 0 ").unwrap().evaluate(&Engine::new()), StateVector::zero());
        assert!(parse_vector("0 + L(-2)|0>").is_err());
    }

    #[test]
    fn parses_combinations() {
        let e = parse_vector(" -(5/3)*L(-2)^2|0> + 2 J(-1)J(-3)|0> - |0>").unwrap();
        let coefs: Vec<_> = e.terms.iter().map(|t| t.0.to_string()).collect();
        assert_eq!(coefs, ["-5/3", "2", "-1"]);
        assert!(e.terms[2].1.is_empty());
        let v = parse_vector("L(2)L(-2)|0>").unwrap().evaluate(&Engine::new());
        assert_eq!(v, StateVector::term(NormalMonomial::vacuum(), Rat::frac(3, 5)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "L(-2)", "L-2|0>", "L(-2)|0", "K(1)|0>", "1/0 |0>", "L(99999)|0>", "|0> |0>", "L(-2)^|0>"] {
            assert!(parse_vector(bad).is_err(), "{bad:?} accepted");
        }
    }
}
