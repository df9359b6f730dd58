//! Parser for the canonical coefficient strings.
//!
//! ```text
//! rf    := poly | "(" poly ")" [ "/" "(" poly ")" ]
//! poly  := ["-"] term { ("+" | "-") term }
//! term  := int [ "*" qpow ] | qpow
//! qpow  := "q" [ "^" ["-"] int ]
//! ```
//! Whitespace is insignificant.

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in \"{}\"",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn int(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<i64> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let e = self.int()?;
        let e: i64 = e.try_into().map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self) -> Result<(i64, BigInt)> {
        if self.eat(b'q') {
            return Ok((self.exponent()?, BigInt::from(1)));
        }
        let c = self.int()?;
        if self.eat(b'*') {
            self.expect(b'q')?;
            Ok((self.exponent()?, c))
        } else {
            Ok((0, c))
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        let mut neg = self.eat(b'-');
        loop {
            let (k, c) = self.term()?;
            terms.push((k, if neg { -c } else { c }));
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

pub fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let compact: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    let mut cur = Cursor { src: &compact, pos: 0 };
    let p = cur.poly()?;
    if cur.pos != compact.len() {
        return Err(cur.error("trailing input"));
    }
    Ok(p)
}

pub fn parse_rational_function(s: &str) -> Result<RationalFunction> {
    let compact: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    let mut cur = Cursor { src: &compact, pos: 0 };
    let out = if cur.eat(b'(') {
        let num = cur.poly()?;
        cur.expect(b')')?;
        let den = if cur.eat(b'/') {
            cur.expect(b'(')?;
            let d = cur.poly()?;
            cur.expect(b')')?;
            d
        } else {
            LaurentPoly::one()
        };
        RationalFunction::new(num, den).map_err(|_| cur.error("zero denominator"))?
    } else {
        RationalFunction::from_poly(cur.poly()?)
    };
    if cur.pos != compact.len() {
        return Err(cur.error("trailing input"));
    }
    Ok(out)
}
