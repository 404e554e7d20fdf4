//! Expression parser for the canonical fraction text.  Accepts the grammar
//!
//!   expr  := term (('+'|'-') term)*
//!   term  := unary (('*'|'/') unary)*
//!   unary := '-' unary | postfix
//!   postfix := atom ('^' ('-')? digits)*
//!   atom  := digits | 'q' | 't' | '(' expr ')'
//!
//! which covers everything `Display` emits plus ordinary hand-written input.

use num_bigint::BigInt;

use super::fraction::QTFraction;
use crate::error::{Error, Result};

pub(crate) fn parse_fraction(s: &str) -> Result<QTFraction> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .s
            .get(self.pos)
            .map(|c| c.is_ascii_whitespace())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<QTFraction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QTFraction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QTFraction> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            Ok(-&self.unary()?)
        } else {
            self.postfix()
        }
    }

    fn postfix(&mut self) -> Result<QTFraction> {
        let mut a = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            a = a.pow(e)?;
        }
        Ok(a)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits()?;
        let mut v: i64 = 0;
        for d in digits.bytes() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as i64))
                .ok_or_else(|| self.err("exponent overflow"))?;
        }
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self
            .s
            .get(self.pos)
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn atom(&mut self) -> Result<QTFraction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(v)
                } else {
                    Err(self.err("expected ')'"))
                }
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QTFraction::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(QTFraction::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().unwrap();
                Ok(QTFraction::from_rational(n.into()))
            }
            _ => Err(self.err("expected a number, q, t, or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_expressions() {
        let v = parse_fraction("(1 - q)*(1 - t) / (1 - q*t)^2").unwrap();
        assert_eq!(v.to_string(), "(q*t - q - t + 1)/(q^2*t^2 - 2*q*t + 1)");
        assert!(parse_fraction("q^-2").unwrap().to_string() == "(1)/(q^2)");
    }

    #[test]
    fn reports_positions() {
        match parse_fraction("q + %") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_fraction("").is_err());
        assert!(parse_fraction("(q").is_err());
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("q t").is_err());
    }
}
