//! Text form of Laurent polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff ['*']] factor ('*'? factor)*  |  coeff
//! factor := 'x' index ['^' signed-int]
//! ```
//!
//! Whitespace is ignored. Printing emits terms by increasing total degree
//! with residues in `0..p`, so `parse(print(a)) == a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Prime;

use super::poly::check_dim;
use super::{Exponent, LaurentPoly};

struct RawTerm {
    negative: bool,
    coeff: u32,
    factors: Vec<(usize, i64)>,
    pos: usize,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<&'a [u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.bytes[start..self.pos])
    }

    fn unsigned(&mut self) -> Result<u64> {
        let pos = self.pos;
        let s = std::str::from_utf8(self.digits()?).expect("ascii digits");
        s.parse().map_err(|_| Error::Syntax {
            pos,
            msg: format!("integer {s} out of range"),
        })
    }

    fn signed(&mut self) -> Result<i64> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let pos = self.pos;
        let v = self.unsigned()?;
        let v = i64::try_from(v).map_err(|_| Error::Syntax {
            pos,
            msg: "exponent out of range".into(),
        })?;
        Ok(if negative { -v } else { v })
    }

    fn factor(&mut self) -> Result<(usize, i64)> {
        // caller has seen 'x'
        self.bump();
        let pos = self.pos;
        let index = self.unsigned()? as usize;
        if index == 0 {
            return Err(Error::Syntax {
                pos,
                msg: "variable indices start at 1".into(),
            });
        }
        let exp = if self.peek() == Some(b'^') {
            self.bump();
            self.signed()?
        } else {
            1
        };
        Ok((index, exp))
    }

    fn term(&mut self, negative: bool, p: Prime) -> Result<RawTerm> {
        let pos = self.pos;
        let mut coeff = 1;
        let mut factors = Vec::new();
        let mut seen_any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let digits = self.digits()?;
            coeff = digits
                .iter()
                .fold(0u64, |acc, &b| (acc * 10 + (b - b'0') as u64) % p.get() as u64)
                as u32;
            seen_any = true;
            if self.peek() == Some(b'*') {
                self.bump();
                if !matches!(self.peek(), Some(b'x' | b'X')) {
                    return Err(self.err("expected a variable after '*'"));
                }
            }
        }
        loop {
            match self.peek() {
                Some(b'x' | b'X') => {
                    factors.push(self.factor()?);
                    seen_any = true;
                }
                Some(b'*') if !factors.is_empty() => {
                    self.bump();
                    if !matches!(self.peek(), Some(b'x' | b'X')) {
                        return Err(self.err("expected a variable after '*'"));
                    }
                }
                _ => break,
            }
        }
        if !seen_any {
            return Err(self.err("expected a coefficient or a variable"));
        }
        Ok(RawTerm {
            negative,
            coeff,
            factors,
            pos,
        })
    }

    fn poly(&mut self, p: Prime) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative, p)?);
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return Err(self.err(format!("unexpected character '{}'", c as char))),
            }
            self.bump();
        }
        Ok(terms)
    }
}

fn parse_raw(text: &str, p: Prime) -> Result<Vec<RawTerm>> {
    if !text.is_ascii() {
        let pos = text
            .char_indices()
            .find(|(_, c)| !c.is_ascii())
            .map_or(0, |(i, _)| i);
        return Err(Error::Syntax {
            pos,
            msg: "non-ASCII character".into(),
        });
    }
    let mut lexer = Lexer {
        bytes: text.as_bytes(),
        pos: 0,
    };
    lexer.poly(p)
}

fn assemble(raw: Vec<RawTerm>, p: Prime, d: usize) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(p, d);
    for term in raw {
        let mut e = vec![0i64; d];
        for (index, exp) in term.factors {
            if index > d {
                return Err(Error::VariableIndex { index, d });
            }
            e[index - 1] = e[index - 1].checked_add(exp).ok_or(Error::Syntax {
                pos: term.pos,
                msg: "exponent out of range".into(),
            })?;
        }
        let c = if term.negative {
            p.neg(term.coeff)
        } else {
            term.coeff
        };
        out.add_term(Exponent::from(e), c);
    }
    Ok(out)
}

/// Parses `text` as an element of F_p[x1^±1, ..., xd^±1].
pub fn parse_poly(text: &str, p: Prime, d: usize) -> Result<LaurentPoly> {
    check_dim(d)?;
    assemble(parse_raw(text, p)?, p, d)
}

/// Like [`parse_poly`], but the dimension is the largest variable index
/// used (at least `min_d`).
pub fn parse_poly_infer(text: &str, p: Prime, min_d: usize) -> Result<LaurentPoly> {
    let raw = parse_raw(text, p)?;
    let used = raw
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.0))
        .max()
        .unwrap_or(0);
    let d = used.max(min_d);
    check_dim(d)?;
    assemble(raw, p, d)
}

/// Print order: by total absolute degree, then coordinate by coordinate
/// with larger magnitude on earlier axes first and `x^k` before `x^-k`.
fn print_key(e: &Exponent) -> (i64, Vec<(std::cmp::Reverse<i64>, bool)>) {
    let total = e.coords().iter().map(|c| c.abs()).sum();
    (
        total,
        e.coords()
            .iter()
            .map(|&c| (std::cmp::Reverse(c.abs()), c < 0))
            .collect(),
    )
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exponent, u32)> = self.terms().collect();
        terms.sort_by_cached_key(|(e, _)| print_key(e));
        for (n, (e, c)) in terms.into_iter().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            let mut first = true;
            for (i, &k) in e.coords().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if k != 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn ledrappier_polynomial() {
        let a = parse_poly("1 + x1^-1 + x2^-1", p(2), 2).unwrap();
        let expected = LaurentPoly::from_terms(
            p(2),
            2,
            [([0, 0].into(), 1), ([-1, 0].into(), 1), ([0, -1].into(), 1)],
        );
        assert_eq!(a, expected);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_poly("0", p(3), 1).unwrap().is_zero());
        assert!(parse_poly("2*x1 + x1", p(3), 1).unwrap().is_zero());
        assert!(parse_poly("x1 - x1", p(5), 1).unwrap().is_zero());
    }

    #[test]
    fn signs_and_products() {
        let a = parse_poly("x2 - 1 - x1", p(3), 2).unwrap();
        assert_eq!(a.coeff(&[0, 0].into()), 2);
        assert_eq!(a.coeff(&[1, 0].into()), 2);
        assert_eq!(a.coeff(&[0, 1].into()), 1);
        let b = parse_poly("-3*x1^2x2^-1 + 4 x1*x1", p(7), 2).unwrap();
        assert_eq!(b.coeff(&[2, -1].into()), 4);
        assert_eq!(b.coeff(&[2, 0].into()), 4);
    }

    #[test]
    fn errors_report_positions() {
        match parse_poly("1 + x3", p(2), 2) {
            Err(Error::VariableIndex { index: 3, d: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("1 + ", p(2), 2) {
            Err(Error::Syntax { pos: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("1 ? x1", p(2), 2) {
            Err(Error::Syntax { pos: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x0", p(2), 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x1^", p(2), 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("2*", p(2), 2), Err(Error::Syntax { .. })));
    }

    #[test]
    fn printing() {
        let a = parse_poly("1 + x1^-1", p(2), 2).unwrap();
        assert_eq!(a.to_string(), "1+x1^-1");
        let b = parse_poly("x2 - 1 - x1", p(3), 2).unwrap();
        assert_eq!(b.to_string(), "2+2*x1+x2");
        let l = parse_poly("x2^-1 + x1 + x1^-1 + 1", p(2), 2).unwrap();
        assert_eq!(l.to_string(), "1+x1+x1^-1+x2^-1");
        let c = parse_poly("3*x1^2*x2^-1", p(5), 2).unwrap();
        assert_eq!(c.to_string(), "3*x1^2*x2^-1");
        assert_eq!(LaurentPoly::zero(p(5), 2).to_string(), "0");
    }

    #[test]
    fn infers_dimension() {
        let a = parse_poly_infer("1+x3", p(2), 2).unwrap();
        assert_eq!(a.dim(), 3);
        let b = parse_poly_infer("1+x1", p(2), 2).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(parse_poly_infer("x5", p(2), 1), Err(Error::Dimension(5)));
    }
}
