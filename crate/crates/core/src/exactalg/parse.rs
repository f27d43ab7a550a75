//! Parser for the univariate polynomial grammar used in curve files:
//!
//! ```text
//! expr  := [sign] term (('+' | '-') term)*
//! term  := [coeff '*'] 't' ['^' nat] | coeff
//! coeff := nat | nat '/' posint
//! ```
//!
//! Whitespace is ignored everywhere. Reported offsets are byte offsets into
//! the original text.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, TruncSeries};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&mut self, message: &'static str) -> Error {
        self.skip_ws();
        Error::Syntax { offset: self.pos, message }
    }

    /// Digits only; whitespace inside a number is not allowed.
    fn nat(&mut self) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Syntax { offset: start, message: "expected a natural number" });
        }
        let mut n = BigInt::zero();
        for &d in &self.text[start..self.pos] {
            n = n * 10u32 + u32::from(d - b'0');
        }
        Ok((n, start))
    }

    fn exponent(&mut self) -> Result<u32> {
        let (n, at) = self.nat()?;
        u32::try_from(n).map_err(|_| Error::Syntax { offset: at, message: "exponent too large" })
    }

    fn coeff(&mut self) -> Result<Rational> {
        let (num, _) = self.nat()?;
        if self.eat(b'/') {
            let (den, at) = self.nat()?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator { offset: at });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn t_power(&mut self) -> Result<u32> {
        if !self.eat(b't') {
            return Err(self.err("expected 't'"));
        }
        if self.eat(b'^') {
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(u32, Rational)> {
        match self.peek() {
            Some(b't') => Ok((self.t_power()?, Rational::one())),
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.eat(b'*') {
                    Ok((self.t_power()?, c))
                } else {
                    Ok((0, c))
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse `text` into a series known modulo `t^truncation`.
///
/// ```
/// use latnorm::exactalg::{parse_poly, rat};
/// let s = parse_poly("t - 1/2*t^3", 8).unwrap();
/// assert_eq!(s.coeff(3), rat(-1, 2));
/// ```
pub fn parse_poly(text: &str, truncation: u32) -> Result<TruncSeries> {
    let mut cur = Cursor { text: text.as_bytes(), pos: 0 };
    let mut out = TruncSeries::zero(truncation);
    let mut negate = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let (e, c) = cur.term()?;
        out.add_term(e, if negate { -c } else { c });
        match cur.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return Err(cur.err("expected '+', '-' or end of input")),
        }
        cur.pos += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn single_power() {
        let s = parse_poly("t^2", 10).unwrap();
        assert_eq!(s, TruncSeries::monomial(int(1), 2, 10));
    }

    #[test]
    fn rational_coefficient() {
        let s = parse_poly("t - 1/2*t^3", 10).unwrap();
        assert_eq!(s, TruncSeries::from_terms([(1, int(1)), (3, rat(-1, 2))], 10));
    }

    #[test]
    fn doubled_caret() {
        assert_eq!(
            parse_poly("t^^2", 10),
            Err(Error::Syntax { offset: 2, message: "expected a natural number" })
        );
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(parse_poly("3/0*t", 10), Err(Error::ZeroDenominator { offset: 2 }));
    }

    #[test]
    fn whitespace_and_signs() {
        let s = parse_poly("  -1 * t ^ 2 +  3/6 ", 10).unwrap();
        assert_eq!(s, TruncSeries::from_terms([(0, rat(1, 2)), (2, int(-1))], 10));
        assert!(parse_poly("0", 4).unwrap().is_zero());
        assert!(parse_poly("t - t", 4).unwrap().is_zero());
    }

    #[test]
    fn garbage_positions() {
        assert!(matches!(parse_poly("", 4), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_poly("t x", 4), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("t +", 4), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_poly("2*", 4), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let s = parse_poly("t + t^9", 5).unwrap();
        assert_eq!(s, TruncSeries::monomial(int(1), 1, 5));
    }
}
