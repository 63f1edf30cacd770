//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := coeff | var ("^" int)? | "(" expr ")"
//! var    := "x" digit+ | "y" | "z" | "u" | "t" | "s"
//! coeff  := int ("/" posint)?
//! ```
//!
//! Integers may be negative; whitespace is insignificant. `t` and `s` go
//! beyond the public input grammar: they name chart fiber coordinates and
//! formal flow parameters inside certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{Context, Poly, Var};
use crate::error::{Error, Result};

/// Parses `text` into a polynomial of the given ring context.
pub fn parse(text: &str, ctx: Context) -> Result<Poly> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ctx,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: Context,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut sign = 1i64;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if sign < 0 {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'+') => 1i64,
                Some(b'-') => -1i64,
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if !self.eat(b'*') {
                break;
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() || b == b'-' => self.coeff(),
            Some(b) if b.is_ascii_alphabetic() => self.variable(),
            _ => Err(self.err("expected coefficient, variable or '('")),
        }
    }

    fn coeff(&mut self) -> Result<Poly> {
        let num = self.int()?;
        let den = if self.eat(b'/') {
            let start = self.pos;
            let d = self.int()?;
            if !d.is_positive() {
                self.pos = start;
                return Err(self.err("denominator must be positive"));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Poly::constant(self.ctx, BigRational::new(num, den)))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let mut v: BigInt = digits.parse().unwrap();
        if neg {
            v = -v;
        }
        Ok(v)
    }

    fn variable(&mut self) -> Result<Poly> {
        let var_pos = self.pos;
        let head = self.bump().unwrap();
        let v = match head {
            b'x' => {
                let start = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    self.pos += 1;
                }
                if self.pos == start {
                    self.pos = var_pos;
                    return Err(self.err("expected index after 'x'"));
                }
                let idx: usize = std::str::from_utf8(&self.bytes[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("x index out of range"))?;
                if idx == 0 || idx > self.ctx.n() {
                    self.pos = var_pos;
                    return Err(self.err(&format!("unknown variable x{idx}")));
                }
                Var::X(idx - 1)
            }
            b'y' => Var::Y,
            b'z' => Var::Z,
            b'u' => Var::U,
            b't' => Var::T,
            b's' => Var::S,
            _ => {
                self.pos = var_pos;
                return Err(self.err("unknown variable"));
            }
        };
        if !self.ctx.has(v) {
            self.pos = var_pos;
            return Err(Error::UnknownVariable { var: v.name() });
        }
        let exp = if self.eat(b'^') {
            let e = self.int()?;
            i64::try_from(e).map_err(|_| self.err("exponent out of range"))?
        } else {
            1
        };
        if exp < 0 {
            let laurent_ok = matches!(v, Var::X(_)) && self.ctx.is_laurent();
            if !laurent_ok {
                return Err(Error::NegativeExponent { var: v.name() });
            }
        }
        Poly::monomial(
            self.ctx,
            &[(v, exp)],
            BigRational::from_integer(BigInt::from(1)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn parses_the_three_term_example() {
        let ctx = Context::ambient(1);
        let p = parse("x1^2*z - y^2 + 1", ctx).unwrap();
        assert_eq!(p.num_terms(), 3);
        let direct = Poly::monomial(ctx, &[(Var::X(0), 2), (Var::Z, 1)], int(1)).unwrap();
        let y2 = Poly::monomial(ctx, &[(Var::Y, 2)], int(-1)).unwrap();
        let one = Poly::one(ctx);
        assert_eq!(p, &(&direct + &y2) + &one);
    }

    #[test]
    fn product_form_matches_expansion() {
        let ctx = Context::xy(1);
        let expanded = parse("y^2 - 1", ctx).unwrap();
        let product = parse("(y - 1)*(y + 1)", ctx).unwrap();
        assert_eq!(expanded, product);
    }

    #[test]
    fn rational_coefficients() {
        let ctx = Context::xy(1);
        let p = parse("3/2*y - 1/2", ctx).unwrap();
        assert_eq!(
            p.coeff(&Poly::var(ctx, Var::Y).leading_term().unwrap().0.clone()),
            rat(3, 2)
        );
    }

    #[test]
    fn error_positions() {
        let ctx = Context::ambient(1);
        match parse("x1 + @", ctx) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse("x2", ctx), Err(Error::Parse { .. })));
        assert!(matches!(
            parse("u", ctx),
            Err(Error::UnknownVariable { .. })
        ));
    }
}
