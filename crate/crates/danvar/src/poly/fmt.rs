//! Canonical printing. Terms are emitted in descending graded-lex order with
//! explicit `*` between factors and `^` only for exponents different from 1,
//! so that `parse(print(p)) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, Poly};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let neg = coeff.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if neg { -coeff.clone() } else { coeff.clone() };
            let body = self.format_monomial(mono);
            if body.is_empty() {
                write_rational(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write_rational(f, &mag)?;
                write!(f, "*{body}")?;
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &num_rational::BigRational) -> fmt::Result {
    if q.denom() == &BigInt::from(1) {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl Poly {
    fn format_monomial(&self, mono: &Monomial) -> String {
        let mut parts = Vec::new();
        for (slot, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = self.ctx.var_at(slot).name();
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Context};

    #[test]
    fn canonical_print() {
        let ctx = Context::ambient(1);
        let p = parse("1 - y^2 + x1^2*z", ctx).unwrap();
        assert_eq!(p.to_string(), "x1^2*z - y^2 + 1");
    }

    #[test]
    fn laurent_print_round_trips() {
        let ctx = Context::x_laurent(2);
        let p = parse("-2*x1^-1*x2^-2 + 1/2", ctx).unwrap();
        let s = p.to_string();
        assert_eq!(parse(&s, ctx).unwrap(), p);
    }

    #[test]
    fn zero_prints_as_zero() {
        let ctx = Context::xy(1);
        assert_eq!(super::super::Poly::zero(ctx).to_string(), "0");
        assert_eq!(parse("y - y", ctx).unwrap().to_string(), "0");
    }
}
