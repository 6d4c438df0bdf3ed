//! Canonical text form of polynomials.
//!
//! Terms appear in descending order of the ring's monomial order, as `c*v^e*w`, with the
//! variables of a monomial in flat index order. Unit coefficients and unit exponents are
//! omitted, negative terms are joined with `-` and there is no unary plus.

use std::sync::Arc;

use super::{Monomial, PolyAccumulator, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::fields::Field;

pub(super) fn format<F: Field>(p: &Polynomial<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let layout = p.ring().layout();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let (negative, magnitude) = field.format_signed(c);
        if negative {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mut factors = Vec::new();
        if m.is_one() || magnitude != "1" {
            factors.push(magnitude);
        }
        for i in m.support() {
            let e = m.exps()[i];
            let name = layout.var_name(i);
            factors.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
        }
        out.push_str(&factors.join("*"));
    }
    out
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    src: &'a [u8],
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn error(&self, what: &str) -> Error {
        Error::parse(format!("{what} at byte {} of `{}`", self.pos, String::from_utf8_lossy(self.src)))
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

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice")
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = PolyAccumulator::new(self.ring);
        let field = self.ring.field().clone();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    field.one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    field.neg(&field.one())
                }
                _ if first => field.one(),
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
        }
        Ok(acc.finish())
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut t = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            t = t.checked_mul(&f)?;
        }
        Ok(t)
    }

    /// factor := number | variable ['^' int] | '(' expr ')' ['^' int]
    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.take_while(|b| b.is_ascii_digit());
                let mut text = num.to_string();
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let den = self.take_while(|b| b.is_ascii_digit());
                    if den.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    text = format!("{num}/{den}");
                }
                return Ok(self.ring.constant(self.ring.field().parse(&text)?));
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                let i = self.ring.layout().var_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
                let e = self.exponent()?;
                return Ok(self.ring.monomial(Monomial::var(self.ring.nvars(), i, e), self.ring.field().one()));
            }
            _ => return Err(self.error("expected a number, variable or `(`")),
        };
        let e = self.exponent()?;
        base.pow(e as u32)
    }

    fn exponent(&mut self) -> Result<u16> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let digits = self.take_while(|b| b.is_ascii_digit());
        digits.parse::<u16>().map_err(|_| self.error("invalid exponent"))
    }
}

pub(super) fn parse<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Polynomial<F>> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return Err(Error::parse("empty polynomial"));
    }
    let result = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("unexpected character"));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, RationalField};
    use crate::poly::{MonomialOrder, VariableLayout};

    #[test]
    fn canonical_round_trip() {
        let r = PolyRing::new(RationalField, VariableLayout::configuration(2, &[1]), MonomialOrder::DegRevLex);
        let text = "-3/4*z_0_0_1^2*z_1_0_0+z_0_0_0*z_1_0_1-7";
        let p = r.parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(r.parse("(z_0_0_0 + z_0_0_1)^2 - z_0_0_1^2").unwrap().to_string(), "z_0_0_0^2+2*z_0_0_0*z_0_0_1");
        assert_eq!(r.parse("0").unwrap().to_string(), "0");
        assert!(r.parse("w").is_err());
        assert!(r.parse("z_0_0_0 +").is_err());
        assert!(r.parse("").is_err());
    }

    #[test]
    fn residues_print_without_signs() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), VariableLayout::from_names(&["x", "y"]).unwrap(), MonomialOrder::DegRevLex);
        let p = r.parse("x-1/2*y").unwrap();
        assert_eq!(p.to_string(), "x+3*y");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }
}
