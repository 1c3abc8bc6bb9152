//! Field literals such as `(3/11)*(4+3*sqrt3)` or `1/(13*sqrt3-21)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::quadext::QuadExt;
use super::LorentzError;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    field: Option<i64>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> LorentzError {
        LorentzError::Parse(format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QuadExt, LorentzError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == b'+' || c == b'-' {
                self.pos += 1;
                let rhs = self.term()?;
                acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QuadExt, LorentzError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if c == b'*' || c == b'/' {
                self.pos += 1;
                let rhs = self.factor()?;
                if c == b'*' {
                    acc = &acc * &rhs;
                } else {
                    if rhs.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &rhs;
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QuadExt, LorentzError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QuadExt::rational(BigRational::from_integer(n)))
            }
            Some(b's') => {
                if !self.s[self.pos..].starts_with(b"sqrt") {
                    return Err(self.err("unknown token"));
                }
                self.pos += 4;
                let d: i64 = self
                    .integer()?
                    .try_into()
                    .map_err(|_| self.err("radicand too large"))?;
                if d < 2 || !square_free(d) {
                    return Err(self.err("radicand must be square-free and at least 2"));
                }
                match self.field {
                    Some(f) if f != d => return Err(LorentzError::FieldMismatch(f, d)),
                    _ => self.field = Some(d),
                }
                Ok(QuadExt::sqrt(d))
            }
            _ => Err(self.err("unexpected input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, LorentzError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }
}

pub fn square_free(d: i64) -> bool {
    let mut p = 2;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Parse a literal. `d` fixes the ambient field; rational results adopt it.
pub fn parse_field_literal(text: &str, d: Option<i64>) -> Result<QuadExt, LorentzError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, field: d };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(match p.field {
        Some(f) => v.with_field(f),
        None => v,
    })
}

/// Inverse of [`parse_field_literal`]: a literal that parses back to `x`.
pub fn to_literal(x: &QuadExt) -> String {
    let a = x.a();
    let b = x.b();
    let rat = |r: &BigRational| {
        if r.is_integer() {
            r.to_string()
        } else {
            format!("({})", r)
        }
    };
    use num_traits::Zero;
    if b.is_zero() {
        return rat(a);
    }
    let rad = format!("sqrt{}", x.radicand());
    let bpart = format!("{}*{}", rat(b), rad);
    if a.is_zero() {
        bpart
    } else {
        format!("{}+{}", rat(a), bpart)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_breakpoints_parse() {
        let x = parse_field_literal("(3/11)*(4+3*sqrt3)", None).unwrap();
        assert_eq!(x, QuadExt::from_parts(12, 11, 9, 11, 3));
        let y = parse_field_literal("1/(13*sqrt3-21)", None).unwrap();
        assert_eq!(y, QuadExt::from_parts(21, 66, 13, 66, 3));
    }

    #[test]
    fn literal_roundtrip() {
        for s in ["-7/3", "(1/143)*(24+7*sqrt3)", "sqrt2", "2-sqrt2"] {
            let x = parse_field_literal(s, None).unwrap();
            assert_eq!(parse_field_literal(&to_literal(&x), None).unwrap(), x);
        }
    }

    #[test]
    fn rejects_mixed_and_garbage() {
        assert!(matches!(parse_field_literal("sqrt2+sqrt3", None), Err(LorentzError::FieldMismatch(2, 3))));
        assert!(parse_field_literal("sqrt4", None).is_err());
        assert!(parse_field_literal("1/0", None).is_err());
        assert!(parse_field_literal("2 3", None).is_err());
    }
}
