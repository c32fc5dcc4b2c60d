//! Mini-language for input forms: linear combinations of builtin names with
//! real or complex scalars, e.g. `2.5*omega0 + 1*exact_g0`,
//! `(1-2i)*omega0 - 0.5i*exact_g0`, or `0`.

use leafdbar::geometry::builtin_form;
use leafdbar::{Complex64, LeafwiseForm01};

use crate::error::CliError;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> CliError {
        CliError::Config(format!("form `{}`: {msg} at column {}", self.src, self.pos + 1))
    }

    fn number(&mut self) -> Result<Option<f64>, CliError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            let b = bytes[self.pos];
            let exp_sign = (b == b'+' || b == b'-') && self.pos > start && matches!(bytes[self.pos - 1], b'e' | b'E');
            if b.is_ascii_digit() || b == b'.' || exp_sign || ((b == b'e' || b == b'E') && self.pos > start) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Ok(None);
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("form `{}`: bad number `{text}`", self.src)))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|(i, c)| !(c.is_ascii_alphanumeric() || *c == '_') || (*i == 0 && c.is_ascii_digit()))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    /// `x`, `xi`, or `(x ± yi)`.
    fn scalar(&mut self) -> Result<Option<Complex64>, CliError> {
        if self.eat('(') {
            let lead = if self.eat('-') { -1.0 } else { 1.0 };
            let re = lead * self.number()?.ok_or_else(|| self.error("expected a number"))?;
            let sign = if self.eat('+') {
                1.0
            } else if self.eat('-') {
                -1.0
            } else {
                return Err(self.error("expected `+` or `-`"));
            };
            let im = self.number()?.unwrap_or(1.0);
            if !self.eat('i') {
                return Err(self.error("expected `i`"));
            }
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(Some(Complex64::new(re, sign * im)));
        }
        let Some(x) = self.number()? else {
            return Ok(None);
        };
        // an `i` directly after the digits, not the start of a name
        let save = self.pos;
        if self.peek() == Some('i') {
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                self.pos = save;
            } else {
                return Ok(Some(Complex64::new(0.0, x)));
            }
        }
        Ok(Some(Complex64::new(x, 0.0)))
    }
}

/// Parses a form expression into a simplified linear combination.
pub fn parse_form(src: &str) -> Result<LeafwiseForm01, CliError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut terms: Vec<(Complex64, LeafwiseForm01)> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.pos == src.len() {
            if first {
                return Err(cur.error("empty expression"));
            }
            break;
        }
        let sign = if cur.eat('+') {
            1.0
        } else if cur.eat('-') {
            -1.0
        } else if first {
            1.0
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
        first = false;
        let coeff = cur.scalar()?;
        let name = match coeff {
            Some(_) if cur.eat('*') => Some(cur.ident().ok_or_else(|| cur.error("expected a builtin name"))?),
            Some(_) => None,
            None => Some(cur.ident().ok_or_else(|| cur.error("expected a number or builtin name"))?),
        };
        let coeff = coeff.unwrap_or(Complex64::new(1.0, 0.0)) * sign;
        if !(coeff.re.is_finite() && coeff.im.is_finite()) {
            return Err(cur.error("non-finite coefficient"));
        }
        match name {
            Some(name) => terms.push((coeff, builtin_form(name).map_err(|e| CliError::Config(e.to_string()))?)),
            None if coeff == Complex64::new(0.0, 0.0) => {}
            None => return Err(cur.error("a nonzero constant is not an invariant (0,1)-form")),
        }
    }
    Ok(LeafwiseForm01::linear_combination(&terms).simplified())
}
