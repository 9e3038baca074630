//! A small infix parser for polynomials, used to write tests and example
//! corpora compactly. The interchange format proper is JSON (see `serial`);
//! this grammar is a development convenience only.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := base ('^' uint)?`, `base := rational | 'i' | name | '(' expr ')'`.

use num_traits::One;

use crate::gauss::GaussRat;
use crate::poly::Polynomial;
use crate::rat::{rat_from_str, Rat};
use crate::CoreError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

pub fn parse_poly(src: &str, vars: &[String]) -> Result<Polynomial, CoreError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(CoreError::Parse(format!(
            "trailing input at byte {} of {src:?}",
            p.pos
        )));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<Polynomial, CoreError> {
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == b'-' {
                self.bump();
                negate = true;
            } else if c == b'+' {
                self.bump();
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                b'-' => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, CoreError> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, CoreError> {
        let base = self.base()?;
        if let Some(b'^') = self.peek() {
            self.bump();
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, CoreError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    Some(b')') => Ok(inner),
                    _ => Err(CoreError::Parse("expected ')'".into())),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(Polynomial::constant(GaussRat::from_rat(r)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                if name == "i" {
                    return Ok(Polynomial::constant(GaussRat::i()));
                }
                match self.vars.iter().position(|v| v == &name) {
                    Some(idx) => Ok(Polynomial::var(idx)),
                    None => Err(CoreError::Parse(format!("unknown variable {name:?}"))),
                }
            }
            other => Err(CoreError::Parse(format!(
                "unexpected input {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn uint(&mut self) -> Result<u32, CoreError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(CoreError::Parse("expected exponent".into()));
        }
        String::from_utf8_lossy(&self.src[start..self.pos])
            .parse()
            .map_err(|_| CoreError::Parse("exponent overflow".into()))
    }

    fn rational(&mut self) -> Result<Rat, CoreError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let mut text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        // A '/' directly followed by digits is part of the literal.
        if self.src.get(self.pos) == Some(&b'/')
            && self
                .src
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            text.push('/');
            text.push_str(&String::from_utf8_lossy(&self.src[dstart..self.pos]));
        }
        if text.is_empty() {
            text.push('1');
            let _ = Rat::one();
        }
        rat_from_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn vars() -> Vec<String> {
        vec!["x1".into(), "y1".into()]
    }

    #[test]
    fn parses_signs_coefficients_and_powers() {
        let f = parse_poly("-x1^2 + 3/2*y1 - 5", &vars()).unwrap();
        assert_eq!(f.coefficient(&Monomial::from_exps(&[2])), GaussRat::from_int(-1));
        assert_eq!(
            f.coefficient(&Monomial::from_exps(&[0, 1])),
            GaussRat::from_str_pair("3/2", "0").unwrap()
        );
        assert_eq!(f.constant_part(), GaussRat::from_int(-5));
    }

    #[test]
    fn parses_i_and_parens() {
        let f = parse_poly("(x1 + i)*(x1 - i)", &vars()).unwrap();
        let g = parse_poly("x1^2 + 1", &vars()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_unknown_names_and_trailing_garbage() {
        assert!(parse_poly("q + 1", &vars()).is_err());
        assert!(parse_poly("x1 + ", &vars()).is_err());
        assert!(parse_poly("x1 )", &vars()).is_err());
    }
}
