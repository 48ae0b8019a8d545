//! Polynomial expression parser.
//!
//! ```text
//! expr   := [ '+' | '-' ] term ( ( '+' | '-' ) term )*
//! term   := factor ( ( '*' | '/' ) factor )*
//! factor := base [ '^' uint ]
//! base   := int | ident | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so printed rational
//! coefficients such as `3/2*x1` read back. Implicit multiplication is a
//! syntax error.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::field::{Field, Rational};
use super::polynomial::Polynomial;
use super::ring::WeightedRing;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Syntax {
                position: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Arc<WeightedRing>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial<Rational>> {
        let negate = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                true
            }
            Tok::Sym('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let at = self.offset();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division is only allowed by a nonzero constant".into(),
                        });
                    }
                    acc = acc.scale(&d.constant_term().inv());
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => {
                    return self.syntax("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<Rational>> {
        let base = self.base()?;
        if self.peek() == &Tok::Sym('^') {
            self.bump();
            match self.bump() {
                Tok::Int(n) => {
                    let k: u32 = n.try_into().map_err(|_| Error::Syntax {
                        position: self.toks[self.pos - 1].1,
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => {
                    self.pos -= 1;
                    self.syntax("expected a non-negative integer exponent")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial<Rational>> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Polynomial::constant(self.ring, Rational::from_integer(n))),
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { name, position: at }),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => {
                self.pos -= 1;
                self.syntax("unexpected end of input")
            }
            Tok::Sym(c) => {
                self.pos -= 1;
                self.syntax(format!("unexpected `{c}`"))
            }
        }
    }
}

/// Parse `text` into a polynomial over `ring`, expanded to normal form.
pub fn parse_polynomial(text: &str, ring: &Arc<WeightedRing>) -> Result<Polynomial<Rational>> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    if p.peek() != &Tok::End {
        return match p.peek() {
            Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => {
                p.syntax("implicit multiplication is not allowed; use `*`")
            }
            _ => p.syntax("unexpected trailing input"),
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{int, rat};
    use crate::exactalg::ring::Monomial;

    fn ring() -> Arc<WeightedRing> {
        WeightedRing::new(&["x1", "v"], &[2, 2]).unwrap()
    }

    #[test]
    fn distributes() {
        let r = ring();
        let p = parse_polynomial("x1*(x1+v)", &r).unwrap();
        let expected = Polynomial::from_terms(
            &r,
            [
                (Monomial::new(vec![2, 0]), int(1)),
                (Monomial::new(vec![1, 1]), int(1)),
            ],
        );
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x1^2 + x1*v");
    }

    #[test]
    fn unknown_variable_reports_position() {
        let err = parse_polynomial("x1*(y+1)", &ring()).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownVariable {
                name: "y".into(),
                position: 4
            }
        );
        assert_eq!(err.code(), "UNKNOWN_VARIABLE");
    }

    #[test]
    fn syntax_errors() {
        let r = ring();
        for bad in ["x1 v", "2x1", "(x1", "x1^", "x1 +", "x1 ^ v", "x1 / v", "x1 # 2"] {
            let err = parse_polynomial(bad, &r).unwrap_err();
            assert_eq!(err.code(), "SYNTAX_ERROR", "{bad}");
        }
        match parse_polynomial("x1 v", &r).unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 3),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn rationals_and_signs() {
        let r = ring();
        let p = parse_polynomial("-3/2*x1 + 1/2", &r).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![1, 0])), rat(-3, 2));
        assert_eq!(p.constant_term(), rat(1, 2));
        assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
        assert_eq!(parse_polynomial("(x1 - v)^0", &r).unwrap(), Polynomial::one(&r));
    }
}
