//! Expression grammar for algebra elements.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := factor ('*'? factor)*            juxtaposition binds tighter than +/-
//! factor  := primary ('^' sign? INT)?
//! primary := INT ('/' INT)? | 'q' | 'zeta' '(' INT ')' | 'a+' | 'a-' | 'K' | '(' expr ')'
//! ```
//!
//! `a+` and `a-` are single tokens. Negative powers are accepted only for
//! invertible single terms `c·K^s`, so `K^-1` and `q^-2` work while
//! `(a+)^-1` is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{AlgebraElement, Generator, QParam};
use crate::exactnum::{CyclotomicField, NumError, Scalar};

const MAX_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown symbol {symbol:?} at position {pos}")]
    UnknownSymbol { pos: usize, symbol: String },
    #[error("q-literal at position {pos} used before (m, k) is bound")]
    UnboundQ { pos: usize },
    #[error("(m, k) must be bound before an expression can be normal-ordered")]
    UnboundAlgebra,
    #[error("negative power at position {pos} of a non-invertible expression")]
    NegativePower { pos: usize },
    #[error("exponent at position {pos} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { pos: usize },
    #[error("arithmetic error at position {pos}: {source}")]
    Arithmetic { pos: usize, source: NumError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Aplus,
    Aminus,
    K,
    Q,
    Zeta,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((Tok::Int(v), start));
                continue;
            }
            b'/' => out.push((Tok::Slash, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let ident = &text[start..i];
                let tok = match ident {
                    "a" if i < bytes.len() && bytes[i] == b'+' => {
                        i += 1;
                        Tok::Aplus
                    }
                    "a" if i < bytes.len() && bytes[i] == b'-' => {
                        i += 1;
                        Tok::Aminus
                    }
                    "K" => Tok::K,
                    "q" => Tok::Q,
                    "zeta" => Tok::Zeta,
                    _ => {
                        return Err(ParseError::UnknownSymbol {
                            pos: start,
                            symbol: ident.to_string(),
                        })
                    }
                };
                out.push((tok, start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::UnknownSymbol {
                    pos: start,
                    symbol: ch.to_string(),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Parsed syntax tree, before normal ordering.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(BigRational),
    Q { pos: usize },
    Zeta { order: u32, pos: usize },
    Gen(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow { base: Box<Expr>, exp: i64, pos: usize },
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            message: message.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<usize, ParseError> {
        match self.peek() {
            Some(t) if *t == tok => Ok(self.bump().unwrap().1),
            _ => self.syntax(&format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::Q | Tok::Zeta | Tok::Aplus | Tok::Aminus | Tok::K | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn int(&mut self) -> Result<(BigInt, usize), ParseError> {
        match self.bump() {
            Some((Tok::Int(v), p)) => Ok((v, p)),
            _ => {
                self.at -= 1;
                self.syntax("expected an integer")
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        let pos = self.bump().unwrap().1;
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let (v, _) = self.int()?;
        let e = v
            .to_i64()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentTooLarge { pos })?;
        Ok(Expr::Pow {
            base: Box::new(base),
            exp: if negative { -e } else { e },
            pos,
        })
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump().map(|(t, _)| t) {
            Some(Tok::Int(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let (d, dpos) = self.int()?;
                    if d.is_zero() {
                        return Err(ParseError::Arithmetic {
                            pos: dpos,
                            source: NumError::DivisionByZero,
                        });
                    }
                    Ok(Expr::Number(BigRational::new(n, d)))
                } else {
                    Ok(Expr::Number(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Q) => Ok(Expr::Q { pos }),
            Some(Tok::Zeta) => {
                self.expect(Tok::LParen, "'(' after zeta")?;
                let (n, npos) = self.int()?;
                let order = n
                    .to_u32()
                    .filter(|n| (1..=100_000).contains(n))
                    .ok_or(ParseError::Syntax {
                        pos: npos,
                        message: "cyclotomic order must be a positive integer".into(),
                    })?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Zeta { order, pos })
            }
            Some(Tok::Aplus) => Ok(Expr::Gen(Generator::Aplus)),
            Some(Tok::Aminus) => Ok(Expr::Gen(Generator::Aminus)),
            Some(Tok::K) => Ok(Expr::Gen(Generator::K)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(_) => {
                self.at -= 1;
                self.syntax("expected a number, q, zeta(N), a+, a-, K or '('")
            }
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parse to a syntax tree without binding `q`.
pub fn parse_ast(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.syntax("unexpected token");
    }
    Ok(e)
}

impl Expr {
    /// Position of the first `q` literal, if any.
    pub fn first_q(&self) -> Option<usize> {
        match self {
            Expr::Q { pos } => Some(*pos),
            Expr::Number(_) | Expr::Zeta { .. } | Expr::Gen(_) => None,
            Expr::Neg(a) | Expr::Pow { base: a, .. } => a.first_q(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.first_q().or_else(|| b.first_q()),
        }
    }

    /// Evaluate in the algebra at `q`, normal-ordering as it goes.
    pub fn lower(&self, q: &Arc<QParam>) -> Result<AlgebraElement, ParseError> {
        Ok(match self {
            Expr::Number(r) => AlgebraElement::scalar(q, q.rational(r)),
            Expr::Q { .. } => AlgebraElement::scalar(q, q.q_pow(1)),
            Expr::Zeta { order, pos } => {
                let z = Scalar::Exact(CyclotomicField::new(*order).zeta_pow(1));
                let z = q.coerce(z).map_err(|source| ParseError::Arithmetic { pos: *pos, source })?;
                AlgebraElement::scalar(q, z)
            }
            Expr::Gen(g) => AlgebraElement::generator(q, *g),
            Expr::Neg(a) => a.lower(q)?.neg(),
            Expr::Add(a, b) => a.lower(q)?.add(&b.lower(q)?),
            Expr::Sub(a, b) => a.lower(q)?.sub(&b.lower(q)?),
            Expr::Mul(a, b) => a.lower(q)?.mul(&b.lower(q)?),
            Expr::Pow { base, exp, pos } => {
                let b = base.lower(q)?;
                if *exp >= 0 {
                    b.pow(*exp as u32)
                } else {
                    b.inverse_if_monomial()
                        .ok_or(ParseError::NegativePower { pos: *pos })?
                        .pow(exp.unsigned_abs() as u32)
                }
            }
        })
    }
}

/// Parse and normal-order. Without a bound `q`, any `q` literal is reported
/// with its position, and otherwise the expression is only syntax-checked.
pub fn parse_expression(text: &str, q: Option<&Arc<QParam>>) -> Result<AlgebraElement, ParseError> {
    let ast = parse_ast(text)?;
    match q {
        Some(q) => ast.lower(q),
        None => match ast.first_q() {
            Some(pos) => Err(ParseError::UnboundQ { pos }),
            None => Err(ParseError::UnboundAlgebra),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q12() -> Arc<QParam> {
        QParam::root_of_unity(1, 2).unwrap()
    }

    #[test]
    fn aminus_aplus_three_terms() {
        let q = q12();
        let e = parse_expression("a- a+", Some(&q)).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.coefficient((1, 1, 0)), Some(&q.integer(-1)));
        assert_eq!(e.coefficient((0, 0, 1)), Some(&q.inv_q_minus()));
        assert_eq!(e.coefficient((0, 0, -1)), Some(&-q.inv_q_minus()));
    }

    #[test]
    fn k_kinv_is_one() {
        let q = q12();
        assert_eq!(parse_expression("K K^-1", Some(&q)).unwrap(), AlgebraElement::one(&q));
    }

    #[test]
    fn like_terms_collect() {
        let q = q12();
        let e = parse_expression("2 a+ + a+", Some(&q)).unwrap();
        assert_eq!(e, AlgebraElement::monomial(&q, (1, 0, 0), q.integer(3)));
    }

    #[test]
    fn q_literals_and_zeta() {
        let q = q12();
        let e = parse_expression("q^2 - zeta(4)", Some(&q)).unwrap();
        assert!(e.is_zero());
        let f = parse_expression("K a+ - q^2 a+ K", Some(&q)).unwrap();
        assert!(f.is_zero());
        let g = parse_expression("(q - q^-1)^2", Some(&q)).unwrap();
        assert_eq!(g, AlgebraElement::scalar(&q, q.integer(-2)));
    }

    #[test]
    fn errors_carry_positions() {
        let q = q12();
        assert_eq!(
            parse_expression("a+ * (K", Some(&q)).unwrap_err(),
            ParseError::Syntax { pos: 7, message: "expected ')'".into() }
        );
        assert_eq!(
            parse_expression("a+ x", Some(&q)).unwrap_err(),
            ParseError::UnknownSymbol { pos: 3, symbol: "x".into() }
        );
        assert_eq!(parse_expression("2 q a+", None).unwrap_err(), ParseError::UnboundQ { pos: 2 });
        assert_eq!(parse_expression("a+ a-", None).unwrap_err(), ParseError::UnboundAlgebra);
        assert!(matches!(
            parse_expression("(a+)^-1", Some(&q)).unwrap_err(),
            ParseError::NegativePower { .. }
        ));
        assert!(matches!(parse_expression("a+ +", Some(&q)).unwrap_err(), ParseError::Syntax { .. }));
        assert!(matches!(parse_expression("1/0", Some(&q)).unwrap_err(), ParseError::Arithmetic { .. }));
    }

    #[test]
    fn grouped_powers() {
        let q = QParam::root_of_unity(1, 3).unwrap();
        let e = parse_expression("(a+ + a-)^2", Some(&q)).unwrap();
        let f = parse_expression("a+ a+ + a+ a- + a- a+ + a- a-", Some(&q)).unwrap();
        assert_eq!(e, f);
    }

    #[test]
    fn printed_forms_round_trip() {
        let q = QParam::root_of_unity(3, 5).unwrap();
        for text in ["a- a+", "K^-2 a- a- a+ (q + 1/3)", "-a+ K + 5/7", "(a- a+)^3"] {
            let e = parse_expression(text, Some(&q)).unwrap();
            let back = parse_expression(&e.to_string(), Some(&q)).unwrap();
            assert_eq!(back, e, "{text} -> {e}");
        }
    }
}
