//! Expression parser for scalars on a chart.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := '-' factor | power
//! power    := atom ('^' exponent)?
//! atom     := integer | coordinate | '(' expr ')'
//! exponent := ['-'] digits
//! ```
//!
//! Coordinate names multiply with the chart's grading, so odd names
//! anticommute and square to zero. Division and negative exponents require
//! the divisor's body to be invertible; rational literals like `1/3` are just
//! integer division. The result is a normalized superfunction.

use num_bigint::BigInt;
use num_rational::BigRational;
use symcon_core::{Chart, Superfunction};
use thiserror::Error;

/// A parse or evaluation failure, positioned by byte offset in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {pos}: {message}")]
pub struct ExprError {
    pub pos: usize,
    pub message: String,
}

impl ExprError {
    fn new(pos: usize, message: impl Into<String>) -> ExprError {
        ExprError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value = BigInt::parse_bytes(digits.as_bytes(), 10)
                    .ok_or_else(|| ExprError::new(start, "invalid integer literal"))?;
                tokens.push((start, Token::Int(value)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => return Err(ExprError::new(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    chart: &'a Chart,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Superfunction, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some((_, Token::Plus)) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some((_, Token::Minus)) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Superfunction, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((_, Token::Star)) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(&(op_pos, Token::Slash)) => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    let inv = divisor.invert().map_err(|_| {
                        ExprError::new(op_pos, "division by a superfunction with zero body")
                    })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Superfunction, ExprError> {
        if let Some((_, Token::Minus)) = self.peek() {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Superfunction, ExprError> {
        let base = self.atom()?;
        if let Some((_, Token::Caret)) = self.peek() {
            self.pos += 1;
            let mut negative = false;
            if let Some((_, Token::Minus)) = self.peek() {
                self.pos += 1;
                negative = true;
            }
            let (pos, token) = self
                .next()
                .ok_or_else(|| ExprError::new(self.end, "expected an integer exponent"))?;
            let exp = match token {
                Token::Int(v) => {
                    u32::try_from(v).map_err(|_| ExprError::new(pos, "exponent too large"))?
                }
                _ => return Err(ExprError::new(pos, "expected an integer exponent")),
            };
            if negative {
                let inv = base.invert().map_err(|_| {
                    ExprError::new(pos, "negative power of a superfunction with zero body")
                })?;
                return Ok(inv.pow(exp));
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Superfunction, ExprError> {
        let (pos, token) = self
            .next()
            .ok_or_else(|| ExprError::new(self.end, "unexpected end of expression"))?;
        match token {
            Token::Int(v) => Ok(Superfunction::constant(
                self.chart.p(),
                self.chart.q(),
                BigRational::from_integer(v),
            )),
            Token::Ident(name) => match self.chart.index_of(&name) {
                Some(i) => Ok(self.chart.coordinate_function(i)),
                None => Err(ExprError::new(pos, format!("unknown identifier `{name}`"))),
            },
            Token::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Token::RParen)) => Ok(inner),
                    Some((p, _)) => Err(ExprError::new(p, "expected `)`")),
                    None => Err(ExprError::new(self.end, "unclosed parenthesis")),
                }
            }
            _ => Err(ExprError::new(
                pos,
                "expected a literal, coordinate, or `(`",
            )),
        }
    }
}

/// Parses an expression into a normalized superfunction on the chart.
pub fn parse_expression(text: &str, chart: &Chart) -> Result<Superfunction, ExprError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        chart,
        end: text.len(),
    };
    let value = parser.expr()?;
    if let Some((pos, _)) = parser.peek() {
        return Err(ExprError::new(*pos, "unexpected trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::standard(2, 2)
    }

    #[test]
    fn grassmann_and_polynomial_terms() {
        let c = chart();
        let parsed = parse_expression("th1*th2 + x1^2", &c).unwrap();
        let expected = &(&c.coordinate_function(2) * &c.coordinate_function(3))
            + &c.coordinate_function(0).pow(2);
        assert_eq!(parsed, expected);
    }

    #[test]
    fn nilpotency_is_applied() {
        let c = chart();
        assert!(parse_expression("th1*th1", &c).unwrap().is_zero());
    }

    #[test]
    fn rational_division() {
        let c = chart();
        let parsed = parse_expression("1/(1+x1)", &c).unwrap();
        let expected = (&c.one() + &c.coordinate_function(0)).invert().unwrap();
        assert_eq!(parsed, expected);
    }

    #[test]
    fn unary_minus_and_precedence() {
        let c = chart();
        let parsed = parse_expression("-x1^2", &c).unwrap();
        assert_eq!(parsed, -&c.coordinate_function(0).pow(2));
        let parsed = parse_expression("2*x1/(1+x2)*th1", &c).unwrap();
        let expected = &(&c
            .coordinate_function(0)
            .scale(&BigRational::from_integer(2.into()))
            * &(&c.one() + &c.coordinate_function(1)).invert().unwrap())
            * &c.coordinate_function(2);
        assert_eq!(parsed, expected);
    }

    #[test]
    fn errors_carry_positions() {
        let c = chart();
        let err = parse_expression("x1 + ", &c).unwrap_err();
        assert_eq!(err.pos, 5);
        let err = parse_expression("1/th1", &c).unwrap_err();
        assert_eq!(err.pos, 1);
        let err = parse_expression("x1 + y3", &c).unwrap_err();
        assert_eq!(err.pos, 5);
        assert!(err.message.contains("y3"));
        let err = parse_expression("x1 $ 2", &c).unwrap_err();
        assert_eq!(err.pos, 3);
    }

    #[test]
    fn negative_exponent_inverts() {
        let c = chart();
        let parsed = parse_expression("(1+x1)^-1", &c).unwrap();
        let expected = (&c.one() + &c.coordinate_function(0)).invert().unwrap();
        assert_eq!(parsed, expected);
    }
}
