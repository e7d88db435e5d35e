//! Polynomial expression parser.
//!
//! Accepts curves in two variables over the rationals:
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'x' | 'y' | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace is free; multiplication is always explicit (`2*x`, not `2x`);
//! exponents are non-negative integers.  This is a superset of the plain
//! sum-of-monomials form: products, powers, nested groups and a leading
//! sign all work, so `(y^3 - x^4)^2 - x^9` parses as written.

use num::{BigInt, BigRational};
use polar_branches::BivariatePoly;
use std::fmt;
use std::str::FromStr;

/// Parse failure with a 1-based source position.
#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    X,
    Y,
    Num(BigInt),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::X => f.write_str("'x'"),
            Tok::Y => f.write_str("'y'"),
            Tok::Num(n) => write!(f, "number {n}"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            'x' | 'X' => {
                bump(&mut chars);
                Tok::X
            }
            'y' | 'Y' => {
                bump(&mut chars);
                Tok::Y
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Num(BigInt::from_str(&digits).expect("digits form an integer"))
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Lexed { tok, line: tline, col: tcol });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|l| (l.line, l.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, msg: msg.into() }
    }

    fn eat(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {want}, found {t}"))),
            None => Err(self.err(format!("expected {want}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BivariatePoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = match self.peek() {
                Some(Tok::Num(n)) => {
                    let n = n.clone();
                    self.pos += 1;
                    u32::try_from(&n).map_err(|_| self.err("exponent too large"))?
                }
                _ => return Err(self.err("expected a non-negative integer exponent after '^'")),
            };
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<BivariatePoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::X) => {
                self.pos += 1;
                Ok(BivariatePoly::x_pow(1))
            }
            Some(Tok::Y) => {
                self.pos += 1;
                Ok(BivariatePoly::y_pow(1))
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            if d == BigInt::from(0) {
                                return Err(self.err("zero denominator"));
                            }
                            value /= BigRational::from_integer(d);
                        }
                        _ => return Err(self.err("expected an integer denominator after '/'")),
                    }
                }
                Ok(BivariatePoly::monomial(value, 0, 0))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(&Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("expected a number, 'x', 'y' or '(', found {t}"))),
            None => Err(self.err("expected an expression, found end of input")),
        }
    }
}

/// Parse a curve expression into a polynomial.
pub fn parse_curve(src: &str) -> Result<BivariatePoly, ParseError> {
    let toks = lex(src)?;
    let lines = src.lines().count().max(1);
    let last_len = src.lines().last().map_or(0, |l| l.chars().count());
    let mut p = Parser { toks, pos: 0, end_line: lines, end_col: last_len + 1 };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        let t = &p.toks[p.pos];
        return Err(ParseError {
            line: t.line,
            col: t.col,
            msg: format!("unexpected {} after the end of the expression", t.tok),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_curve() {
        let p = parse_curve("(y^3 - x^4)^2 - x^9").unwrap();
        let direct = &(&BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4)).pow(2)
            - &BivariatePoly::x_pow(9);
        assert_eq!(p.to_string(), direct.to_string());
    }

    #[test]
    fn parses_rationals_and_signs() {
        let p = parse_curve("-1/2*y^2 + x^3 - 3*x*y").unwrap();
        assert_eq!(
            p.coeff(0, 2),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert_eq!(p.coeff(3, 0), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(p.coeff(1, 1), BigRational::from_integer(BigInt::from(-3)));
    }

    #[test]
    fn rejects_with_position() {
        let e = parse_curve("y^2 - x^").unwrap_err();
        assert_eq!((e.line, e.col), (1, 9));
        let e = parse_curve("y^2 % x").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert!(e.to_string().contains('%'));
        let e = parse_curve("2x").unwrap_err();
        assert_eq!((e.line, e.col), (1, 2));
        assert!(parse_curve("").is_err());
        assert!(parse_curve("(y - x").is_err());
        assert!(parse_curve("1/0*y").is_err());
        assert!(parse_curve("x^3/2").is_err());
    }

    #[test]
    fn nested_groups_and_implicit_one() {
        let p = parse_curve("((y))^2 - (x)^3").unwrap();
        let cusp = &BivariatePoly::y_pow(2) - &BivariatePoly::x_pow(3);
        assert_eq!(p.to_string(), cusp.to_string());
    }
}
