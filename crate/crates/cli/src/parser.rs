//! Text syntax for operator polynomials.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := unary (['*'|'/'] unary | unary)*      juxtaposition multiplies
//! unary := '-' unary | power
//! power := atom ('^' integer)*
//! atom  := x[n] | d[n] | ∂[n] | q[n] | integer | '(' expr ')'
//! ```
//!
//! Products keep their written order. `x5d5` is `x^5 d^5`. Division is only
//! by nonzero scalars.

use std::str::FromStr;

use thiserror::Error;
use weylfac::{AlgebraCtx, Field, Mode, Rational, WeylPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Gen(char, u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |column: usize, message: String| ParseError { column, message };
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => toks.push((Tok::Num(digits(&mut i)), col)),
            'x' | 'd' | '∂' | 'q' => {
                i += 1;
                let exp = digits(&mut i);
                let exp = if exp.is_empty() {
                    1
                } else {
                    exp.parse()
                        .map_err(|_| err(col + 1, format!("exponent {exp} is too large")))?
                };
                let g = if c == '∂' { 'd' } else { c };
                toks.push((Tok::Gen(g, exp), col));
            }
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' | '−' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' | '·' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            other => return Err(err(col, format!("unexpected character '{other}'"))),
        }
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(Lexer { toks })
}

struct Parser<'a, F: Field> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a AlgebraCtx<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<WeylPoly<F>, ParseError> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?).unwrap();
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?).unwrap();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Gen(..) | Tok::LParen)
    }

    fn term(&mut self) -> Result<WeylPoly<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.wmul(&self.unary()?).unwrap();
                }
                Tok::Slash => {
                    self.bump();
                    let col = self.column();
                    let divisor = self.unary()?;
                    let inv = divisor.as_constant().and_then(|c| c.inv());
                    match inv {
                        Some(inv) => acc = acc.scale(&inv),
                        None => {
                            return Err(ParseError {
                                column: col,
                                message: "division is only allowed by nonzero scalars".into(),
                            })
                        }
                    }
                }
                _ if self.starts_operand() => {
                    acc = acc.wmul(&self.power()?).unwrap();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<WeylPoly<F>, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeylPoly<F>, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            match self.peek().clone() {
                Tok::Num(n) => {
                    let Ok(e) = n.parse::<u32>() else {
                        return self.fail(format!("exponent {n} is too large"));
                    };
                    self.bump();
                    base = base.pow(e);
                }
                Tok::Minus => return self.fail("negative exponents are not allowed"),
                _ => return self.fail("expected an integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WeylPoly<F>, ParseError> {
        let col = self.column();
        match self.bump() {
            Tok::Num(n) => {
                let r = Rational::from_str(&n).expect("digits form an integer");
                Ok(WeylPoly::constant(F::from_rational(&r), self.ctx))
            }
            Tok::Gen('x', e) => Ok(WeylPoly::monomial(F::one(), e, 0, self.ctx)),
            Tok::Gen('d', e) => Ok(WeylPoly::monomial(F::one(), 0, e, self.ctx)),
            Tok::Gen(_, e) => {
                if matches!(self.ctx.mode(), Mode::Weyl) {
                    return Err(ParseError {
                        column: col,
                        message: "'q' is not available in the Weyl algebra".into(),
                    });
                }
                Ok(WeylPoly::constant(self.ctx.q().pow(e as u64), self.ctx))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => {
                self.pos = self.toks.len() - 1;
                self.fail("unexpected end of input")
            }
            other => {
                self.pos -= 1;
                self.fail(format!("unexpected {}", describe(&other)))
            }
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        _ => "token",
    }
}

/// Parse `text` into normal form in `ctx`.
pub fn parse_poly<F: Field>(text: &str, ctx: &AlgebraCtx<F>) -> Result<WeylPoly<F>, ParseError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        ctx,
    };
    if *p.peek() == Tok::End {
        return p.fail("empty expression");
    }
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(format!("unexpected {}", describe(p.peek())));
    }
    Ok(out)
}
