//! Recursive-descent parser for polynomial expressions in `x` and `q`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'q' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, which is how rational
//! coefficients such as `1/2*x` are written.

use num_bigint::BigInt;

use crate::poly::Poly;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|(_, c)| *c).collect();
                if word.chars().all(|c| c == 'x' || c == 'q') {
                    // "xq" is x*q
                    for (k, v) in word.chars().enumerate() {
                        out.push((pos + k, Tok::Var(v)));
                    }
                } else {
                    return Err(ParseError::UnknownIdentifier { pos, name: word });
                }
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                out.push((pos, tok));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !num_traits::Zero::is_zero(&c) => acc = acc.scale(&c.recip()),
                        Some(_) => {
                            return Err(ParseError::Syntax {
                                pos,
                                msg: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(ParseError::Syntax {
                                pos,
                                msg: "division by a non-constant polynomial".into(),
                            })
                        }
                    }
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let k: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos: self.pos(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => {
                    self.idx -= 1;
                    self.err("expected a nonnegative integer exponent")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Poly::constant(Rational::from_integer(n))),
            Some(Tok::Var('x')) => Ok(Poly::x()),
            Some(Tok::Var(_)) => Ok(Poly::q()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.idx -= 1;
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => {
                self.idx -= 1;
                self.err("expected a number, variable or `(`")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn poly_parse(text: &str) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.idx < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses an exact rational such as `3`, `-2` or `5/7`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    t.parse::<Rational>().map_err(|_| ParseError::Syntax {
        pos: 0,
        msg: format!("`{t}` is not a rational number"),
    })
}
