//! Text grammar for forms:
//!
//! ```text
//! form        := ['+'|'-'] signed_term (('+'|'-') signed_term)*
//! signed_term := factor ('*' factor)*
//! factor      := rational | var ['^' int] | dvar ('^' dvar)*
//! ```
//!
//! `^` after a polynomial variable is a power, between differentials it is a wedge.
//! Output of [`DifferentialForm`]'s `Display` parses back to the same form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::context::VariableContext;
use crate::error::{Error, Result};
use crate::form::{DifferentialForm, Rational, RawTerm};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
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
            b'+' => out.push((start, Token::Plus)),
            b'-' => out.push((start, Token::Minus)),
            b'*' => out.push((start, Token::Star)),
            b'/' => out.push((start, Token::Slash)),
            b'^' => out.push((start, Token::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push((start, Token::Int(digits.parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character {:?}", c as char),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    context: &'a Arc<VariableContext>,
}

enum Symbol {
    Variable(usize),
    Differential(usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.position(),
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn symbol(&self, name: &str) -> Result<Symbol> {
        if let Some(i) = self.context.lookup(name) {
            return Ok(Symbol::Variable(i));
        }
        if let Some(i) = name
            .strip_prefix('d')
            .and_then(|rest| self.context.lookup(rest))
        {
            return Ok(Symbol::Differential(i));
        }
        self.error(format!("unknown variable {name} for {}", self.context))
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token::Int(_)) => match self.next() {
                Some(Token::Int(v)) => Ok(v),
                _ => unreachable!(),
            },
            _ => self.error("expected an integer"),
        }
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<()> {
        match self.peek() {
            Some(Token::Int(_)) => {
                let numer = self.integer()?;
                let mut value = Rational::from_integer(numer);
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let denom = self.integer()?;
                    if denom.is_zero() {
                        self.pos -= 1;
                        return self.error("zero denominator");
                    }
                    value /= Rational::from_integer(denom);
                }
                term.coefficient *= value;
                Ok(())
            }
            Some(Token::Ident(name)) => {
                let name = name.clone();
                match self.symbol(&name)? {
                    Symbol::Variable(i) => {
                        self.pos += 1;
                        let mut exponent = 1u32;
                        if self.peek() == Some(&Token::Caret) {
                            self.pos += 1;
                            let e = self.integer()?;
                            exponent = match u32::try_from(e) {
                                Ok(e) => e,
                                Err(_) => {
                                    self.pos -= 1;
                                    return self.error("exponent too large");
                                }
                            };
                        }
                        term.powers.push((i, exponent));
                    }
                    Symbol::Differential(i) => {
                        self.pos += 1;
                        term.exterior.push(i);
                        while self.peek() == Some(&Token::Caret) {
                            self.pos += 1;
                            let Some(Token::Ident(next)) = self.peek().cloned() else {
                                return self.error("expected a differential after '^'");
                            };
                            match self.symbol(&next)? {
                                Symbol::Differential(j) => {
                                    self.pos += 1;
                                    term.exterior.push(j);
                                }
                                Symbol::Variable(_) => {
                                    return self.error("expected a differential after '^'")
                                }
                            }
                        }
                    }
                }
                Ok(())
            }
            _ => self.error("expected a number or a variable"),
        }
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let mut term = RawTerm {
            coefficient: if negative {
                -Rational::one()
            } else {
                Rational::one()
            },
            powers: Vec::new(),
            exterior: Vec::new(),
        };
        self.factor(&mut term)?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            self.factor(&mut term)?;
        }
        Ok(term)
    }

    fn form(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            match self.next() {
                None => return Ok(terms),
                Some(Token::Plus) => negative = false,
                Some(Token::Minus) => negative = true,
                Some(_) => {
                    self.pos -= 1;
                    return self.error("expected '+', '-' or '*'");
                }
            }
        }
    }
}

/// Parses a form over an arbitrary context, using its coordinate names.
pub fn parse_form_in(text: &str, context: &Arc<VariableContext>) -> Result<DifferentialForm> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty input".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        context,
    };
    let raw = parser.form()?;
    DifferentialForm::canonicalize(context, &raw)
}

/// Parses a form over `Std(m)` (variables `x0 ... xm`).
pub fn parse_form(text: &str, m: usize) -> Result<DifferentialForm> {
    parse_form_in(text, &VariableContext::standard(m))
}
