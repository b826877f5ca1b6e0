//! Expressions over `phi` of integers in the l-group.
//!
//! ```text
//! expr := term (('+' | '-') term)*
//! term := '-' term | INT | 'phi(' INT ')' | ('meet' | 'join') '(' expr ',' expr ')' | '(' expr ')'
//! ```
//! A bare integer `n` stands for `phi(n)`.

use regent_core::entailment::EntailmentBackend;
use regent_core::group::{ZdElement, ZdGroup};
use regent_core::lgroup::{LGroup, LGroupElement};

use crate::error::{usage, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Phi(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> CliResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(
                text.parse()
                    .map_err(|_| usage(format!("integer `{text}` is too large")))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-(),".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(usage(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> CliResult<()> {
        match self.next() {
            Some(Token::Sym(d)) if d == c => Ok(()),
            other => Err(usage(format!("expected `{c}`, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut lhs = self.term()?;
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> CliResult<Expr> {
        match self.next() {
            Some(Token::Sym('-')) => match self.peek() {
                Some(Token::Int(_)) => {
                    let Some(Token::Int(n)) = self.next() else {
                        unreachable!()
                    };
                    Ok(Expr::Phi(-n))
                }
                _ => Ok(Expr::Neg(Box::new(self.term()?))),
            },
            Some(Token::Int(n)) => Ok(Expr::Phi(n)),
            Some(Token::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                self.expect('(')?;
                let out = match name.as_str() {
                    "phi" => match self.next() {
                        Some(Token::Int(n)) => Expr::Phi(n),
                        Some(Token::Sym('-')) => match self.next() {
                            Some(Token::Int(n)) => Expr::Phi(-n),
                            other => {
                                return Err(usage(format!("phi takes an integer, found {other:?}")))
                            }
                        },
                        other => {
                            return Err(usage(format!("phi takes an integer, found {other:?}")))
                        }
                    },
                    "meet" | "join" => {
                        let a = self.expr()?;
                        self.expect(',')?;
                        let b = self.expr()?;
                        if name == "meet" {
                            Expr::Meet(Box::new(a), Box::new(b))
                        } else {
                            Expr::Join(Box::new(a), Box::new(b))
                        }
                    }
                    other => return Err(usage(format!("unknown function `{other}`"))),
                };
                self.expect(')')?;
                Ok(out)
            }
            other => Err(usage(format!("unexpected {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> CliResult<Expr> {
    let mut p = Parser {
        tokens: lex(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(usage(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

pub fn eval<B: EntailmentBackend<Group = ZdGroup>>(
    lg: &LGroup<B>,
    e: &Expr,
) -> LGroupElement<ZdElement> {
    let g = lg.backend().group();
    match e {
        Expr::Phi(n) => lg.phi(&g.int(*n)),
        Expr::Neg(a) => lg.neg(&eval(lg, a)),
        Expr::Add(a, b) => lg.add(&eval(lg, a), &eval(lg, b)),
        Expr::Sub(a, b) => lg.sub(&eval(lg, a), &eval(lg, b)),
        Expr::Meet(a, b) => lg.meet(&eval(lg, a), &eval(lg, b)),
        Expr::Join(a, b) => lg.join(&eval(lg, a), &eval(lg, b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use regent_core::entailment::IntervalBackend;

    #[test]
    fn parses_nested_expressions() {
        let e = parse("meet(1, 4) - -2 + join(phi(-3), (0))").unwrap();
        let lg = LGroup::new(IntervalBackend::new());
        let v = eval(&lg, &e);
        // (1, 4) + (2, 2) + (0, -3)
        assert_eq!(lg.to_pair(&v).unwrap(), (3.into(), 3.into()));
        assert!(parse("meet(1)").is_err());
        assert!(parse("1 2").is_err());
        assert!(parse("sup(1, 2)").is_err());
    }
}
