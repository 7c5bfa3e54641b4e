//! Element expressions: integers, fractions, `sqrt(d)`, variables, `+ - * / ^`
//! and parentheses. Exponents are integers or parenthesized fractions such as
//! `X^(1/2)` or `X^{-3/4}`.

use std::fmt;

use num_traits::{One, Zero};
use princ_core::arith::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }

    /// The input with a caret under the offending position.
    pub fn annotate(&self, input: &str) -> String {
        format!("{self}\n  {input}\n  {}^", " ".repeat(self.pos.min(input.len())))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Int(Int),
    Sqrt(i64),
    Var(String),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rat),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub pos: usize,
    pub node: Node,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Int),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
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
            out.push((start, Tok::Num(s[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^(){}".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = s[i..].chars().next().expect("in bounds");
            return Err(ParseError::new(i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), format!("expected '{c}'")))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let pos = self.pos();
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.product()?;
            lhs = Expr {
                pos,
                node: Node::Bin(op, Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr {
                pos,
                node: Node::Bin(op, Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat('-') {
            let e = self.unary()?;
            return Ok(Expr {
                pos,
                node: Node::Neg(Box::new(e)),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        Ok(Expr {
            pos,
            node: Node::Pow(Box::new(base), e),
        })
    }

    fn integer(&mut self) -> Result<Int, ParseError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(ParseError::new(self.pos(), "expected an integer")),
        }
    }

    fn exponent(&mut self) -> Result<Rat, ParseError> {
        let close = if self.eat('(') {
            ')'
        } else if self.eat('{') {
            '}'
        } else {
            return match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    Ok(Rat::from_integer(n))
                }
                _ => Err(ParseError::new(self.pos(), "expected an exponent")),
            };
        };
        let num = self.integer()?;
        let den = if self.eat('/') {
            let p = self.pos();
            let d = self.integer()?;
            if d.is_zero() {
                return Err(ParseError::new(p, "zero denominator in exponent"));
            }
            d
        } else {
            Int::one()
        };
        self.expect(close)?;
        Ok(Rat::new(num, den))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr { pos, node: Node::Int(n) })
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.at += 1;
                self.expect('(')?;
                let p = self.pos();
                let d: i64 = self
                    .integer()?
                    .try_into()
                    .map_err(|_| ParseError::new(p, "radicand out of range"))?;
                self.expect(')')?;
                Ok(Expr { pos, node: Node::Sqrt(d) })
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr { pos, node: Node::Var(name) })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(ParseError::new(pos, format!("unexpected '{c}'"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
    };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return Err(ParseError::new(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_positions() {
        let e = parse("1 - X^(1/2)*2").unwrap();
        match e.node {
            Node::Bin(Op::Sub, _, rhs) => match rhs.node {
                Node::Bin(Op::Mul, l, _) => assert!(matches!(l.node, Node::Pow(_, _))),
                n => panic!("{n:?}"),
            },
            n => panic!("{n:?}"),
        }
        assert_eq!(parse("-X^2").unwrap().node.clone(), {
            let x = Expr { pos: 1, node: Node::Var("X".into()) };
            Node::Neg(Box::new(Expr {
                pos: 2,
                node: Node::Pow(Box::new(x), Rat::from_integer(2.into())),
            }))
        });
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse("1 + ").unwrap_err().pos, 4);
        assert_eq!(parse("2 * (3").unwrap_err().msg, "expected ')'");
        assert_eq!(parse("x $ y").unwrap_err().pos, 2);
        assert_eq!(parse("X^(1/0)").unwrap_err().msg, "zero denominator in exponent");
        assert_eq!(parse("1 2").unwrap_err().to_string(), "at column 3: unexpected trailing input");
    }

    #[test]
    fn braces_and_sqrt() {
        assert!(parse("X^{-3/4} + sqrt(-5)").is_ok());
        assert!(parse("sqrt(x)").is_err());
    }
}
