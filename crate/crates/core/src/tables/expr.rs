//! Integer expressions used in fixture files: stems such as `d+2`, and
//! window constraints such as `q < 2(d-r)-1 and q < a(d-r)`.
//!
//! Grammar: `or`-free conjunctions of comparisons over sums of products.
//! Juxtaposition `2(d-r)` is multiplication. `a(x)` is the Radon-Hurwitz
//! number.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::charrings::a_r;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("cannot parse `{src}`: {msg}")]
    Parse { src: String, msg: String },
    #[error("unknown variable `{0}`")]
    Unknown(String),
    #[error("a({0}) is undefined")]
    BadArgument(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Num(i64),
    Var(String),
    A(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Cmp(Box<Node>, CmpOp, Box<Node>),
    And(Box<Node>, Box<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

/// A parsed expression, kept with its source text for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    src: String,
    root: Node,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[st..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| format!("bad number {s}"))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if c == '(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            i += 1;
        } else {
            let two: String = cs[i..(i + 2).min(cs.len())].iter().collect();
            let op = match two.as_str() {
                "<=" => Some("<="),
                ">=" => Some(">="),
                "==" => Some("=="),
                "!=" => Some("!="),
                "&&" => Some("and"),
                _ => None,
            };
            if let Some(op) = op {
                out.push(Tok::Op(op));
                i += 2;
                continue;
            }
            let op = match c {
                '+' => "+",
                '-' => "-",
                '*' => "*",
                '<' => "<",
                '>' => ">",
                '=' => "==",
                _ => return Err(format!("unexpected character `{c}`")),
            };
            out.push(Tok::Op(op));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn conj(&mut self) -> Result<Node, String> {
        let mut lhs = self.cmp()?;
        while matches!(self.peek(), Some(Tok::Op("and"))) || matches!(self.peek(), Some(Tok::Ident(s)) if s == "and") {
            self.next();
            let rhs = self.cmp()?;
            lhs = Node::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn cmp(&mut self) -> Result<Node, String> {
        let lhs = self.sum()?;
        let op = match self.peek() {
            Some(Tok::Op("<")) => CmpOp::Lt,
            Some(Tok::Op("<=")) => CmpOp::Le,
            Some(Tok::Op(">")) => CmpOp::Gt,
            Some(Tok::Op(">=")) => CmpOp::Ge,
            Some(Tok::Op("==")) => CmpOp::Eq,
            Some(Tok::Op("!=")) => CmpOp::Ne,
            _ => return Ok(lhs),
        };
        self.next();
        let rhs = self.sum()?;
        Ok(Node::Cmp(Box::new(lhs), op, Box::new(rhs)))
    }

    fn sum(&mut self) -> Result<Node, String> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Op("+")) => {
                    self.next();
                    lhs = Node::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Op("-")) => {
                    self.next();
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Node, String> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op("*")) => {
                    self.next();
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                // Juxtaposition: 2(d-r), 2d.
                Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Ident(s)) if s != "and" => {
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node, String> {
        if matches!(self.peek(), Some(Tok::Op("-"))) {
            self.next();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node, String> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Node::Num(n)),
            Some(Tok::Ident(name)) => {
                if name == "a" && matches!(self.peek(), Some(Tok::LParen)) {
                    self.next();
                    let inner = self.sum()?;
                    match self.next() {
                        Some(Tok::RParen) => Ok(Node::A(Box::new(inner))),
                        _ => Err("missing `)` after a(".into()),
                    }
                } else {
                    Ok(Node::Var(name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err("missing `)`".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let err = |msg: String| ExprError::Parse { src: src.to_string(), msg };
        let toks = lex(src).map_err(err)?;
        let mut p = Parser { toks, pos: 0 };
        let root = p.conj().map_err(err)?;
        if p.pos != p.toks.len() {
            return Err(err(format!("trailing input at token {}", p.pos)));
        }
        Ok(Expr { src: src.trim().to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.src
    }

    /// Evaluate; comparisons and conjunctions give 1 or 0.
    pub fn eval(&self, vars: &BTreeMap<&str, i64>) -> Result<i64, ExprError> {
        eval(&self.root, vars)
    }

    pub fn holds(&self, vars: &BTreeMap<&str, i64>) -> Result<bool, ExprError> {
        Ok(self.eval(vars)? != 0)
    }
}

fn eval(n: &Node, vars: &BTreeMap<&str, i64>) -> Result<i64, ExprError> {
    Ok(match n {
        Node::Num(v) => *v,
        Node::Var(v) => *vars.get(v.as_str()).ok_or_else(|| ExprError::Unknown(v.clone()))?,
        Node::A(x) => {
            let v = eval(x, vars)?;
            if v < 1 {
                return Err(ExprError::BadArgument(v));
            }
            a_r(v as u32) as i64
        }
        Node::Add(a, b) => eval(a, vars)? + eval(b, vars)?,
        Node::Sub(a, b) => eval(a, vars)? - eval(b, vars)?,
        Node::Mul(a, b) => eval(a, vars)? * eval(b, vars)?,
        Node::Neg(a) => -eval(a, vars)?,
        Node::And(a, b) => (eval(a, vars)? != 0 && eval(b, vars)? != 0) as i64,
        Node::Cmp(a, op, b) => {
            let (x, y) = (eval(a, vars)?, eval(b, vars)?);
            (match op {
                CmpOp::Lt => x < y,
                CmpOp::Le => x <= y,
                CmpOp::Gt => x > y,
                CmpOp::Ge => x >= y,
                CmpOp::Eq => x == y,
                CmpOp::Ne => x != y,
            }) as i64
        }
    })
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(d: i64, r: i64, q: i64) -> BTreeMap<&'static str, i64> {
        BTreeMap::from([("d", d), ("r", r), ("q", q)])
    }

    #[test]
    fn stems_and_windows() {
        assert_eq!(Expr::parse("d+2").unwrap().eval(&vars(14, 2, 0)).unwrap(), 16);
        assert_eq!(Expr::parse("d-r+3").unwrap().eval(&vars(14, 2, 0)).unwrap(), 15);
        let w = Expr::parse("q < 2(d-1)").unwrap();
        assert!(w.holds(&vars(14, 2, 25)).unwrap());
        assert!(!w.holds(&vars(14, 2, 26)).unwrap());
        let w = Expr::parse("q < 2(d-r)-1 and q < a(d-r) and d-r >= 9").unwrap();
        assert!(w.holds(&vars(24, 5, 24)).unwrap());
        assert!(!w.holds(&vars(24, 5, 37)).unwrap());
        assert!(!w.holds(&vars(14, 5, 16)).unwrap());
        assert_eq!(Expr::parse("a(9)").unwrap().eval(&vars(0, 0, 0)).unwrap(), 16);
        assert_eq!(Expr::parse("2d").unwrap().eval(&vars(7, 0, 0)).unwrap(), 14);
    }

    #[test]
    fn errors() {
        assert!(Expr::parse("d +").is_err());
        assert!(Expr::parse("(d").is_err());
        assert!(matches!(Expr::parse("x").unwrap().eval(&vars(1, 1, 1)), Err(ExprError::Unknown(_))));
        assert!(matches!(Expr::parse("a(0)").unwrap().eval(&vars(1, 1, 1)), Err(ExprError::BadArgument(0))));
    }
}
