//! Asymptotic scaling expressions.
//!
//! Grammar (whitespace ignored, juxtaposition multiplies):
//!
//! ```text
//! expr    := "O(" sum ")" | sum
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "/")? unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" unary)?
//! atom    := number | variable | "(" sum ")" | "{" sum "}"
//!          | "binom(" sum "," sum ")" | "ceil(" sum ")"
//!          | "log(" sum ")" | "log_" (atom) "(" sum ")"
//! variable:= N | ε | eps | n | m | n_p | t | p | q | |T| | L | E | n_out | r | V | n_v
//! ```
//!
//! Single letters are separate variables, so `tq` is `t·q` and `nm` is
//! `n·m`. Subscripts may be braced: `n_{out}` equals `n_out`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArlError;
use crate::profile::ScalingClass;

/// Symbol legend shared by every expression.
pub const LEGEND: [(&str, &str); 15] = [
    ("N", "number of qubits"),
    ("ε", "precision"),
    ("n", "number of visible layers"),
    ("m", "number of hidden layers"),
    ("n_p", "number of particles"),
    ("t", "number of Trotter time steps"),
    ("p", "number of terms in Hamiltonian"),
    ("q", "number of ansatz parameters"),
    ("|T|", "cardinality of training set"),
    ("L", "number of re-uploading layers"),
    ("E", "number of graph edges"),
    ("n_out", "number of output layer nodes"),
    ("r", "reduction rate of pooling layers"),
    ("V", "number of graph vertices"),
    ("n_v", "number of sampling vectors"),
];

pub fn legend() -> BTreeMap<&'static str, &'static str> {
    LEGEND.iter().copied().collect()
}

fn in_legend(name: &str) -> bool {
    LEGEND.iter().any(|(s, _)| *s == name)
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Binom(Box<Node>, Box<Node>),
    Log(Option<Box<Node>>, Box<Node>),
    Ceil(Box<Node>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Var(String),
    Func(&'static str),
    LogBase,
    BigO,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(src: &str) -> Result<Vec<Tok>, ArlError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |msg: String| ArlError::Parse { expr: src.to_string(), msg };
    let starts = |i: usize, word: &str| -> bool {
        let w: Vec<char> = word.chars().collect();
        chars.len() >= i + w.len() && chars[i..i + w.len()] == w[..]
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            'ε' => {
                out.push(Tok::Var("ε".into()));
                i += 1
            }
            '|' => {
                if starts(i, "|T|") {
                    out.push(Tok::Var("|T|".into()));
                    i += 3;
                } else {
                    return Err(err(format!("unexpected '|' at {i}")));
                }
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<f64>().map_err(|_| err(format!("bad number {text:?}")))?;
                out.push(Tok::Num(v));
            }
            a if a.is_ascii_alphabetic() => {
                if starts(i, "O(") && !starts(i, "O_") {
                    out.push(Tok::BigO);
                    i += 1;
                } else if starts(i, "binom(") {
                    out.push(Tok::Func("binom"));
                    i += 5;
                } else if starts(i, "ceil(") {
                    out.push(Tok::Func("ceil"));
                    i += 4;
                } else if starts(i, "log_") {
                    out.push(Tok::LogBase);
                    i += 4;
                } else if starts(i, "log(") {
                    out.push(Tok::Func("log"));
                    i += 3;
                } else if starts(i, "epsilon") {
                    out.push(Tok::Var("ε".into()));
                    i += 7;
                } else if starts(i, "eps") {
                    out.push(Tok::Var("ε".into()));
                    i += 3;
                } else if i + 1 < chars.len() && chars[i + 1] == '_' {
                    let mut name = format!("{a}_");
                    i += 2;
                    if i < chars.len() && chars[i] == '{' {
                        i += 1;
                        while i < chars.len() && chars[i] != '}' {
                            name.push(chars[i]);
                            i += 1;
                        }
                        if i == chars.len() {
                            return Err(err("unclosed subscript".into()));
                        }
                        i += 1;
                    } else {
                        while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                            name.push(chars[i]);
                            i += 1;
                        }
                    }
                    out.push(Tok::Var(name));
                } else {
                    out.push(Tok::Var(a.to_string()));
                    i += 1;
                }
            }
            other => return Err(err(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ArlError {
        ArlError::Parse { expr: self.src.to_string(), msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ArlError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {t:?} at token {}", self.pos)))
        }
    }

    fn sum(&mut self) -> Result<Node, ArlError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Node::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Node, ArlError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Func(_) | Tok::LogBase | Tok::LParen | Tok::LBrace) => {
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ArlError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            return Ok(Node::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ArlError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::Var(name) => {
                if !in_legend(&name) {
                    return Err(ArlError::UnknownVariable(name));
                }
                Ok(Node::Var(name))
            }
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::LBrace => {
                let inner = self.sum()?;
                self.expect(Tok::RBrace)?;
                Ok(inner)
            }
            Tok::Func(name) => {
                self.expect(Tok::LParen)?;
                let a = self.sum()?;
                let node = if name == "binom" {
                    self.expect(Tok::Comma)?;
                    let b = self.sum()?;
                    Node::Binom(Box::new(a), Box::new(b))
                } else if name == "log" {
                    Node::Log(None, Box::new(a))
                } else {
                    Node::Ceil(Box::new(a))
                };
                self.expect(Tok::RParen)?;
                Ok(node)
            }
            Tok::LogBase => {
                let base = self.atom()?;
                self.expect(Tok::LParen)?;
                let arg = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(Node::Log(Some(Box::new(base)), Box::new(arg)))
            }
            other => Err(self.err(format!("unexpected {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Growth {
    degree: f64,
    exponential: bool,
    log: bool,
}

impl Growth {
    const CONST: Growth = Growth { degree: 0.0, exponential: false, log: false };

    fn dominant(a: Growth, b: Growth) -> Growth {
        let key = |g: &Growth| (g.exponential, g.degree, g.log);
        if key(&a).partial_cmp(&key(&b)) == Some(std::cmp::Ordering::Less) {
            b
        } else {
            a
        }
    }
}

impl Node {
    fn depends_on(&self, var: &str) -> bool {
        match self {
            Node::Num(_) => false,
            Node::Var(v) => v == var,
            Node::Neg(a) | Node::Ceil(a) => a.depends_on(var),
            Node::Log(b, a) => a.depends_on(var) || b.as_ref().is_some_and(|b| b.depends_on(var)),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) | Node::Binom(a, b) => {
                a.depends_on(var) || b.depends_on(var)
            }
        }
    }

    fn numeric(&self) -> Option<f64> {
        match self {
            Node::Num(v) => Some(*v),
            Node::Neg(a) => a.numeric().map(|v| -v),
            Node::Add(a, b) => Some(a.numeric()? + b.numeric()?),
            Node::Sub(a, b) => Some(a.numeric()? - b.numeric()?),
            Node::Mul(a, b) => Some(a.numeric()? * b.numeric()?),
            Node::Div(a, b) => Some(a.numeric()? / b.numeric()?),
            Node::Pow(a, b) => Some(a.numeric()?.powf(b.numeric()?)),
            _ => None,
        }
    }

    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Node::Num(_) => {}
            Node::Var(v) => {
                out.insert(v.clone());
            }
            Node::Neg(a) | Node::Ceil(a) => a.vars(out),
            Node::Log(b, a) => {
                a.vars(out);
                if let Some(b) = b {
                    b.vars(out);
                }
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) | Node::Binom(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    fn growth(&self, var: &str) -> Option<Growth> {
        if !self.depends_on(var) {
            return Some(Growth::CONST);
        }
        match self {
            Node::Num(_) => Some(Growth::CONST),
            Node::Var(_) => Some(Growth { degree: 1.0, exponential: false, log: false }),
            Node::Neg(a) | Node::Ceil(a) => a.growth(var),
            Node::Add(a, b) | Node::Sub(a, b) => Some(Growth::dominant(a.growth(var)?, b.growth(var)?)),
            Node::Mul(a, b) => {
                let (x, y) = (a.growth(var)?, b.growth(var)?);
                Some(Growth {
                    degree: x.degree + y.degree,
                    exponential: x.exponential || y.exponential,
                    log: x.log || y.log,
                })
            }
            Node::Div(a, b) => {
                if b.depends_on(var) {
                    None
                } else {
                    a.growth(var)
                }
            }
            Node::Pow(base, e) => {
                if e.depends_on(var) {
                    let b = base.numeric()?;
                    (b > 1.0).then_some(Growth { degree: 0.0, exponential: true, log: false })
                } else {
                    let k = e.numeric()?;
                    let g = base.growth(var)?;
                    Some(Growth { degree: g.degree * k, ..g })
                }
            }
            Node::Binom(a, b) => {
                if b.depends_on(var) {
                    return None;
                }
                let k = b.numeric()?;
                let g = a.growth(var)?;
                Some(Growth { degree: g.degree * k, ..g })
            }
            Node::Log(base, arg) => {
                if base.as_ref().is_some_and(|b| b.depends_on(var)) {
                    return None;
                }
                arg.depends_on(var).then_some(Growth { degree: 0.0, exponential: false, log: true })
            }
        }
    }
}

/// A parsed asymptotic scaling expression.
#[derive(Debug, Clone)]
pub struct ScalingExpr {
    text: String,
    ast: Node,
    big_o: bool,
}

impl PartialEq for ScalingExpr {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl ScalingExpr {
    pub fn parse(text: &str) -> Result<Self, ArlError> {
        let toks = lex(text)?;
        let mut p = Parser { toks, pos: 0, src: text };
        let big_o = p.peek() == Some(&Tok::BigO);
        let ast = if big_o {
            p.pos += 1;
            p.expect(Tok::LParen)?;
            let inner = p.sum()?;
            p.expect(Tok::RParen)?;
            inner
        } else {
            p.sum()?
        };
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(ScalingExpr { text: text.to_string(), ast, big_o })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn is_big_o(&self) -> bool {
        self.big_o
    }

    /// Variables appearing in the expression.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.ast.vars(&mut out);
        out
    }

    /// The shared legend; every variable of the expression resolves in it.
    pub fn legend(&self) -> BTreeMap<&'static str, &'static str> {
        legend()
    }

    /// Growth class in `var` with all other variables held fixed, or `None`
    /// when it is not one of the fit classes (logarithmic factors, symbolic
    /// exponents).
    pub fn class_in(&self, var: &str) -> Option<ScalingClass> {
        let g = self.ast.growth(var)?;
        if g.exponential {
            return Some(ScalingClass::Exponential);
        }
        if g.log || g.degree.fract() != 0.0 || g.degree < 0.0 {
            return None;
        }
        Some(ScalingClass::from_degree(g.degree as u32))
    }
}

impl fmt::Display for ScalingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for ScalingExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for ScalingExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ScalingExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(text: &str, var: &str) -> Option<ScalingClass> {
        ScalingExpr::parse(text).unwrap().class_in(var)
    }

    #[test]
    fn survey_cells_parse() {
        for text in [
            "O(N)",
            "O(nm)",
            "O(binom(n,n_p))",
            "O(tq(q+p))",
            "O(binom(|T|,2))",
            "O(2^N)",
            "O(2^{n_out})",
            "O(N ceil(log_{1/r}(N)))",
            "O(n_v)",
            "O(1)",
        ] {
            ScalingExpr::parse(text).unwrap();
        }
    }

    #[test]
    fn implicit_products_split_letters() {
        let e = ScalingExpr::parse("O(tq(q+p))").unwrap();
        let vars: Vec<_> = e.variables().into_iter().collect();
        assert_eq!(vars, ["p", "q", "t"]);
        assert_eq!(ScalingExpr::parse("O(n_{out})").unwrap().variables().into_iter().next().unwrap(), "n_out");
    }

    #[test]
    fn classes() {
        assert_eq!(class("O(N)", "N"), Some(ScalingClass::Linear));
        assert_eq!(class("O(1)", "N"), Some(ScalingClass::Constant));
        assert_eq!(class("O(binom(|T|,2))", "|T|"), Some(ScalingClass::Poly(2)));
        assert_eq!(class("O(tq(q+p))", "q"), Some(ScalingClass::Poly(2)));
        assert_eq!(class("O(tq(q+p))", "t"), Some(ScalingClass::Linear));
        assert_eq!(class("O(2^N)", "N"), Some(ScalingClass::Exponential));
        assert_eq!(class("O(N ceil(log_{1/r}(N)))", "N"), None);
        assert_eq!(class("O(binom(n,n_p))", "n"), None);
        assert_eq!(class("O(nm)", "m"), Some(ScalingClass::Linear));
        assert_eq!(class("O(1/ε^2)", "ε"), None);
    }

    #[test]
    fn rejects_unknown_symbols_and_garbage() {
        assert!(matches!(ScalingExpr::parse("O(k)"), Err(ArlError::UnknownVariable(v)) if v == "k"));
        assert!(ScalingExpr::parse("O(N").is_err());
        assert!(ScalingExpr::parse("O(N))").is_err());
        assert!(ScalingExpr::parse("N $").is_err());
    }

    #[test]
    fn every_legend_symbol_resolves() {
        for (sym, _) in LEGEND {
            let e = ScalingExpr::parse(&format!("O({sym})")).unwrap();
            assert!(e.variables().contains(sym));
            assert!(e.legend().contains_key(sym));
        }
        assert!(ScalingExpr::parse("O(1/eps^2)").unwrap().variables().contains("ε"));
    }
}
