//! Two small expression languages used by the command-line tool.
//!
//! Map expressions describe `ℝ^d → ℝ^d` with one arithmetic component per
//! coordinate, separated by `;`. Variables are `x` (same as `x1`) and
//! `x1 … xd`.
//!
//! Set expressions are prefix forms over named sets:
//! `union a b`, `intersect a b`, `complement a`, `subset? a b`,
//! `equal? a b`, with parentheses for nesting and the constants `phi`
//! and `absolute`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::normed::VectorMap;
use crate::scalar::Scalar;
use crate::soft::FuzzySoftSet;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &src[start..i];
            let v = text.parse().map_err(|_| Error::Expression {
                offset: start,
                message: format!("bad number `{text}`"),
            })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'?') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/();".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Expression {
                offset: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Arith {
    Num(f64),
    Var(usize),
    Neg(Box<Arith>),
    Bin(char, Box<Arith>, Box<Arith>),
}

impl Arith {
    fn eval<T: Scalar>(&self, x: &[T]) -> T {
        match self {
            Arith::Num(v) => T::lit(*v),
            Arith::Var(i) => x[*i],
            Arith::Neg(a) => -a.eval(x),
            Arith::Bin(op, a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    _ => a / b,
                }
            }
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Arith::Num(_) => None,
            Arith::Var(i) => Some(*i),
            Arith::Neg(a) => a.max_var(),
            Arith::Bin(_, a, b) => a.max_var().max(b.max_var()),
        }
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Expression {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Arith> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Arith::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Arith> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('*' | '/'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Arith::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Arith> {
        if self.eat('-') {
            return Ok(Arith::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Arith> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Arith::Num(v))
            }
            Some(Tok::Ident(name)) => {
                let var = match name.strip_prefix('x') {
                    Some("") => Some(0),
                    Some(n) => n.parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1),
                    None => None,
                };
                match var {
                    Some(i) => {
                        self.pos += 1;
                        Ok(Arith::Var(i))
                    }
                    None => Err(Error::UnknownIdentifier(name)),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parsed map expression, one component per output coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct MapExpr {
    source: String,
    comps: Vec<Arith>,
}

impl MapExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let toks = tokenize(src)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            end: src.len(),
        };
        let mut comps = vec![p.sum()?];
        while p.eat(';') {
            comps.push(p.sum()?);
        }
        if p.pos != toks.len() {
            return p.err("trailing input");
        }
        let d = comps.len();
        if let Some(i) = comps.iter().filter_map(Arith::max_var).max().filter(|&i| i >= d) {
            return Err(Error::DimensionMismatch(format!(
                "variable x{} in a {d}-component map",
                i + 1
            )));
        }
        Ok(MapExpr {
            source: src.trim().to_string(),
            comps,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl<T: Scalar> VectorMap<T> for MapExpr {
    fn dim(&self) -> usize {
        self.comps.len()
    }

    fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.comps.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} coordinates",
                x.len(),
                self.comps.len()
            )));
        }
        Ok(self.comps.iter().map(|c| c.eval(x)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum SetExpr {
    Name(String),
    Phi,
    Absolute,
    Complement(Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Subset(Box<SetExpr>, Box<SetExpr>),
    Equal(Box<SetExpr>, Box<SetExpr>),
}

impl Parser<'_> {
    fn set(&mut self) -> Result<SetExpr> {
        match self.peek().cloned() {
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.set()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let bin = |p: &mut Self, f: fn(Box<SetExpr>, Box<SetExpr>) -> SetExpr| -> Result<SetExpr> {
                    let a = p.set()?;
                    let b = p.set()?;
                    Ok(f(Box::new(a), Box::new(b)))
                };
                match name.as_str() {
                    "phi" => Ok(SetExpr::Phi),
                    "absolute" => Ok(SetExpr::Absolute),
                    "complement" => Ok(SetExpr::Complement(Box::new(self.set()?))),
                    "union" => bin(self, SetExpr::Union),
                    "intersect" => bin(self, SetExpr::Intersect),
                    "subset?" => bin(self, SetExpr::Subset),
                    "equal?" => bin(self, SetExpr::Equal),
                    _ => Ok(SetExpr::Name(name)),
                }
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Result of a set expression.
#[derive(Debug, Clone)]
pub enum OpsValue<T> {
    Set(FuzzySoftSet<T>),
    Bool(bool),
}

impl<T: Scalar> PartialEq for OpsValue<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (OpsValue::Set(a), OpsValue::Set(b)) => a == b,
            (OpsValue::Bool(a), OpsValue::Bool(b)) => a == b,
            _ => false,
        }
    }
}

enum Partial<T> {
    Set(FuzzySoftSet<T>),
    Phi,
    Absolute,
    Bool(bool),
}

/// Parsed set expression.
#[derive(Debug, Clone, PartialEq)]
pub struct OpsExpr(SetExpr);

impl OpsExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let toks = tokenize(src)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            end: src.len(),
        };
        let e = p.set()?;
        if p.pos != toks.len() {
            return p.err("trailing input");
        }
        Ok(OpsExpr(e))
    }

    /// Evaluates against named sets. `phi` and `absolute` take the
    /// parameters and universe of the other operand, or of `reference`
    /// when there is none.
    pub fn eval<T: Scalar>(
        &self,
        env: &BTreeMap<String, FuzzySoftSet<T>>,
        reference: &FuzzySoftSet<T>,
    ) -> Result<OpsValue<T>> {
        let materialize = |p: Partial<T>, like: &FuzzySoftSet<T>| -> Result<FuzzySoftSet<T>> {
            match p {
                Partial::Set(s) => Ok(s),
                Partial::Phi => Ok(FuzzySoftSet::null(like.params().clone(), like.universe().clone())),
                Partial::Absolute => Ok(FuzzySoftSet::absolute(like.params().clone(), like.universe().clone())),
                Partial::Bool(_) => Err(Error::Expression {
                    offset: 0,
                    message: "a predicate result cannot be used as a set".into(),
                }),
            }
        };
        fn go<T: Scalar>(
            e: &SetExpr,
            env: &BTreeMap<String, FuzzySoftSet<T>>,
            reference: &FuzzySoftSet<T>,
            m: &dyn Fn(Partial<T>, &FuzzySoftSet<T>) -> Result<FuzzySoftSet<T>>,
        ) -> Result<Partial<T>> {
            let pair = |a: &SetExpr, b: &SetExpr| -> Result<(FuzzySoftSet<T>, FuzzySoftSet<T>)> {
                let (a, b) = (go(a, env, reference, m)?, go(b, env, reference, m)?);
                match (a, b) {
                    (Partial::Set(a), b) => {
                        let b = m(b, &a)?;
                        Ok((a, b))
                    }
                    (a, Partial::Set(b)) => Ok((m(a, &b)?, b)),
                    (a, b) => Ok((m(a, reference)?, m(b, reference)?)),
                }
            };
            Ok(match e {
                SetExpr::Name(n) => {
                    Partial::Set(env.get(n).cloned().ok_or_else(|| Error::UnknownIdentifier(n.clone()))?)
                }
                SetExpr::Phi => Partial::Phi,
                SetExpr::Absolute => Partial::Absolute,
                SetExpr::Complement(a) => Partial::Set(m(go(a, env, reference, m)?, reference)?.complement()),
                SetExpr::Union(a, b) => {
                    let (a, b) = pair(a, b)?;
                    Partial::Set(a.union(&b)?)
                }
                SetExpr::Intersect(a, b) => {
                    let (a, b) = pair(a, b)?;
                    Partial::Set(a.intersection(&b)?)
                }
                SetExpr::Subset(a, b) => {
                    let (a, b) = pair(a, b)?;
                    Partial::Bool(a.is_subset(&b)?)
                }
                SetExpr::Equal(a, b) => {
                    let (a, b) = pair(a, b)?;
                    Partial::Bool(a.soft_eq(&b)?)
                }
            })
        }
        Ok(match go(&self.0, env, reference, &materialize)? {
            Partial::Bool(b) => OpsValue::Bool(b),
            p => OpsValue::Set(materialize(p, reference)?),
        })
    }
}
