//! Algebraic terms over one unary operator symbol `f`.
//!
//! Concrete syntax:
//!
//! ```text
//! equation := term "=" term
//! term     := product (("+" | "-") product)*
//! product  := factor ("*" factor)*
//! factor   := rational | "1" | "0" | variable | "f" "(" term ")" | "(" term ")"
//!           | factor "^" natural
//! variable := "v" digits        rational := ["-"] digits ["/" digits]
//! ```
//!
//! The literals `1` and `0` are the constants of the term language. Any other
//! numeric literal is a coefficient: at the head of a product, `r * p` reads
//! as `ScalarMul(r, p)`; a literal standing alone reads as `ScalarMul(r, 1)`.
//! A leading `-` directly before digits makes a negative coefficient,
//! otherwise it is sugar for `0 - product`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One as _, Zero as _};
use thiserror::Error;

use crate::scalar::{format_rational, Rational};

pub const MAX_EXPONENT: u32 = 64;
pub const MAX_DEPTH: usize = 512;
pub const MAX_NESTING: usize = 128;
pub const MAX_NODES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u32),
    One,
    Zero,
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    ScalarMul(Rational, Box<Term>),
    F(Box<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        assert!(i >= 1, "variables are numbered from 1");
        Term::Var(i)
    }

    pub fn f(t: Term) -> Term {
        Term::F(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn scale(r: Rational, t: Term) -> Term {
        Term::ScalarMul(r, Box::new(t))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::One | Term::Zero => 1,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => 1 + a.node_count() + b.node_count(),
            Term::ScalarMul(_, t) | Term::F(t) => 1 + t.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::One | Term::Zero => 1,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Term::ScalarMul(_, t) | Term::F(t) => 1 + t.depth(),
        }
    }

    /// Variable indices occurring in the term, ascending.
    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::One | Term::Zero => {}
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::ScalarMul(_, t) | Term::F(t) => t.collect_vars(out),
        }
    }

    /// Replaces each variable `v_i` by `map(i)`.
    pub fn substitute(&self, map: &impl Fn(u32) -> Term) -> Term {
        match self {
            Term::Var(i) => map(*i),
            Term::One => Term::One,
            Term::Zero => Term::Zero,
            Term::Add(a, b) => Term::add(a.substitute(map), b.substitute(map)),
            Term::Sub(a, b) => Term::sub(a.substitute(map), b.substitute(map)),
            Term::Mul(a, b) => Term::mul(a.substitute(map), b.substitute(map)),
            Term::ScalarMul(r, t) => Term::scale(r.clone(), t.substitute(map)),
            Term::F(t) => Term::f(t.substitute(map)),
        }
    }
}

/// Variable names of a term, rendered `v<i>`, ascending by index.
pub fn variables_of(t: &Term) -> Vec<String> {
    t.variables().into_iter().map(|i| format!("v{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }

    /// `lhs - rhs`
    pub fn difference(&self) -> Term {
        Term::sub(self.lhs.clone(), self.rhs.clone())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Equation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_equation(s)
    }
}

/// The three hypothesis sets the decision procedure understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentitySet {
    Averaging,
    UnitaryAveraging,
    ReynoldsAveraging,
}

impl IdentitySet {
    pub const ALL: [IdentitySet; 3] =
        [IdentitySet::Averaging, IdentitySet::UnitaryAveraging, IdentitySet::ReynoldsAveraging];

    pub fn name(self) -> &'static str {
        match self {
            IdentitySet::Averaging => "averaging",
            IdentitySet::UnitaryAveraging => "unitary",
            IdentitySet::ReynoldsAveraging => "reynolds",
        }
    }

    /// The defining equations of the set.
    pub fn equations(self) -> Vec<Equation> {
        let mut eqs = vec![parse_equation("f(v1*f(v2)) = f(v1)*f(v2)").expect("valid")];
        match self {
            IdentitySet::Averaging => {}
            IdentitySet::UnitaryAveraging => eqs.push(parse_equation("f(1) = 1").expect("valid")),
            IdentitySet::ReynoldsAveraging => {
                eqs.push(parse_equation("f(f(v1)*f(v2)) = f(v1)*f(v2)").expect("valid"))
            }
        }
        eqs
    }
}

impl fmt::Display for IdentitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentitySet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "averaging" => Ok(IdentitySet::Averaging),
            "unitary" => Ok(IdentitySet::UnitaryAveraging),
            "reynolds" => Ok(IdentitySet::ReynoldsAveraging),
            other => Err(format!("unknown identity set `{other}` (expected averaging, unitary or reynolds)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    /// Numeric literal; `slash` marks a `p/q` spelling.
    Num { text: String, slash: bool },
    Var(u32),
    F,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num { text, .. } => format!("number `{text}`"),
        Tok::Var(i) => format!("variable `v{i}`"),
        Tok::F => "`f`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Eq => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < b.len() {
        let c = b[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'=' => out.push((Tok::Eq, start)),
            b'f' => out.push((Tok::F, start)),
            b'v' => {
                let end = digits_from(i + 1);
                if end == i + 1 {
                    return Err(ParseError::new(start, "expected digits after `v`"));
                }
                let idx: u32 = src[i + 1..end]
                    .parse()
                    .map_err(|_| ParseError::new(start, "variable index too large"))?;
                if idx == 0 {
                    return Err(ParseError::new(start, "variable indices start at 1"));
                }
                out.push((Tok::Var(idx), start));
                i = end;
                continue;
            }
            b'0'..=b'9' => {
                let mut end = digits_from(i);
                let mut slash = false;
                if end < b.len() && b[end] == b'/' {
                    let den_end = digits_from(end + 1);
                    if den_end == end + 1 {
                        return Err(ParseError::new(end, "expected digits after `/`"));
                    }
                    if src[end + 1..den_end].bytes().all(|d| d == b'0') {
                        return Err(ParseError::new(start, "zero denominator"));
                    }
                    slash = true;
                    end = den_end;
                }
                out.push((Tok::Num { text: src[i..end].to_string(), slash }, start));
                i = end;
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// A parsed subtree with its node count and depth, tracked incrementally so
/// the limits never require walking a deep tree.
struct Node {
    t: Term,
    size: usize,
    depth: usize,
}

impl Node {
    fn leaf(t: Term) -> Node {
        Node { t, size: 1, depth: 1 }
    }

    fn unary(t: Term, inner: &Node) -> Node {
        Node { t, size: inner.size + 1, depth: inner.depth + 1 }
    }

    fn binary(ctor: fn(Term, Term) -> Term, a: Node, b: Node) -> Node {
        Node { size: a.size + b.size + 1, depth: a.depth.max(b.depth) + 1, t: ctor(a.t, b.t) }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    nesting: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(
                self.offset(),
                format!("expected {}, found {}", describe(&want), describe(self.peek())),
            ))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(ParseError::new(self.offset(), format!("nesting deeper than {MAX_NESTING}")));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.nesting -= 1;
    }

    fn limit(&self, n: Node, at: usize) -> Result<Node, ParseError> {
        if n.size > MAX_NODES {
            return Err(ParseError::new(at, format!("term exceeds {MAX_NODES} nodes")));
        }
        if n.depth > MAX_DEPTH {
            return Err(ParseError::new(at, format!("term deeper than {MAX_DEPTH}")));
        }
        Ok(n)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        self.enter()?;
        let mut acc = self.product()?;
        loop {
            let at = self.offset();
            let ctor: fn(Term, Term) -> Term = match self.peek() {
                Tok::Plus => Term::add,
                Tok::Minus => Term::sub,
                _ => break,
            };
            self.bump();
            let rhs = self.product()?;
            acc = self.limit(Node::binary(ctor, acc, rhs), at)?;
        }
        self.leave();
        Ok(acc)
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        if *self.peek() == Tok::Minus {
            if matches!(self.peek_at(1), Tok::Num { .. }) {
                self.bump();
                return self.coefficient_product(true);
            }
            self.enter()?;
            self.bump();
            let inner = self.product()?;
            self.leave();
            return self.limit(Node::binary(Term::sub, Node::leaf(Term::Zero), inner), at);
        }
        if let Tok::Num { text, slash } = self.peek() {
            if *slash || (text != "1" && text != "0") {
                return self.coefficient_product(false);
            }
        }
        let first = self.factor()?;
        self.product_tail(first)
    }

    fn product_tail(&mut self, mut acc: Node) -> Result<Node, ParseError> {
        while *self.peek() == Tok::Star {
            let at = self.offset();
            self.bump();
            let rhs = self.factor()?;
            acc = self.limit(Node::binary(Term::mul, acc, rhs), at)?;
        }
        Ok(acc)
    }

    /// A product whose head is a coefficient literal.
    fn coefficient_product(&mut self, negative: bool) -> Result<Node, ParseError> {
        let at = self.offset();
        let r = self.rational(negative)?;
        match self.peek() {
            Tok::Star => {
                self.bump();
                self.enter()?;
                let rest = self.product()?;
                self.leave();
                let t = Term::scale(r, rest.t.clone());
                self.limit(Node::unary(t, &rest), at)
            }
            Tok::Caret => {
                let base = Node::unary(Term::scale(r, Term::One), &Node::leaf(Term::One));
                let powered = self.powers(base, at)?;
                self.product_tail(powered)
            }
            _ => Ok(Node::unary(Term::scale(r, Term::One), &Node::leaf(Term::One))),
        }
    }

    fn rational(&mut self, negative: bool) -> Result<Rational, ParseError> {
        let at = self.offset();
        let Tok::Num { text, .. } = self.bump() else {
            return Err(ParseError::new(at, "expected a number"));
        };
        let (n, d) = text.split_once('/').unwrap_or((&text, "1"));
        let n: BigInt = n.parse().map_err(|_| ParseError::new(at, "malformed number"))?;
        let d: BigInt = d.parse().map_err(|_| ParseError::new(at, "malformed number"))?;
        if d.is_zero() {
            return Err(ParseError::new(at, "zero denominator"));
        }
        let r = Rational::new(n, d);
        Ok(if negative { -r } else { r })
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        let base = match self.peek().clone() {
            Tok::Num { text, slash } => {
                if !slash && text == "1" {
                    self.bump();
                    Node::leaf(Term::One)
                } else if !slash && text == "0" {
                    self.bump();
                    Node::leaf(Term::Zero)
                } else {
                    let r = self.rational(false)?;
                    Node::unary(Term::scale(r, Term::One), &Node::leaf(Term::One))
                }
            }
            Tok::Var(i) => {
                self.bump();
                Node::leaf(Term::Var(i))
            }
            Tok::F => {
                self.bump();
                self.expect(Tok::LParen)?;
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                let t = Term::f(inner.t.clone());
                self.limit(Node::unary(t, &inner), at)?
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                inner
            }
            other => {
                return Err(ParseError::new(at, format!("expected a factor, found {}", describe(&other))));
            }
        };
        self.powers(base, at)
    }

    fn powers(&mut self, mut base: Node, at: usize) -> Result<Node, ParseError> {
        while *self.peek() == Tok::Caret {
            self.bump();
            let eat = self.offset();
            let Tok::Num { text, slash: false } = self.peek().clone() else {
                return Err(ParseError::new(eat, "expected a natural exponent after `^`"));
            };
            self.bump();
            let e: u32 = text
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| ParseError::new(eat, format!("exponent larger than {MAX_EXPONENT}")))?;
            base = if e == 0 {
                Node::leaf(Term::One)
            } else {
                let (e, size, depth) = (e as usize, base.size, base.depth);
                let n = Node { t: Term::One, size: size * e + (e - 1), depth: depth + e - 1 };
                let checked = self.limit(n, at)?;
                Node { t: power(&base.t, e as u32), ..checked }
            };
        }
        Ok(base)
    }
}

/// `t^e` as a left-associated product; `t^0 = 1`.
fn power(t: &Term, e: u32) -> Term {
    if e == 0 {
        return Term::One;
    }
    let mut acc = t.clone();
    for _ in 1..e {
        acc = Term::mul(acc, t.clone());
    }
    acc
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, nesting: 0 };
    let t = p.term()?.t;
    if *p.peek() != Tok::End {
        return Err(ParseError::new(p.offset(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(t)
}

pub fn parse_equation(src: &str) -> Result<Equation, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, nesting: 0 };
    let lhs = p.term()?.t;
    p.expect(Tok::Eq)?;
    let rhs = p.term()?.t;
    if *p.peek() != Tok::End {
        return Err(ParseError::new(p.offset(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(Equation { lhs, rhs })
}

/// Byte-level entry point: invalid UTF-8 is reported at its offset.
pub fn parse_term_bytes(src: &[u8]) -> Result<Term, ParseError> {
    let s = std::str::from_utf8(src)
        .map_err(|e| ParseError::new(e.valid_up_to(), "input is not valid UTF-8"))?;
    parse_term(s)
}

pub fn parse_equation_bytes(src: &[u8]) -> Result<Equation, ParseError> {
    let s = std::str::from_utf8(src)
        .map_err(|e| ParseError::new(e.valid_up_to(), "input is not valid UTF-8"))?;
    parse_equation(s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct ClaimsError {
    pub line: usize,
    pub source: ParseError,
}

/// Claim files hold one equation per line; `#` starts a comment.
pub fn parse_claims(text: &str) -> Result<Vec<Equation>, ClaimsError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_equation(line).map_err(|source| ClaimsError { line: n + 1, source })?);
    }
    Ok(out)
}

fn render_coefficient(r: &Rational) -> String {
    if r.is_one() {
        "1/1".into()
    } else if r.is_zero() {
        "0/1".into()
    } else {
        format_rational(r)
    }
}

/// Renders a term in the concrete syntax; `parse_term(render(t)) == t`.
pub fn render(t: &Term) -> String {
    let mut s = String::new();
    write_term(t, &mut s);
    s
}

fn write_term(t: &Term, s: &mut String) {
    let paren = |t: &Term, s: &mut String, wrap: bool| {
        if wrap {
            s.push('(');
            write_term(t, s);
            s.push(')');
        } else {
            write_term(t, s);
        }
    };
    let is_sum = |t: &Term| matches!(t, Term::Add(..) | Term::Sub(..));
    match t {
        Term::Var(i) => {
            s.push('v');
            s.push_str(&i.to_string());
        }
        Term::One => s.push('1'),
        Term::Zero => s.push('0'),
        Term::Add(a, b) | Term::Sub(a, b) => {
            write_term(a, s);
            s.push_str(if matches!(t, Term::Add(..)) { " + " } else { " - " });
            paren(b, s, is_sum(b));
        }
        Term::Mul(a, b) => {
            paren(a, s, is_sum(a) || matches!(**a, Term::ScalarMul(..)));
            s.push('*');
            paren(b, s, is_sum(b) || matches!(**b, Term::Mul(..) | Term::ScalarMul(..)));
        }
        Term::ScalarMul(r, inner) => {
            s.push_str(&render_coefficient(r));
            s.push('*');
            paren(inner, s, is_sum(inner));
        }
        Term::F(inner) => {
            s.push_str("f(");
            write_term(inner, s);
            s.push(')');
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl FromStr for Term {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}
