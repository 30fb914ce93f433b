//! Formulas over complete systems: parsing, printing and brute-force
//! evaluation, with a few builtin formulas.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula := quant | imp
//! quant   := ("exists" | "forall") IDENT ":" "X" "[" NUM "]" "." formula
//! imp     := or ("->" formula)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | quant | "(" formula ")" | atom
//! atom    := "true" | "false" | IDENT "=" IDENT
//!          | "leq" "(" IDENT "," IDENT ")" | "c" "(" IDENT "," IDENT ")"
//!          | "p" "(" IDENT "," IDENT "," IDENT ")"
//!          | "in" "(" IDENT "," "X" "[" NUM "]" ")" | "iso" "(" IDENT "," TAG ")"
//! ```
//!
//! A quantifier body extends as far right as possible. A variable of sort
//! `X[n]` ranges over every coset of index at most `n`, so sorts overlap.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subgroups::IsoTag;
use crate::system::System;

/// Byte range in the source text. Never part of equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct Var {
    pub name: String,
    pub span: Span,
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Var {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaKind {
    True,
    False,
    Leq(Var, Var),
    C(Var, Var),
    P(Var, Var, Var),
    Eq(Var, Var),
    InSort(Var, u64),
    /// A builtin predicate standing for the (very long) first-order
    /// description of the quotient's multiplication table.
    Iso(Var, IsoTag),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Quant {
        q: Quantifier,
        var: Var,
        sort: u64,
        body: Box<Formula>,
    },
}

#[derive(Debug, Clone)]
pub struct Formula {
    pub kind: FormulaKind,
    pub span: Span,
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Formula {}

impl Formula {
    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut Vec<String>) {
        let mut see = |v: &'a Var, bound: &Vec<&'a str>| {
            if !bound.contains(&v.name.as_str()) && !out.contains(&v.name) {
                out.push(v.name.clone());
            }
        };
        match &self.kind {
            FormulaKind::True | FormulaKind::False => {}
            FormulaKind::Leq(a, b) | FormulaKind::C(a, b) | FormulaKind::Eq(a, b) => {
                see(a, bound);
                see(b, bound);
            }
            FormulaKind::P(a, b, c) => {
                see(a, bound);
                see(b, bound);
                see(c, bound);
            }
            FormulaKind::InSort(a, _) | FormulaKind::Iso(a, _) => see(a, bound),
            FormulaKind::Not(f) => f.collect_free(bound, out),
            FormulaKind::And(a, b) | FormulaKind::Or(a, b) | FormulaKind::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FormulaKind::Quant { var, body, .. } => {
                bound.push(&var.name);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// First free occurrence not in `allowed`, if any.
    pub fn unbound_occurrence(&self, allowed: &[&str]) -> Option<Var> {
        fn walk<'a>(f: &'a Formula, bound: &mut Vec<&'a str>, allowed: &[&str]) -> Option<Var> {
            let check = |v: &Var, bound: &Vec<&str>| {
                (!bound.contains(&v.name.as_str()) && !allowed.contains(&v.name.as_str())).then(|| v.clone())
            };
            match &f.kind {
                FormulaKind::True | FormulaKind::False => None,
                FormulaKind::Leq(a, b) | FormulaKind::C(a, b) | FormulaKind::Eq(a, b) => {
                    check(a, bound).or_else(|| check(b, bound))
                }
                FormulaKind::P(a, b, c) => check(a, bound).or_else(|| check(b, bound)).or_else(|| check(c, bound)),
                FormulaKind::InSort(a, _) | FormulaKind::Iso(a, _) => check(a, bound),
                FormulaKind::Not(g) => walk(g, bound, allowed),
                FormulaKind::And(a, b) | FormulaKind::Or(a, b) | FormulaKind::Implies(a, b) => {
                    walk(a, bound, allowed).or_else(|| walk(b, bound, allowed))
                }
                FormulaKind::Quant { var, body, .. } => {
                    bound.push(&var.name);
                    let r = walk(body, bound, allowed);
                    bound.pop();
                    r
                }
            }
        }
        walk(self, &mut Vec::new(), allowed)
    }

    fn prec(&self) -> u8 {
        match self.kind {
            FormulaKind::Quant { .. } => 0,
            FormulaKind::Implies(..) => 1,
            FormulaKind::Or(..) => 2,
            FormulaKind::And(..) => 3,
            FormulaKind::Not(_) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min || (min > 0 && self.prec() == 0);
        if paren {
            f.write_str("(")?;
        }
        match &self.kind {
            FormulaKind::True => f.write_str("true")?,
            FormulaKind::False => f.write_str("false")?,
            FormulaKind::Leq(a, b) => write!(f, "leq({}, {})", a.name, b.name)?,
            FormulaKind::C(a, b) => write!(f, "c({}, {})", a.name, b.name)?,
            FormulaKind::P(a, b, c) => write!(f, "p({}, {}, {})", a.name, b.name, c.name)?,
            FormulaKind::Eq(a, b) => write!(f, "{} = {}", a.name, b.name)?,
            FormulaKind::InSort(a, n) => write!(f, "in({}, X[{n}])", a.name)?,
            FormulaKind::Iso(a, t) => write!(f, "iso({}, {})", a.name, t.name())?,
            FormulaKind::Not(g) => {
                f.write_str("!")?;
                g.write_at(f, 4)?;
            }
            FormulaKind::And(a, b) => {
                a.write_at(f, 3)?;
                f.write_str(" & ")?;
                b.write_at(f, 4)?;
            }
            FormulaKind::Or(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" | ")?;
                b.write_at(f, 3)?;
            }
            FormulaKind::Implies(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" -> ")?;
                b.write_at(f, 1)?;
            }
            FormulaKind::Quant { q, var, sort, body } => {
                let kw = match q {
                    Quantifier::Exists => "exists",
                    Quantifier::Forall => "forall",
                };
                write!(f, "{kw} {}:X[{sort}]. ", var.name)?;
                body.write_at(f, 0)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Equals,
    Caret,
    Eof,
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            Tok::Ident(text[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "number too large".into(),
            })?;
            Tok::Num(n)
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b',' => Tok::Comma,
                b'.' => Tok::Dot,
                b':' => Tok::Colon,
                b'!' => Tok::Bang,
                b'&' => Tok::Amp,
                b'|' => Tok::Pipe,
                b'=' => Tok::Equals,
                b'^' => Tok::Caret,
                b'-' if bytes.get(i) == Some(&b'>') => {
                    i += 1;
                    Tok::Arrow
                }
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("unexpected character `{ch}`"),
                    });
                }
            }
        };
        out.push((tok, Span { start, end: i }));
    }
    out.push((
        Tok::Eof,
        Span {
            start: text.len(),
            end: text.len(),
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    at: usize,
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn span(&self) -> Span {
        self.toks[self.at].1
    }

    fn prev_end(&self) -> usize {
        self.toks[self.at.saturating_sub(1)].1.end
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Span> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            perr(self.span().start, format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<Var> {
        match self.bump() {
            (Tok::Ident(name), span) => Ok(Var { name, span }),
            (_, span) => perr(span.start, "expected a variable"),
        }
    }

    fn sort(&mut self) -> Result<u64> {
        match self.bump() {
            (Tok::Ident(x), _) if x == "X" => {}
            (_, span) => return perr(span.start, "expected a sort `X[n]`"),
        }
        self.expect(Tok::LBrack, "`[`")?;
        let n = match self.bump() {
            (Tok::Num(n), _) => n,
            (_, span) => return perr(span.start, "expected a sort bound"),
        };
        self.expect(Tok::RBrack, "`]`")?;
        Ok(n)
    }

    fn node(&self, kind: FormulaKind, start: usize) -> Formula {
        Formula {
            kind,
            span: Span {
                start,
                end: self.prev_end(),
            },
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if matches!(self.peek(), Tok::Ident(k) if k == "exists" || k == "forall") {
            return self.quant();
        }
        let start = self.span().start;
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(self.node(FormulaKind::Implies(Box::new(lhs), Box::new(rhs)), start));
        }
        Ok(lhs)
    }

    fn quant(&mut self) -> Result<Formula> {
        let (tok, span) = self.bump();
        let q = match tok {
            Tok::Ident(k) if k == "exists" => Quantifier::Exists,
            _ => Quantifier::Forall,
        };
        let var = self.ident()?;
        if *self.peek() != Tok::Colon {
            return perr(self.span().start, format!("variable `{}` needs a sort annotation", var.name));
        }
        self.bump();
        let sort = self.sort()?;
        self.expect(Tok::Dot, "`.` after the quantifier")?;
        let body = self.formula()?;
        Ok(self.node(
            FormulaKind::Quant {
                q,
                var,
                sort,
                body: Box::new(body),
            },
            span.start,
        ))
    }

    fn or(&mut self) -> Result<Formula> {
        let start = self.span().start;
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.and()?;
            lhs = self.node(FormulaKind::Or(Box::new(lhs), Box::new(rhs)), start);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let start = self.span().start;
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = self.node(FormulaKind::And(Box::new(lhs), Box::new(rhs)), start);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let start = self.span().start;
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                let inner = self.unary()?;
                Ok(self.node(FormulaKind::Not(Box::new(inner)), start))
            }
            Tok::LParen => {
                self.bump();
                let mut inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                inner.span = Span {
                    start,
                    end: self.prev_end(),
                };
                Ok(inner)
            }
            Tok::Ident(k) if k == "exists" || k == "forall" => self.quant(),
            Tok::Ident(_) => self.atom(),
            _ => perr(start, "expected a formula"),
        }
    }

    fn args(&mut self, name: &str, n: usize) -> Result<Vec<Var>> {
        let open = self.expect(Tok::LParen, "`(`")?;
        let mut out = Vec::new();
        loop {
            out.push(self.ident()?);
            if *self.peek() == Tok::Comma {
                self.bump();
                continue;
            }
            break;
        }
        self.expect(Tok::RParen, "`)`")?;
        if out.len() != n {
            return perr(
                open.start,
                format!("`{name}` takes {n} arguments, found {}", out.len()),
            );
        }
        Ok(out)
    }

    fn tag(&mut self) -> Result<IsoTag> {
        let (tok, span) = self.bump();
        let mut name = match tok {
            Tok::Ident(s) => s,
            Tok::Num(n) => n.to_string(),
            _ => return perr(span.start, "expected a group name"),
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                (Tok::Num(k), _) => name = format!("{name}^{k}"),
                (_, s) => return perr(s.start, "expected an exponent"),
            }
        }
        IsoTag::parse(&name).map_or_else(|| perr(span.start, format!("unknown group `{name}`")), Ok)
    }

    fn atom(&mut self) -> Result<Formula> {
        let start = self.span().start;
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return perr(start, "expected an atom"),
        };
        if name == "true" || name == "false" {
            self.bump();
            let kind = if name == "true" { FormulaKind::True } else { FormulaKind::False };
            return Ok(self.node(kind, start));
        }
        let is_call = matches!(self.toks.get(self.at + 1), Some((Tok::LParen, _)));
        if !is_call {
            let a = self.ident()?;
            self.expect(Tok::Equals, "`=` or a relation")?;
            let b = self.ident()?;
            return Ok(self.node(FormulaKind::Eq(a, b), start));
        }
        self.bump();
        let kind = match name.as_str() {
            "leq" => {
                let v = self.args("leq", 2)?;
                FormulaKind::Leq(v[0].clone(), v[1].clone())
            }
            "c" => {
                let v = self.args("c", 2)?;
                FormulaKind::C(v[0].clone(), v[1].clone())
            }
            "p" => {
                let v = self.args("p", 3)?;
                FormulaKind::P(v[0].clone(), v[1].clone(), v[2].clone())
            }
            "in" => {
                self.expect(Tok::LParen, "`(`")?;
                let a = self.ident()?;
                self.expect(Tok::Comma, "`,`")?;
                let n = self.sort()?;
                self.expect(Tok::RParen, "`)`")?;
                FormulaKind::InSort(a, n)
            }
            "iso" => {
                self.expect(Tok::LParen, "`(`")?;
                let a = self.ident()?;
                self.expect(Tok::Comma, "`,`")?;
                let t = self.tag()?;
                self.expect(Tok::RParen, "`)`")?;
                FormulaKind::Iso(a, t)
            }
            other => return perr(start, format!("unknown relation `{other}`")),
        };
        Ok(self.node(kind, start))
    }
}

/// Parses a formula; free variables are allowed.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return perr(p.span().start, "unexpected trailing input");
    }
    Ok(f)
}

/// Parses a formula whose free variables must be among `allowed`.
pub fn parse_with_free(text: &str, allowed: &[&str]) -> Result<Formula> {
    let f = parse_formula(text)?;
    if let Some(v) = f.unbound_occurrence(allowed) {
        return perr(v.span.start, format!("unbound variable `{}`", v.name));
    }
    Ok(f)
}

/// The builtins `psi(n)`, `phi(n)`, `vertex` and `edge`, for the primes
/// `p`, `q`. `psi(n)` and `phi(n)` have the free variable `x`; `vertex` has
/// `x`; `edge` has `x` and `y`.
///
/// `psi(n)` says `x` is a `C₂` class containing the meet of `n` `D_p`
/// classes. The meet is expressed through its universal property: every `m`
/// below all `v_i` is below `x`, with `m` ranging over `X[(2p)^n]`, which
/// contains the true meet.
pub fn builtin(name: &str, p: u32, q: u32) -> Result<Formula> {
    let text = builtin_text(name, p, q)?;
    parse_formula(&text)
}

fn builtin_text(name: &str, p: u32, q: u32) -> Result<String> {
    let unknown = || Error::Label(format!("builtin {name}"));
    let arg = |prefix: &str| -> Option<usize> {
        let n: usize = name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()?;
        (n >= 1).then_some(n)
    };
    let two_p = 2 * p as u64;
    if let Some(n) = arg("psi(") {
        return Ok(psi_text(n, two_p));
    }
    if let Some(n) = arg("phi(") {
        return Ok(if n == 1 {
            psi_text(1, two_p)
        } else {
            format!("({}) & !({})", psi_text(n, two_p), psi_text(n - 1, two_p))
        });
    }
    match name {
        "vertex" => Ok(vertex_text("x", two_p)),
        "edge" => {
            let w = 4 * (p as u64) * (p as u64) * q as u64;
            Ok(format!(
                "{} & {} & !(x = y) & exists b:X[{w}]. leq(b, x) & leq(b, y) & iso(b, W)",
                vertex_text("x", two_p),
                vertex_text("y", two_p)
            ))
        }
        _ => Err(unknown()),
    }
}

fn vertex_text(x: &str, two_p: u64) -> String {
    format!("in({x}, X[{two_p}]) & p({x}, {x}, {x}) & iso({x}, Dp)")
}

fn psi_text(n: usize, two_p: u64) -> String {
    let mut s = String::from("in(x, X[2]) & !in(x, X[1])");
    for i in 0..n {
        s.push_str(&format!(" & exists v{i}:X[{two_p}]. iso(v{i}, Dp)"));
    }
    let bound = two_p.saturating_pow(n as u32);
    let below: Vec<String> = (0..n).map(|i| format!("leq(m, v{i})")).collect();
    s.push_str(&format!(" & (forall m:X[{bound}]. {} -> leq(m, x))", below.join(" & ")));
    s
}

enum Node {
    True,
    False,
    Leq(usize, usize),
    C(usize, usize),
    P(usize, usize, usize),
    Eq(usize, usize),
    InSort(usize, usize),
    Iso(usize, IsoTag),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Quant(Quantifier, usize, usize, Box<Node>),
}

fn compile(f: &Formula, scope: &mut Vec<String>) -> Node {
    let slot = |v: &Var, scope: &Vec<String>| scope.iter().rposition(|s| *s == v.name).expect("scoped");
    let clamp = |n: u64| usize::try_from(n).unwrap_or(usize::MAX);
    match &f.kind {
        FormulaKind::True => Node::True,
        FormulaKind::False => Node::False,
        FormulaKind::Leq(a, b) => Node::Leq(slot(a, scope), slot(b, scope)),
        FormulaKind::C(a, b) => Node::C(slot(a, scope), slot(b, scope)),
        FormulaKind::P(a, b, c) => Node::P(slot(a, scope), slot(b, scope), slot(c, scope)),
        FormulaKind::Eq(a, b) => Node::Eq(slot(a, scope), slot(b, scope)),
        FormulaKind::InSort(a, n) => Node::InSort(slot(a, scope), clamp(*n)),
        FormulaKind::Iso(a, t) => Node::Iso(slot(a, scope), *t),
        FormulaKind::Not(g) => Node::Not(Box::new(compile(g, scope))),
        FormulaKind::And(a, b) => Node::And(Box::new(compile(a, scope)), Box::new(compile(b, scope))),
        FormulaKind::Or(a, b) => Node::Or(Box::new(compile(a, scope)), Box::new(compile(b, scope))),
        FormulaKind::Implies(a, b) => Node::Implies(Box::new(compile(a, scope)), Box::new(compile(b, scope))),
        FormulaKind::Quant { q, var, sort, body } => {
            scope.push(var.name.clone());
            let slot = scope.len() - 1;
            let body = compile(body, scope);
            scope.pop();
            Node::Quant(*q, slot, clamp(*sort), Box::new(body))
        }
    }
}

fn eval<G: FiniteGroup>(sys: &System<G>, n: &Node, env: &mut Vec<usize>) -> bool {
    match n {
        Node::True => true,
        Node::False => false,
        Node::Leq(a, b) => sys.leq(env[*a], env[*b]),
        Node::C(a, b) => sys.c(env[*a], env[*b]),
        Node::P(a, b, c) => sys.p(env[*a], env[*b], env[*c]),
        Node::Eq(a, b) => env[*a] == env[*b],
        Node::InSort(a, k) => sys.in_sort(env[*a], *k),
        Node::Iso(a, t) => sys.tag(sys.class_of(env[*a])) == *t,
        Node::Not(g) => !eval(sys, g, env),
        Node::And(a, b) => eval(sys, a, env) && eval(sys, b, env),
        Node::Or(a, b) => eval(sys, a, env) || eval(sys, b, env),
        Node::Implies(a, b) => !eval(sys, a, env) || eval(sys, b, env),
        Node::Quant(q, slot, sort, body) => {
            env.truncate(*slot);
            env.push(0);
            let want = *q == Quantifier::Exists;
            let mut result = !want;
            for id in sys.sort_extent(*sort) {
                env[*slot] = id;
                if eval(sys, body, env) == want {
                    result = want;
                    break;
                }
            }
            env.truncate(*slot);
            result
        }
    }
}

/// Truth value under an assignment of element ids to exactly the free
/// variables.
pub fn evaluate<G: FiniteGroup>(sys: &System<G>, f: &Formula, assignment: &[(&str, usize)]) -> Result<bool> {
    let free = f.free_vars();
    let given: BTreeSet<&str> = assignment.iter().map(|a| a.0).collect();
    let wanted: BTreeSet<&str> = free.iter().map(String::as_str).collect();
    if given != wanted || given.len() != assignment.len() {
        return Err(Error::Contract(format!(
            "assignment covers {:?}, formula has free variables {:?}",
            given, wanted
        )));
    }
    if let Some(&(v, _)) = assignment.iter().find(|a| a.1 >= sys.element_count()) {
        return Err(Error::Contract(format!("`{v}` is not an element of the system")));
    }
    let mut scope: Vec<String> = free.clone();
    let node = compile(f, &mut scope);
    let mut env: Vec<usize> = free
        .iter()
        .map(|name| assignment.iter().find(|a| a.0 == name).expect("checked").1)
        .collect();
    Ok(eval(sys, &node, &mut env))
}

/// All tuples of element ids satisfying `f`, one entry per free variable in
/// the order of `vars`, which must list the free variables exactly.
pub fn solutions<G: FiniteGroup>(sys: &System<G>, f: &Formula, vars: &[&str]) -> Result<Vec<Vec<usize>>> {
    let free = f.free_vars();
    let wanted: BTreeSet<&str> = free.iter().map(String::as_str).collect();
    let given: BTreeSet<&str> = vars.iter().copied().collect();
    if given != wanted || given.len() != vars.len() {
        return Err(Error::Contract(format!(
            "solution variables {:?} do not match free variables {:?}",
            vars, wanted
        )));
    }
    let mut scope: Vec<String> = vars.iter().map(|s| String::from(*s)).collect();
    let node = compile(f, &mut scope);
    let n = sys.element_count();
    let k = vars.len();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; k];
    if k > 0 && n == 0 {
        return Ok(out);
    }
    loop {
        let mut env = tuple.clone();
        if eval(sys, &node, &mut env) {
            out.push(tuple.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Solution set of a formula with exactly one free variable.
pub fn solution_set<G: FiniteGroup>(sys: &System<G>, f: &Formula) -> Result<Vec<usize>> {
    let free = f.free_vars();
    if free.len() != 1 {
        return Err(Error::Contract(format!(
            "solution-set mode needs one free variable, found {}",
            free.len()
        )));
    }
    Ok(solutions(sys, f, &[free[0].as_str()])?.into_iter().map(|t| t[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::TableGroup;
    use crate::subgroups::enumerate_normal;

    fn d3_system() -> System<TableGroup> {
        let g = TableGroup::dihedral(3);
        let ns = enumerate_normal(&g, 100).unwrap();
        System::build(g, 3, 5, ns).unwrap()
    }

    #[test]
    fn parses_with_free_variable() {
        let f = parse_formula("exists b:X[180]. iso(b, W) & leq(b, a)").unwrap();
        assert_eq!(f.free_vars(), vec!["a"]);
        assert!(matches!(f.kind, FormulaKind::Quant { sort: 180, .. }));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p(x,y)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 1);
                assert!(msg.contains("3 arguments"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("exists x. x = x"), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse_with_free("leq(x, y)", &["x"]), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_formula("x = "), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "a = a & (b = c | !leq(a, b)) -> c(a, b)",
            "(exists x:X[2]. x = x) & true",
            "!(forall x:X[1]. p(x, x, x)) | (a = b -> a = b) -> false",
            "iso(x, C2^3) & in(x, X[8])",
            "a = b & (b = c & c = a)",
        ] {
            let f = parse_formula(text).unwrap();
            let again = parse_formula(&f.to_string()).unwrap();
            assert_eq!(f, again, "{text} -> {f}");
        }
    }

    #[test]
    fn evaluates_over_d3() {
        let sys = d3_system();
        let refl = parse_formula("forall x:X[2]. leq(x, x)").unwrap();
        assert!(evaluate(&sys, &refl, &[]).unwrap());
        let v = builtin("vertex", 3, 5).unwrap();
        let sol = solution_set(&sys, &v).unwrap();
        assert_eq!(sol, vec![sys.identity_element(sys.class_count() - 1)]);
        assert!(evaluate(&sys, &v, &[]).is_err());
        let e = builtin("edge", 3, 5).unwrap();
        assert!(solutions(&sys, &e, &["x", "y"]).unwrap().is_empty());
        assert!(builtin("psi(0)", 3, 5).is_err());
    }
}
