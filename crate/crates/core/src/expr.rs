//! Bracket-dot expression language, e.g. `[A1F T1 T1 T2] * y1^2 * yd^38 * a1`.
//!
//! ```text
//! expr        := class_group (('*' | '.') monomial)*
//! class_group := '[' atom+ ']'
//! atom        := T<int> | A1F | A1L | PA1(<int>) | A2F | A2L | A1A1 | PA3 | A3F
//! monomial    := (y1 | yd | b<int> | a<int>) ('^' <int>)?
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::engine::{Base, Session};
use crate::error::{input, Error, Result};
use crate::multisingular::{class_a1fa1f, class_a3f, eval_pa3};
use crate::ring::{integrate, Monomial, RingElem, SpaceSig};
use crate::tangency::{bound_warning, symmetry_factor, CountResult, TangencyProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    T(u32),
    A1F,
    A1L,
    PA1(u32),
    A2F,
    A2L,
    A1A1,
    PA3,
    A3F,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::T(k) => write!(f, "T{k}"),
            Atom::A1F => write!(f, "A1F"),
            Atom::A1L => write!(f, "A1L"),
            Atom::PA1(r) => write!(f, "PA1({r})"),
            Atom::A2F => write!(f, "A2F"),
            Atom::A2L => write!(f, "A2L"),
            Atom::A1A1 => write!(f, "A1A1"),
            Atom::PA3 => write!(f, "PA3"),
            Atom::A3F => write!(f, "A3F"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Y1,
    Yd,
    /// 1-based.
    B(usize),
    /// 1-based.
    A(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y1 => write!(f, "y1"),
            Var::Yd => write!(f, "yd"),
            Var::B(j) => write!(f, "b{j}"),
            Var::A(i) => write!(f, "a{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub var: Var,
    pub exp: u32,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.var)
        } else {
            write!(f, "{}^{}", self.var, self.exp)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExpr {
    pub atoms: Vec<Atom>,
    pub factors: Vec<Factor>,
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<String> = self.atoms.iter().map(Atom::to_string).collect();
        write!(f, "[{}]", atoms.join(" "))?;
        for x in &self.factors {
            write!(f, " * {x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    Star,
    Dot,
    Caret,
    Word(String),
    Int(String),
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let single = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '*' => Some(Tok::Star),
            '.' => Some(Tok::Dot),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
        } else if src[i..].starts_with('\u{b7}') {
            out.push((start, Tok::Dot));
            i += '\u{b7}'.len_utf8();
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(src[start..i].to_string())));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Word(src[start..i].to_string())));
        } else {
            let ch = src[start..].chars().next().unwrap_or(c);
            return perr(start, format!("unexpected character '{ch}'"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn int(&mut self, what: &str) -> Result<u32> {
        let at = self.offset();
        match self.bump() {
            Some((_, Tok::Int(s))) => s.parse().or_else(|_| perr(at, format!("{what} is too large"))),
            _ => perr(at, format!("expected {what}")),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let at = self.offset();
        let word = match self.bump() {
            Some((_, Tok::Word(w))) => w,
            _ => return perr(at, "expected a class atom"),
        };
        let atom = match word.as_str() {
            "A1F" => Atom::A1F,
            "A1L" => Atom::A1L,
            "A2F" => Atom::A2F,
            "A2L" => Atom::A2L,
            "A1A1" => Atom::A1A1,
            "PA3" => Atom::PA3,
            "A3F" => Atom::A3F,
            "PA1" => {
                if self.peek() != Some(&Tok::LParen) {
                    return perr(self.offset(), "expected '(' after PA1");
                }
                self.bump();
                let r = self.int("order of the nodal branch")?;
                if self.peek() != Some(&Tok::RParen) {
                    return perr(self.offset(), "expected ')'");
                }
                self.bump();
                Atom::PA1(r)
            }
            w if w.len() > 1 && w.starts_with('T') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                Atom::T(w[1..].parse().or_else(|_| perr(at, "tangency order is too large"))?)
            }
            _ => return perr(at, format!("unknown atom '{word}'")),
        };
        Ok(atom)
    }

    fn factor(&mut self) -> Result<Factor> {
        let at = self.offset();
        let word = match self.bump() {
            Some((_, Tok::Word(w))) => w,
            _ => return perr(at, "expected y1, yd, b<j> or a<i>"),
        };
        let index = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(i) if i >= 1 && !s.starts_with('0') => Ok(i),
                _ => perr(at, format!("bad variable '{word}'")),
            }
        };
        let var = match word.as_str() {
            "y1" => Var::Y1,
            "yd" => Var::Yd,
            w if w.len() > 1 && w.starts_with('b') => Var::B(index(&w[1..])?),
            w if w.len() > 1 && w.starts_with('a') => Var::A(index(&w[1..])?),
            _ => return perr(at, format!("unknown variable '{word}'")),
        };
        let mut exp = 1;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            exp = self.int("exponent")?;
        }
        Ok(Factor { var, exp })
    }
}

pub fn parse(src: &str) -> Result<ClassExpr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    if p.peek() != Some(&Tok::LBracket) {
        return perr(p.offset(), "expression must start with '['");
    }
    p.bump();
    let mut atoms = Vec::new();
    while !matches!(p.peek(), Some(Tok::RBracket) | None) {
        atoms.push(p.atom()?);
    }
    if p.peek().is_none() {
        return perr(p.offset(), "unclosed '['");
    }
    if atoms.is_empty() {
        return perr(p.offset(), "empty class group");
    }
    p.bump();
    let mut factors = Vec::new();
    loop {
        match p.peek() {
            None => break,
            Some(Tok::Star) | Some(Tok::Dot) => {
                p.bump();
                factors.push(p.factor()?);
            }
            Some(Tok::LBracket) => return perr(p.offset(), "only one class group is allowed"),
            Some(_) => return perr(p.offset(), "expected '*' or '.' before the next factor"),
        }
    }
    Ok(ClassExpr { atoms, factors })
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub result: CountResult,
    pub sig: SpaceSig,
}

enum Group {
    Tangency(Base, Vec<u32>),
    TwoNodes,
    Tacnode,
    DirectedTacnode,
}

fn classify(atoms: &[Atom]) -> Result<Group> {
    let ks: Vec<u32> = atoms.iter().filter_map(|a| if let Atom::T(k) = a { Some(*k) } else { None }).collect();
    let singular: Vec<&Atom> = atoms.iter().filter(|a| !matches!(a, Atom::T(_))).collect();
    if singular.len() > 1 {
        return input("at most one singularity atom per class group");
    }
    let base = match singular.first() {
        None => Base::Smooth,
        Some(Atom::A1F) => Base::A1F,
        Some(Atom::A1L) => Base::PA1(0),
        Some(Atom::PA1(r)) => Base::PA1(*r),
        Some(Atom::A2F) => Base::A2F,
        Some(Atom::A2L) => Base::A2L,
        Some(other) => {
            if !ks.is_empty() {
                return input(format!("{other} does not combine with tangency atoms"));
            }
            return Ok(match other {
                Atom::A1A1 => Group::TwoNodes,
                Atom::A3F => Group::Tacnode,
                _ => Group::DirectedTacnode,
            });
        }
    };
    Ok(Group::Tangency(base, ks))
}

fn build_constraint(factors: &[Factor], sig: &SpaceSig) -> Result<(RingElem, Vec<String>)> {
    let mut mono = Monomial::one(sig.m, sig.n);
    for f in factors {
        match f.var {
            Var::Y1 => mono.y1 += f.exp,
            Var::Yd => mono.yd += f.exp,
            Var::B(j) => {
                if j > sig.m {
                    return input(format!("b{j} refers to a singular point the class does not have"));
                }
                mono.b[j - 1] += f.exp;
            }
            Var::A(i) => {
                if i > sig.n {
                    return input(format!("a{i} exceeds the {} tangency point(s) of the class", sig.n));
                }
                mono.a[i - 1] += f.exp;
            }
        }
    }
    let mut warnings = Vec::new();
    if !mono.within_caps(sig) {
        warnings.push(format!("constraint {mono} vanishes by truncation"));
        return Ok((RingElem::zero(), warnings));
    }
    Ok((RingElem::from_monomial(mono), warnings))
}

fn class_codim(group: &Group) -> u32 {
    match group {
        Group::Tangency(base, ks) => base.codim() + ks.iter().map(|k| k + 2).sum::<u32>(),
        Group::TwoNodes => 6,
        Group::Tacnode => 5,
        Group::DirectedTacnode => 6,
    }
}

fn swap_b(c: &RingElem) -> RingElem {
    c.map_monomials(|m| {
        let mut m = m.clone();
        m.b.swap(0, 1);
        Some(m)
    })
}

/// Evaluates at degree `d`. Classes that never involve the line (free
/// singular points without tangency) get the factor `y1^2` supplied when
/// the constraint leaves the line free.
pub fn evaluate(expr: &ClassExpr, session: &mut Session) -> Result<Evaluation> {
    let d = session.d();
    let group = classify(&expr.atoms)?;
    let (m, n) = match &group {
        Group::Tangency(base, ks) => (base.m(), ks.len()),
        Group::TwoNodes => (2, 0),
        Group::Tacnode | Group::DirectedTacnode => (1, 0),
    };
    let sig = SpaceSig::new(d, m, n)?;
    let (mut c, mut warnings) = build_constraint(&expr.factors, &sig)?;
    let line_free =
        matches!(&group, Group::TwoNodes | Group::Tacnode | Group::Tangency(Base::A1F | Base::A2F, _)) && n == 0;
    if let Some(deg) = c.homogeneous_degree() {
        let expected = sig.dim() - class_codim(&group).min(sig.dim());
        let free_line = c.terms().all(|(m, _)| m.y1 == 0);
        if line_free && free_line && deg + 2 == expected {
            c = RingElem::y1(&sig).mul(&RingElem::y1(&sig), &sig)?.mul(&c, &sig)?;
            warnings.push("the line is not constrained by this class; y1^2 supplied".into());
        } else if deg != expected {
            warnings.push(format!("constraint degree {deg} does not match the expected {expected}; the count is 0"));
        }
    }
    let result = match &group {
        Group::Tangency(base, ks) => {
            let profile = TangencyProfile::new(ks.clone());
            let value = session.eval(*base, ks, &c)?;
            let (k, nn) = (profile.k(), profile.n() as u32);
            let bound = match base {
                Base::Smooth => (k + nn).checked_sub(1).map(|l| (l, "smooth tangencies")),
                Base::A1F => Some((k + nn, "nodal tangencies")),
                Base::PA1(r) => Some((nn + k + r + 2, "node-on-line tangencies")),
                Base::A2F => Some((2 * nn + 2, "cuspidal tangencies")),
                Base::A2L => Some((2 * nn + 4, "cusp-on-line tangencies")),
            };
            if let Some((limit, what)) = bound {
                if n > 0 {
                    warnings.extend(bound_warning(d, limit, what));
                }
            }
            CountResult::new(value, symmetry_factor(ks, &c), warnings, format!("{base:?} recursion"))
        }
        Group::TwoNodes => {
            let cls = class_a1fa1f(session)?;
            let value = integrate(&cls.mul(&c, &sig)?, &sig);
            let sym = if swap_b(&c) == c { 2 } else { 1 };
            CountResult::new(value, BigInt::from(sym), warnings, "two-node class")
        }
        Group::Tacnode => {
            let cls = class_a3f(session)?;
            let value = integrate(&cls.mul(&c, &sig)?, &sig);
            CountResult::new(value, BigInt::from(1), warnings, "tacnode class")
        }
        Group::DirectedTacnode => {
            let value = eval_pa3(session, &c)?;
            CountResult::new(value, BigInt::from(1), warnings, "directed tacnode")
        }
    };
    Ok(Evaluation { result, sig })
}

/// Parses and evaluates in a fresh session.
pub fn eval_str(src: &str, d: u32) -> Result<Evaluation> {
    let expr = parse(src)?;
    let mut s = Session::new(d)?;
    evaluate(&expr, &mut s)
}
