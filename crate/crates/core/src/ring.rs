//! Truncated cohomology ring of `D1 x Dd x (X^1..X^m) x (X_1..X_n)`.
//!
//! Variables are `y1` (line), `yd` (curve), `b_j` (singular marked points)
//! and `a_i` (points on the line). Every plane factor is truncated at the
//! cube, `y1` at the cube and `yd` above `delta(d)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

/// Dimension `d(d+3)/2` of the space of degree `d` curves.
pub fn delta(d: u32) -> u32 {
    d * (d + 3) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSig {
    pub d: u32,
    /// Singular-type marked points (b variables).
    pub m: usize,
    /// Marked points on the line (a variables).
    pub n: usize,
}

impl SpaceSig {
    pub fn new(d: u32, m: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return input("degree must be positive");
        }
        if m > 2 {
            return input(format!("at most two singular points supported, got {m}"));
        }
        Ok(SpaceSig { d, m, n })
    }

    pub fn delta(&self) -> u32 {
        delta(self.d)
    }

    pub fn dim(&self) -> u32 {
        2 + self.delta() + 2 * self.m as u32 + 2 * self.n as u32
    }

    /// Same space with one more point on the line.
    pub fn with_extra_a(&self) -> SpaceSig {
        SpaceSig { n: self.n + 1, ..*self }
    }

    pub fn with_n(&self, n: usize) -> SpaceSig {
        SpaceSig { n, ..*self }
    }

    pub fn with_m(&self, m: usize) -> SpaceSig {
        SpaceSig { m, ..*self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub y1: u32,
    pub yd: u32,
    pub b: Vec<u32>,
    pub a: Vec<u32>,
}

impl Monomial {
    pub fn one(m: usize, n: usize) -> Self {
        Monomial { y1: 0, yd: 0, b: vec![0; m], a: vec![0; n] }
    }

    pub fn degree(&self) -> u32 {
        self.y1 + self.yd + self.b.iter().sum::<u32>() + self.a.iter().sum::<u32>()
    }

    /// Whether the exponents respect the truncation of `sig`.
    pub fn within_caps(&self, sig: &SpaceSig) -> bool {
        self.y1 <= 2 && self.yd <= sig.delta() && self.b.iter().all(|&e| e <= 2) && self.a.iter().all(|&e| e <= 2)
    }

    pub fn shape_matches(&self, sig: &SpaceSig) -> bool {
        self.b.len() == sig.m && self.a.len() == sig.n
    }

    fn times(&self, other: &Monomial, sig: &SpaceSig) -> Option<Monomial> {
        let y1 = self.y1 + other.y1;
        let yd = self.yd + other.yd;
        if y1 > 2 || yd > sig.delta() {
            return None;
        }
        let mut b = self.b.clone();
        for (x, y) in b.iter_mut().zip(&other.b) {
            *x += y;
            if *x > 2 {
                return None;
            }
        }
        let mut a = self.a.clone();
        for (x, y) in a.iter_mut().zip(&other.a) {
            *x += y;
            if *x > 2 {
                return None;
            }
        }
        Some(Monomial { y1, yd, b, a })
    }

    /// Top monomial `y1^2 yd^delta prod b^2 prod a^2`.
    pub fn top(sig: &SpaceSig) -> Monomial {
        Monomial { y1: 2, yd: sig.delta(), b: vec![2; sig.m], a: vec![2; sig.n] }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: String, e: u32| {
            if e == 1 {
                parts.push(name);
            } else if e > 1 {
                parts.push(format!("{name}^{e}"));
            }
        };
        push("y1".into(), self.y1);
        push("yd".into(), self.yd);
        for (j, &e) in self.b.iter().enumerate() {
            push(format!("b{}", j + 1), e);
        }
        for (i, &e) in self.a.iter().enumerate() {
            push(format!("a{}", i + 1), e);
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse integer combination of monomials. Zero is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one(sig: &SpaceSig) -> Self {
        RingElem::from_monomial(Monomial::one(sig.m, sig.n))
    }

    pub fn constant(sig: &SpaceSig, c: impl Into<BigInt>) -> Self {
        RingElem::from_term(Monomial::one(sig.m, sig.n), c.into())
    }

    pub fn from_monomial(mono: Monomial) -> Self {
        RingElem::from_term(mono, BigInt::one())
    }

    pub fn from_term(mono: Monomial, c: BigInt) -> Self {
        let mut e = RingElem::zero();
        e.add_term(mono, c);
        e
    }

    pub fn y1(sig: &SpaceSig) -> Self {
        let mut m = Monomial::one(sig.m, sig.n);
        m.y1 = 1;
        RingElem::from_monomial(m)
    }

    pub fn yd(sig: &SpaceSig) -> Self {
        let mut m = Monomial::one(sig.m, sig.n);
        m.yd = 1;
        RingElem::from_monomial(m)
    }

    /// `b_j`, 1-based.
    pub fn b(sig: &SpaceSig, j: usize) -> Result<Self> {
        if j == 0 || j > sig.m {
            return input(format!("b{j} out of range for m={}", sig.m));
        }
        let mut m = Monomial::one(sig.m, sig.n);
        m.b[j - 1] = 1;
        Ok(RingElem::from_monomial(m))
    }

    /// `a_i`, 1-based.
    pub fn a(sig: &SpaceSig, i: usize) -> Result<Self> {
        if i == 0 || i > sig.n {
            return input(format!("a{i} out of range for n={}", sig.n));
        }
        let mut m = Monomial::one(sig.m, sig.n);
        m.a[i - 1] = 1;
        Ok(RingElem::from_monomial(m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> RingElem {
        if k.is_zero() {
            return RingElem::zero();
        }
        RingElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Checks the shape and caps of every stored monomial.
    pub fn check(&self, sig: &SpaceSig) -> Result<()> {
        for m in self.terms.keys() {
            if !m.shape_matches(sig) {
                return input(format!(
                    "monomial {m} has shape (m={}, n={}) but the space has (m={}, n={})",
                    m.b.len(),
                    m.a.len(),
                    sig.m,
                    sig.n
                ));
            }
            if !m.within_caps(sig) {
                return input(format!("monomial {m} exceeds truncation caps"));
            }
        }
        Ok(())
    }

    /// Degree if homogeneous, `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn mul(&self, other: &RingElem, sig: &SpaceSig) -> Result<RingElem> {
        self.check(sig)?;
        other.check(sig)?;
        Ok(self.mul_unchecked(other, sig))
    }

    pub(crate) fn mul_unchecked(&self, other: &RingElem, sig: &SpaceSig) -> RingElem {
        let mut out = RingElem::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.times(m2, sig) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    /// Adds a trailing `a` slot with exponent zero.
    pub fn lift_a(&self) -> RingElem {
        RingElem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.a.push(0);
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Applies `f` to every monomial, dropping those mapped to `None`.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Option<Monomial>) -> RingElem {
        let mut out = RingElem::zero();
        for (m, c) in &self.terms {
            if let Some(m2) = f(m) {
                out.add_term(m2, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = m.degree() == 0;
            if abs.is_one() && !unit {
                write!(f, "{m}")?;
            } else if unit {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

pub fn mul(lhs: &RingElem, rhs: &RingElem, sig: &SpaceSig) -> Result<RingElem> {
    lhs.mul(rhs, sig)
}

/// Coefficient of the top monomial.
pub fn integrate(e: &RingElem, sig: &SpaceSig) -> BigInt {
    e.coeff(&Monomial::top(sig))
}

/// Fiber integration over the last `X_i`: keeps the `a_n^2` part and drops `a_n`.
pub fn pushforward_last_a(e: &RingElem, sig: &SpaceSig) -> Result<RingElem> {
    if sig.n == 0 {
        return input("pushforward needs at least one point on the line");
    }
    e.check(sig)?;
    Ok(push_unchecked(e))
}

pub(crate) fn push_unchecked(e: &RingElem) -> RingElem {
    e.map_monomials(|m| {
        if m.a.last() == Some(&2) {
            let mut m = m.clone();
            m.a.pop();
            Some(m)
        } else {
            None
        }
    })
}

fn quadratic(u: &RingElem, v: &RingElem, sig: &SpaceSig) -> RingElem {
    u.mul_unchecked(u, sig).add(&u.mul_unchecked(v, sig)).add(&v.mul_unchecked(v, sig))
}

/// Class of the diagonal `a_i = a_j`: `a_i^2 + a_i a_j + a_j^2`.
pub fn diagonal(i: usize, j: usize, sig: &SpaceSig) -> Result<RingElem> {
    if i == j {
        return input("diagonal needs two distinct points");
    }
    Ok(quadratic(&RingElem::a(sig, i)?, &RingElem::a(sig, j)?, sig))
}

/// Class of `b_j = a_i`: `b_j^2 + b_j a_i + a_i^2`.
pub fn diagonal_b(j: usize, i: usize, sig: &SpaceSig) -> Result<RingElem> {
    Ok(quadratic(&RingElem::b(sig, j)?, &RingElem::a(sig, i)?, sig))
}

/// Collision divisor `a_i + a_j - y1`.
pub fn collision_divisor(i: usize, j: usize, sig: &SpaceSig) -> Result<RingElem> {
    if i == j {
        return input("collision divisor needs two distinct points");
    }
    Ok(RingElem::a(sig, i)?.add(&RingElem::a(sig, j)?).sub(&RingElem::y1(sig)))
}

/// `b_j + a_i - y1`.
pub fn collision_divisor_b(j: usize, i: usize, sig: &SpaceSig) -> Result<RingElem> {
    Ok(RingElem::b(sig, j)?.add(&RingElem::a(sig, i)?).sub(&RingElem::y1(sig)))
}
