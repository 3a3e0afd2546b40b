//! Smooth curves tangent to a line at prescribed points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::engine::{Base, Session};
use crate::error::{input, Result};
use crate::ring::{Monomial, RingElem, SpaceSig};

/// Orders of tangency `(k1, .., kn)`; order `k` means contact `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TangencyProfile {
    pub ks: Vec<u32>,
}

impl TangencyProfile {
    pub fn new(ks: Vec<u32>) -> Self {
        TangencyProfile { ks }
    }

    pub fn n(&self) -> usize {
        self.ks.len()
    }

    /// Total order `k = sum k_i`.
    pub fn k(&self) -> u32 {
        self.ks.iter().sum()
    }

    /// Codimension `sum (k_i + 2)` of the tangency conditions.
    pub fn codim(&self) -> u32 {
        self.ks.iter().map(|k| k + 2).sum()
    }

    pub fn canonical(&self) -> TangencyProfile {
        let mut ks = self.ks.clone();
        ks.sort_unstable();
        TangencyProfile { ks }
    }
}

impl fmt::Display for TangencyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ks.iter().map(|k| format!("T{k}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Point/line incidence monomial `y1^r yd^s prod b^nu prod a^eps`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Constraint {
    pub r: u32,
    pub s: u32,
    pub nu: Vec<u32>,
    pub eps: Vec<u32>,
}

impl Constraint {
    pub fn new(r: u32, s: u32, nu: Vec<u32>, eps: Vec<u32>) -> Self {
        Constraint { r, s, nu, eps }
    }

    /// Constraint on a space with no singular point.
    pub fn smooth(r: u32, s: u32, eps: Vec<u32>) -> Self {
        Constraint { r, s, nu: Vec::new(), eps }
    }

    pub fn monomial(&self) -> Monomial {
        Monomial { y1: self.r, yd: self.s, b: self.nu.clone(), a: self.eps.clone() }
    }

    pub fn to_elem(&self, sig: &SpaceSig) -> Result<RingElem> {
        let mono = self.monomial();
        if !mono.shape_matches(sig) {
            return input(format!(
                "constraint has {} b- and {} a-exponents, space needs {} and {}",
                self.nu.len(),
                self.eps.len(),
                sig.m,
                sig.n
            ));
        }
        if !mono.within_caps(sig) {
            return input(format!("constraint {mono} exceeds truncation caps"));
        }
        Ok(RingElem::from_monomial(mono))
    }
}

/// Exact count with its presentation data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "ser_big")]
    pub ordered_value: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub symmetry_factor: BigInt,
    #[serde(serialize_with = "ser_opt_big")]
    pub unordered_value: Option<BigInt>,
    pub warnings: Vec<String>,
    /// Which recursion produced the value.
    pub path: String,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

impl CountResult {
    pub fn new(ordered: BigInt, symmetry: BigInt, warnings: Vec<String>, path: impl Into<String>) -> Self {
        let unordered = if symmetry.is_zero() {
            None
        } else {
            let (q, r) = ordered.div_rem(&symmetry);
            r.is_zero().then_some(q)
        };
        CountResult {
            ordered_value: ordered,
            symmetry_factor: symmetry,
            unordered_value: unordered,
            warnings,
            path: path.into(),
        }
    }

    pub fn plain(value: BigInt, path: impl Into<String>) -> Self {
        CountResult::new(value, BigInt::one(), Vec::new(), path)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Product of `mult!` over groups of interchangeable slots. Two slots are
/// interchangeable when they share the order and every constraint monomial
/// puts the same exponent on both.
pub fn symmetry_factor(profile: &[u32], c: &RingElem) -> BigInt {
    let mut groups: BTreeMap<(u32, Vec<u32>), usize> = BTreeMap::new();
    for (i, &k) in profile.iter().enumerate() {
        let pattern: Vec<u32> = c.terms().map(|(m, _)| m.a.get(i).copied().unwrap_or(0)).collect();
        *groups.entry((k, pattern)).or_default() += 1;
    }
    groups.values().map(|&g| factorial(g)).product()
}

/// `(y1 + a_i)(yd + d a_i)`: the point `a_i` lies on the line and the curve.
pub fn class_t0(i: usize, sig: &SpaceSig) -> Result<RingElem> {
    let on_line = RingElem::y1(sig).add(&RingElem::a(sig, i)?);
    Ok(on_line.mul_unchecked(&incidence(i, sig)?, sig))
}

/// `yd + d a_i`: the point `a_i` lies on the curve.
pub fn incidence(i: usize, sig: &SpaceSig) -> Result<RingElem> {
    Ok(RingElem::yd(sig).add(&RingElem::a(sig, i)?.scale(&BigInt::from(sig.d))))
}

pub(crate) fn bound_warning(d: u32, limit: u32, what: &str) -> Option<String> {
    (d <= limit).then(|| format!("d={d} is at or below the proven range for {what} (needs d > {limit})"))
}

/// `[T_k1 .. T_kn] . c` for smooth curves; `c` lives on `M_n`.
pub fn eval_t(session: &mut Session, profile: &TangencyProfile, c: &RingElem) -> Result<CountResult> {
    let d = session.d();
    let value = session.eval(Base::Smooth, &profile.ks, c)?;
    let limit = profile.k() + profile.n() as u32 - 1;
    let warnings = bound_warning(d, limit, "smooth tangencies").into_iter().collect();
    Ok(CountResult::new(value, symmetry_factor(&profile.ks, c), warnings, "smooth tangency recursion"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::delta;

    fn run(d: u32, ks: &[u32], c: Constraint) -> CountResult {
        let mut s = Session::new(d).unwrap();
        let p = TangencyProfile::new(ks.to_vec());
        let sig = SpaceSig::new(d, 0, ks.len()).unwrap();
        eval_t(&mut s, &p, &c.to_elem(&sig).unwrap()).unwrap()
    }

    #[test]
    fn class_t0_conic() {
        let sig = SpaceSig::new(2, 0, 1).unwrap();
        let t0 = class_t0(1, &sig).unwrap();
        assert_eq!(t0.len(), 4);
        assert_eq!(t0.homogeneous_degree(), Some(2));
        let mut m = Monomial::one(0, 1);
        m.a[0] = 2;
        assert_eq!(t0.coeff(&m), 2.into());
        assert_eq!(incidence(1, &sig).unwrap().len(), 2);
    }

    #[test]
    fn two_conics() {
        assert_eq!(run(2, &[1], Constraint::smooth(2, 4, vec![0])).ordered_value, 2.into());
    }

    #[test]
    fn hand_trace_for_conics() {
        // [T1] y1^2 y2^4 = [T0 T0] (a1 + a2 - y1) y1^2 y2^4, split into incidence and diagonal parts
        let mut s = Session::new(2).unwrap();
        let sig = SpaceSig::new(2, 0, 2).unwrap();
        let c = Constraint::smooth(2, 4, vec![0, 0]).to_elem(&sig).unwrap();
        let cut = crate::ring::collision_divisor(1, 2, &sig).unwrap().mul(&c, &sig).unwrap();
        let t0 = class_t0(2, &sig).unwrap().mul(&cut, &sig).unwrap();
        let dg = crate::ring::diagonal(1, 2, &sig).unwrap().mul(&cut, &sig).unwrap();
        let push = |e: &RingElem| crate::ring::pushforward_last_a(e, &sig).unwrap();
        let main = s.eval(Base::Smooth, &[0], &push(&t0)).unwrap();
        let excess = s.eval(Base::Smooth, &[0], &push(&dg)).unwrap();
        assert_eq!((main, excess), (4.into(), 2.into()));
    }

    #[test]
    fn table_one_row() {
        let r = run(7, &[1, 1, 2], Constraint::smooth(2, delta(7) - 4, vec![0, 0, 0]));
        assert_eq!(r.ordered_value, 72.into());
        assert_eq!(r.symmetry_factor, 2.into());
        assert_eq!(r.unordered_value, Some(36.into()));
        let r = run(4, &[1, 1, 2], Constraint::smooth(2, delta(4) - 4, vec![0, 0, 0]));
        assert_eq!(r.ordered_value, 0.into());
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn fixed_first_point() {
        let r = run(7, &[1, 1, 2], Constraint::smooth(2, delta(7) - 5, vec![1, 0, 0]));
        assert_eq!(r.ordered_value, 12.into());
        assert_eq!(r.symmetry_factor, 1.into());
    }

    #[test]
    fn unordered_missing_when_not_divisible() {
        let r = CountResult::new(5.into(), 2.into(), vec![], "x");
        assert_eq!(r.unordered_value, None);
    }
}
