//! Shared recursion for `[S T_k1 .. T_kn] . c` over a base class `S`.
//!
//! The last profile entry is always the one reduced. A trailing `T0` is
//! expanded through the incidence class minus diagonal excess; a trailing
//! `T_k` with `k >= 1` is traded for `T_{k-1} T0` cut by the collision
//! divisor, minus the excess where the new point runs into the singular
//! point.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cusp::class_a2f;
use crate::error::{Error, Result};
use crate::nodal::class_a1f;
use crate::ring::{
    collision_divisor, collision_divisor_b, diagonal, diagonal_b, integrate, push_unchecked, Monomial, RingElem,
    SpaceSig,
};
use crate::tangency::class_t0;

/// Base class carried by the singular-type marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// No singular point.
    Smooth,
    /// Node anywhere in the plane.
    A1F,
    /// Node on the line with one branch tangent to order `r`; `PA1(0)` is the
    /// node-on-the-line class.
    PA1(u32),
    /// Cusp anywhere in the plane.
    A2F,
    /// Cusp on the line.
    A2L,
}

impl Base {
    /// Number of `b` variables.
    pub fn m(self) -> usize {
        match self {
            Base::Smooth => 0,
            _ => 1,
        }
    }

    /// Codimension of the bare class in `M_0^m`.
    pub fn codim(self) -> u32 {
        match self {
            Base::Smooth => 0,
            Base::A1F => 3,
            Base::PA1(r) => 4 + r,
            Base::A2F => 4,
            Base::A2L => 5,
        }
    }

    /// Multiplicity of the `b1 = a_n` component when a trailing `T0` is expanded.
    fn point_excess(self) -> u32 {
        match self {
            Base::PA1(r) => r + 2,
            Base::A2L => 2,
            _ => 0,
        }
    }

    fn only_first_order(self) -> bool {
        matches!(self, Base::A2F | Base::A2L)
    }
}

type Key = (Base, Vec<u32>, Monomial);

/// Memoizing evaluator for one curve degree. Not shared between threads;
/// create one per worker.
#[derive(Debug)]
pub struct Session {
    d: u32,
    canonical: bool,
    memo: HashMap<Key, BigInt>,
}

impl Session {
    pub fn new(d: u32) -> Result<Self> {
        SpaceSig::new(d, 0, 0)?;
        Ok(Session { d, canonical: true, memo: HashMap::new() })
    }

    /// Session that never reorders profile slots, so every query really
    /// reduces the caller's last entry. Used to test permutation invariance.
    pub fn without_reordering(d: u32) -> Result<Self> {
        let mut s = Session::new(d)?;
        s.canonical = false;
        Ok(s)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn sig(&self, base: Base, n: usize) -> SpaceSig {
        SpaceSig { d: self.d, m: base.m(), n }
    }

    /// `[base T_profile] . c`, with `c` living on `M_n^m` for the base.
    pub fn eval(&mut self, base: Base, profile: &[u32], c: &RingElem) -> Result<BigInt> {
        let sig = self.sig(base, profile.len());
        c.check(&sig)?;
        if base.only_first_order() && profile.iter().any(|&k| k > 1) {
            return Err(Error::Unsupported("cuspidal classes only support first-order tangencies".into()));
        }
        if let Base::PA1(r) = base {
            if r > self.d {
                return Err(Error::Input(format!("tangency order {r} of the nodal branch exceeds the degree")));
            }
        }
        Ok(self.eval_elem(base, profile, c))
    }

    fn eval_elem(&mut self, base: Base, profile: &[u32], c: &RingElem) -> BigInt {
        let mut total = BigInt::zero();
        for (mono, coeff) in c.terms() {
            let v = self.eval_mono(base, profile, mono);
            if !v.is_zero() {
                total += coeff * v;
            }
        }
        total
    }

    fn eval_mono(&mut self, base: Base, profile: &[u32], mono: &Monomial) -> BigInt {
        let sig = self.sig(base, profile.len());
        let codim = base.codim() + profile.iter().map(|k| k + 2).sum::<u32>();
        if codim + mono.degree() != sig.dim() {
            return BigInt::zero();
        }
        let (profile, mono) =
            if self.canonical { canonicalize(profile, mono) } else { (profile.to_vec(), mono.clone()) };
        let key = (base, profile, mono);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.compute(base, &key.1, &key.2);
        self.memo.insert(key, v.clone());
        v
    }

    fn compute(&mut self, base: Base, profile: &[u32], mono: &Monomial) -> BigInt {
        let n = profile.len();
        let sig = self.sig(base, n);
        let c = RingElem::from_monomial(mono.clone());
        if n == 0 {
            return self.base_value(base, &c);
        }
        let kn = profile[n - 1];
        let rest = &profile[..n - 1];
        if kn == 0 {
            let t0 = class_t0(n, &sig).expect("valid point index");
            let mut total = self.eval_elem(base, rest, &push_unchecked(&t0.mul_unchecked(&c, &sig)));
            for (i, &ki) in rest.iter().enumerate() {
                let dg = diagonal(i + 1, n, &sig).expect("valid indices");
                let v = self.eval_elem(base, rest, &push_unchecked(&dg.mul_unchecked(&c, &sig)));
                total -= BigInt::from(ki + 1) * v;
            }
            let pe = base.point_excess();
            if pe > 0 {
                let dg = diagonal_b(1, n, &sig).expect("valid indices");
                let v = self.eval_elem(base, rest, &push_unchecked(&dg.mul_unchecked(&c, &sig)));
                total -= BigInt::from(pe) * v;
            }
            total
        } else {
            let big = sig.with_extra_a();
            let cut = collision_divisor(n, n + 1, &big).expect("valid indices");
            let mut longer = rest.to_vec();
            longer.push(kn - 1);
            longer.push(0);
            let mut total = self.eval_elem(base, &longer, &cut.mul_unchecked(&c.lift_a(), &big));
            let excess = match base {
                Base::A1F => Some((if kn == 1 { 2u32 } else { 1 }, Base::PA1(kn - 1))),
                Base::A2F => Some((3, Base::A2L)),
                _ => None,
            };
            if let Some((mult, lower)) = excess {
                if let Some(collapsed) = collapse_last_onto_b1(mono) {
                    let v = self.eval_mono(lower, rest, &collapsed);
                    total -= BigInt::from(mult) * v;
                }
            }
            total
        }
    }

    fn base_value(&mut self, base: Base, c: &RingElem) -> BigInt {
        let d = self.d;
        let sig = self.sig(base, 0);
        let on_line = |sig: &SpaceSig| RingElem::y1(sig).add(&RingElem::b(sig, 1).expect("m = 1"));
        match base {
            Base::Smooth => integrate(c, &sig),
            Base::A1F => integrate(&class_a1f(d).mul_unchecked(c, &sig), &sig),
            Base::A2F => integrate(&class_a2f(d).mul_unchecked(c, &sig), &sig),
            Base::A2L => {
                let cls = class_a2f(d).mul_unchecked(&on_line(&sig), &sig);
                integrate(&cls.mul_unchecked(c, &sig), &sig)
            }
            Base::PA1(0) => {
                let cls = class_a1f(d).mul_unchecked(&on_line(&sig), &sig);
                integrate(&cls.mul_unchecked(c, &sig), &sig)
            }
            Base::PA1(r) => {
                let big = sig.with_extra_a();
                let cut = collision_divisor_b(1, 1, &big).expect("valid indices");
                self.eval_elem(Base::PA1(r - 1), &[0], &cut.mul_unchecked(&c.lift_a(), &big))
            }
        }
    }
}

/// Moves the exponent of the last `a` onto `b1` and drops that `a`;
/// `None` when the result passes the cap.
pub fn collapse_last_onto_b1(mono: &Monomial) -> Option<Monomial> {
    let mut m = mono.clone();
    let e = m.a.pop()?;
    let b1 = m.b.first_mut()?;
    *b1 += e;
    (*b1 <= 2).then_some(m)
}

/// Sorts slots by `(k, a-exponent)` and permutes the `a` exponents along.
fn canonicalize(profile: &[u32], mono: &Monomial) -> (Vec<u32>, Monomial) {
    let mut slots: Vec<(u32, u32)> = profile.iter().copied().zip(mono.a.iter().copied()).collect();
    slots.sort_unstable();
    let mut m = mono.clone();
    m.a = slots.iter().map(|s| s.1).collect();
    (slots.into_iter().map(|s| s.0).collect(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::delta;

    fn mono(y1: u32, yd: u32, b: &[u32], a: &[u32]) -> RingElem {
        RingElem::from_monomial(Monomial { y1, yd, b: b.to_vec(), a: a.to_vec() })
    }

    #[test]
    fn conics_tangent_to_a_line() {
        let mut s = Session::new(2).unwrap();
        assert_eq!(s.eval(Base::Smooth, &[1], &mono(2, 4, &[], &[0])).unwrap(), 2.into());
    }

    #[test]
    fn wrong_degree_is_zero() {
        let mut s = Session::new(3).unwrap();
        assert_eq!(s.eval(Base::A1F, &[1], &mono(2, 6, &[0], &[0])).unwrap(), 0.into());
    }

    #[test]
    fn shape_is_checked() {
        let mut s = Session::new(3).unwrap();
        assert!(s.eval(Base::A1F, &[1], &mono(2, 7, &[], &[0])).is_err());
    }

    #[test]
    fn cusp_rejects_higher_order() {
        let mut s = Session::new(5).unwrap();
        let c = mono(2, delta(5) - 5, &[0], &[0]);
        assert!(matches!(s.eval(Base::A2F, &[2], &c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn collapse_caps() {
        let m = Monomial { y1: 0, yd: 0, b: vec![1], a: vec![0, 1] };
        assert_eq!(collapse_last_onto_b1(&m).unwrap().b, vec![2]);
        let m = Monomial { y1: 0, yd: 0, b: vec![2], a: vec![1] };
        assert!(collapse_last_onto_b1(&m).is_none());
    }

    #[test]
    fn canonical_form_keeps_pairs() {
        let m = Monomial { y1: 2, yd: 3, b: vec![], a: vec![1, 0, 2] };
        let (p, m2) = canonicalize(&[2, 1, 1], &m);
        assert_eq!(p, vec![1, 1, 2]);
        assert_eq!(m2.a, vec![0, 2, 1]);
    }
}
