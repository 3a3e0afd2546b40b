//! One-nodal curves: the free-node class, the node-on-the-line ladder
//! `P^(r)A1`, and tangency counts for nodal curves.

use num_bigint::BigInt;

use crate::engine::{Base, Session};
use crate::error::{input, Result};
use crate::ring::{delta, Monomial, RingElem, SpaceSig};
use crate::tangency::{bound_warning, symmetry_factor, CountResult, TangencyProfile};

/// Class of curves with a node at the marked point, on `M_0^1`:
/// `(3d^2-6d+3) yd b1^2 + (3d-3) yd^2 b1 + yd^3`.
pub fn class_a1f(d: u32) -> RingElem {
    let d = BigInt::from(d);
    let c12 = BigInt::from(3) * &d * &d - BigInt::from(6) * &d + 3;
    let c21 = BigInt::from(3) * &d - 3;
    let term = |yd: u32, b: u32, c: BigInt| RingElem::from_term(Monomial { y1: 0, yd, b: vec![b], a: vec![] }, c);
    term(1, 2, c12).add(&term(2, 1, c21)).add(&term(3, 0, BigInt::from(1)))
}

fn sig1(d: u32) -> SpaceSig {
    SpaceSig { d, m: 1, n: 0 }
}

/// `[A1L] . c` from the free class times `(y1 + b1)`.
pub fn a1l_direct(session: &mut Session, c: &RingElem) -> Result<BigInt> {
    session.eval(Base::PA1(0), &[], c)
}

/// `[A1L] . c` as `[T1] . (yd - y1 + (d-1) b1) . c`, where the tangency
/// point is the `b` slot. Independent of the free-node class.
pub fn a1l_via_euler(session: &mut Session, c: &RingElem) -> Result<BigInt> {
    let d = session.d();
    let s1 = sig1(d);
    c.check(&s1)?;
    let euler = RingElem::yd(&s1).sub(&RingElem::y1(&s1)).add(&RingElem::b(&s1, 1)?.scale(&BigInt::from(d - 1)));
    let moved = b_to_a(&euler.mul_unchecked(c, &s1));
    session.eval(Base::Smooth, &[1], &moved)
}

/// Renames the single `b` slot to a single `a` slot.
fn b_to_a(e: &RingElem) -> RingElem {
    e.map_monomials(|m| Some(Monomial { y1: m.y1, yd: m.yd, b: vec![], a: m.b.clone() }))
}

/// Coefficients `(C12, C21, C30)` of the free-node class, recovered from
/// node-on-the-line numbers.
pub fn derive_a1f_coeffs(session: &mut Session) -> Result<(BigInt, BigInt, BigInt)> {
    let d = session.d();
    if d < 2 {
        return input("needs d >= 2");
    }
    let dl = delta(d);
    let mono = |y1: u32, yd: u32, b: u32| RingElem::from_monomial(Monomial { y1, yd, b: vec![b], a: vec![] });
    let c12 = a1l_via_euler(session, &mono(1, dl - 1, 0))?;
    let c21 = a1l_via_euler(session, &mono(2, dl - 2, 0))?;
    let c30 = if dl >= 3 { a1l_via_euler(session, &mono(2, dl - 3, 1))? } else { BigInt::from(0) };
    Ok((c12, c21, c30))
}

/// `[A1F T_k1 .. T_kn] . c`, with `c` on `M_n^1`.
pub fn eval_a1f_t(session: &mut Session, profile: &TangencyProfile, c: &RingElem) -> Result<CountResult> {
    let d = session.d();
    let value = session.eval(Base::A1F, &profile.ks, c)?;
    let warnings = bound_warning(d, profile.k() + profile.n() as u32, "nodal tangencies").into_iter().collect();
    Ok(CountResult::new(value, symmetry_factor(&profile.ks, c), warnings, "free node recursion"))
}

/// `[P^(r)A1 T_k1 .. T_kn] . c`.
pub fn eval_pa1(session: &mut Session, r: u32, profile: &TangencyProfile, c: &RingElem) -> Result<BigInt> {
    session.eval(Base::PA1(r), &profile.ks, c)
}

/// `[A1L T_k1 .. T_kn] . c` through the node-on-the-line base.
pub fn eval_a1l_t(session: &mut Session, profile: &TangencyProfile, c: &RingElem) -> Result<BigInt> {
    eval_pa1(session, 0, profile, c)
}

/// `[A1F T_k1 .. T_kn] . (y1 + b1) . c`. Agrees with [`eval_a1l_t`] for an
/// empty profile only: with tangency points the closure of the free-node
/// locus picks up the component where a tangency point sits on the node.
pub fn eval_a1f_t_on_line(session: &mut Session, profile: &TangencyProfile, c: &RingElem) -> Result<BigInt> {
    let sig = session.sig(Base::A1F, profile.n());
    c.check(&sig)?;
    let on_line = RingElem::y1(&sig).add(&RingElem::b(&sig, 1)?);
    session.eval(Base::A1F, &profile.ks, &on_line.mul_unchecked(c, &sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangency::Constraint;

    fn c1(d: u32, r: u32, s: u32, nu: u32, eps: &[u32]) -> RingElem {
        let sig = SpaceSig::new(d, 1, eps.len()).unwrap();
        Constraint::new(r, s, vec![nu], eps.to_vec()).to_elem(&sig).unwrap()
    }

    #[test]
    fn free_node_class_coefficients() {
        let cls = class_a1f(3);
        let m = Monomial { y1: 0, yd: 1, b: vec![2], a: vec![] };
        assert_eq!(cls.coeff(&m), 12.into());
        assert_eq!(class_a1f(4).coeff(&m), 27.into());
        assert_eq!(class_a1f(1).coeff(&m), 0.into());
    }

    #[test]
    fn nodal_cubics_tangent_to_a_line() {
        let mut s = Session::new(3).unwrap();
        let p = TangencyProfile::new(vec![1]);
        assert_eq!(eval_a1f_t(&mut s, &p, &c1(3, 2, 7, 0, &[0])).unwrap().ordered_value, 36.into());
        assert_eq!(eval_a1f_t(&mut s, &p, &c1(3, 1, 8, 0, &[0])).unwrap().ordered_value, 48.into());
    }

    #[test]
    fn euler_route_agrees_on_conics() {
        let mut s = Session::new(2).unwrap();
        let c = c1(2, 1, 4, 0, &[]);
        assert_eq!(a1l_via_euler(&mut s, &c).unwrap(), 3.into());
        assert_eq!(a1l_direct(&mut s, &c).unwrap(), 3.into());
    }

    #[test]
    fn coefficients_from_the_line() {
        for d in 2..=6u32 {
            let mut s = Session::new(d).unwrap();
            let (a, b, c) = derive_a1f_coeffs(&mut s).unwrap();
            assert_eq!(a, (3 * (d - 1) * (d - 1)).into());
            assert_eq!(b, (3 * d - 3).into());
            assert_eq!(c, 1.into());
        }
    }

    #[test]
    fn node_on_line_at_quintics() {
        let mut s = Session::new(5).unwrap();
        let v = eval_pa1(&mut s, 0, &TangencyProfile::default(), &c1(5, 2, delta(5) - 2, 0, &[])).unwrap();
        assert_eq!(v, 12.into());
    }

    #[test]
    fn line_routes_split_with_tangency() {
        let mut s = Session::new(4).unwrap();
        let p = TangencyProfile::new(vec![1]);
        let c = c1(4, 0, delta(4) - 1, 0, &[0]);
        let via_ladder = eval_a1l_t(&mut s, &p, &c).unwrap();
        let via_free = eval_a1f_t_on_line(&mut s, &p, &c).unwrap();
        assert_ne!(via_ladder, via_free);
        let empty = TangencyProfile::default();
        let c = c1(4, 1, delta(4) - 1, 0, &[]);
        assert_eq!(eval_a1l_t(&mut s, &empty, &c).unwrap(), eval_a1f_t_on_line(&mut s, &empty, &c).unwrap());
    }
}
