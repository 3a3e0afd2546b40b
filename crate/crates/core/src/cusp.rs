//! One-cuspidal curves with first-order tangencies.

use num_bigint::BigInt;

use crate::engine::{Base, Session};
use crate::error::Result;
use crate::ring::{Monomial, RingElem};
use crate::tangency::{bound_warning, symmetry_factor, CountResult};

/// Class of curves with a cusp at the marked point, on `M_0^1`:
/// `(12d^2-36d+24) yd^2 b1^2 + (8d-12) yd^3 b1 + 2 yd^4`.
pub fn class_a2f(d: u32) -> RingElem {
    let d = BigInt::from(d);
    let c22 = BigInt::from(12) * &d * &d - BigInt::from(36) * &d + 24;
    let c31 = BigInt::from(8) * &d - 12;
    let term = |yd: u32, b: u32, c: BigInt| RingElem::from_term(Monomial { y1: 0, yd, b: vec![b], a: vec![] }, c);
    term(2, 2, c22).add(&term(3, 1, c31)).add(&term(4, 0, BigInt::from(2)))
}

/// `[A2F T1 .. T1] . c` with `n` first-order tangencies.
pub fn eval_a2f_t1s(session: &mut Session, n: usize, c: &RingElem) -> Result<CountResult> {
    let d = session.d();
    let profile = vec![1; n];
    let value = session.eval(Base::A2F, &profile, c)?;
    let warnings = bound_warning(d, 2 * n as u32 + 2, "cuspidal tangencies").into_iter().collect();
    Ok(CountResult::new(value, symmetry_factor(&profile, c), warnings, "free cusp recursion"))
}

/// `[A2L T1 .. T1] . c`: the cusp lies on the line.
pub fn eval_a2l_t1s(session: &mut Session, n: usize, c: &RingElem) -> Result<BigInt> {
    session.eval(Base::A2L, &vec![1; n], c)
}

/// `[A2F] . (y1 + b1) . c` with the factor distributed over `c` first.
pub fn a2l_distributed(session: &mut Session, c: &RingElem) -> Result<BigInt> {
    let sig = session.sig(Base::A2F, 0);
    c.check(&sig)?;
    let y1c = RingElem::y1(&sig).mul(c, &sig)?;
    let b1c = RingElem::b(&sig, 1)?.mul(c, &sig)?;
    Ok(session.eval(Base::A2F, &[], &y1c)? + session.eval(Base::A2F, &[], &b1c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::ring::{delta, SpaceSig};
    use crate::tangency::Constraint;

    fn c1(d: u32, r: u32, s: u32, nu: u32, eps: &[u32]) -> RingElem {
        let sig = SpaceSig::new(d, 1, eps.len()).unwrap();
        Constraint::new(r, s, vec![nu], eps.to_vec()).to_elem(&sig).unwrap()
    }

    #[test]
    fn rational_cuspidal_cubics_tangent_to_a_line() {
        let mut s = Session::new(3).unwrap();
        assert_eq!(eval_a2f_t1s(&mut s, 1, &c1(3, 2, 6, 0, &[0])).unwrap().ordered_value, 60.into());
    }

    #[test]
    fn cuspidal_severi_degree() {
        for d in 3..=8u32 {
            let mut s = Session::new(d).unwrap();
            let v = eval_a2f_t1s(&mut s, 0, &c1(d, 2, delta(d) - 2, 0, &[])).unwrap().ordered_value;
            assert_eq!(v, (12 * (d - 1) * (d - 2)).into());
        }
        assert_eq!(class_a2f(2).coeff(&Monomial { y1: 0, yd: 2, b: vec![2], a: vec![] }), 0.into());
    }

    #[test]
    fn cusp_on_line_two_ways() {
        let mut s = Session::new(3).unwrap();
        for c in [c1(3, 1, 7, 0, &[]), c1(3, 2, 6, 0, &[]), c1(3, 0, 6, 2, &[]), c1(3, 2, 5, 1, &[])] {
            assert_eq!(eval_a2l_t1s(&mut s, 0, &c).unwrap(), a2l_distributed(&mut s, &c).unwrap());
        }
        assert_eq!(eval_a2l_t1s(&mut s, 0, &c1(3, 1, 7, 0, &[])).unwrap(), 24.into());
    }

    #[test]
    fn wrong_degree_and_higher_order() {
        let mut s = Session::new(5).unwrap();
        assert_eq!(eval_a2f_t1s(&mut s, 1, &c1(5, 2, 3, 0, &[0])).unwrap().ordered_value, 0.into());
        let c = c1(5, 2, delta(5) - 5, 0, &[0]);
        assert!(matches!(s.eval(Base::A2F, &[2], &c), Err(Error::Unsupported(_))));
    }
}
