//! Two-nodal and tacnodal curves.
//!
//! Both classes come from the space of two nodes on the line. That space is
//! reached from "node on the line + tangency point" by asking the curve to be
//! singular at the tangency point too, then removing the component where the
//! tangency point has run into the node.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::engine::{Base, Session};
use crate::error::{input, Error, Result};
use crate::ring::{delta, Monomial, RingElem, SpaceSig};

/// Order of the node-on-the-line class subtracted when the two points collide.
pub const COLLISION_LADDER_ORDER: u32 = 2;

/// Coefficients keyed by exponent pattern: `(i, j)` for `yd^i b1^j`, or
/// `(i, j, k)` for `yd^i b1^j b2^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoeffTable {
    pub entries: BTreeMap<Vec<u32>, BigInt>,
}

impl CoeffTable {
    pub fn get(&self, key: &[u32]) -> BigInt {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Keys whose values differ between the two tables.
    pub fn mismatches(&self, other: &CoeffTable) -> Vec<Vec<u32>> {
        let mut keys: Vec<&Vec<u32>> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().filter(|k| self.get(k) != other.get(k)).cloned().collect()
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            let idx: Vec<String> = k.iter().map(u32::to_string).collect();
            writeln!(f, "C{} = {}", idx.join(""), v)?;
        }
        Ok(())
    }
}

/// Moves `b2` of `M_0^2` to the tangency slot `a1` of `M_1^1`.
pub fn b2_to_a1(e: &RingElem) -> RingElem {
    e.map_monomials(|m| Some(Monomial { y1: m.y1, yd: m.yd, b: vec![m.b[0]], a: vec![m.b[1]] }))
}

/// Inverse of [`b2_to_a1`].
pub fn a1_to_b2(e: &RingElem) -> RingElem {
    e.map_monomials(|m| Some(Monomial { y1: m.y1, yd: m.yd, b: vec![m.b[0], m.a[0]], a: vec![] }))
}

fn sig2(d: u32) -> SpaceSig {
    SpaceSig { d, m: 2, n: 0 }
}

fn check_two_points(c: &RingElem, d: u32) -> Result<()> {
    if c.terms().any(|(m, _)| !m.a.is_empty()) {
        return input("two-node constraints cannot involve tangency points");
    }
    c.check(&sig2(d))
}

/// `[A1L A1L] . c` for `c` on `M_0^2`: both nodes on the line.
pub fn eval_a1la1l(session: &mut Session, c: &RingElem) -> Result<BigInt> {
    eval_a1la1l_with(session, c, Some(COLLISION_LADDER_ORDER))
}

/// Same as [`eval_a1la1l`] with the collision correction taken from a
/// chosen ladder step (`None` drops it).
pub fn eval_a1la1l_with(session: &mut Session, c: &RingElem, ladder: Option<u32>) -> Result<BigInt> {
    let d = session.d();
    check_two_points(c, d)?;
    let s11 = SpaceSig { d, m: 1, n: 1 };
    let normal = RingElem::yd(&s11).sub(&RingElem::y1(&s11)).add(&RingElem::a(&s11, 1)?.scale(&BigInt::from(d - 1)));
    let moved = normal.mul_unchecked(&b2_to_a1(c), &s11);
    let mut total = session.eval(Base::PA1(0), &[1], &moved)?;
    if let Some(r) = ladder {
        let collided = c.map_monomials(|m| {
            let e = m.b[0] + m.b[1];
            (e <= 2).then(|| Monomial { y1: m.y1, yd: m.yd, b: vec![e], a: vec![] })
        });
        total -= session.eval(Base::PA1(r), &[], &collided)?;
    }
    Ok(total)
}

fn yd_b(yd: u32, b: &[u32]) -> RingElem {
    RingElem::from_monomial(Monomial { y1: 0, yd, b: b.to_vec(), a: vec![] })
}

const BINODAL_KEYS: [[u32; 3]; 9] =
    [[2, 2, 2], [3, 1, 2], [3, 2, 1], [4, 2, 0], [4, 1, 1], [4, 0, 2], [5, 1, 0], [5, 0, 1], [6, 0, 0]];

/// Coefficients `C_ijk` of the two-node class `sum C_ijk yd^i b1^j b2^k`.
pub fn coeff_table_a1fa1f(session: &mut Session) -> Result<CoeffTable> {
    let d = session.d();
    if d < 4 {
        return input("the two-node class is computed for d >= 4");
    }
    let dl = delta(d);
    let mut t = CoeffTable::default();
    for [i, j, k] in BINODAL_KEYS {
        let v = eval_a1la1l(session, &yd_b(dl - i, &[2 - j, 2 - k]))?;
        t.entries.insert(vec![i, j, k], v);
    }
    Ok(t)
}

/// The published closed form of the two-node class, evaluated at `d`.
pub fn closed_form_a1fa1f(d: u32) -> CoeffTable {
    let x = BigInt::from(d);
    let p = |cs: &[i64]| cs.iter().fold(BigInt::zero(), |acc, &c| acc * &x + c);
    let c222 = p(&[9, -36, 12, 81, -66]);
    let c312 = p(&[9, -27, -1, -30]);
    let c420 = p(&[3, -6, -4]);
    let c411 = p(&[9, -18, 2]);
    let c510 = p(&[3, -3]);
    let vals = [&c222, &c312, &c312, &c420, &c411, &c420, &c510, &c510];
    let mut t = CoeffTable::default();
    for (key, v) in BINODAL_KEYS.iter().zip(vals) {
        t.entries.insert(key.to_vec(), v.clone());
    }
    t.entries.insert(vec![6, 0, 0], BigInt::from(1));
    t
}

/// Computes the two-node table and compares it with the closed form.
pub fn check_a1fa1f(session: &mut Session) -> Result<CoeffTable> {
    let t = coeff_table_a1fa1f(session)?;
    let bad = t.mismatches(&closed_form_a1fa1f(session.d()));
    if bad.is_empty() {
        Ok(t)
    } else {
        Err(Error::Inconsistent(format!("two-node class differs from the closed form at {bad:?}")))
    }
}

/// Two-node class on `M_0^2` assembled from [`coeff_table_a1fa1f`].
pub fn class_a1fa1f(session: &mut Session) -> Result<RingElem> {
    let t = coeff_table_a1fa1f(session)?;
    let mut out = RingElem::zero();
    for (k, v) in &t.entries {
        out = out.add(&yd_b(k[0], &k[1..]).scale(v));
    }
    Ok(out)
}

/// `[PA3] . c` for `c` on `M_0^1`: tacnode whose distinguished direction is the line.
pub fn eval_pa3(session: &mut Session, c: &RingElem) -> Result<BigInt> {
    let d = session.d();
    c.check(&SpaceSig { d, m: 1, n: 0 })?;
    let s2 = sig2(d);
    let lifted = c.map_monomials(|m| Some(Monomial { y1: m.y1, yd: m.yd, b: vec![m.b[0], 0], a: vec![] }));
    let cut = RingElem::b(&s2, 1)?.add(&RingElem::b(&s2, 2)?).sub(&RingElem::y1(&s2));
    eval_a1la1l(session, &cut.mul_unchecked(&lifted, &s2))
}

const TACNODE_KEYS: [[u32; 2]; 3] = [[3, 2], [4, 1], [5, 0]];

/// Coefficients `(C32, C41, C50)` of the tacnode class.
pub fn coeff_table_a3f(session: &mut Session) -> Result<CoeffTable> {
    let d = session.d();
    if d < 4 {
        return input("the tacnode class is computed for d >= 4");
    }
    let dl = delta(d);
    let mut t = CoeffTable::default();
    for [i, j] in TACNODE_KEYS {
        let v = eval_pa3(session, &yd_b(dl - i, &[2 - j]))?;
        t.entries.insert(vec![i, j], v);
    }
    Ok(t)
}

/// The published closed form of the tacnode class, evaluated at `d`.
pub fn closed_form_a3f(d: u32) -> CoeffTable {
    let x = BigInt::from(d);
    let mut t = CoeffTable::default();
    t.entries.insert(vec![3, 2], BigInt::from(50) * &x * &x - BigInt::from(192) * &x + 168);
    t.entries.insert(vec![4, 1], BigInt::from(25) * &x - 48);
    t.entries.insert(vec![5, 0], BigInt::from(5));
    t
}

pub fn check_a3f(session: &mut Session) -> Result<CoeffTable> {
    let t = coeff_table_a3f(session)?;
    let bad = t.mismatches(&closed_form_a3f(session.d()));
    if bad.is_empty() {
        Ok(t)
    } else {
        Err(Error::Inconsistent(format!("tacnode class differs from the closed form at {bad:?}")))
    }
}

/// Tacnode class on `M_0^1`.
pub fn class_a3f(session: &mut Session) -> Result<RingElem> {
    let t = coeff_table_a3f(session)?;
    let mut out = RingElem::zero();
    for (k, v) in &t.entries {
        out = out.add(&yd_b(k[0], &k[1..]).scale(v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rename_round_trip() {
        let s2 = sig2(4);
        let e = RingElem::b(&s2, 1).unwrap().add(&RingElem::b(&s2, 2).unwrap().scale(&3.into()));
        let e = e.mul(&RingElem::yd(&s2), &s2).unwrap();
        assert_eq!(a1_to_b2(&b2_to_a1(&e)), e);
        let moved = b2_to_a1(&e);
        assert!(moved.terms().all(|(m, _)| m.b.len() == 1 && m.a.len() == 1));
    }

    #[test]
    fn binodal_quartics() {
        let mut s = Session::new(4).unwrap();
        assert_eq!(eval_a1la1l(&mut s, &yd_b(12, &[0, 0])).unwrap(), 450.into());
    }

    #[test]
    fn lower_ladder_step_has_wrong_dimension() {
        let mut s = Session::new(4).unwrap();
        let c = yd_b(12, &[0, 0]);
        let bare = eval_a1la1l_with(&mut s, &c, None).unwrap();
        assert_eq!(eval_a1la1l_with(&mut s, &c, Some(1)).unwrap(), bare);
    }

    #[test]
    fn top_coefficient_is_one() {
        for d in 4..=7 {
            let mut s = Session::new(d).unwrap();
            assert_eq!(eval_a1la1l(&mut s, &yd_b(delta(d) - 6, &[2, 2])).unwrap(), 1.into());
        }
    }

    #[test]
    fn binodal_table_is_symmetric() {
        let mut s = Session::new(5).unwrap();
        let t = coeff_table_a1fa1f(&mut s).unwrap();
        assert_eq!(t.get(&[3, 1, 2]), t.get(&[3, 2, 1]));
        assert_eq!(t.get(&[4, 2, 0]), t.get(&[4, 0, 2]));
        assert_eq!(t.get(&[5, 1, 0]), t.get(&[5, 0, 1]));
    }

    #[test]
    fn tacnodal_quartics_and_quintics() {
        let mut s = Session::new(4).unwrap();
        let t = check_a3f(&mut s).unwrap();
        assert_eq!((t.get(&[3, 2]), t.get(&[4, 1]), t.get(&[5, 0])), (200.into(), 52.into(), 5.into()));
        let mut s = Session::new(5).unwrap();
        let t = check_a3f(&mut s).unwrap();
        assert_eq!((t.get(&[3, 2]), t.get(&[4, 1]), t.get(&[5, 0])), (458.into(), 77.into(), 5.into()));
    }

    #[test]
    fn a_variables_rejected() {
        let mut s = Session::new(4).unwrap();
        let c = RingElem::from_monomial(Monomial { y1: 0, yd: 12, b: vec![0, 0], a: vec![0] });
        assert!(eval_a1la1l(&mut s, &c).is_err());
        assert_eq!(eval_a1la1l(&mut s, &yd_b(11, &[0, 0])).unwrap(), 0.into());
    }
}
