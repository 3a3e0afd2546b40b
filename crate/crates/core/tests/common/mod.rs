//! Strategies and property checks shared by the property suite and the
//! acceptance harness.
#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use curvecount::expr::{parse, Atom, ClassExpr, Factor, Var};
use curvecount::ring::{integrate, pushforward_last_a};
use curvecount::{delta, Base, Monomial, RingElem, Session, SpaceSig};

pub fn sig_strategy() -> impl Strategy<Value = SpaceSig> {
    (2u32..=5, 0usize..=2, 0usize..=3).prop_map(|(d, m, n)| SpaceSig::new(d, m, n).unwrap())
}

fn mono_strategy(sig: SpaceSig) -> impl Strategy<Value = Monomial> {
    (0u32..=2, 0u32..=sig.delta(), prop::collection::vec(0u32..=2, sig.m), prop::collection::vec(0u32..=2, sig.n))
        .prop_map(|(y1, yd, b, a)| Monomial { y1, yd, b, a })
}

pub fn elem_strategy(sig: SpaceSig) -> impl Strategy<Value = RingElem> {
    prop::collection::vec((mono_strategy(sig), -6i64..=6), 0..5).prop_map(|terms| {
        let mut e = RingElem::zero();
        for (m, c) in terms {
            e.add_term(m, BigInt::from(c));
        }
        e
    })
}

/// A space with at least one point on the line and three elements on it,
/// plus one element on the space with that point forgotten.
pub fn ring_case() -> impl Strategy<Value = (SpaceSig, RingElem, RingElem, RingElem, RingElem)> {
    sig_strategy().prop_map(|s| if s.n == 0 { s.with_n(1) } else { s }).prop_flat_map(|sig| {
        (Just(sig), elem_strategy(sig), elem_strategy(sig), elem_strategy(sig), elem_strategy(sig.with_n(sig.n - 1)))
    })
}

pub fn check_ring((sig, x, y, z, w): (SpaceSig, RingElem, RingElem, RingElem, RingElem)) -> Result<(), TestCaseError> {
    let m = |a: &RingElem, b: &RingElem| a.mul(b, &sig).unwrap();
    prop_assert_eq!(m(&x, &y), m(&y, &x));
    prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
    prop_assert_eq!(m(&x, &y.add(&z)), m(&x, &y).add(&m(&x, &z)));
    prop_assert_eq!(m(&x, &RingElem::one(&sig)), x.clone());
    prop_assert_eq!(x.sub(&x), RingElem::zero());
    prop_assert_eq!(integrate(&x.add(&y), &sig), integrate(&x, &sig) + integrate(&y, &sig));
    // projection formula: push(x * lift(w)) = push(x) * w
    let low = sig.with_n(sig.n - 1);
    let lhs = pushforward_last_a(&m(&x, &w.lift_a()), &sig).unwrap();
    let rhs = pushforward_last_a(&x, &sig).unwrap().mul(&w, &low).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Tangency query: base, profile and a constraint monomial of the right degree.
#[derive(Clone, Debug)]
pub struct Query {
    pub d: u32,
    pub base: Base,
    pub profile: Vec<u32>,
    pub mono: Monomial,
}

fn expected_degree(d: u32, base: Base, profile: &[u32]) -> u32 {
    let sig = SpaceSig::new(d, base.m(), profile.len()).unwrap();
    sig.dim() - base.codim() - profile.iter().map(|k| k + 2).sum::<u32>()
}

fn query_with_offset(offset: i64) -> impl Strategy<Value = Query> {
    (
        3u32..=6,
        prop::bool::ANY,
        prop::collection::vec(0u32..=2, 1..=3),
        0u32..=2,
        0u32..=2,
        prop::collection::vec(0u32..=2, 3),
    )
        .prop_filter_map("constraint degree out of range", move |(d, nodal, profile, r, nu, eps)| {
            let base = if nodal { Base::A1F } else { Base::Smooth };
            let n = profile.len();
            let eps = eps[..n].to_vec();
            let b = if nodal { vec![nu] } else { vec![] };
            let deg = expected_degree(d, base, &profile) as i64 + offset;
            let s = deg - r as i64 - b.iter().sum::<u32>() as i64 - eps.iter().sum::<u32>() as i64;
            if s < 0 || s > delta(d) as i64 {
                return None;
            }
            Some(Query { d, base, profile, mono: Monomial { y1: r, yd: s as u32, b, a: eps } })
        })
}

pub fn query_strategy() -> impl Strategy<Value = Query> {
    query_with_offset(0)
}

/// Same base and profile with two constraints and a scalar.
pub fn linear_case() -> impl Strategy<Value = (Query, Monomial, i64)> {
    query_strategy().prop_flat_map(|q| {
        let d = q.d;
        let (base, profile) = (q.base, q.profile.clone());
        let other = query_strategy().prop_filter_map("different shape", move |q2| {
            (q2.d == d && q2.base == base && q2.profile == profile).then_some(q2.mono)
        });
        (Just(q), other, -4i64..=4)
    })
}

pub fn check_linear((q, m2, lambda): (Query, Monomial, i64)) -> Result<(), TestCaseError> {
    let mut s = Session::new(q.d).unwrap();
    let c1 = RingElem::from_monomial(q.mono.clone());
    let c2 = RingElem::from_monomial(m2);
    let l = BigInt::from(lambda);
    let lhs = s.eval(q.base, &q.profile, &c1.add(&c2.scale(&l))).unwrap();
    let rhs = s.eval(q.base, &q.profile, &c1).unwrap() + l * s.eval(q.base, &q.profile, &c2).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn permutation_case() -> impl Strategy<Value = (Query, Vec<usize>)> {
    query_strategy().prop_flat_map(|q| {
        let idx: Vec<usize> = (0..q.profile.len()).collect();
        (Just(q), Just(idx).prop_shuffle())
    })
}

pub fn check_permutation((q, perm): (Query, Vec<usize>)) -> Result<(), TestCaseError> {
    let profile2: Vec<u32> = perm.iter().map(|&i| q.profile[i]).collect();
    let mut mono2 = q.mono.clone();
    mono2.a = perm.iter().map(|&i| q.mono.a[i]).collect();
    let mut s1 = Session::without_reordering(q.d).unwrap();
    let mut s2 = Session::without_reordering(q.d).unwrap();
    let v1 = s1.eval(q.base, &q.profile, &RingElem::from_monomial(q.mono.clone())).unwrap();
    let v2 = s2.eval(q.base, &profile2, &RingElem::from_monomial(mono2)).unwrap();
    prop_assert_eq!(v1, v2);
    Ok(())
}

pub fn mismatch_strategy() -> impl Strategy<Value = Query> {
    prop_oneof![query_with_offset(-2), query_with_offset(-1), query_with_offset(1), query_with_offset(3)]
}

pub fn check_mismatch(q: Query) -> Result<(), TestCaseError> {
    let mut s = Session::new(q.d).unwrap();
    let v = s.eval(q.base, &q.profile, &RingElem::from_monomial(q.mono)).unwrap();
    prop_assert_eq!(v, BigInt::from(0));
    Ok(())
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (0u32..=12).prop_map(Atom::T),
        Just(Atom::A1F),
        Just(Atom::A1L),
        (0u32..=9).prop_map(Atom::PA1),
        Just(Atom::A2F),
        Just(Atom::A2L),
        Just(Atom::A1A1),
        Just(Atom::PA3),
        Just(Atom::A3F),
    ]
}

fn factor_strategy() -> impl Strategy<Value = Factor> {
    let var = prop_oneof![Just(Var::Y1), Just(Var::Yd), (1usize..=4).prop_map(Var::B), (1usize..=6).prop_map(Var::A),];
    (var, 1u32..=60).prop_map(|(var, exp)| Factor { var, exp })
}

pub fn expr_strategy() -> impl Strategy<Value = ClassExpr> {
    (prop::collection::vec(atom_strategy(), 1..=5), prop::collection::vec(factor_strategy(), 0..=5))
        .prop_map(|(atoms, factors)| ClassExpr { atoms, factors })
}

pub fn check_round_trip(e: ClassExpr) -> Result<(), TestCaseError> {
    let printed = e.to_string();
    let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
    prop_assert_eq!(&back, &e);
    // the dot separator and squeezed spacing parse to the same tree
    let dotted = printed.replace(" * ", ".").replace(' ', "  ");
    prop_assert_eq!(parse(&dotted).unwrap(), e);
    Ok(())
}
