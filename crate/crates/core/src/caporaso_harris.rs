//! Caporaso–Harris recursion for Severi degrees with contact conditions
//! along a line. Used as an independent check on the intersection recursions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{input, Result};

/// Finitely supported sequence indexed by contact order; `entries[0]` is
/// contact order 1. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultSeq {
    entries: Vec<u32>,
}

impl MultSeq {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        MultSeq { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Multiplicity at contact order `k >= 1`.
    pub fn at(&self, k: usize) -> u32 {
        self.entries.get(k - 1).copied().unwrap_or(0)
    }

    /// `I(seq) = sum k seq_k`.
    pub fn weight(&self) -> u32 {
        self.entries.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum()
    }

    /// `|seq| = sum seq_k`.
    pub fn card(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn le(&self, other: &MultSeq) -> bool {
        (1..=self.entries.len()).all(|k| self.at(k) <= other.at(k))
    }

    fn bumped(&self, k: usize, delta: i32) -> MultSeq {
        let mut e = self.entries.clone();
        if e.len() < k {
            e.resize(k, 0);
        }
        e[k - 1] = (e[k - 1] as i32 + delta) as u32;
        MultSeq::new(e)
    }
}

impl fmt::Display for MultSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CHKey {
    pub d: u32,
    pub delta: u32,
    pub alpha: MultSeq,
    pub beta: MultSeq,
}

impl CHKey {
    pub fn new(d: u32, delta: u32, alpha: Vec<u32>, beta: Vec<u32>) -> Self {
        CHKey { d, delta, alpha: MultSeq::new(alpha), beta: MultSeq::new(beta) }
    }

    pub fn consistent(&self) -> bool {
        self.alpha.weight() + self.beta.weight() == self.d
    }

    /// Number of generic points in the plane, `2d + g - 1 + |beta|`; may be negative.
    pub fn point_count(&self) -> i64 {
        let d = self.d as i64;
        let g = (d - 1) * (d - 2) / 2 - self.delta as i64;
        2 * d + g - 1 + self.beta.card() as i64
    }

    /// Reasons the key gives zero by convention rather than by recursion.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.consistent() {
            w.push(format!(
                "I(alpha) + I(beta) = {} does not equal d = {}; the invariant is 0",
                self.alpha.weight() + self.beta.weight(),
                self.d
            ));
        }
        if self.point_count() < 0 {
            w.push("negative number of point conditions; the invariant is 0".into());
        }
        w
    }
}

impl fmt::Display for CHKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N^{{{},{}}}({}, {})", self.d, self.delta, self.alpha, self.beta)
    }
}

/// Memoizing evaluator.
#[derive(Debug, Default)]
pub struct ChOracle {
    memo: HashMap<CHKey, BigInt>,
}

impl ChOracle {
    pub fn new() -> Self {
        ChOracle::default()
    }

    pub fn invariant(&mut self, key: &CHKey) -> BigInt {
        if let Some(v) = self.memo.get(key) {
            return v.clone();
        }
        let v = recurse(key, &mut |k| self.invariant(k));
        self.memo.insert(key.clone(), v.clone());
        v
    }
}

/// `N^{d,delta}(alpha, beta)`, fresh memo.
pub fn ch_invariant(key: &CHKey) -> BigInt {
    ChOracle::new().invariant(key)
}

/// Same recursion with no memo at all.
pub fn ch_invariant_uncached(key: &CHKey) -> BigInt {
    recurse(key, &mut ch_invariant_uncached)
}

fn recurse(key: &CHKey, sub: &mut dyn FnMut(&CHKey) -> BigInt) -> BigInt {
    if !key.consistent() {
        return BigInt::zero();
    }
    if key.d == 1 {
        return if key.delta == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if key.point_count() < 0 {
        return BigInt::zero();
    }
    let (d, delta) = (key.d, key.delta);
    let mut total = BigInt::zero();

    // One moving contact point becomes fixed.
    for k in 1..=key.beta.entries().len() {
        if key.beta.at(k) > 0 {
            let next = CHKey { d, delta, alpha: key.alpha.bumped(k, 1), beta: key.beta.bumped(k, -1) };
            total += BigInt::from(k) * sub(&next);
        }
    }

    // The line splits off.
    for alpha2 in sub_sequences(&key.alpha) {
        let rest = match (d - 1).checked_sub(alpha2.weight() + key.beta.weight()) {
            Some(r) => r,
            None => continue,
        };
        for gamma in partitions(rest) {
            let gain = gamma.card();
            // delta' = delta - (d - 1) + |gamma|
            let Some(delta2) = (delta + gain).checked_sub(d - 1) else { continue };
            if delta2 > delta {
                continue;
            }
            let beta2 = MultSeq::new(add(key.beta.entries(), gamma.entries()));
            let mut factor = BigInt::one();
            for k in 1..=gamma.entries().len().max(1) {
                factor *= BigInt::from(k).pow(gamma.at(k));
            }
            for k in 1..=key.alpha.entries().len() {
                factor *= binomial(BigInt::from(key.alpha.at(k)), BigInt::from(alpha2.at(k)));
            }
            for k in 1..=beta2.entries().len() {
                factor *= binomial(BigInt::from(beta2.at(k)), BigInt::from(key.beta.at(k)));
            }
            let next = CHKey { d: d - 1, delta: delta2, alpha: alpha2.clone(), beta: beta2 };
            total += factor * sub(&next);
        }
    }
    total
}

fn add(x: &[u32], y: &[u32]) -> Vec<u32> {
    let n = x.len().max(y.len());
    (0..n).map(|i| x.get(i).copied().unwrap_or(0) + y.get(i).copied().unwrap_or(0)).collect()
}

/// All `alpha' <= alpha`.
fn sub_sequences(alpha: &MultSeq) -> Vec<MultSeq> {
    let mut out = vec![Vec::new()];
    for &x in alpha.entries() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=x).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(MultSeq::new).collect()
}

/// All sequences of weight exactly `w`.
fn partitions(w: u32) -> Vec<MultSeq> {
    fn go(w: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<MultSeq>) {
        if w == 0 {
            out.push(MultSeq::new(cur.clone()));
            return;
        }
        if k > w {
            return;
        }
        for c in 0..=w / k {
            cur.push(c);
            go(w - c * k, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, 1, &mut Vec::new(), &mut out);
    out
}

/// Result of translating a tangency profile into contact data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileKey {
    pub key: CHKey,
    /// Set when a point is fixed away from the line; the invariant is then zero.
    pub flagged_zero: bool,
}

/// Slot `k_i` with `eps_i = 0` adds a moving contact of order `k_i + 1`,
/// with `eps_i = 1` a fixed one. Leftover intersections are moving
/// transverse points.
pub fn ch_from_profile(d: u32, profile: &[u32], eps: &[u32], delta: u32) -> Result<ProfileKey> {
    if eps.len() != profile.len() {
        return input("eps must have one entry per profile slot");
    }
    let used: u32 = profile.iter().map(|k| k + 1).sum();
    if used > d {
        return input(format!("contact total {used} exceeds degree {d}"));
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut flagged = false;
    for (&k, &e) in profile.iter().zip(eps) {
        let target = match e {
            0 => &mut beta,
            1 => &mut alpha,
            2 => {
                flagged = true;
                continue;
            }
            _ => return input(format!("eps entries must be 0, 1 or 2, got {e}")),
        };
        let idx = k as usize;
        if target.len() <= idx {
            target.resize(idx + 1, 0);
        }
        target[idx] += 1;
    }
    if beta.is_empty() {
        beta.push(0);
    }
    beta[0] += d - used;
    Ok(ProfileKey { key: CHKey::new(d, delta, alpha, beta), flagged_zero: flagged })
}

/// Factor relating an ordered count on labelled slots to the invariant of
/// [`ch_from_profile`]: `m!` for each group of `m` moving slots of the same
/// order `k >= 1`, and `b!/(b-t)!` for `t` moving transverse slots among the
/// `b` moving transverse points. Fixed slots are distinct points.
pub fn ordered_multiplier(profile: &[u32], eps: &[u32], key: &CHKey) -> BigInt {
    let mut groups: HashMap<u32, u32> = HashMap::new();
    for (&k, &e) in profile.iter().zip(eps) {
        if e == 0 {
            *groups.entry(k).or_default() += 1;
        }
    }
    let mut f = BigInt::one();
    for (&k, &m) in &groups {
        if k == 0 {
            let b = key.beta.at(1);
            for i in 0..m {
                f *= BigInt::from(b - i);
            }
        } else {
            for i in 1..=m {
                f *= BigInt::from(i);
            }
        }
    }
    f
}
