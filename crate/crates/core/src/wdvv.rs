//! Rational plane curves: Kontsevich's numbers `n_d` and the count of
//! rational curves tangent to a fixed line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{input, Result};

/// `binom(n, k)`, zero outside `0 <= k <= n`.
fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Memo of `n_d` and `N_d^T1`.
#[derive(Debug, Default, Clone)]
pub struct GWTable {
    pub nd: BTreeMap<u32, BigInt>,
    pub nd_t1: BTreeMap<u32, BigInt>,
}

impl GWTable {
    pub fn new() -> Self {
        GWTable::default()
    }

    /// Rational degree `d` curves through `3d - 1` points.
    pub fn kontsevich_nd(&mut self, d: u32) -> Result<BigInt> {
        if d == 0 {
            return input("degree must be positive");
        }
        for e in 1..=d {
            if self.nd.contains_key(&e) {
                continue;
            }
            let v = if e == 1 {
                BigInt::one()
            } else {
                let d = e as i64;
                let mut s = BigInt::zero();
                for d1 in 1..d {
                    let d2 = d - d1;
                    let w = BigInt::from(d1 * d1 * d2 * d2) * choose(3 * d - 4, 3 * d1 - 2)
                        - BigInt::from(d1 * d1 * d1 * d2) * choose(3 * d - 4, 3 * d1 - 1);
                    s += w * &self.nd[&(d1 as u32)] * &self.nd[&(d2 as u32)];
                }
                s
            };
            self.nd.insert(e, v);
        }
        Ok(self.nd[&d].clone())
    }

    /// Rational degree `d` curves through `3d - 2` points tangent to a fixed line.
    pub fn nd_t1(&mut self, d: u32) -> Result<BigInt> {
        if let Some(v) = self.nd_t1.get(&d) {
            return Ok(v.clone());
        }
        self.kontsevich_nd(d)?;
        let dd = d as i64;
        let mut s = BigInt::zero();
        for d1 in 1..dd {
            let d2 = dd - d1;
            let w = choose(3 * dd - 4, 3 * d1 - 2) * (d1 * d2) - choose(3 * dd - 4, 3 * d1 - 1) * (d1 * (d1 - 1));
            s += w * &self.nd[&(d1 as u32)] * &self.nd[&(d2 as u32)] * (d1 * d2);
        }
        self.nd_t1.insert(d, s.clone());
        Ok(s)
    }
}

pub fn kontsevich_nd(d: u32) -> Result<BigInt> {
    GWTable::new().kontsevich_nd(d)
}

pub fn nd_t1(d: u32) -> Result<BigInt> {
    GWTable::new().nd_t1(d)
}
