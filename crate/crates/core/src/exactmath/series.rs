//! Truncated power-series coefficients of `Π(1 − t^{d_i}) / Π(1 − t^{w_j})`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{invalid, Error};

/// Numerator exponents `d_i`, denominator exponents `w_j` and truncation
/// order `N` (coefficients `c_0..=c_N` are produced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    numerator: Vec<u64>,
    denominator: Vec<u64>,
    order: usize,
}

impl SeriesSpec {
    pub fn new(numerator: Vec<u64>, denominator: Vec<u64>, order: usize) -> Result<Self, Error> {
        if numerator.iter().chain(&denominator).any(|&e| e == 0) {
            return Err(invalid("series exponents must be positive"));
        }
        Ok(SeriesSpec {
            numerator,
            denominator,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Exact coefficients `c_0..=c_N`.
///
/// The numerator is expanded first, then each geometric factor
/// `1/(1 − t^w)` is applied as the in-place recurrence `c_k += c_{k−w}`,
/// which is multiplication by `Σ t^{kw}` truncated at `N`. A negative
/// result means the degrees do not cut out a complete intersection.
pub fn series_coeffs(spec: &SeriesSpec) -> Result<Vec<BigUint>, Error> {
    let n = spec.order;
    let mut c = vec![BigInt::from(0); n + 1];
    c[0] = BigInt::from(1);
    for &d in &spec.numerator {
        let d = d as usize;
        if d > n {
            continue;
        }
        for k in (d..=n).rev() {
            let prev = c[k - d].clone();
            c[k] -= prev;
        }
    }
    for &w in &spec.denominator {
        let w = w as usize;
        if w > n {
            continue;
        }
        for k in w..=n {
            let prev = c[k - w].clone();
            c[k] += prev;
        }
    }
    c.into_iter()
        .enumerate()
        .map(|(k, x)| {
            if x.is_negative() {
                Err(Error::NotRegular(k as u64))
            } else {
                Ok(x.magnitude().clone())
            }
        })
        .collect()
}
