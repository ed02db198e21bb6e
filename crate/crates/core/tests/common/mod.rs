#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use singclass_core::exactmath::{Field, Poly, Scalar, Vars};

pub fn scalar(field: Field, a: i64, b: i64) -> Scalar {
    let b = if field == Field::Rational { 0 } else { b };
    Scalar::new(field, BigRational::from_integer(BigInt::from(a)), BigRational::from_integer(BigInt::from(b))).unwrap()
}

/// Random polynomial with up to `max_terms` terms, exponents below `max_exp`.
pub fn poly(field: Field, vars: Vars, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..max_exp, n), -5i64..=5, -3i64..=3), 0..=max_terms).prop_map(
        move |terms| {
            Poly::from_terms(field, vars.clone(), terms.into_iter().map(|(e, a, b)| (e, scalar(field, a, b)))).unwrap()
        },
    )
}

/// Number of `a ∈ ℕ^n` with `Σ a_j w_j = nu`, by direct enumeration.
pub fn brute_count(weights: &[u64], nu: i64) -> u64 {
    if nu < 0 {
        return 0;
    }
    match weights.split_first() {
        None => u64::from(nu == 0),
        Some((&w, rest)) => (0..=nu / w as i64).map(|k| brute_count(rest, nu - k * w as i64)).sum(),
    }
}
