//! Euclidean gcd of univariate polynomials over `ℚ` or `ℚ(√n)`.

use alloc::vec::Vec;

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::Error;

fn trim(v: &mut Vec<Scalar>) {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
}

/// Remainder of dense `a` by dense nonzero `b` (both trimmed).
fn rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("trimmed");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = a.last().unwrap() * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = &a[shift + i] - &(&q * c);
        }
        // the leading coefficient cancels exactly
        a.pop();
        trim(&mut a);
    }
    a
}

fn make_monic(v: Vec<Scalar>) -> Vec<Scalar> {
    match v.last() {
        None => v,
        Some(l) => {
            let inv = l.inv().expect("trimmed");
            v.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Monic gcd of two univariate polynomials in the same variable and field.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly, Error> {
    if a.nvars() != 1 {
        return Err(Error::NotUnivariate(a.nvars()));
    }
    if b.nvars() != 1 {
        return Err(Error::NotUnivariate(b.nvars()));
    }
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch);
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(
            alloc::string::ToString::to_string(&a.field()),
            alloc::string::ToString::to_string(&b.field()),
        ));
    }
    let mut x = a.to_dense()?;
    let mut y = b.to_dense()?;
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(x, &y);
        x = y;
        y = r;
    }
    Poly::from_dense(a.field(), a.vars().clone(), &make_monic(x))
}

/// `true` when the gcd is a nonzero constant.
pub fn coprime(a: &Poly, b: &Poly) -> Result<bool, Error> {
    let g = poly_gcd(a, b)?;
    Ok(!g.is_zero() && g.is_constant())
}
