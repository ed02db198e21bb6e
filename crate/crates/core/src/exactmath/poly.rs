//! Sparse multivariate polynomials over a [`Field`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};
use crate::error::Error;

/// Ordered variable names shared between polynomials of one ring.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect()
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u128 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u128 * w as u128)
            .sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, Error> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller checks [`Monomial::divides`].
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical sparse polynomial: no stored zero coefficients, every
/// coefficient tagged with the polynomial's field.
#[derive(Clone, Debug)]
pub struct Poly {
    field: Field,
    vars: Vars,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(field: Field, vars: Vars) -> Self {
        Poly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, vars: Vars, c: Scalar) -> Result<Self, Error> {
        let n = vars.len();
        Poly::from_terms(field, vars, [(vec![0; n], c)])
    }

    pub fn one(field: Field, vars: Vars) -> Self {
        let n = vars.len();
        let mut p = Poly::zero(field, vars);
        p.terms.insert(Monomial::one(n), Scalar::one(field));
        p
    }

    /// The variable with index `idx`.
    pub fn var(field: Field, vars: Vars, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Poly::zero(field, vars);
        p.terms.insert(Monomial(e), Scalar::one(field));
        p
    }

    pub fn var_named(field: Field, vars: Vars, name: &str) -> Result<Self, Error> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| crate::error::invalid(alloc::format!("unknown variable {name}")))?;
        Ok(Poly::var(field, vars, idx))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed and zeros dropped.
    pub fn from_terms<I>(field: Field, vars: Vars, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Poly::zero(field, vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::VariableMismatch);
            }
            let c = c.embed(field)?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Dense ascending integer coefficients in a single variable.
    pub fn univariate(field: Field, var: &str, coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (vec![i as u32], Scalar::from_int(field, c)));
        Poly::from_terms(field, vars(&[var]), terms).expect("coefficients live in `field`")
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.nvars()])
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    /// Re-tags all coefficients into a larger field.
    pub fn embed(&self, field: Field) -> Result<Poly, Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.embed(field)?)))
            .collect::<Result<_, Error>>()?;
        Ok(Poly {
            field,
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Moves the polynomial into a ring whose variable list contains all of
    /// ours (matched by name).
    pub fn remap(&self, target: &Vars) -> Result<Poly, Error> {
        let map = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::VariableMismatch)?;
        let mut p = Poly::zero(self.field, target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        Ok(p)
    }

    fn check_ring(&self, other: &Poly) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, Error> {
        self.check_ring(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, Error> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, Error> {
        self.check_ring(other)?;
        let mut p = Poly::zero(self.field, self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Poly, Error> {
        let c = c.embed(self.field)?;
        let mut p = Poly::zero(self.field, self.vars.clone());
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x * &c);
        }
        Ok(p)
    }

    pub fn pow(&self, mut e: u32) -> Result<Poly, Error> {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field, self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Quotient `q` with `self = q · divisor`, or [`Error::InexactDivision`].
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, Error> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.field, self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::InexactDivision);
            }
            let mut t = Poly::zero(self.field, self.vars.clone());
            t.add_term(lm.quotient_of(m), c * &lc_inv);
            rem = rem.try_sub(&t.try_mul(divisor)?)?;
            q = q.try_add(&t)?;
        }
        Ok(q)
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Poly {
        let mut p = Poly::zero(self.field, self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[idx] -= 1;
            p.add_term(Monomial(m2), c * &Scalar::from_int(self.field, e));
        }
        p
    }

    /// Substitutes `images[j]` for variable `j`. All images share one ring,
    /// which becomes the ring of the result.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, Error> {
        if images.len() != self.nvars() {
            return Err(Error::VariableMismatch);
        }
        let (field, target) = match images.first() {
            Some(img) => (img.field, img.vars.clone()),
            None => (self.field, self.vars.clone()),
        };
        for img in images {
            if img.vars != target || img.field != field {
                return Err(Error::VariableMismatch);
            }
        }
        self.field.join(field)?;
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|img| vec![Poly::one(field, target.clone()), img.clone()])
            .collect();
        let mut out = Poly::zero(field, target.clone());
        for (m, c) in &self.terms {
            let mut term = Poly::constant(field, target.clone(), c.clone())?;
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().try_mul(&images[j])?;
                    cache.push(next);
                }
                term = term.try_mul(&cache[e as usize])?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, Error> {
        if point.len() != self.nvars() {
            return Err(Error::VariableMismatch);
        }
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t = t.try_mul(&x.pow(e))?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Splits into weighted-homogeneous pieces keyed by weighted degree.
    pub fn homogeneous_components(&self, weights: &[u64]) -> BTreeMap<u128, Poly> {
        let mut out: BTreeMap<u128, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| Poly::zero(self.field, self.vars.clone()))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Dense ascending coefficients of a univariate polynomial.
    pub fn to_dense(&self) -> Result<Vec<Scalar>, Error> {
        if self.nvars() != 1 {
            return Err(Error::NotUnivariate(self.nvars()));
        }
        let deg = self.total_degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![Scalar::zero(self.field); deg];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(field: Field, vars: Vars, coeffs: &[Scalar]) -> Result<Self, Error> {
        if vars.len() != 1 {
            return Err(Error::NotUnivariate(vars.len()));
        }
        Poly::from_terms(
            field,
            vars,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on a ring mismatch or exponent overflow; use the
            /// `try_` method for fallible arithmetic.
            fn $m(self, rhs: &Poly) -> Poly {
                self.$f(rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn fmt_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(&m.0) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(alloc::format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Terms in descending graded-lex order, e.g. `s^10 - 11*s^5 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.prints_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            let mono = fmt_monomial(&self.vars, m);
            if abs.is_one() {
                f.write_str(&mono)?;
            } else if abs.is_compound() {
                write!(f, "({abs})*{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
