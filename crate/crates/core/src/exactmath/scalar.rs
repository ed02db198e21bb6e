//! Exact scalars: rationals and elements `a + b·√n` of a real quadratic field.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Coefficient field: `ℚ` or `ℚ(√n)` with `n > 1` square-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Quadratic(u64),
}

impl Field {
    pub fn quadratic(n: u64) -> Result<Field, Error> {
        if n < 2 || !is_squarefree(n) {
            return Err(Error::BadRadicand(n));
        }
        Ok(Field::Quadratic(n))
    }

    pub fn radicand(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(n) => Some(n),
        }
    }

    /// Smallest field containing both, if any.
    pub fn join(self, other: Field) -> Result<Field, Error> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(n), Field::Quadratic(m)) if n == m => Ok(self),
            _ => Err(Error::FieldMismatch(self.to_string(), other.to_string())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Quadratic(n) => write!(f, "Q(sqrt({n}))"),
        }
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut k: u64 = 2;
    while let Some(sq) = k.checked_mul(k) {
        if sq > n {
            break;
        }
        if n % sq == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// The value `a + b·√n`. Rationals are kept in lowest terms by
/// `BigRational`. Equality and hashing look at the value only, so a rational
/// scalar equals its image in any quadratic field.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    a: BigRational,
    b: BigRational,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        self.b.is_zero() || self.field == other.field
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar {
            field,
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one(field: Field) -> Self {
        Scalar::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: Field, a: BigRational) -> Self {
        Scalar {
            field,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(field: Field, a: impl Into<BigInt>) -> Self {
        Scalar::from_rational(field, BigRational::from_integer(a.into()))
    }

    pub fn new(field: Field, a: BigRational, b: BigRational) -> Result<Self, Error> {
        if !b.is_zero() && field == Field::Rational {
            return Err(Error::Invalid(
                "radical part requires a quadratic field".into(),
            ));
        }
        Ok(Scalar { field, a, b })
    }

    /// `c·√n` in `ℚ(√n)`.
    pub fn sqrt_times(field: Field, c: impl Into<BigInt>) -> Result<Self, Error> {
        Scalar::new(
            field,
            BigRational::zero(),
            BigRational::from_integer(c.into()),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Re-tag into a larger field.
    pub fn embed(&self, field: Field) -> Result<Self, Error> {
        let joined = self.field.join(field)?;
        if joined != field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                field.to_string(),
            ));
        }
        Ok(Scalar {
            field,
            a: self.a.clone(),
            b: self.b.clone(),
        })
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, Error> {
        let field = self.field.join(other.field)?;
        Ok(Scalar {
            field,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, Error> {
        let field = self.field.join(other.field)?;
        let (a, b) = match field {
            Field::Rational => (&self.a * &other.a, BigRational::zero()),
            Field::Quadratic(n) => {
                let n = BigRational::from_integer(BigInt::from(n));
                (
                    &self.a * &other.a + &self.b * &other.b * n,
                    &self.a * &other.b + &self.b * &other.a,
                )
            }
        };
        Ok(Scalar { field, a, b })
    }

    /// `a − b·√n`.
    pub fn conjugate(&self) -> Scalar {
        Scalar {
            field: self.field,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a² − n·b²`, nonzero for nonzero scalars since `n` is not a square.
    pub fn norm(&self) -> BigRational {
        match self.field {
            Field::Rational => &self.a * &self.a,
            Field::Quadratic(n) => {
                &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(n.into())
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.norm();
        let c = self.conjugate();
        Ok(Scalar {
            field: self.field,
            a: c.a / &norm,
            b: c.b / norm,
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether the textual form needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        (!self.a.is_zero() && !self.b.is_zero()) || (!self.a.is_integer() && self.b.is_zero())
    }

    /// Sign of the leading printed part, used for ` - ` rendering.
    pub(crate) fn prints_negative(&self) -> bool {
        if self.a.is_zero() {
            self.b.is_negative()
        } else {
            self.a.is_negative()
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different quadratic fields.
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Result<Scalar, Error> = $body;
                f(self, rhs).expect("scalar operands from different quadratic fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, |x, y| x.try_add(y));
forward_op!(Mul, mul, |x, y| x.try_mul(y));
forward_op!(Sub, sub, |x, y| x.try_add(&-y));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// `3`, `-1/2`, `12*sqrt(3)`, `1-2*sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.radicand().unwrap_or(0);
        let radical = |b: &BigRational| -> String {
            if b.is_one() {
                format!("sqrt({n})")
            } else if (-b).is_one() {
                format!("-sqrt({n})")
            } else {
                format!("{}*sqrt({n})", fmt_rational(b))
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => f.write_str(&fmt_rational(&self.a)),
            (true, false) => f.write_str(&radical(&self.b)),
            (false, false) => {
                let r = radical(&self.b);
                if r.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&self.a), r)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.a), r)
                }
            }
        }
    }
}
