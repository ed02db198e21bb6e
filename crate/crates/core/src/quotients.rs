//! Cyclic quotient surface singularities `ℂ²/μ_d`.
//!
//! `ζ ∈ μ_d` acts by `(x, y) ↦ (ζx, ζ^e y)`. The invariant ring is the
//! semigroup ring of `{(a, b) ∈ ℕ² : a + e·b ≡ 0 (mod d)}`, and its
//! resolution graph is a chain with self-intersections given by the
//! Hirzebruch-Jung expansion of `d/e`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{invalid, Error};
use crate::exactmath::poly::{Poly, Vars};
use crate::exactmath::scalar::{Field, Scalar};
use crate::lnd::Derivation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicQuotient {
    d: u64,
    e: u64,
}

impl CyclicQuotient {
    pub fn new(d: u64, e: u64) -> Result<Self, Error> {
        if d < 2 {
            return Err(invalid("group order must be at least 2"));
        }
        if e == 0 || e >= d {
            return Err(invalid(format!("weight e must satisfy 1 <= e < {d}")));
        }
        if d.gcd(&e) != 1 {
            return Err(invalid(format!("gcd({d}, {e}) != 1")));
        }
        Ok(CyclicQuotient { d, e })
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn weight(&self) -> u64 {
        self.e
    }

    fn is_invariant(&self, a: u64, b: u64) -> bool {
        (a as u128 + self.e as u128 * b as u128) % self.d as u128 == 0
    }

    /// The `A_{d−1}` family `e = d − 1`, i.e. `uv = w^d`.
    pub fn is_gorenstein(&self) -> bool {
        self.e == self.d - 1
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1, {})", self.d, self.e)
    }
}

/// `d/e = a_1 − 1/(a_2 − 1/(… − 1/a_r))` with every `a_i ≥ 2`.
pub fn hj_expansion(q: &CyclicQuotient) -> Vec<u64> {
    let (mut num, mut den) = (q.d, q.e);
    let mut out = Vec::new();
    while den != 0 {
        let a = num.div_ceil(den);
        out.push(a);
        (num, den) = (den, a * den - num);
    }
    out
}

/// Folds a continued fraction back to `(numerator, denominator)` in lowest
/// terms.
pub fn hj_value(chain: &[u64]) -> Result<(u128, u128), Error> {
    let (&last, rest) = chain
        .split_last()
        .ok_or_else(|| invalid("empty chain"))?;
    let (mut num, mut den) = (last as u128, 1u128);
    for &a in rest.iter().rev() {
        let next = (a as u128)
            .checked_mul(num)
            .and_then(|v| v.checked_sub(den))
            .ok_or(Error::Overflow("continued fraction"))?;
        (num, den) = (next, num);
    }
    let g = num.gcd(&den);
    Ok((num / g.max(1), den / g.max(1)))
}

/// Minimal generators of the invariant semigroup, as exponent pairs `(a, b)`
/// for `x^a y^b`, sorted by decreasing `a`.
pub fn invariant_generators(q: &CyclicQuotient) -> Vec<(u64, u64)> {
    let d = q.d;
    // every minimal generator lies in [0, d]^2; x^d and y^d bound the box
    let members: Vec<(u64, u64)> = (0..=d)
        .flat_map(|a| (0..=d).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0) && q.is_invariant(a, b))
        .collect();
    let mut gens: Vec<(u64, u64)> = members
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !members
                .iter()
                .any(|&(x, y)| (x, y) != (a, b) && x <= a && y <= b && (a - x, b - y) != (0, 0) && q.is_invariant(a - x, b - y))
        })
        .collect();
    gens.sort_by(|l, r| r.0.cmp(&l.0).then(l.1.cmp(&r.1)));
    gens
}

/// Writes an invariant exponent as a sum of generators by greedy
/// subtraction. Any invariant remainder is again in the semigroup, so the
/// greedy choice never gets stuck.
fn factor_exponent(gens: &[(u64, u64)], mut a: u64, mut b: u64) -> Option<Vec<u32>> {
    let mut mult = vec![0u32; gens.len()];
    while (a, b) != (0, 0) {
        let i = gens.iter().position(|&(x, y)| x <= a && y <= b)?;
        mult[i] += 1;
        a -= gens[i].0;
        b -= gens[i].1;
    }
    Some(mult)
}

/// `∂ = x^e·∂/∂y` restricted to one generator `x^a y^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImage {
    pub generator: (u64, u64),
    /// `(b, (a + e, b − 1))`, or `None` when `b = 0`.
    pub image: Option<(u64, (u64, u64))>,
    pub invariant: bool,
    /// Multiplicities of each generator in the image monomial.
    pub factorization: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub derivation: Derivation,
    pub relations: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendedLnd {
    pub quotient: CyclicQuotient,
    pub generators: Vec<(u64, u64)>,
    pub images: Vec<GeneratorImage>,
    /// A lift of the derivation to the polynomial ring on the generators.
    pub lifted: Derivation,
    /// Relations are listed for the `A_{d−1}` family and for `e = 1`.
    pub relations: Option<Vec<Poly>>,
}

impl DescendedLnd {
    pub fn all_invariant(&self) -> bool {
        self.images.iter().all(|g| g.invariant)
    }

    /// Substitutes `x^a y^b` for each generator variable.
    pub fn pullback(&self, p: &Poly) -> Result<Poly, Error> {
        let xy: Vars = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let subs: Vec<Poly> = self
            .generators
            .iter()
            .map(|&(a, b)| monomial(Field::Rational, &xy, vec![a as u32, b as u32], 1))
            .collect();
        p.compose(&subs)
    }

    pub fn presentation(&self) -> Option<Presentation> {
        self.relations.as_ref().map(|r| Presentation {
            derivation: self.lifted.clone(),
            relations: r.clone(),
        })
    }
}

fn generator_names(q: &CyclicQuotient, count: usize) -> Vars {
    if q.is_gorenstein() {
        ["u", "w", "v"].iter().map(|s| s.to_string()).collect()
    } else {
        (0..count).map(|i| format!("z{i}")).collect()
    }
}

fn monomial(field: Field, vars: &Vars, exps: Vec<u32>, c: i64) -> Poly {
    Poly::from_terms(field, vars.clone(), [(exps, Scalar::from_int(field, c))]).expect("valid monomial")
}

fn relations(q: &CyclicQuotient, vars: &Vars) -> Option<Vec<Poly>> {
    let f = Field::Rational;
    let n = vars.len();
    let unit = |i: usize, k: u32| {
        let mut e = vec![0u32; n];
        e[i] += k;
        e
    };
    let pair = |i: usize, j: usize| {
        let mut e = vec![0u32; n];
        e[i] += 1;
        e[j] += 1;
        e
    };
    if q.is_gorenstein() {
        let uv = monomial(f, vars, pair(0, 2), 1);
        let wd = monomial(f, vars, unit(1, q.d as u32), 1);
        return Some(vec![uv.try_sub(&wd).ok()?]);
    }
    if q.e == 1 {
        // 2x2 minors of [[z0 .. z_{d-1}], [z1 .. z_d]]
        let mut out = Vec::new();
        for i in 0..n - 1 {
            for j in i + 1..n - 1 {
                let lhs = monomial(f, vars, pair(i, j + 1), 1);
                let rhs = monomial(f, vars, pair(i + 1, j), 1);
                out.push(lhs.try_sub(&rhs).ok()?);
            }
        }
        return Some(out);
    }
    None
}

/// Pushes `x^e·∂/∂y` down to the invariant ring and expresses it on the
/// generators.
pub fn descend_lnd(q: &CyclicQuotient) -> Result<DescendedLnd, Error> {
    let gens = invariant_generators(q);
    let names = generator_names(q, gens.len());
    let f = Field::Rational;
    let mut images = Vec::with_capacity(gens.len());
    let mut lifted = Vec::with_capacity(gens.len());
    for &(a, b) in &gens {
        if b == 0 {
            images.push(GeneratorImage {
                generator: (a, b),
                image: None,
                invariant: true,
                factorization: Some(vec![0; gens.len()]),
            });
            lifted.push(Poly::zero(f, names.clone()));
            continue;
        }
        let target = (a + q.e, b - 1);
        let invariant = q.is_invariant(target.0, target.1);
        let factorization = if invariant {
            factor_exponent(&gens, target.0, target.1)
        } else {
            None
        };
        let Some(mult) = factorization.clone() else {
            return Err(invalid(format!("image of x^{a}*y^{b} is not invariant")));
        };
        lifted.push(monomial(f, &names, mult, b as i64));
        images.push(GeneratorImage {
            generator: (a, b),
            image: Some((b, target)),
            invariant,
            factorization,
        });
    }
    let relations = relations(q, &names);
    Ok(DescendedLnd {
        quotient: *q,
        generators: gens,
        images,
        lifted: Derivation::new(f, names, lifted)?,
        relations,
    })
}

/// Renders `x^a*y^b`.
pub fn format_exponent(a: u64, b: u64) -> String {
    match (a, b) {
        (0, 0) => "1".to_string(),
        (a, 0) => pow_str("x", a),
        (0, b) => pow_str("y", b),
        (a, b) => format!("{}*{}", pow_str("x", a), pow_str("y", b)),
    }
}

fn pow_str(v: &str, k: u64) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}
