//! Polynomial solutions of the generalized Fermat equation.
//!
//! Identities are stored as `Σ c_i · g_i · x_i^{e_i} = 0` where `c_i` is a
//! scalar, `g_i` an optional polynomial cofactor (only needed to transcribe
//! the literal octahedral display) and `x_i` the solution component. The
//! classical Platonic solutions are given up to constant factors, and
//! normalizing the constants to 1 would need `p`-th roots outside any fixed
//! quadratic field, so the constants are kept explicit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{invalid, Error};
use crate::exactmath::gcd::coprime;
use crate::exactmath::poly::{vars, Monomial, Poly};
use crate::exactmath::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub constant: Scalar,
    pub cofactor: Option<Poly>,
    pub base: Poly,
}

impl Component {
    pub fn new(constant: Scalar, base: Poly) -> Self {
        Component {
            constant,
            cofactor: None,
            base,
        }
    }

    fn term(&self, exponent: u32) -> Result<Poly, Error> {
        let mut t = self.base.pow(exponent)?.scale(&self.constant)?;
        if let Some(g) = &self.cofactor {
            t = t.try_mul(g)?;
        }
        Ok(t)
    }

    fn substitute(&self, image: &Poly) -> Result<Component, Error> {
        Ok(Component {
            constant: self.constant.clone(),
            cofactor: self
                .cofactor
                .as_ref()
                .map(|g| g.compose(core::slice::from_ref(image)))
                .transpose()?,
            base: self.base.compose(core::slice::from_ref(image))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityStatus {
    /// Transcribed exactly as displayed.
    AsPrinted,
    /// The classical form, kept next to a literal display that differs.
    DocumentedVariant,
}

impl fmt::Display for IdentityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityStatus::AsPrinted => "as-printed",
            IdentityStatus::DocumentedVariant => "documented-variant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFermatIdentity {
    pub name: String,
    pub exponents: [u32; 3],
    pub components: [Component; 3],
    pub dihedral_parameter: Option<u32>,
    pub status: IdentityStatus,
}

impl WeightedFermatIdentity {
    /// Substitutes `image` for the parameter in every component.
    pub fn substitute(&self, image: &Poly) -> Result<Self, Error> {
        let [a, b, c] = &self.components;
        Ok(WeightedFermatIdentity {
            components: [a.substitute(image)?, b.substitute(image)?, c.substitute(image)?],
            ..self.clone()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub holds: bool,
    /// Leading monomial exponent of the expanded sum and its coefficient,
    /// when the sum is nonzero.
    pub mismatch: Option<(u32, Scalar)>,
    /// Degrees of the three bases.
    pub base_degrees: [u64; 3],
    /// Degrees of the three expanded terms `c_i·g_i·x_i^{e_i}`.
    pub term_degrees: [u64; 3],
    /// Coprimality of the pairs (0,1), (0,2), (1,2).
    pub pairwise_coprime: [bool; 3],
    pub has_constant_component: bool,
}

impl VerificationReport {
    pub fn all_coprime(&self) -> bool {
        self.pairwise_coprime.iter().all(|&c| c)
    }
}

fn s_ring() -> crate::exactmath::Vars {
    vars(&["s"])
}

fn sparse(field: Field, terms: &[(u32, i64)]) -> Poly {
    Poly::from_terms(
        field,
        s_ring(),
        terms
            .iter()
            .map(|&(e, c)| (alloc::vec![e], Scalar::from_int(field, c))),
    )
    .expect("univariate terms")
}

fn int(field: Field, c: i64) -> Scalar {
    Scalar::from_int(field, c)
}

/// `(s^d + 1)^2 − (s^d − 1)^2 − 4·s^d = 0`.
pub fn dihedral(d: u32) -> Result<WeightedFermatIdentity, Error> {
    if d < 2 {
        return Err(invalid("dihedral parameter must be at least 2"));
    }
    let q = Field::Rational;
    Ok(WeightedFermatIdentity {
        name: format!("dihedral:{d}"),
        exponents: [2, 2, d],
        components: [
            Component::new(int(q, 1), sparse(q, &[(d, 1), (0, 1)])),
            Component::new(int(q, -1), sparse(q, &[(d, 1), (0, -1)])),
            Component::new(int(q, -4), sparse(q, &[(1, 1)])),
        ],
        dihedral_parameter: Some(d),
        status: IdentityStatus::AsPrinted,
    })
}

/// `−12√3·(s(1+s^4))^2 + (1+2√3s^2−s^4)^3 − (1−2√3s^2−s^4)^3 = 0` over `ℚ(√3)`.
pub fn tetrahedral() -> WeightedFermatIdentity {
    let f = Field::quadratic(3).expect("3 is square-free");
    let two_r3 = Scalar::sqrt_times(f, 2).unwrap();
    let cubic = |sign: &Scalar| {
        Poly::from_terms(
            f,
            s_ring(),
            [
                (alloc::vec![0], int(f, 1)),
                (alloc::vec![2], sign.clone()),
                (alloc::vec![4], int(f, -1)),
            ],
        )
        .unwrap()
    };
    WeightedFermatIdentity {
        name: "tetrahedral".into(),
        exponents: [2, 3, 3],
        components: [
            Component::new(-Scalar::sqrt_times(f, 12).unwrap(), sparse(f, &[(1, 1), (5, 1)])),
            Component::new(int(f, 1), cubic(&two_r3)),
            Component::new(int(f, -1), cubic(&-&two_r3)),
        ],
        dihedral_parameter: None,
        status: IdentityStatus::AsPrinted,
    }
}

fn octahedral_t_h() -> (Poly, Poly) {
    let q = Field::Rational;
    (
        sparse(q, &[(0, 1), (4, -33), (8, -33), (12, 1)]),
        sparse(q, &[(0, 1), (4, 14), (8, 1)]),
    )
}

/// Literal display: `T^2 = H^3 − 4·s^3·(s(1−s^4))^4`.
pub fn octahedral() -> WeightedFermatIdentity {
    let q = Field::Rational;
    let (t, h) = octahedral_t_h();
    WeightedFermatIdentity {
        name: "octahedral".into(),
        exponents: [2, 3, 4],
        components: [
            Component::new(int(q, -1), t),
            Component::new(int(q, 1), h),
            Component {
                constant: int(q, -4),
                cofactor: Some(sparse(q, &[(3, 1)])),
                base: sparse(q, &[(1, 1), (5, -1)]),
            },
        ],
        dihedral_parameter: None,
        status: IdentityStatus::AsPrinted,
    }
}

/// Classical form: `T^2 = H^3 − 4·3^3·(s(1−s^4))^4`.
pub fn octahedral_variant() -> WeightedFermatIdentity {
    let q = Field::Rational;
    let (t, h) = octahedral_t_h();
    WeightedFermatIdentity {
        name: "octahedral-variant".into(),
        exponents: [2, 3, 4],
        components: [
            Component::new(int(q, -1), t),
            Component::new(int(q, 1), h),
            Component::new(int(q, -4 * 27), sparse(q, &[(1, 1), (5, -1)])),
        ],
        dihedral_parameter: None,
        status: IdentityStatus::DocumentedVariant,
    }
}

/// `φ_30^2 = φ_20^3 − 4^3·3^3·φ_12^5`.
pub fn icosahedral() -> WeightedFermatIdentity {
    let q = Field::Rational;
    let phi12 = sparse(q, &[(1, 1), (6, -11), (11, -1)]);
    let phi20 = sparse(q, &[(0, 1), (5, 228), (10, 494), (15, -228), (20, 1)]);
    let phi30 = sparse(
        q,
        &[(0, 1), (5, -522), (10, -10005), (20, -10005), (25, 522), (30, 1)],
    );
    WeightedFermatIdentity {
        name: "icosahedral".into(),
        exponents: [2, 3, 5],
        components: [
            Component::new(int(q, -1), phi30),
            Component::new(int(q, 1), phi20),
            Component::new(int(q, -64 * 27), phi12),
        ],
        dihedral_parameter: None,
        status: IdentityStatus::AsPrinted,
    }
}

/// All catalog entries, with the dihedral family instantiated at `d`.
pub fn schwartz_catalog(d: u32) -> Result<Vec<WeightedFermatIdentity>, Error> {
    Ok(alloc::vec![
        dihedral(d)?,
        tetrahedral(),
        octahedral(),
        octahedral_variant(),
        icosahedral(),
    ])
}

/// Looks up `dihedral:D`, `tetrahedral`, `octahedral`, `octahedral-variant`
/// or `icosahedral`.
pub fn by_name(name: &str) -> Result<WeightedFermatIdentity, Error> {
    match name {
        "tetrahedral" => Ok(tetrahedral()),
        "octahedral" => Ok(octahedral()),
        "octahedral-variant" => Ok(octahedral_variant()),
        "icosahedral" => Ok(icosahedral()),
        _ => match name.strip_prefix("dihedral:") {
            Some(d) => dihedral(
                d.parse()
                    .map_err(|_| invalid(format!("bad dihedral parameter {d:?}")))?,
            ),
            None => Err(invalid(format!("unknown identity {name:?}"))),
        },
    }
}

pub fn verify_identity(id: &WeightedFermatIdentity) -> Result<VerificationReport, Error> {
    if id.components.iter().any(|c| c.base.is_zero()) {
        return Err(invalid("identity components must be nonzero"));
    }
    check_solution(&id.components, id.exponents)
}

/// Expands `Σ c_i·g_i·x_i^{e_i}` and checks it vanishes; also reports
/// pairwise coprimality and whether a component is constant (a solution with
/// a constant component is not a genuine polynomial curve).
pub fn check_solution(components: &[Component; 3], exponents: [u32; 3]) -> Result<VerificationReport, Error> {
    if components
        .iter()
        .all(|c| c.base.is_zero() || c.constant.is_zero())
    {
        return Err(invalid("all components are zero"));
    }
    let reference = &components[0].base;
    for c in components {
        if c.base.vars() != reference.vars() || c.base.field() != reference.field() {
            return Err(Error::VariableMismatch);
        }
    }
    let mut sum = Poly::zero(reference.field(), reference.vars().clone());
    let mut term_degrees = [0; 3];
    for (i, (c, &e)) in components.iter().zip(&exponents).enumerate() {
        let t = c.term(e)?;
        term_degrees[i] = t.total_degree().unwrap_or(0);
        sum = sum.try_add(&t)?;
    }
    let mismatch = sum
        .leading_term()
        .map(|(m, c): (&Monomial, &Scalar)| (m.exponents()[0], c.clone()));
    let b = |i: usize| &components[i].base;
    Ok(VerificationReport {
        holds: sum.is_zero(),
        mismatch,
        base_degrees: core::array::from_fn(|i| b(i).total_degree().unwrap_or(0)),
        term_degrees,
        pairwise_coprime: [coprime(b(0), b(1))?, coprime(b(0), b(2))?, coprime(b(1), b(2))?],
        has_constant_component: components.iter().any(|c| c.base.is_constant()),
    })
}

/// `(α, f^{M/p}), (β, f^{M/q}), (γ, f^{M/r})` with `M = lcm(p, q, r)`;
/// solves the equation whenever `α + β + γ = 0`.
pub fn build_trivial(constants: [Scalar; 3], f: &Poly, exponents: [u32; 3]) -> Result<[Component; 3], Error> {
    if f.is_zero() {
        return Err(invalid("f must be nonzero"));
    }
    if exponents.iter().any(|&e| e == 0) {
        return Err(invalid("exponents must be positive"));
    }
    let constants = constants
        .iter()
        .map(|c| c.embed(f.field()))
        .collect::<Result<Vec<_>, _>>()?;
    if !(&(&constants[0] + &constants[1]) + &constants[2]).is_zero() {
        return Err(invalid("constants must sum to zero"));
    }
    let m = exponents.iter().fold(1u32, |acc, &e| acc.lcm(&e));
    let mut out = Vec::with_capacity(3);
    for (c, &e) in constants.into_iter().zip(&exponents) {
        out.push(Component::new(c, f.pow(m / e)?));
    }
    Ok(out.try_into().expect("three components"))
}
