//! Classifiers for Pham-Brieskorn surfaces `x^p + y^q + z^r = 0`, Fermat
//! hypersurfaces `Σ x_i^{p_i} = 0` and cone surfaces `F_d(x, y) = z^m`.
//!
//! Reciprocal sums are always compared by cross-multiplication.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{invalid, Error};
use crate::exactmath::gcd::poly_gcd;
use crate::exactmath::poly::{vars, Poly};
use crate::exactmath::scalar::Scalar;
use crate::hilbert::{self, LogKodaira, WeightedCI};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlatonicType {
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    None,
}

impl fmt::Display for PlatonicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlatonicType::Dihedral => "dihedral",
            PlatonicType::Tetrahedral => "tetrahedral",
            PlatonicType::Octahedral => "octahedral",
            PlatonicType::Icosahedral => "icosahedral",
            PlatonicType::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleClassification {
    /// Sorted ascending.
    pub triple: [u32; 3],
    pub platonic: bool,
    pub platonic_type: PlatonicType,
    pub normal_degree: i128,
    pub is_rational: bool,
    pub is_quotient: bool,
    /// From the coprimality conditions on the exponents.
    pub quasirational: bool,
    /// From `dim A_N = 0`.
    pub quasirational_cross_check: bool,
    pub log_kodaira: LogKodaira,
    pub admits_cplus: bool,
    /// Hypersurface singularities are always Gorenstein.
    pub is_gorenstein: bool,
    pub delta_table: Vec<u128>,
    pub pbar_table: Vec<u128>,
}

fn sorted_triple(p: u32, q: u32, r: u32) -> Result<[u32; 3], Error> {
    if p < 2 || q < 2 || r < 2 {
        return Err(invalid("exponents must be at least 2"));
    }
    let mut t = [p, q, r];
    t.sort_unstable();
    Ok(t)
}

/// One exponent coprime to the other two, or `gcd(p, q, r) = 2` with the
/// halves pairwise coprime.
pub fn quasirational_conditions(p: u32, q: u32, r: u32) -> Result<bool, Error> {
    let t = sorted_triple(p, q, r)?;
    let one_coprime = (0..3).any(|i| {
        let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
        a.gcd(&b) == 1 && a.gcd(&c) == 1
    });
    if one_coprime {
        return Ok(true);
    }
    if t[0].gcd(&t[1]).gcd(&t[2]) == 2 {
        let h = t.map(|x| x / 2);
        return Ok(h[0].gcd(&h[1]) == 1 && h[1].gcd(&h[2]) == 1 && h[0].gcd(&h[2]) == 1);
    }
    Ok(false)
}

/// `1/p + 1/q + 1/r > 1`.
pub fn is_platonic(p: u32, q: u32, r: u32) -> bool {
    let (p, q, r) = (p as u128, q as u128, r as u128);
    q * r + p * r + p * q > p * q * r
}

/// `x^p + y^q + z^r` with weights `(qr, pr, pq)` and degree `pqr`.
pub fn triple_ci(p: u32, q: u32, r: u32) -> Result<WeightedCI, Error> {
    let [p, q, r] = sorted_triple(p, q, r)?.map(u64::from);
    WeightedCI::hypersurface(vec![q * r, p * r, p * q], p * q * r)
}

fn platonic_type(t: [u32; 3]) -> PlatonicType {
    match t {
        [2, 2, _] => PlatonicType::Dihedral,
        [2, 3, 3] => PlatonicType::Tetrahedral,
        [2, 3, 4] => PlatonicType::Octahedral,
        [2, 3, 5] => PlatonicType::Icosahedral,
        _ => PlatonicType::None,
    }
}

pub fn classify_triple(p: u32, q: u32, r: u32, m_max: u32) -> Result<TripleClassification, Error> {
    let t = sorted_triple(p, q, r)?;
    let ci = triple_ci(p, q, r)?;
    let report = hilbert::classify_ci(&ci, m_max)?;
    let kind = platonic_type(t);
    Ok(TripleClassification {
        triple: t,
        platonic: is_platonic(t[0], t[1], t[2]),
        platonic_type: kind,
        normal_degree: report.normal_degree,
        is_rational: report.is_rational,
        is_quotient: report.is_quotient_surface.expect("surface"),
        quasirational: quasirational_conditions(p, q, r)?,
        quasirational_cross_check: report.quasirational_form_test.expect("surface"),
        log_kodaira: report.log_kodaira,
        admits_cplus: kind == PlatonicType::Dihedral,
        is_gorenstein: true,
        delta_table: report.delta_table,
        pbar_table: report.pbar_table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceClassification {
    pub exponents: Vec<u32>,
    /// `M = lcm(p_i)`; the weights are `M / p_i` and the degree is `M`.
    pub lcm: BigInt,
    pub normal_degree: BigInt,
    /// `Σ 1/p_i > 1`.
    pub is_rational: bool,
    /// `Σ 1/p_i ≤ 1/(n − 2)`: no non-constant solutions in pairwise coprime
    /// polynomials.
    pub steinbrink_no_coprime_solutions: bool,
}

pub fn classify_fermat_hypersurface(exponents: &[u32]) -> Result<HypersurfaceClassification, Error> {
    if exponents.len() < 3 {
        return Err(invalid("need at least 3 exponents"));
    }
    if exponents.iter().any(|&p| p < 2) {
        return Err(invalid("exponents must be at least 2"));
    }
    let lcm = exponents
        .iter()
        .fold(BigInt::one(), |acc, &p| acc.lcm(&BigInt::from(p)));
    let weight_sum: BigInt = exponents.iter().map(|&p| &lcm / p).sum();
    let normal_degree = &lcm - &weight_sum;
    let n = exponents.len() as u32 - 2;
    Ok(HypersurfaceClassification {
        exponents: exponents.to_vec(),
        is_rational: normal_degree.is_negative(),
        steinbrink_no_coprime_solutions: weight_sum * n <= lcm,
        lcm,
        normal_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeClassification {
    pub d: u32,
    pub m: u32,
    /// `(d − 2)·m − d`.
    pub normal_degree: i64,
    pub quasirational: bool,
    /// Non-constant coprime polynomial solutions of `F_d(x, y) = z^m` exist.
    pub solutions_exist: bool,
    /// Square-freeness of the supplied form, `None` if none was given.
    pub squarefree_checked: Option<bool>,
}

pub fn classify_cone_surface(d: u32, m: u32, form: Option<&Poly>) -> Result<ConeClassification, Error> {
    if d < 1 {
        return Err(invalid("form degree must be at least 1"));
    }
    if m < 2 {
        return Err(invalid("exponent m must be at least 2"));
    }
    let squarefree_checked = form.map(|f| is_squarefree_binary_form(f, d)).transpose()?;
    Ok(ConeClassification {
        d,
        m,
        normal_degree: (d as i64 - 2) * m as i64 - d as i64,
        quasirational: d == 2 || m.gcd(&d) == 1,
        solutions_exist: d <= 2 || (d, m) == (3, 2),
        squarefree_checked,
    })
}

/// Square-freeness of a binary form `F(x, y)` of degree `d`: `F(x, 1)` is
/// coprime to its derivative and `y` divides `F` at most once (the root at
/// infinity that dehomogenization hides).
pub fn is_squarefree_binary_form(form: &Poly, d: u32) -> Result<bool, Error> {
    if form.nvars() != 2 {
        return Err(invalid("binary form must have exactly two variables"));
    }
    if form.is_zero() {
        return Err(invalid("binary form must be nonzero"));
    }
    if form.terms().any(|(m, _)| m.total_degree() != d as u64) {
        return Err(invalid("binary form is not homogeneous of the stated degree"));
    }
    let field = form.field();
    let mut dense = vec![Scalar::zero(field); d as usize + 1];
    for (m, c) in form.terms() {
        dense[m.exponents()[0] as usize] = c.clone();
    }
    let y_multiplicity = dense.iter().rev().take_while(|c| c.is_zero()).count();
    if y_multiplicity > 1 {
        return Ok(false);
    }
    let f = Poly::from_dense(field, vars(&["x"]), &dense)?;
    let g = poly_gcd(&f, &f.derivative(0))?;
    Ok(!g.is_zero() && g.is_constant())
}
