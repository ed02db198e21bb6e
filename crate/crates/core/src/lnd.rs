//! Locally nilpotent derivations of polynomial rings and their flows.
//!
//! A derivation is given by the images of the ring variables and extends to
//! every polynomial by the Leibniz rule. When it is locally nilpotent the
//! exponential `x ↦ Σ t^k ∂^k(x) / k!` is a finite sum and defines an
//! algebraic `ℂ₊`-action; its orbits are polynomial curves.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{invalid, Error};
use crate::exactmath::gcd::poly_gcd;
use crate::exactmath::poly::{Poly, Vars};
use crate::exactmath::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    field: Field,
    vars: Vars,
    images: Vec<Poly>,
}

impl Derivation {
    /// `images[j]` is the image of variable `j`; all images share one ring.
    pub fn new(field: Field, vars: Vars, images: Vec<Poly>) -> Result<Self, Error> {
        if images.len() != vars.len() {
            return Err(invalid("one image per variable is required"));
        }
        let images = images
            .into_iter()
            .map(|p| {
                if p.vars() != &vars {
                    return Err(Error::VariableMismatch);
                }
                p.embed(field)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation {
            field,
            vars,
            images,
        })
    }

    pub fn zero(field: Field, vars: Vars) -> Self {
        let images = vec![Poly::zero(field, vars.clone()); vars.len()];
        Derivation {
            field,
            vars,
            images,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, idx: usize) -> &Poly {
        &self.images[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    /// `∂f = Σ_j (∂f/∂x_j)·∂(x_j)`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, Error> {
        if f.vars() != &self.vars {
            return Err(Error::VariableMismatch);
        }
        let f = f.embed(self.field)?;
        let mut out = Poly::zero(self.field, self.vars.clone());
        for (j, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            out = out.try_add(&f.derivative(j).try_mul(img)?)?;
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Derivation, Error> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(Derivation {
            field: self.field,
            vars: self.vars.clone(),
            images,
        })
    }
}

impl fmt::Display for Derivation {
    /// One `var -> image` line per variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, img) in self.vars.iter().zip(&self.images) {
            writeln!(f, "{v} -> {img}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyStatus {
    Nilpotent,
    NotNilpotent,
    Inconclusive,
}

impl fmt::Display for NilpotencyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NilpotencyStatus::Nilpotent => "nilpotent",
            NilpotencyStatus::NotNilpotent => "not-nilpotent",
            NilpotencyStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyVerdict {
    pub status: NilpotencyStatus,
    /// Smallest `k` with `∂^k(x_j) = 0`, per variable.
    pub steps: Vec<Option<usize>>,
    pub cap: usize,
}

/// `2 + Σ deg ∂(x_j) + #variables`.
pub fn default_cap(d: &Derivation) -> usize {
    let degs: u64 = d.images.iter().filter_map(Poly::total_degree).sum();
    2 + degs as usize + d.vars.len()
}

/// `Some(c)` when `next = c·cur` for a nonzero scalar `c`.
fn scalar_ratio(next: &Poly, cur: &Poly) -> Option<Scalar> {
    let (m1, c1) = next.leading_term()?;
    let (m0, c0) = cur.leading_term()?;
    if m1 != m0 || next.len() != cur.len() {
        return None;
    }
    let c = c1.try_div(c0).ok()?;
    (cur.scale(&c).ok()? == *next).then_some(c)
}

/// Iterates `∂` on every variable up to `cap` times. A variable whose iterate
/// becomes an eigenvector (`∂^{k+1} x = c·∂^k x`, `c ≠ 0`) refutes
/// nilpotency.
pub fn is_locally_nilpotent(d: &Derivation, cap: usize) -> Result<NilpotencyVerdict, Error> {
    if cap == 0 {
        return Err(invalid("cap must be positive"));
    }
    let mut steps = Vec::with_capacity(d.vars.len());
    let mut refuted = false;
    for j in 0..d.vars.len() {
        let mut cur = Poly::var(d.field, d.vars.clone(), j);
        let mut found = None;
        for k in 0..cap {
            let next = d.apply(&cur)?;
            if next.is_zero() {
                found = Some(k + 1);
                break;
            }
            if scalar_ratio(&next, &cur).is_some() {
                refuted = true;
                break;
            }
            cur = next;
        }
        steps.push(found);
    }
    let status = if refuted {
        NilpotencyStatus::NotNilpotent
    } else if steps.iter().all(Option::is_some) {
        NilpotencyStatus::Nilpotent
    } else {
        NilpotencyStatus::Inconclusive
    };
    Ok(NilpotencyVerdict { status, steps, cap })
}

/// Splits `∂ = Σ_i ∂_i` into parts homogeneous of degree `i` for the given
/// weights: `∂_i` sends `x_j` to the weight-`(w_j + i)` piece of `∂(x_j)`.
/// Sorted by degree; the extreme entries are the lowest and highest parts.
pub fn homogeneous_parts(d: &Derivation, weights: &[u64]) -> Result<Vec<(i128, Derivation)>, Error> {
    if weights.len() != d.vars.len() {
        return Err(invalid("one weight per variable is required"));
    }
    if weights.iter().any(|&w| w == 0) {
        return Err(invalid("weights must be positive"));
    }
    let mut parts: BTreeMap<i128, Derivation> = BTreeMap::new();
    for (j, img) in d.images.iter().enumerate() {
        for (wdeg, piece) in img.homogeneous_components(weights) {
            let deg = wdeg as i128 - weights[j] as i128;
            let part = parts
                .entry(deg)
                .or_insert_with(|| Derivation::zero(d.field, d.vars.clone()));
            part.images[j] = piece;
        }
    }
    Ok(parts.into_iter().collect())
}

/// Two gradings are different iff their weight vectors are not proportional.
pub fn truly_different(w1: &[u64], w2: &[u64]) -> Result<bool, Error> {
    if w1.len() != w2.len() {
        return Err(invalid("weight vectors differ in length"));
    }
    if w1.iter().chain(w2).any(|&w| w == 0) {
        return Err(invalid("weights must be positive"));
    }
    Ok((1..w1.len()).any(|i| w1[0] as u128 * w2[i] as u128 != w1[i] as u128 * w2[0] as u128))
}

/// `x_j ↦ F_j(x, t)` for the exponential of a locally nilpotent derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowMap {
    source: Vars,
    /// Source variables followed by the flow parameter.
    ring: Vars,
    images: Vec<Poly>,
}

fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|v| v == base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken.iter().any(|v| v == n))
        .unwrap()
}

fn with_extra(vars: &Vars, extra: &[&str]) -> Vars {
    vars.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect()
}

pub fn exp_flow(d: &Derivation, cap: usize) -> Result<FlowMap, Error> {
    let verdict = is_locally_nilpotent(d, cap)?;
    if verdict.status != NilpotencyStatus::Nilpotent {
        return Err(Error::NotNilpotent(cap));
    }
    let param = fresh_name(&d.vars, "t");
    let ring = with_extra(&d.vars, &[&param]);
    let t = Poly::var(d.field, ring.clone(), d.vars.len());
    let mut images = Vec::with_capacity(d.vars.len());
    for j in 0..d.vars.len() {
        let mut cur = Poly::var(d.field, d.vars.clone(), j);
        let mut acc = Poly::zero(d.field, ring.clone());
        let mut factorial = BigInt::one();
        let mut t_pow = Poly::one(d.field, ring.clone());
        for k in 0..verdict.steps[j].expect("nilpotent") {
            if k > 0 {
                factorial *= k;
                t_pow = t_pow.try_mul(&t)?;
            }
            let coeff = Scalar::from_rational(d.field, BigRational::new(BigInt::one(), factorial.clone()));
            acc = acc.try_add(&cur.remap(&ring)?.try_mul(&t_pow)?.scale(&coeff)?)?;
            cur = d.apply(&cur)?;
        }
        images.push(acc);
    }
    Ok(FlowMap {
        source: d.vars.clone(),
        ring,
        images,
    })
}

impl FlowMap {
    pub fn source_vars(&self) -> &Vars {
        &self.source
    }

    pub fn ring(&self) -> &Vars {
        &self.ring
    }

    pub fn parameter(&self) -> &str {
        self.ring.last().expect("flow ring has a parameter")
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    fn field(&self) -> Field {
        self.images.first().map_or(Field::Rational, Poly::field)
    }

    /// `F(x, 0) = x`.
    pub fn is_identity_at_zero(&self) -> Result<bool, Error> {
        let f = self.field();
        let n = self.source.len();
        let mut subs: Vec<Poly> = (0..n).map(|j| Poly::var(f, self.source.clone(), j)).collect();
        subs.push(Poly::zero(f, self.source.clone()));
        for (j, img) in self.images.iter().enumerate() {
            if img.compose(&subs)? != subs[j] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `F(F(x, t'), t) = F(x, t + t')` on every variable.
    pub fn satisfies_group_law(&self) -> Result<bool, Error> {
        let f = self.field();
        let n = self.source.len();
        let t = self.parameter().to_string();
        let t2 = fresh_name(&self.ring, &format!("{t}_"));
        let big = with_extra(&self.source, &[&t, &t2]);
        let x: Vec<Poly> = (0..n).map(|j| Poly::var(f, big.clone(), j)).collect();
        let tp = Poly::var(f, big.clone(), n);
        let tp2 = Poly::var(f, big.clone(), n + 1);

        let mut inner_subs = x.clone();
        inner_subs.push(tp2.clone());
        let inner = self
            .images
            .iter()
            .map(|img| img.compose(&inner_subs))
            .collect::<Result<Vec<_>, _>>()?;
        let mut outer_subs = inner;
        outer_subs.push(tp.clone());
        let mut sum_subs = x;
        sum_subs.push(tp.try_add(&tp2)?);
        for img in &self.images {
            if img.compose(&outer_subs)? != img.compose(&sum_subs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `r(F(x, t)) = r(x)`.
    pub fn preserves(&self, relation: &Poly) -> Result<bool, Error> {
        let r = relation.remap(&self.ring)?.embed(self.field())?;
        let src = relation.embed(self.field())?;
        Ok(src.compose(&self.images)? == r)
    }

    /// Orbit through `point` as polynomials in the parameter alone.
    pub fn orbit(&self, point: &[Scalar]) -> Result<Vec<Poly>, Error> {
        if point.len() != self.source.len() {
            return Err(invalid("point has the wrong number of coordinates"));
        }
        let f = self.field();
        let tring: Vars = [self.parameter().to_string()].into_iter().collect();
        let mut subs = point
            .iter()
            .map(|c| Poly::constant(f, tring.clone(), c.embed(f)?))
            .collect::<Result<Vec<_>, _>>()?;
        subs.push(Poly::var(f, tring, 0));
        self.images.iter().map(|img| img.compose(&subs)).collect()
    }
}

impl fmt::Display for FlowMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, img) in self.source.iter().zip(&self.images) {
            writeln!(f, "{v} -> {img}")?;
        }
        Ok(())
    }
}

/// The derivation `∂u = 0, ∂v = ∂p/∂x_1, ∂x_1 = u, ∂x_i = 0 (i ≥ 2)` on
/// `ℂ[u, v, x_1, …]`, which kills `uv − p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suspension {
    pub derivation: Derivation,
    pub relation: Poly,
}

pub fn build_suspension(p: &Poly) -> Result<Suspension, Error> {
    if p.is_constant() {
        return Err(invalid("p must be non-constant"));
    }
    if p.nvars() == 0 {
        return Err(invalid("p needs at least one variable"));
    }
    if p.vars().iter().any(|v| v == "u" || v == "v") {
        return Err(invalid("variables u and v are reserved for the suspension"));
    }
    let f = p.field();
    let ring: Vars = ["u", "v"]
        .iter()
        .map(|s| s.to_string())
        .chain(p.vars().iter().cloned())
        .collect();
    let u = Poly::var(f, ring.clone(), 0);
    let v = Poly::var(f, ring.clone(), 1);
    let p_big = p.remap(&ring)?;
    let mut images = vec![Poly::zero(f, ring.clone()); ring.len()];
    images[1] = p.derivative(0).remap(&ring)?;
    images[2] = u.clone();
    Ok(Suspension {
        derivation: Derivation::new(f, ring, images)?,
        relation: u.try_mul(&v)?.try_sub(&p_big)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Every relation vanishes identically along the orbit.
    pub on_variety: bool,
    /// The orbit never meets the avoided point (over ℂ).
    pub avoids: bool,
    /// Common factor of the coordinate differences when the orbit can meet
    /// the point: `0` for a constant orbit at the point, otherwise a
    /// non-constant polynomial whose roots are the meeting times.
    pub common_factor: Option<Poly>,
    pub orbit: Vec<Poly>,
}

pub fn orbit_avoids(
    flow: &FlowMap,
    relations: &[Poly],
    avoid: &[Scalar],
    start: &[Scalar],
) -> Result<OrbitReport, Error> {
    if avoid.len() != flow.source.len() {
        return Err(invalid("avoided point has the wrong number of coordinates"));
    }
    let f = flow.field();
    for r in relations {
        if r.vars() != &flow.source {
            return Err(Error::VariableMismatch);
        }
        if !r.embed(f)?.eval(start)?.is_zero() {
            return Err(invalid("start point does not lie on the variety"));
        }
    }
    let orbit = flow.orbit(start)?;
    let mut on_variety = true;
    for r in relations {
        if !r.embed(f)?.compose(&orbit)?.is_zero() {
            on_variety = false;
        }
    }
    let tring = orbit[0].vars().clone();
    let mut g = Poly::zero(f, tring.clone());
    for (o, a) in orbit.iter().zip(avoid) {
        let diff = o.try_sub(&Poly::constant(f, tring.clone(), a.embed(f)?)?)?;
        g = poly_gcd(&g, &diff)?;
    }
    let avoids = !g.is_zero() && g.is_constant();
    Ok(OrbitReport {
        on_variety,
        avoids,
        common_factor: (!avoids).then_some(g),
        orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::vars;

    fn q() -> Field {
        Field::Rational
    }

    fn xy() -> Vars {
        vars(&["X", "Y"])
    }

    fn var(v: &Vars, i: usize) -> Poly {
        Poly::var(q(), v.clone(), i)
    }

    fn int(c: i64) -> Scalar {
        Scalar::from_int(q(), c)
    }

    fn x_dy(e: u32) -> Derivation {
        let v = xy();
        Derivation::new(q(), v.clone(), vec![Poly::zero(q(), v.clone()), var(&v, 0).pow(e).unwrap()]).unwrap()
    }

    #[test]
    fn leibniz_on_square() {
        let d = x_dy(3);
        let y2 = var(&xy(), 1).pow(2).unwrap();
        let expected = var(&xy(), 0).pow(3).unwrap().try_mul(&var(&xy(), 1)).unwrap().scale(&int(2)).unwrap();
        assert_eq!(d.apply(&y2).unwrap(), expected);
        let c = Poly::constant(q(), xy(), int(7)).unwrap();
        assert!(d.apply(&c).unwrap().is_zero());
    }

    #[test]
    fn triangular_is_nilpotent() {
        let v = is_locally_nilpotent(&x_dy(1), 10).unwrap();
        assert_eq!(v.status, NilpotencyStatus::Nilpotent);
        assert_eq!(v.steps, [Some(1), Some(2)]);
    }

    #[test]
    fn euler_is_not_nilpotent() {
        let v = xy();
        let d = Derivation::new(q(), v.clone(), vec![Poly::zero(q(), v.clone()), var(&v, 1)]).unwrap();
        assert_eq!(is_locally_nilpotent(&d, 10).unwrap().status, NilpotencyStatus::NotNilpotent);
    }

    #[test]
    fn inconclusive_when_cap_too_small() {
        let d = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 0, 0, 0, 1])).unwrap().derivation;
        let v = is_locally_nilpotent(&d, 2).unwrap();
        assert_eq!(v.status, NilpotencyStatus::Inconclusive);
        assert!(exp_flow(&d, 2).is_err());
    }

    #[test]
    fn cubic_suspension_steps() {
        let s = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 0, 1])).unwrap();
        let v = is_locally_nilpotent(&s.derivation, 5).unwrap();
        assert_eq!(v.status, NilpotencyStatus::Nilpotent);
        // u, v, x1
        assert_eq!(v.steps, [Some(1), Some(4), Some(2)]);
    }

    #[test]
    fn suspension_kills_relation() {
        let p = Poly::univariate(q(), "x1", &[0, 0, 1]);
        let s = build_suspension(&p).unwrap();
        assert!(s.derivation.apply(&s.relation).unwrap().is_zero());
        assert!(build_suspension(&Poly::univariate(q(), "x1", &[3])).is_err());
        assert!(build_suspension(&Poly::univariate(q(), "u", &[0, 1])).is_err());
    }

    #[test]
    fn two_variable_suspension() {
        let v = vars(&["x1", "x2"]);
        let p = &var(&v, 0).pow(3).unwrap() + &var(&v, 1).pow(3).unwrap();
        let s = build_suspension(&p).unwrap();
        assert_eq!(s.derivation.image(1).to_string(), "3*x1^2");
        assert_eq!(s.derivation.image(2).to_string(), "u");
        assert!(s.derivation.image(3).is_zero());
    }

    #[test]
    fn flow_of_x_dy() {
        let flow = exp_flow(&x_dy(1), 10).unwrap();
        assert_eq!(flow.images()[0].to_string(), "X");
        assert_eq!(flow.images()[1].to_string(), "X*t + Y");
        assert!(flow.is_identity_at_zero().unwrap());
        assert!(flow.satisfies_group_law().unwrap());
    }

    #[test]
    fn suspension_flow() {
        let s = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 1])).unwrap();
        let flow = exp_flow(&s.derivation, 10).unwrap();
        assert_eq!(flow.images()[0].to_string(), "u");
        assert_eq!(flow.images()[1].to_string(), "u*t^2 + 2*x1*t + v");
        assert_eq!(flow.images()[2].to_string(), "u*t + x1");
        assert!(flow.preserves(&s.relation).unwrap());
        assert!(flow.satisfies_group_law().unwrap());
    }

    #[test]
    fn orbit_through_one_one_one() {
        let s = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 1])).unwrap();
        let flow = exp_flow(&s.derivation, 10).unwrap();
        let r = orbit_avoids(&flow, &[s.relation.clone()], &[int(0), int(0), int(0)], &[int(1), int(1), int(1)]).unwrap();
        assert!(r.on_variety);
        assert!(r.avoids);
        assert!(r.common_factor.is_none());
        // off the variety
        assert!(orbit_avoids(&flow, &[s.relation], &[int(0), int(0), int(0)], &[int(1), int(2), int(1)]).is_err());
    }

    #[test]
    fn constant_orbit_at_avoided_point() {
        let s = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 1])).unwrap();
        let flow = exp_flow(&s.derivation, 10).unwrap();
        let origin = [int(0), int(0), int(0)];
        let r = orbit_avoids(&flow, &[s.relation], &origin, &origin).unwrap();
        assert!(!r.avoids);
        assert!(r.common_factor.unwrap().is_zero());
    }

    #[test]
    fn orbit_meeting_point_at_finite_time() {
        // orbit (1, t^2, t) reaches (1, 1, 1) at t = 1
        let s = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 1])).unwrap();
        let flow = exp_flow(&s.derivation, 10).unwrap();
        let r = orbit_avoids(&flow, &[s.relation], &[int(1), int(1), int(1)], &[int(1), int(0), int(0)]).unwrap();
        assert!(!r.avoids);
        assert_eq!(r.common_factor.unwrap().to_string(), "t - 1");
    }

    #[test]
    fn homogeneous_decomposition() {
        let v = xy();
        let d = x_dy(1);
        let parts = homogeneous_parts(&d, &[1, 1]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 0);

        let img = &var(&v, 0).pow(2).unwrap() + &var(&v, 0);
        let d = Derivation::new(q(), v.clone(), vec![Poly::zero(q(), v.clone()), img]).unwrap();
        let parts = homogeneous_parts(&d, &[1, 1]).unwrap();
        assert_eq!(parts.iter().map(|p| p.0).collect::<Vec<_>>(), [0, 1]);
        let sum = parts[0].1.try_add(&parts[1].1).unwrap();
        assert_eq!(sum, d);
    }

    #[test]
    fn suspension_parts_unit_weights() {
        let s = build_suspension(&Poly::univariate(q(), "x1", &[0, 0, 1])).unwrap();
        let parts = homogeneous_parts(&s.derivation, &[1, 1, 1]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 0);
        assert_eq!(parts[0].1, s.derivation);
    }

    #[test]
    fn gradings() {
        assert!(!truly_different(&[1, 1], &[2, 2]).unwrap());
        assert!(truly_different(&[2, 3], &[3, 2]).unwrap());
        assert!(!truly_different(&[21, 14, 6], &[63, 42, 18]).unwrap());
        assert!(truly_different(&[1], &[1, 2]).is_err());
    }
}
