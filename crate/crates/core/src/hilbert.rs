//! Plurigenera and Kodaira dimension of quasihomogeneous complete
//! intersections.
//!
//! For `V = Spec A` cut out in `ℂ^{n+s}` by quasihomogeneous polynomials of
//! degrees `d_1..d_s` with respect to weights `w_1..w_{n+s}`, the dualizing
//! module is `A` shifted by the normal degree `N = Σ d_i − Σ w_j`. Everything
//! below reduces to graded dimensions `dim A_ν`, which are the coefficients
//! of `Π(1 − t^{d_i}) / Π(1 − t^{w_j})`:
//!
//! - `δ_m  = Σ_{ν ≤ 0} dim A_{ν + mN} = Σ_{μ=0}^{mN} dim A_μ`
//! - `p̄_m  = dim A_{mN}`
//! - `k̄    = −∞, 0, dim V − 1` as `N < 0, = 0, > 0`
//!
//! Graded dimensions are evaluated by inclusion–exclusion over the degrees
//! on top of the lattice-point counter in [`crate::exactmath::lattice`], so
//! large indices such as `20·N` for big Pham-Brieskorn triples stay cheap.

use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::error::{invalid, Error};
use crate::exactmath::lattice::{count_exact, count_exact_capped, count_upto, count_upto_capped};
use crate::exactmath::series::{series_coeffs, SeriesSpec};

/// Weights and degrees of a quasihomogeneous complete intersection.
///
/// That the origin is an isolated singularity is a modelling assumption of
/// the caller; it is echoed in every report and never verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCI {
    weights: Vec<u64>,
    degrees: Vec<u64>,
}

impl WeightedCI {
    pub fn new(weights: Vec<u64>, degrees: Vec<u64>) -> Result<Self, Error> {
        if weights.iter().chain(&degrees).any(|&x| x == 0) {
            return Err(invalid("weights and degrees must be positive"));
        }
        if weights.len() <= degrees.len() {
            return Err(invalid("need more weights than degrees (dim V >= 1)"));
        }
        if degrees.len() > 16 {
            return Err(invalid("at most 16 defining equations are supported"));
        }
        Ok(WeightedCI { weights, degrees })
    }

    pub fn hypersurface(weights: Vec<u64>, degree: u64) -> Result<Self, Error> {
        WeightedCI::new(weights, alloc::vec![degree])
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `n = dim V`.
    pub fn dim(&self) -> usize {
        self.weights.len() - self.degrees.len()
    }

    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    fn with_extra_weight(&self, w: u64) -> WeightedCI {
        let mut weights = self.weights.clone();
        weights.push(w);
        WeightedCI {
            weights,
            degrees: self.degrees.clone(),
        }
    }

    /// Signed degree shifts `Σ_{i∈J} d_i` over all subsets `J`.
    fn shifts(&self) -> impl Iterator<Item = (i128, bool)> + '_ {
        (0u32..1 << self.degrees.len()).map(move |mask| {
            let shift = self
                .degrees
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &d)| d as i128)
                .sum();
            (shift, mask.count_ones() % 2 == 1)
        })
    }
}

/// `N_A = Σ d_i − Σ w_j`.
pub fn normal_degree(ci: &WeightedCI) -> i128 {
    ci.degrees.iter().map(|&d| d as i128).sum::<i128>()
        - ci.weights.iter().map(|&w| w as i128).sum::<i128>()
}

fn signed_sum<F>(ci: &WeightedCI, at: i128, count: F) -> Result<u128, Error>
where
    F: Fn(&[u64], i128) -> Result<u128, Error>,
{
    let mut acc: i128 = 0;
    for (shift, odd) in ci.shifts() {
        let c = count(&ci.weights, at - shift)?;
        let c = i128::try_from(c).map_err(|_| Error::Overflow("graded dimension"))?;
        acc = if odd { acc.checked_sub(c) } else { acc.checked_add(c) }
            .ok_or(Error::Overflow("graded dimension"))?;
    }
    u128::try_from(acc).map_err(|_| Error::NotRegular(at.max(0) as u64))
}

/// Pairs every degree `d_i` with a distinct weight `w_j` dividing it, if
/// possible. Then `(1 − t^{d_i}) / (1 − t^{w_j})` is a finite sum and the
/// graded pieces count monomials with `a_j < d_i / w_j`.
fn degree_caps(ci: &WeightedCI) -> Option<Vec<Option<u64>>> {
    fn assign(ci: &WeightedCI, i: usize, caps: &mut Vec<Option<u64>>) -> bool {
        let Some(&d) = ci.degrees.get(i) else {
            return true;
        };
        for j in 0..ci.weights.len() {
            let w = ci.weights[j];
            if caps[j].is_none() && d % w == 0 {
                caps[j] = Some(d / w);
                if assign(ci, i + 1, caps) {
                    return true;
                }
                caps[j] = None;
            }
        }
        false
    }
    let mut caps = alloc::vec![None; ci.weights.len()];
    assign(ci, 0, &mut caps).then_some(caps)
}

/// `dim A_ν`; zero for `ν < 0`.
pub fn graded_dim(ci: &WeightedCI, nu: i128) -> Result<u128, Error> {
    if nu < 0 {
        return Ok(0);
    }
    match degree_caps(ci) {
        Some(caps) => count_exact_capped(&ci.weights, &caps, nu),
        None => signed_sum(ci, nu, count_exact),
    }
}

/// `Σ_{μ=0}^{bound} dim A_μ`; zero for `bound < 0`.
pub fn cumulative_dim(ci: &WeightedCI, bound: i128) -> Result<u128, Error> {
    if bound < 0 {
        return Ok(0);
    }
    match degree_caps(ci) {
        Some(caps) => count_upto_capped(&ci.weights, &caps, bound),
        None => signed_sum(ci, bound, count_upto),
    }
}

fn check_mmax(m_max: u32) -> Result<(), Error> {
    if m_max == 0 {
        return Err(invalid("m_max must be at least 1"));
    }
    Ok(())
}

fn mult(m: u32, n: i128) -> Result<i128, Error> {
    (m as i128).checked_mul(n).ok_or(Error::Overflow("m * N"))
}

/// `δ_1..δ_{m_max}`.
pub fn delta_table(ci: &WeightedCI, m_max: u32) -> Result<Vec<u128>, Error> {
    check_mmax(m_max)?;
    let n = normal_degree(ci);
    (1..=m_max).map(|m| cumulative_dim(ci, mult(m, n)?)).collect()
}

/// `p̄_1..p̄_{m_max}`.
pub fn pbar_table(ci: &WeightedCI, m_max: u32) -> Result<Vec<u128>, Error> {
    check_mmax(m_max)?;
    let n = normal_degree(ci);
    (1..=m_max).map(|m| graded_dim(ci, mult(m, n)?)).collect()
}

/// Logarithmic Kodaira dimension of `V ∖ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogKodaira {
    NegInfinity,
    Finite(u32),
}

impl fmt::Display for LogKodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogKodaira::NegInfinity => f.write_str("-inf"),
            LogKodaira::Finite(k) => write!(f, "{k}"),
        }
    }
}

pub fn log_kodaira(ci: &WeightedCI) -> LogKodaira {
    match normal_degree(ci) {
        n if n < 0 => LogKodaira::NegInfinity,
        0 => LogKodaira::Finite(0),
        _ => LogKodaira::Finite(ci.dim() as u32 - 1),
    }
}

/// Decisions that only make sense for surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceFlags {
    /// `(ω_A)_0 = A_N = 0`, equivalent to quasirationality in dimension 2.
    pub quasirational_form_test: bool,
    /// `δ_m = 0` for all `m`. For complete intersections this is `N < 0`:
    /// once `mN ≥ 0` the sum defining `δ_m` contains `dim A_0 = 1`.
    pub is_quotient: bool,
}

pub fn surface_flags(ci: &WeightedCI) -> Result<SurfaceFlags, Error> {
    if ci.dim() != 2 {
        return Err(Error::NotSurface(ci.dim()));
    }
    let n = normal_degree(ci);
    Ok(SurfaceFlags {
        quasirational_form_test: graded_dim(ci, n)? == 0,
        is_quotient: n < 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIReport {
    pub normal_degree: i128,
    pub dim: usize,
    pub is_rational: bool,
    pub log_kodaira: LogKodaira,
    pub delta_table: Vec<u128>,
    pub pbar_table: Vec<u128>,
    /// `None` unless `dim V = 2`.
    pub quasirational_form_test: Option<bool>,
    /// `None` unless `dim V = 2`.
    pub is_quotient_surface: Option<bool>,
    pub isolated_singularity_assumed: bool,
}

pub fn classify_ci(ci: &WeightedCI, m_max: u32) -> Result<CIReport, Error> {
    let n = normal_degree(ci);
    let surface = match surface_flags(ci) {
        Ok(f) => Some(f),
        Err(Error::NotSurface(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(CIReport {
        normal_degree: n,
        dim: ci.dim(),
        is_rational: n < 0,
        log_kodaira: log_kodaira(ci),
        delta_table: delta_table(ci, m_max)?,
        pbar_table: pbar_table(ci, m_max)?,
        quasirational_form_test: surface.map(|f| f.quasirational_form_test),
        is_quotient_surface: surface.map(|f| f.is_quotient),
        isolated_singularity_assumed: true,
    })
}

/// Invariants of `W = V / ℤ_d`, whose coordinate ring is the Veronese
/// subring `⊕ A_{id}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseReport {
    pub d: u64,
    pub delta_table: Vec<u128>,
    pub pbar_table: Vec<u128>,
    pub is_rational: bool,
    pub is_quotient: bool,
    pub log_kodaira: LogKodaira,
    /// Smallest `d ≥ 1` for which `V / ℤ_d` is rational, `None` if no `d`
    /// works (that happens exactly when `A_N ≠ 0`).
    pub minimal_rational_d: Option<u64>,
}

/// `Σ_{k ≥ 0} dim A_{x − k·d}`, i.e. the degree-`x` coefficient of the
/// Hilbert series with an extra factor `1/(1 − t^d)`.
fn veronese_sum(ci: &WeightedCI, d: u64, x: i128) -> Result<u128, Error> {
    if d == 1 {
        cumulative_dim(ci, x)
    } else {
        graded_dim(&ci.with_extra_weight(d), x)
    }
}

pub fn veronese_analysis(ci: &WeightedCI, d: u64, m_max: u32) -> Result<VeroneseReport, Error> {
    if ci.dim() != 2 {
        return Err(Error::NotSurface(ci.dim()));
    }
    if d == 0 {
        return Err(invalid("Veronese order must be positive"));
    }
    check_mmax(m_max)?;
    let n = normal_degree(ci);
    let delta = (1..=m_max)
        .map(|m| veronese_sum(ci, d, mult(m, n)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VeroneseReport {
        d,
        is_rational: veronese_sum(ci, d, n)? == 0,
        delta_table: delta,
        pbar_table: pbar_table(ci, m_max)?,
        is_quotient: n < 0,
        log_kodaira: log_kodaira(ci),
        minimal_rational_d: minimal_rational_veronese(ci)?,
    })
}

/// Largest normal degree for which the minimal Veronese order is searched.
pub const MAX_VERONESE_SEARCH: i128 = 1 << 22;

/// Smallest `d` with `dim A_{N − k·d} = 0` for every `k ≥ 0` with
/// non-negative index.
pub fn minimal_rational_veronese(ci: &WeightedCI) -> Result<Option<u64>, Error> {
    let n = normal_degree(ci);
    if n < 0 {
        return Ok(Some(1));
    }
    if graded_dim(ci, n)? != 0 {
        return Ok(None);
    }
    if n > MAX_VERONESE_SEARCH {
        return Err(invalid("normal degree too large for the Veronese search"));
    }
    let n = n as usize;
    let spec = SeriesSpec::new(ci.degrees.clone(), ci.weights.clone(), n)?;
    let vanishes: Vec<bool> = series_coeffs(&spec)?
        .iter()
        .map(|c| c.to_u8() == Some(0))
        .collect();
    // d = n + 1 leaves only the index N itself, which vanishes
    let d = (1..=n + 1)
        .find(|&d| (d..=n).step_by(d).all(|kd| vanishes[n - kd]))
        .expect("d = N + 1 always qualifies");
    Ok(Some(d as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn triple(p: u64, q: u64, r: u64) -> WeightedCI {
        WeightedCI::hypersurface(vec![q * r, p * r, p * q], p * q * r).unwrap()
    }

    #[test]
    fn normal_degrees() {
        assert_eq!(normal_degree(&triple(2, 3, 5)), -1);
        assert_eq!(normal_degree(&triple(2, 3, 7)), 1);
        for (m, d) in [(2u64, 3u64), (3, 3), (5, 7), (2, 1)] {
            let ci = WeightedCI::hypersurface(vec![m, m, d], m * d).unwrap();
            assert_eq!(normal_degree(&ci), (d as i128 - 2) * m as i128 - d as i128);
        }
    }

    #[test]
    fn capped_counts_agree_with_inclusion_exclusion() {
        let cis = [
            triple(2, 3, 7),
            triple(4, 6, 9),
            WeightedCI::new(vec![1, 1, 1, 1], vec![2, 2]).unwrap(),
            WeightedCI::new(vec![6, 4, 3, 5], vec![12, 10]).unwrap(),
        ];
        for ci in cis {
            assert!(degree_caps(&ci).is_some());
            for nu in 0..300 {
                assert_eq!(graded_dim(&ci, nu).unwrap(), signed_sum(&ci, nu, count_exact).unwrap());
                assert_eq!(cumulative_dim(&ci, nu).unwrap(), signed_sum(&ci, nu, count_upto).unwrap());
            }
        }
        assert!(degree_caps(&WeightedCI::hypersurface(vec![2, 3, 5], 7).unwrap()).is_none());
    }

    #[test]
    fn graded_dims() {
        let ci = triple(2, 3, 7);
        assert_eq!(graded_dim(&ci, 6).unwrap(), 1);
        assert_eq!(graded_dim(&ci, 0).unwrap(), 1);
        assert_eq!(graded_dim(&ci, -3).unwrap(), 0);
        let ci = WeightedCI::hypersurface(vec![12, 8, 6], 48).unwrap();
        assert_eq!(graded_dim(&ci, 4).unwrap(), 0);
    }

    #[test]
    fn delta_and_pbar_for_237() {
        let ci = triple(2, 3, 7);
        assert_eq!(delta_table(&ci, 1).unwrap(), [1]);
        assert_eq!(pbar_table(&ci, 6).unwrap()[5], 1);
    }

    #[test]
    fn negative_normal_degree_gives_zero_tables() {
        let ci = triple(2, 3, 5);
        assert!(delta_table(&ci, 20).unwrap().iter().all(|&x| x == 0));
        assert!(pbar_table(&ci, 20).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn zero_normal_degree_pbar_all_ones() {
        let ci = WeightedCI::hypersurface(vec![18, 12, 6], 36).unwrap();
        assert!(pbar_table(&ci, 10).unwrap().iter().all(|&x| x == 1));
    }

    #[test]
    fn log_kodaira_trichotomy() {
        assert_eq!(log_kodaira(&triple(2, 3, 5)), LogKodaira::NegInfinity);
        assert_eq!(log_kodaira(&triple(2, 3, 6)), LogKodaira::Finite(0));
        assert_eq!(log_kodaira(&triple(2, 3, 7)), LogKodaira::Finite(1));
    }

    #[test]
    fn classify_examples() {
        let r = classify_ci(&triple(2, 3, 7), 12).unwrap();
        assert!(!r.is_rational);
        assert_eq!(r.is_quotient_surface, Some(false));
        assert_eq!(r.quasirational_form_test, Some(true));
        assert_eq!(r.log_kodaira, LogKodaira::Finite(1));

        let r = classify_ci(&WeightedCI::hypersurface(vec![10, 10, 4], 20).unwrap(), 12).unwrap();
        assert_eq!(r.normal_degree, -4);
        assert!(r.is_rational);
        assert_eq!(r.is_quotient_surface, Some(true));

        let r = classify_ci(&triple(2, 4, 8), 12).unwrap();
        assert_eq!(r.quasirational_form_test, Some(false));
        assert_eq!(graded_dim(&triple(2, 4, 8), 8).unwrap(), 1);
    }

    #[test]
    fn surface_only_flags() {
        let threefold = WeightedCI::hypersurface(vec![1, 1, 1, 1], 3).unwrap();
        assert_eq!(surface_flags(&threefold), Err(Error::NotSurface(3)));
        let r = classify_ci(&threefold, 3).unwrap();
        assert_eq!(r.quasirational_form_test, None);
        assert!(r.is_rational);
    }

    #[test]
    fn veronese_237() {
        let r = veronese_analysis(&triple(2, 3, 7), 2, 12).unwrap();
        assert!(r.is_rational);
        assert!(!r.is_quotient);
        assert_eq!(r.log_kodaira, LogKodaira::Finite(1));
        assert_eq!(r.minimal_rational_d, Some(2));
        assert_eq!(veronese_analysis(&triple(2, 3, 7), 1, 1).unwrap().is_rational, false);
    }

    #[test]
    fn veronese_platonic_and_zero_degree() {
        for d in 2..6 {
            assert!(veronese_analysis(&triple(2, 3, 5), d, 4).unwrap().is_quotient);
            assert!(!veronese_analysis(&triple(3, 3, 3), d, 4).unwrap().is_rational);
        }
        assert_eq!(minimal_rational_veronese(&triple(3, 3, 3)).unwrap(), None);
    }

    #[test]
    fn veronese_d1_reproduces_delta() {
        for ci in [triple(2, 3, 7), triple(2, 5, 6), triple(3, 4, 5)] {
            assert_eq!(
                veronese_analysis(&ci, 1, 8).unwrap().delta_table,
                delta_table(&ci, 8).unwrap()
            );
        }
    }

    #[test]
    fn validation() {
        assert!(WeightedCI::new(vec![1, 0], vec![]).is_err());
        assert!(WeightedCI::new(vec![1], vec![2]).is_err());
        assert!(delta_table(&triple(2, 3, 5), 0).is_err());
        let threefold = WeightedCI::hypersurface(vec![1, 1, 1, 1], 3).unwrap();
        assert_eq!(veronese_analysis(&threefold, 2, 1), Err(Error::NotSurface(3)));
    }
}
