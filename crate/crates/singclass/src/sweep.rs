//! Parallel sweeps over Pham-Brieskorn triples.

use rayon::prelude::*;
use singclass_core::brieskorn::{classify_triple, is_platonic};
use singclass_core::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleSweep {
    pub rmax: u32,
    pub m_max: u32,
    pub triples: usize,
    pub platonic: usize,
    pub quasirational: usize,
    /// Triples where `Σ 1/p > 1`, `N < 0` and `δ_1 = … = δ_{m_max} = 0` do
    /// not all agree.
    pub platonic_disagreements: Vec<[u32; 3]>,
    /// Triples where the coprimality conditions and `dim A_N = 0` disagree.
    pub quasirational_disagreements: Vec<[u32; 3]>,
}

impl TripleSweep {
    pub fn agrees(&self) -> bool {
        self.platonic_disagreements.is_empty() && self.quasirational_disagreements.is_empty()
    }
}

pub fn sorted_triples(rmax: u32) -> Vec<[u32; 3]> {
    (2..=rmax)
        .flat_map(|p| (p..=rmax).flat_map(move |q| (q..=rmax).map(move |r| [p, q, r])))
        .collect()
}

/// Classifies every `2 ≤ p ≤ q ≤ r ≤ rmax` and cross-checks the three
/// Platonic criteria and the two quasirationality criteria.
pub fn triple_sweep(rmax: u32, m_max: u32) -> Result<TripleSweep, Error> {
    let triples = sorted_triples(rmax);
    let rows = triples
        .par_iter()
        .map(|&[p, q, r]| {
            let c = classify_triple(p, q, r, m_max)?;
            let recip = is_platonic(p, q, r);
            let negative = c.normal_degree < 0;
            let deltas_vanish = c.delta_table.iter().all(|&d| d == 0);
            let platonic_ok = recip == negative && negative == deltas_vanish;
            Ok(([p, q, r], recip, c.quasirational, platonic_ok, c.quasirational == c.quasirational_cross_check))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut out = TripleSweep {
        rmax,
        m_max,
        triples: rows.len(),
        ..Default::default()
    };
    for (t, platonic, quasi, platonic_ok, quasi_ok) in rows {
        out.platonic += usize::from(platonic);
        out.quasirational += usize::from(quasi);
        if !platonic_ok {
            out.platonic_disagreements.push(t);
        }
        if !quasi_ok {
            out.quasirational_disagreements.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep() {
        let s = triple_sweep(8, 4).unwrap();
        assert_eq!(s.triples, sorted_triples(8).len());
        assert!(s.agrees());
        // (2,2,2..8), (2,3,3), (2,3,4), (2,3,5)
        assert_eq!(s.platonic, 7 + 3);
    }
}
