//! Counting `a ∈ ℕ^k` with `Σ a_j·w_j ≤ X` (or `= ν`) without enumeration.
//!
//! Two weights reduce to a floor sum; more weights recurse on the largest
//! weight, so three weights cost `O(X / w_max · log)`.

use crate::error::Error;
use alloc::vec::Vec;

fn ovf() -> Error {
    Error::Overflow("lattice count")
}

/// `Σ_{i=0}^{n−1} ⌊(a·i + b) / m⌋` for `m > 0`.
pub fn floor_sum(mut n: u128, mut m: u128, mut a: u128, mut b: u128) -> Result<u128, Error> {
    let mut ans: u128 = 0;
    loop {
        if a >= m {
            let tri = if n == 0 {
                0
            } else if n % 2 == 0 {
                (n / 2).checked_mul(n - 1).ok_or_else(ovf)?
            } else {
                n.checked_mul((n - 1) / 2).ok_or_else(ovf)?
            };
            ans = tri
                .checked_mul(a / m)
                .and_then(|x| ans.checked_add(x))
                .ok_or_else(ovf)?;
            a %= m;
        }
        if b >= m {
            ans = n
                .checked_mul(b / m)
                .and_then(|x| ans.checked_add(x))
                .ok_or_else(ovf)?;
            b %= m;
        }
        let y_max = a.checked_mul(n).and_then(|x| x.checked_add(b)).ok_or_else(ovf)?;
        if y_max < m {
            break;
        }
        n = y_max / m;
        b = y_max % m;
        core::mem::swap(&mut m, &mut a);
    }
    Ok(ans)
}

fn upto_sorted(w: &[u64], x: u128) -> Result<u128, Error> {
    match w {
        [] => Ok(1),
        [w0] => Ok(x / *w0 as u128 + 1),
        [w1, w2] => {
            let (w1, w2) = (*w1 as u128, *w2 as u128);
            let top = x / w1;
            let r = x - top * w1;
            floor_sum(top + 1, w2, w1, r)?
                .checked_add(top + 1)
                .ok_or_else(ovf)
        }
        [w0, rest @ ..] => {
            let w0 = *w0 as u128;
            let mut total: u128 = 0;
            let mut left = x;
            loop {
                total = total
                    .checked_add(upto_sorted(rest, left)?)
                    .ok_or_else(ovf)?;
                if left < w0 {
                    break;
                }
                left -= w0;
            }
            Ok(total)
        }
    }
}

/// `#{a ∈ ℕ^k : Σ a_j·w_j ≤ bound}`, zero for negative bounds. Weights must
/// be positive.
pub fn count_upto(weights: &[u64], bound: i128) -> Result<u128, Error> {
    if bound < 0 {
        return Ok(0);
    }
    debug_assert!(weights.iter().all(|&w| w > 0));
    let mut w: Vec<u64> = weights.to_vec();
    w.sort_unstable_by(|a, b| b.cmp(a));
    upto_sorted(&w, bound as u128)
}

/// `#{a ∈ ℕ^k : Σ a_j·w_j = nu}`.
pub fn count_exact(weights: &[u64], nu: i128) -> Result<u128, Error> {
    if nu < 0 {
        return Ok(0);
    }
    Ok(count_upto(weights, nu)? - count_upto(weights, nu - 1)?)
}

/// `#{a ∈ ℕ^k : Σ a_j·w_j ≤ bound, a_j < caps_j}` where `caps_j = None`
/// leaves `a_j` unbounded.
pub fn count_upto_capped(weights: &[u64], caps: &[Option<u64>], bound: i128) -> Result<u128, Error> {
    if bound < 0 {
        return Ok(0);
    }
    debug_assert_eq!(weights.len(), caps.len());
    let mut capped = Vec::new();
    let mut free = Vec::new();
    for (&w, &c) in weights.iter().zip(caps) {
        match c {
            Some(0) => return Ok(0),
            Some(c) => capped.push((w as u128, c as u128)),
            None => free.push(w),
        }
    }
    free.sort_unstable_by(|a, b| b.cmp(a));
    capped_rec(&capped, &free, bound as u128)
}

fn capped_rec(capped: &[(u128, u128)], free: &[u64], x: u128) -> Result<u128, Error> {
    let Some((&(w, cap), rest)) = capped.split_first() else {
        return upto_sorted(free, x);
    };
    let mut total: u128 = 0;
    for a in 0..cap.min(x / w + 1) {
        total = total
            .checked_add(capped_rec(rest, free, x - a * w)?)
            .ok_or_else(ovf)?;
    }
    Ok(total)
}

/// `#{a : Σ a_j·w_j = nu, a_j < caps_j}`.
pub fn count_exact_capped(weights: &[u64], caps: &[Option<u64>], nu: i128) -> Result<u128, Error> {
    if nu < 0 {
        return Ok(0);
    }
    Ok(count_upto_capped(weights, caps, nu)? - count_upto_capped(weights, caps, nu - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_floor_sum(n: u128, m: u128, a: u128, b: u128) -> u128 {
        (0..n).map(|i| (a * i + b) / m).sum()
    }

    #[test]
    fn floor_sum_matches_naive() {
        for n in 0..20 {
            for m in 1..9 {
                for a in 0..12 {
                    for b in 0..12 {
                        assert_eq!(floor_sum(n, m, a, b).unwrap(), naive_floor_sum(n, m, a, b));
                    }
                }
            }
        }
    }

    fn brute(weights: &[u64], nu: u64) -> u128 {
        fn go(w: &[u64], left: u64) -> u128 {
            match w.split_first() {
                None => (left == 0) as u128,
                Some((&w0, rest)) => (0..=left / w0).map(|a| go(rest, left - a * w0)).sum(),
            }
        }
        go(weights, nu)
    }

    #[test]
    fn exact_counts_match_enumeration() {
        for weights in [&[1u64, 1][..], &[2, 3], &[21, 14, 6], &[5, 3, 7, 2], &[4]] {
            for nu in 0..60 {
                assert_eq!(count_exact(weights, nu as i128).unwrap(), brute(weights, nu));
            }
        }
    }

    #[test]
    fn capped_counts_match_enumeration() {
        fn go(w: &[u64], caps: &[Option<u64>], left: u64) -> u128 {
            match (w.split_first(), caps.split_first()) {
                (Some((&w0, rest)), Some((&c, crest))) => (0..=left / w0)
                    .filter(|&a| c.map_or(true, |c| a < c))
                    .map(|a| go(rest, crest, left - a * w0))
                    .sum(),
                _ => (left == 0) as u128,
            }
        }
        let cases: [(&[u64], &[Option<u64>]); 4] = [
            (&[21, 14, 6], &[Some(2), None, None]),
            (&[3, 5], &[Some(4), Some(3)]),
            (&[2, 2, 3, 7], &[None, Some(5), None, Some(1)]),
            (&[4], &[Some(0)]),
        ];
        for (w, caps) in cases {
            for nu in 0..80 {
                assert_eq!(count_exact_capped(w, caps, nu as i128).unwrap(), go(w, caps, nu), "{w:?} {nu}");
            }
        }
    }

    #[test]
    fn negative_bound() {
        assert_eq!(count_upto(&[1, 2], -1).unwrap(), 0);
        assert_eq!(count_exact(&[1, 2], -5).unwrap(), 0);
        assert_eq!(count_upto(&[], 0).unwrap(), 1);
    }
}
