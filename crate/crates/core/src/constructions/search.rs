//! Exhaustive minimum-threshold search, used as an oracle for the closed-form
//! constructions.

use itertools::Itertools;

use super::{matdot_d, Kind, Method, SolutionPair};
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Largest candidate count the search will enumerate.
pub const SEARCH_GUARD: f64 = 1e7;

/// 2c + 2(m + n), enough room for the trivial constructions.
pub fn default_search_bound(s: &NumericalSemigroup, m: u32, n: u32) -> u32 {
    2 * s.conductor() + 2 * (m + n)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Minimum-threshold solution with D_A, D_B ⊆ S ∩ [0, bound], ties broken by
/// the lexicographically smallest (D_A, D_B). For matdot, `n` is ignored.
pub fn brute_force_optimal(s: &NumericalSemigroup, kind: Kind, m: u32, n: u32, bound: u32) -> Result<SolutionPair> {
    let elems = s.elements_in(0, bound);
    let (m_us, n_us) = (m as usize, n as usize);
    if m == 0 || (kind == Kind::Poly && n == 0) {
        return Err(Error::SizeMismatch("set sizes must be at least 1".into()));
    }
    match kind {
        Kind::Poly => {
            let size = binomial(elems.len(), m_us) * binomial(elems.len(), n_us);
            if size > SEARCH_GUARD {
                return Err(Error::SearchSpaceTooLarge { size });
            }
            let (d_a, d_b) = poly_subsets(&elems, m_us, n_us, bound).ok_or(Error::NoSolutionInBound(bound))?;
            SolutionPair::poly(s, Method::Search, &d_a, &d_b)
        }
        Kind::Matdot => {
            let subsets = binomial(elems.len(), m_us).powi(2);
            let best = if subsets <= SEARCH_GUARD {
                matdot_subsets(&elems, m_us)
            } else {
                let windows = (2 * bound as usize + 1) as f64 * elems.len() as f64;
                if windows > SEARCH_GUARD {
                    return Err(Error::SearchSpaceTooLarge { size: subsets });
                }
                matdot_windows(s, &elems, m_us, bound)
            };
            let (d_a, d_b) = best.ok_or(Error::NoSolutionInBound(bound))?;
            SolutionPair::matdot(s, Method::Search, &d_a, &d_b)
        }
    }
}

type Candidate = (u32, Vec<u32>, Vec<u32>);

fn keep_best(best: &mut Option<Candidate>, cand: Candidate) {
    if best.as_ref().is_none_or(|b| cand < *b) {
        *best = Some(cand);
    }
}

/// Bitmask of the positive differences within a sorted set.
fn difference_mask(set: &[u32], words: usize) -> Vec<u64> {
    let mut mask = vec![0u64; words];
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[..i] {
            let d = (a - b) as usize;
            mask[d / 64] |= 1 << (d % 64);
        }
    }
    mask
}

fn poly_subsets(elems: &[u32], m: usize, n: usize, bound: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let words = bound as usize / 64 + 1;
    let b_sets: Vec<(Vec<u32>, Vec<u64>)> = elems
        .iter()
        .copied()
        .combinations(n)
        .map(|b| {
            let mask = difference_mask(&b, words);
            (b, mask)
        })
        .collect();
    let mut best: Option<Candidate> = None;
    for a in elems.iter().copied().combinations(m) {
        let a_mask = difference_mask(&a, words);
        let a_max = *a.last().unwrap();
        for (b, b_mask) in &b_sets {
            let threshold = a_max + b.last().unwrap() + 1;
            if best.as_ref().is_some_and(|x| threshold > x.0) {
                continue;
            }
            if a_mask.iter().zip(b_mask).all(|(x, y)| x & y == 0) {
                keep_best(&mut best, (threshold, a.clone(), b.clone()));
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

fn matdot_subsets(elems: &[u32], m: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let sets: Vec<Vec<u32>> = elems.iter().copied().combinations(m).collect();
    let mut best: Option<Candidate> = None;
    for a in &sets {
        for b in &sets {
            let threshold = a.last().unwrap() + b.last().unwrap() + 1;
            if best.as_ref().is_some_and(|x| threshold > x.0) {
                continue;
            }
            if matdot_d(a, b).is_some() {
                keep_best(&mut best, (threshold, a.clone(), b.clone()));
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

// Reduced search for matdot. With |D_A| = |D_B| = m and exactly m pairs
// summing to d, every a ∈ D_A has its partner d − a in D_B, so D_B = d − D_A
// and D_A ⊆ T_d = {a ∈ E : d − a ∈ E}. Conversely any m-subset of T_d works.
// The threshold max(D_A) − min(D_A) + d + 1 is minimized for a fixed d and
// min(D_A) by taking the next m − 1 elements of T_d, so scanning all (d, start)
// windows visits every optimal solution.
fn matdot_windows(s: &NumericalSemigroup, elems: &[u32], m: usize, bound: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut best: Option<Candidate> = None;
    for d in 0..=2 * bound {
        let t: Vec<u32> = elems
            .iter()
            .copied()
            .filter(|&a| a <= d && d - a <= bound && s.contains(d - a))
            .collect();
        for w in t.windows(m) {
            let threshold = w[m - 1] - w[0] + d + 1;
            if best.as_ref().is_some_and(|x| threshold > x.0) {
                continue;
            }
            let a = w.to_vec();
            let mut b: Vec<u32> = a.iter().map(|&x| d - x).collect();
            b.reverse();
            // The smallest d of this pair may be below the scanned d; the pair
            // is still a valid solution with the same threshold.
            keep_best(&mut best, (threshold, a, b));
        }
    }
    best.map(|(_, a, b)| (a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::matdot_optimal;

    fn sg(g: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn examples() {
        let s = sg(&[2, 3]);
        let p = brute_force_optimal(&s, Kind::Matdot, 4, 0, 12).unwrap();
        assert_eq!(p.threshold(), 11);
        assert_eq!(p.threshold(), matdot_optimal(&s, 4).unwrap().threshold());

        let nat = NumericalSemigroup::naturals();
        assert_eq!(brute_force_optimal(&nat, Kind::Matdot, 2, 0, 4).unwrap().threshold(), 3);
        assert_eq!(brute_force_optimal(&nat, Kind::Poly, 2, 2, 6).unwrap().threshold(), 4);
    }

    #[test]
    fn window_and_subset_paths_agree() {
        for gens in [&[1u32][..], &[2, 3], &[3, 4], &[2, 5], &[3, 5]] {
            let s = sg(gens);
            for m in 1..=4 {
                let bound = 2 * s.conductor() + 2 * m;
                let elems = s.elements_in(0, bound);
                if binomial(elems.len(), m as usize).powi(2) > 1e6 {
                    continue;
                }
                let full = matdot_subsets(&elems, m as usize);
                let fast = matdot_windows(&s, &elems, m as usize, bound);
                assert_eq!(full, fast, "S = {gens:?}, m = {m}");
            }
        }
    }

    #[test]
    fn guard_and_empty() {
        let s = sg(&[3, 4]);
        assert!(matches!(
            brute_force_optimal(&s, Kind::Poly, 6, 6, 200),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
        assert!(matches!(
            brute_force_optimal(&s, Kind::Matdot, 3, 0, 100_000),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
        // Only 0 lies in S ∩ [0, 2], so two elements cannot be chosen.
        assert!(matches!(
            brute_force_optimal(&s, Kind::Poly, 2, 1, 2),
            Err(Error::NoSolutionInBound(2))
        ));
    }
}
