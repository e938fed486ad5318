//! Degree-set constructions for polynomial-type and matdot-type codes.
//!
//! A poly solution is a pair (D_A, D_B) of subsets of S whose pairwise sums
//! are all distinct. A matdot solution is a pair of m-subsets with some d that
//! is hit by exactly m pairwise sums. Every builder here re-validates its own
//! output before returning it.

mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

pub use search::{brute_force_optimal, default_search_bound, SEARCH_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Poly,
    Matdot,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Poly => "poly",
            Kind::Matdot => "matdot",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(Kind::Poly),
            "matdot" => Ok(Kind::Matdot),
            other => Err(Error::Parse(format!("unknown code kind '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Classical,
    Trivial,
    Apery,
    Recursive,
    Zero,
    Optimal,
    /// The optimal-matdot set formula evaluated at a caller-chosen δ.
    Delta,
    /// Output of the exhaustive search.
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Classical => "classical",
            Method::Trivial => "trivial",
            Method::Apery => "apery",
            Method::Recursive => "recursive",
            Method::Zero => "zero",
            Method::Optimal => "optimal",
            Method::Delta => "delta",
            Method::Search => "search",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "classical" => Method::Classical,
            "trivial" => Method::Trivial,
            "apery" => Method::Apery,
            "recursive" => Method::Recursive,
            "zero" => Method::Zero,
            "optimal" => Method::Optimal,
            "delta" => Method::Delta,
            "search" => Method::Search,
            other => return Err(Error::Parse(format!("unknown method '{other}'"))),
        })
    }
}

/// A validated pair of degree sets.
#[derive(Clone, Debug)]
pub struct SolutionPair {
    kind: Kind,
    method: Method,
    d_a: Vec<u32>,
    d_b: Vec<u32>,
    d: Option<u32>,
    semigroup: NumericalSemigroup,
}

impl SolutionPair {
    /// Validates a poly pair and wraps it.
    pub fn poly(s: &NumericalSemigroup, method: Method, d_a: &[u32], d_b: &[u32]) -> Result<Self> {
        let (d_a, d_b) = (canonicalize(d_a)?, canonicalize(d_b)?);
        if !validate_poly(s, &d_a, &d_b)? {
            return Err(Error::InvalidSolution("pairwise sums are not distinct".into()));
        }
        Ok(SolutionPair {
            kind: Kind::Poly,
            method,
            d_a,
            d_b,
            d: None,
            semigroup: s.clone(),
        })
    }

    /// Validates a matdot pair and wraps it with its canonical d.
    pub fn matdot(s: &NumericalSemigroup, method: Method, d_a: &[u32], d_b: &[u32]) -> Result<Self> {
        let (d_a, d_b) = (canonicalize(d_a)?, canonicalize(d_b)?);
        let d = validate_matdot(s, &d_a, &d_b)?
            .ok_or_else(|| Error::InvalidSolution("no d is hit by exactly m pairs".into()))?;
        Ok(SolutionPair {
            kind: Kind::Matdot,
            method,
            d_a,
            d_b,
            d: Some(d),
            semigroup: s.clone(),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn d_a(&self) -> &[u32] {
        &self.d_a
    }

    pub fn d_b(&self) -> &[u32] {
        &self.d_b
    }

    pub fn d(&self) -> Option<u32> {
        self.d
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn m(&self) -> u32 {
        self.d_a.len() as u32
    }

    /// |D_B|; equals m for matdot.
    pub fn n(&self) -> u32 {
        self.d_b.len() as u32
    }

    /// max(D_A) + max(D_B) + 1.
    pub fn threshold(&self) -> u32 {
        self.d_a.last().unwrap() + self.d_b.last().unwrap() + 1
    }

    /// For poly: g + mn when that bound applies. For matdot: the optimal
    /// threshold when m ≥ 2c.
    pub fn lower_bound(&self) -> Option<u32> {
        match self.kind {
            Kind::Poly => poly_lower_bound(&self.semigroup, self.m(), self.n()).ok(),
            Kind::Matdot => matdot_optimal_threshold(&self.semigroup, self.m()).ok(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "method": self.method,
            "m": self.m(),
            "n": self.n(),
            "D_A": self.d_a,
            "D_B": self.d_b,
            "d": self.d,
            "threshold": self.threshold(),
            "lower_bound": self.lower_bound(),
            "semigroup": {
                "generators": self.semigroup.generators(),
                "conductor": self.semigroup.conductor(),
            },
        })
    }
}

/// Sorts a degree set, rejecting duplicates and empty input.
pub fn canonicalize(set: &[u32]) -> Result<Vec<u32>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut v = set.to_vec();
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0]));
    }
    Ok(v)
}

fn check_members(s: &NumericalSemigroup, set: &[u32]) -> Result<()> {
    match set.iter().find(|&&x| !s.contains(x)) {
        Some(&x) => Err(Error::NotInSemigroup(x)),
        None => Ok(()),
    }
}

fn differences(set: &[u32]) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[..i] {
            out.insert(a.abs_diff(b));
        }
    }
    out
}

/// True iff all sums a + b over D_A × D_B are distinct.
///
/// Decided by disjointness of the positive difference sets, and cross-checked
/// against the direct pairwise-sum test.
pub fn validate_poly(s: &NumericalSemigroup, d_a: &[u32], d_b: &[u32]) -> Result<bool> {
    let (d_a, d_b) = (canonicalize(d_a)?, canonicalize(d_b)?);
    check_members(s, &d_a)?;
    check_members(s, &d_b)?;
    let by_differences = differences(&d_a).is_disjoint(&differences(&d_b));
    let mut sums = BTreeSet::new();
    let by_sums = d_a.iter().all(|&a| d_b.iter().all(|&b| sums.insert(a + b)));
    assert_eq!(by_differences, by_sums, "difference-set test disagrees with sum test");
    Ok(by_differences)
}

/// The smallest d hit by exactly m = |D_A| = |D_B| sums, if any.
pub fn validate_matdot(s: &NumericalSemigroup, d_a: &[u32], d_b: &[u32]) -> Result<Option<u32>> {
    let (d_a, d_b) = (canonicalize(d_a)?, canonicalize(d_b)?);
    if d_a.len() != d_b.len() {
        return Err(Error::SizeMismatch(format!(
            "|D_A| = {} but |D_B| = {}",
            d_a.len(),
            d_b.len()
        )));
    }
    check_members(s, &d_a)?;
    check_members(s, &d_b)?;
    Ok(matdot_d(&d_a, &d_b))
}

/// Pair-count scan shared with the search; inputs are assumed canonical.
pub(crate) fn matdot_d(d_a: &[u32], d_b: &[u32]) -> Option<u32> {
    let top = (d_a.last()? + d_b.last()?) as usize;
    let mut counts = vec![0usize; top + 1];
    for &a in d_a {
        for &b in d_b {
            counts[(a + b) as usize] += 1;
        }
    }
    counts.iter().position(|&c| c == d_a.len()).map(|d| d as u32)
}

fn check_positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::SizeMismatch(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// Classical polynomial code over S = ℕ: threshold mn.
pub fn poly_classical(m: u32, n: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    let d_a: Vec<u32> = (0..m).collect();
    let d_b: Vec<u32> = (0..n).map(|j| j * m).collect();
    SolutionPair::poly(&NumericalSemigroup::naturals(), Method::Classical, &d_a, &d_b)
}

/// Shift of the classical sets by the conductor: threshold 2c + mn.
pub fn poly_trivial(s: &NumericalSemigroup, m: u32, n: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    let c = s.conductor();
    let d_a: Vec<u32> = (0..m).map(|i| c + i).collect();
    let d_b: Vec<u32> = (0..n).map(|j| c + j * m).collect();
    SolutionPair::poly(s, Method::Trivial, &d_a, &d_b)
}

/// D_A = the m smallest elements of Ap(S, m′), D_B = multiples of m′, where
/// m′ is the least element of S that is at least m.
pub fn poly_apery(s: &NumericalSemigroup, m: u32, n: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    let m_prime = s.next_element(m);
    let mut ap = s.apery(m_prime)?;
    ap.sort_unstable();
    let d_a = &ap[..m as usize];
    let d_b: Vec<u32> = (0..n).map(|j| j * m_prime).collect();
    SolutionPair::poly(s, Method::Apery, d_a, &d_b)
}

/// The recursive D_B sequence m_1 = 0, m_i = next element of S ≥ m_{i-1} + m.
pub fn recursive_steps(s: &NumericalSemigroup, m: u32, n: u32) -> Vec<u32> {
    let mut steps = Vec::with_capacity(n as usize);
    let mut cur = 0;
    for i in 0..n {
        if i > 0 {
            cur = s.next_element(cur + m);
        }
        steps.push(cur);
    }
    steps
}

/// The gaps μ_i = m_{i+1} − m_i − m of the recursive sequence.
pub fn recursive_mu(s: &NumericalSemigroup, m: u32, n: u32) -> Vec<u32> {
    recursive_steps(s, m, n).windows(2).map(|w| w[1] - w[0] - m).collect()
}

/// D_A = [c, c+m−1] with the recursive D_B.
pub fn poly_recursive(s: &NumericalSemigroup, m: u32, n: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    let c = s.conductor();
    let d_a: Vec<u32> = (0..m).map(|i| c + i).collect();
    SolutionPair::poly(s, Method::Recursive, &d_a, &recursive_steps(s, m, n))
}

/// Recursive construction with the multiple of m in D_A swapped for 0.
/// Requires m ∈ S.
pub fn poly_zero_variant(s: &NumericalSemigroup, m: u32, n: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    if !s.contains(m) {
        return Err(Error::MNotInSemigroup(m));
    }
    let c = s.conductor();
    let multiples: Vec<u32> = (c..c + m).filter(|x| x % m == 0).collect();
    if multiples.len() != 1 {
        return Err(Error::NoUniqueMultiple);
    }
    let d_a: Vec<u32> = (c..c + m).map(|x| if x == multiples[0] { 0 } else { x }).collect();
    SolutionPair::poly(s, Method::Zero, &d_a, &recursive_steps(s, m, n))
}

/// g + mn, valid when mn ≥ n(S).
pub fn poly_lower_bound(s: &NumericalSemigroup, m: u32, n: u32) -> Result<u32> {
    if m * n < s.n() {
        return Err(Error::HypothesisUnmet(format!(
            "mn = {} is below n(S) = {}",
            m * n,
            s.n()
        )));
    }
    Ok(s.genus() + m * n)
}

/// Classical matdot: D_A = D_B = [0, m−1], threshold 2m − 1.
pub fn matdot_classical(m: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    let set: Vec<u32> = (0..m).collect();
    SolutionPair::matdot(&NumericalSemigroup::naturals(), Method::Classical, &set, &set)
}

/// D_A = D_B = [c, c+m−1], threshold 2(c+m) − 1.
pub fn matdot_trivial(s: &NumericalSemigroup, m: u32) -> Result<SolutionPair> {
    check_positive("m", m)?;
    let c = s.conductor();
    let set: Vec<u32> = (c..c + m).collect();
    SolutionPair::matdot(s, Method::Trivial, &set, &set)
}

/// The symmetric set ([δ, c−1] ∩ S) ∪ [c, d−c] ∪ (d − [δ, c−1] ∩ S) with
/// d = m − 1 + 2c − 2n(δ). Needs m ≥ 2c.
pub fn matdot_with_delta(s: &NumericalSemigroup, m: u32, delta: u32) -> Result<SolutionPair> {
    matdot_delta_sets(s, m, delta, Method::Delta)
}

fn matdot_delta_sets(s: &NumericalSemigroup, m: u32, delta: u32, method: Method) -> Result<SolutionPair> {
    check_positive("m", m)?;
    let c = s.conductor();
    if m < 2 * c {
        return Err(Error::MTooSmall { m, required: 2 * c });
    }
    let n_delta = s.n_of(delta)?;
    let d = m - 1 + 2 * c - 2 * n_delta;
    let low = if c == 0 {
        Vec::new()
    } else {
        s.elements_in(delta, c - 1)
    };
    let mut set: Vec<u32> = low.clone();
    set.extend(c..=d - c);
    set.extend(low.iter().map(|&x| d - x));
    set.sort_unstable();
    assert_eq!(set.len() as u32, m, "theorem set has the wrong size");
    let pair = SolutionPair::matdot(s, method, &set, &set)?;
    assert_eq!(pair.d(), Some(d), "theorem set hits a smaller d");
    Ok(pair)
}

/// Minimum-threshold matdot pair for m ≥ 2c, from the Δ maximizer.
pub fn matdot_optimal(s: &NumericalSemigroup, m: u32) -> Result<SolutionPair> {
    let delta = s.delta_profile().argmax;
    matdot_delta_sets(s, m, delta, Method::Optimal)
}

/// 2m − 1 + 2c − max Δ, the threshold `matdot_optimal` achieves.
pub fn matdot_optimal_threshold(s: &NumericalSemigroup, m: u32) -> Result<u32> {
    let c = s.conductor();
    if m < 2 * c {
        return Err(Error::MTooSmall { m, required: 2 * c });
    }
    Ok(2 * m - 1 + 4 * c - 2 * s.delta_profile().max)
}

/// Builds the named construction. `n` is required for poly and ignored for matdot.
pub fn construct(kind: Kind, method: Method, s: &NumericalSemigroup, m: u32, n: Option<u32>) -> Result<SolutionPair> {
    let mismatch = || Error::MethodMismatch {
        method: method.to_string(),
        kind: kind.to_string(),
    };
    match kind {
        Kind::Poly => {
            let n = n.ok_or_else(|| Error::SizeMismatch("poly codes need n".into()))?;
            match method {
                Method::Classical => {
                    if !s.is_naturals() {
                        return Err(Error::SemigroupCurveMismatch);
                    }
                    poly_classical(m, n)
                }
                Method::Trivial => poly_trivial(s, m, n),
                Method::Apery => poly_apery(s, m, n),
                Method::Recursive => poly_recursive(s, m, n),
                Method::Zero => poly_zero_variant(s, m, n),
                Method::Optimal | Method::Delta | Method::Search => Err(mismatch()),
            }
        }
        Kind::Matdot => match method {
            Method::Classical => {
                if !s.is_naturals() {
                    return Err(Error::SemigroupCurveMismatch);
                }
                matdot_classical(m)
            }
            Method::Trivial => matdot_trivial(s, m),
            Method::Optimal => matdot_optimal(s, m),
            _ => Err(mismatch()),
        },
    }
}

/// One row of the poly threshold comparison: a construction's actual
/// threshold next to its closed-form value.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub method: Method,
    pub threshold: u32,
    pub formula: u32,
    pub formula_text: &'static str,
}

/// Trivial, Apéry and recursive poly thresholds for (S, m, n).
///
/// The closed forms are 2c + mn, c + m′n and c + mn + Σμ. When m ∈ S the last
/// two both reduce to c + mn.
pub fn threshold_table(s: &NumericalSemigroup, m: u32, n: u32) -> Result<Vec<TableRow>> {
    let c = s.conductor();
    let m_prime = s.next_element(m);
    let mu: u32 = recursive_mu(s, m, n).iter().sum();
    Ok(vec![
        TableRow {
            method: Method::Trivial,
            threshold: poly_trivial(s, m, n)?.threshold(),
            formula: 2 * c + m * n,
            formula_text: "2c + mn",
        },
        TableRow {
            method: Method::Apery,
            threshold: poly_apery(s, m, n)?.threshold(),
            formula: c + m_prime * n,
            formula_text: "c + m'n",
        },
        TableRow {
            method: Method::Recursive,
            threshold: poly_recursive(s, m, n)?.threshold(),
            formula: c + m * n + mu,
            formula_text: "c + mn + sum(mu)",
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn validate_poly_examples() {
        assert!(validate_poly(&sg(&[2, 3]), &[0, 2, 4], &[0, 3, 6]).unwrap());
        assert!(!validate_poly(&NumericalSemigroup::naturals(), &[0, 1], &[0, 1]).unwrap());
        assert!(validate_poly(&sg(&[3, 4]), &[6, 7], &[0, 3, 6]).unwrap());
        assert!(matches!(
            validate_poly(&sg(&[3, 4]), &[1], &[0]),
            Err(Error::NotInSemigroup(1))
        ));
        assert!(matches!(
            validate_poly(&sg(&[3, 4]), &[3, 3], &[0]),
            Err(Error::DuplicateElement(3))
        ));
        assert!(matches!(validate_poly(&sg(&[3, 4]), &[], &[0]), Err(Error::EmptySet)));
    }

    #[test]
    fn validate_matdot_examples() {
        let nat = NumericalSemigroup::naturals();
        assert_eq!(validate_matdot(&nat, &[0, 1], &[0, 1]).unwrap(), Some(1));
        assert_eq!(validate_matdot(&sg(&[2, 3]), &[2, 3], &[2, 3]).unwrap(), Some(5));
        assert_eq!(validate_matdot(&nat, &[0, 2], &[0, 1]).unwrap(), None);
        assert!(matches!(
            validate_matdot(&nat, &[0, 1], &[0]),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn classical_poly() {
        assert_eq!(poly_classical(2, 2).unwrap().threshold(), 4);
        let p = poly_classical(1, 1).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0][..], &[0][..], 1));
        let p = poly_classical(3, 2).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0, 1, 2][..], &[0, 3][..], 6));
    }

    #[test]
    fn trivial_poly() {
        let s = sg(&[3, 4]);
        let p = poly_trivial(&s, 2, 2).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[6, 7][..], &[6, 8][..], 16));
        assert_eq!(poly_trivial(&s, 1, 1).unwrap().threshold(), 13);
        assert_eq!(
            poly_trivial(&NumericalSemigroup::naturals(), 2, 2).unwrap().threshold(),
            4
        );
    }

    #[test]
    fn apery_poly() {
        let p = poly_apery(&sg(&[2, 3]), 3, 3).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0, 2, 4][..], &[0, 3, 6][..], 11));
        let p = poly_apery(&sg(&[3, 4]), 2, 3).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0, 4][..], &[0, 3, 6][..], 11));
        let p = poly_apery(&NumericalSemigroup::naturals(), 2, 2).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0, 1][..], &[0, 2][..], 4));
    }

    #[test]
    fn recursive_poly() {
        let s = sg(&[3, 4]);
        let p = poly_recursive(&s, 2, 3).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[6, 7][..], &[0, 3, 6][..], 14));
        assert_eq!(recursive_mu(&s, 2, 3), vec![1, 1]);
        let p = poly_recursive(&s, 3, 2).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[6, 7, 8][..], &[0, 3][..], 12));
        assert_eq!(
            poly_recursive(&NumericalSemigroup::naturals(), 2, 2)
                .unwrap()
                .threshold(),
            4
        );
    }

    #[test]
    fn zero_variant_poly() {
        let s = sg(&[3, 4]);
        let p = poly_zero_variant(&s, 3, 2).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0, 7, 8][..], &[0, 3][..], 12));
        assert!(matches!(poly_zero_variant(&s, 2, 2), Err(Error::MNotInSemigroup(2))));
        // c = 0: the multiple of m in [0, m−1] is 0 itself, so D_A is unchanged.
        let p = poly_zero_variant(&NumericalSemigroup::naturals(), 2, 2).unwrap();
        assert_eq!((p.d_a(), p.d_b(), p.threshold()), (&[0, 1][..], &[0, 2][..], 4));
    }

    #[test]
    fn matdot_builders() {
        let p = matdot_classical(2).unwrap();
        assert_eq!((p.threshold(), p.d()), (3, Some(1)));
        assert_eq!(matdot_classical(1).unwrap().threshold(), 1);
        let p = matdot_classical(4).unwrap();
        assert_eq!((p.threshold(), p.d()), (7, Some(3)));

        let s = sg(&[2, 3]);
        let p = matdot_trivial(&s, 2).unwrap();
        assert_eq!((p.d_a(), p.d(), p.threshold()), (&[2, 3][..], Some(5), 7));
        assert_eq!(matdot_trivial(&s, 1).unwrap().threshold(), 5);
        let p = matdot_trivial(&sg(&[3, 4]), 3).unwrap();
        assert_eq!((p.d_a(), p.d(), p.threshold()), (&[6, 7, 8][..], Some(14), 17));
    }

    #[test]
    fn matdot_optimal_examples() {
        let p = matdot_optimal(&sg(&[2, 3]), 4).unwrap();
        assert_eq!((p.d_a(), p.d(), p.threshold()), (&[2, 3, 4, 5][..], Some(7), 11));

        let p = matdot_optimal(&sg(&[3, 4]), 12).unwrap();
        let want: Vec<u32> = [3, 4].into_iter().chain(6..=13).chain([15, 16]).collect();
        assert_eq!((p.d_a(), p.d(), p.threshold()), (&want[..], Some(19), 33));
        assert!(p.threshold() < matdot_trivial(&sg(&[3, 4]), 12).unwrap().threshold());

        let p = matdot_optimal(&NumericalSemigroup::naturals(), 3).unwrap();
        assert_eq!((p.d_a(), p.d(), p.threshold()), (&[0, 1, 2][..], Some(2), 5));

        assert!(matches!(
            matdot_optimal(&sg(&[3, 4]), 11),
            Err(Error::MTooSmall { m: 11, required: 12 })
        ));
        assert_eq!(matdot_optimal_threshold(&sg(&[3, 4]), 12).unwrap(), 33);
    }

    #[test]
    fn delta_at_conductor_matches_trivial() {
        let s = sg(&[5, 6]);
        let c = s.conductor();
        let p = matdot_with_delta(&s, 40, c).unwrap();
        assert_eq!(p.threshold(), matdot_trivial(&s, 40).unwrap().threshold());
        assert_eq!(p.threshold(), 119);
        assert_eq!(matdot_optimal(&s, 40).unwrap().threshold(), 111);
    }

    #[test]
    fn lower_bound_examples() {
        let s = sg(&[3, 4]);
        assert_eq!(poly_lower_bound(&s, 2, 3).unwrap(), 9);
        for p in [poly_trivial(&s, 2, 3), poly_apery(&s, 2, 3), poly_recursive(&s, 2, 3)] {
            assert!(p.unwrap().threshold() >= 9);
        }
        assert_eq!(poly_lower_bound(&NumericalSemigroup::naturals(), 3, 4).unwrap(), 12);
        assert!(matches!(poly_lower_bound(&s, 1, 1), Err(Error::HypothesisUnmet(_))));
    }

    #[test]
    fn table_rows() {
        let rows = threshold_table(&sg(&[3, 4]), 3, 2).unwrap();
        let t: Vec<u32> = rows.iter().map(|r| r.threshold).collect();
        assert_eq!(t, vec![18, 12, 12]);
        assert!(rows.iter().all(|r| r.threshold == r.formula));
    }

    #[test]
    fn dispatch() {
        let s = sg(&[2, 3]);
        assert_eq!(
            construct(Kind::Matdot, Method::Optimal, &s, 4, None)
                .unwrap()
                .threshold(),
            11
        );
        assert!(matches!(
            construct(Kind::Poly, Method::Optimal, &s, 2, Some(2)),
            Err(Error::MethodMismatch { .. })
        ));
        assert!(matches!(
            construct(Kind::Matdot, Method::Apery, &s, 2, None),
            Err(Error::MethodMismatch { .. })
        ));
        let nat = NumericalSemigroup::naturals();
        assert_eq!(
            construct(Kind::Poly, Method::Classical, &nat, 2, Some(2))
                .unwrap()
                .threshold(),
            4
        );
    }

    #[test]
    fn json_shape() {
        let v = matdot_optimal(&sg(&[2, 3]), 4).unwrap().to_json();
        assert_eq!(v["kind"], "matdot");
        assert_eq!(v["method"], "optimal");
        assert_eq!(v["threshold"], 11);
        assert_eq!(v["d"], 7);
        assert_eq!(v["D_A"], json!([2, 3, 4, 5]));
        assert_eq!(v["semigroup"]["conductor"], 2);
        let v = poly_recursive(&sg(&[3, 4]), 2, 3).unwrap().to_json();
        assert_eq!(v["lower_bound"], 9);
        assert_eq!(v["d"], Value::Null);
    }
}
