//! Numerical semigroups: membership, conductor/genus, Apéry sets, and the
//! Δ and φ maps used to pick optimal matdot degree sets.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A numerical semigroup given by generators.
///
/// Membership is tabulated up to `conductor + max(generators) + 1`; every
/// integer at or above the conductor is a member, so queries beyond the table
/// are answered without it.
#[derive(Clone, Debug)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    table: Vec<bool>,
    conductor: u32,
    small: Vec<u32>,
    multiplicity: u32,
}

/// Semigroups compare by their element sets, not by how they were generated.
impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.small == other.small
    }
}

impl Eq for NumericalSemigroup {}

/// Δ(δ) = δ + 2 n(δ) evaluated on S ∩ [0, c].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaProfile {
    pub domain: Vec<u32>,
    pub values: Vec<u32>,
    /// Largest maximizer.
    pub argmax: u32,
    pub max: u32,
    /// Largest maximizer among δ with 2δ ≥ c.
    pub upper_argmax: u32,
    pub upper_max: u32,
}

/// Summary report used by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct SemigroupInfo {
    pub generators: Vec<u32>,
    pub conductor: u32,
    pub gaps: Vec<u32>,
    pub genus: u32,
    pub n: u32,
    pub multiplicity: u32,
    pub sparse: bool,
    pub delta_argmax: u32,
    pub delta_max: u32,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() || gens.contains(&0) {
            return Err(Error::GcdNotOne);
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.iter().fold(0u32, |g, &x| g.gcd(&x)) != 1 {
            return Err(Error::GcdNotOne);
        }
        let min = generators[0] as usize;
        let max = *generators.last().unwrap() as usize;

        // Grow the table until `min` consecutive members appear; from then on
        // every integer is reachable by adding the smallest generator.
        let mut table = vec![true];
        let mut run = 1usize;
        let mut run_start = 0usize;
        while run < min {
            let t = table.len();
            let member = generators.iter().any(|&g| g as usize <= t && table[t - g as usize]);
            table.push(member);
            if member {
                if run == 0 {
                    run_start = t;
                }
                run += 1;
            } else {
                run = 0;
            }
        }
        let conductor = if min == 1 { 0 } else { run_start as u32 };
        table.resize(conductor as usize + max + 2, true);
        let small: Vec<u32> = (0..conductor).filter(|&t| table[t as usize]).collect();
        let multiplicity = generators[0];
        Ok(NumericalSemigroup {
            generators,
            table,
            conductor,
            small,
            multiplicity,
        })
    }

    /// The Hermitian semigroup ⟨q, q+1⟩.
    pub fn hermitian(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::HypothesisUnmet("Hermitian semigroups need q >= 2".into()));
        }
        let s = Self::from_generators(&[q, q + 1])?;
        assert_eq!(s.conductor(), q * (q - 1));
        assert_eq!(s.genus(), q * (q - 1) / 2);
        assert_eq!(s.n(), q * (q - 1) / 2);
        Ok(s)
    }

    /// S = ℕ.
    pub fn naturals() -> Self {
        Self::from_generators(&[1]).expect("1 generates N")
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, t: u32) -> bool {
        t >= self.conductor || self.table[t as usize]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Number of gaps g(S).
    pub fn genus(&self) -> u32 {
        self.conductor - self.small.len() as u32
    }

    /// Number of elements below the conductor, n(S).
    pub fn n(&self) -> u32 {
        self.small.len() as u32
    }

    /// Smallest nonzero element m(S).
    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn is_naturals(&self) -> bool {
        self.conductor == 0
    }

    /// Elements below the conductor, ascending.
    pub fn small_elements(&self) -> &[u32] {
        &self.small
    }

    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor).filter(|&t| !self.contains(t)).collect()
    }

    /// Elements of S in `[lo, hi]`, ascending.
    pub fn elements_in(&self, lo: u32, hi: u32) -> Vec<u32> {
        (lo..=hi).filter(|&t| self.contains(t)).collect()
    }

    /// Smallest element of S that is ≥ t.
    pub fn next_element(&self, t: u32) -> u32 {
        (t..).find(|&x| self.contains(x)).expect("S is cofinite")
    }

    /// Number of elements of S in `[0, t]`.
    pub fn count_up_to(&self, t: u32) -> usize {
        if t >= self.conductor {
            self.small.len() + (t - self.conductor) as usize + 1
        } else {
            self.small.iter().take_while(|&&s| s <= t).count()
        }
    }

    /// The partial order a ≤_S b ⟺ b − a ∈ S.
    pub fn leq(&self, a: u32, b: u32) -> bool {
        b >= a && self.contains(b - a)
    }

    /// Apéry set Ap(S, n) as `(w_0, ..., w_{n-1})`, `w_i` the least element ≡ i mod n.
    pub fn apery(&self, n: u32) -> Result<Vec<u32>> {
        if n == 0 || !self.contains(n) {
            return Err(Error::NotInSemigroup(n));
        }
        let mut w = vec![None; n as usize];
        let mut found = 0;
        let mut t = 0u32;
        while found < n {
            if self.contains(t) {
                let slot = &mut w[(t % n) as usize];
                if slot.is_none() {
                    *slot = Some(t);
                    found += 1;
                }
            }
            t += 1;
        }
        let w: Vec<u32> = w.into_iter().map(Option::unwrap).collect();
        debug_assert_eq!(w.iter().max().unwrap() + 1 - n, self.conductor);
        Ok(w)
    }

    /// n(δ) = |[δ, c−1] ∩ S| for δ ∈ S ∩ [0, c].
    pub fn n_of(&self, delta: u32) -> Result<u32> {
        if delta > self.conductor || !self.contains(delta) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(self.small.iter().filter(|&&s| s >= delta).count() as u32)
    }

    pub fn delta(&self, delta: u32) -> Result<u32> {
        Ok(delta + 2 * self.n_of(delta)?)
    }

    pub fn delta_profile(&self) -> DeltaProfile {
        let mut domain = self.small.clone();
        domain.push(self.conductor);
        let values: Vec<u32> = domain
            .iter()
            .map(|&d| self.delta(d).expect("domain is valid"))
            .collect();
        let pick = |filter: &dyn Fn(u32) -> bool| {
            domain
                .iter()
                .zip(&values)
                .filter(|(&d, _)| filter(d))
                .fold(
                    (0u32, 0u32),
                    |(bd, bv), (&d, &v)| if v >= bv { (d, v) } else { (bd, bv) },
                )
        };
        let (argmax, max) = pick(&|_| true);
        let c = self.conductor;
        let (upper_argmax, upper_max) = pick(&|d| 2 * d >= c);
        DeltaProfile {
            domain,
            values,
            argmax,
            max,
            upper_argmax,
            upper_max,
        }
    }

    /// φ(x) = c − 1 − x on [0, c−1].
    pub fn phi(&self, x: u32) -> Result<u32> {
        if self.conductor == 0 || x >= self.conductor {
            return Err(Error::OutOfRange(x));
        }
        Ok(self.conductor - 1 - x)
    }

    /// φ reverses ≤_S: x ≤_S y ⟺ φ(y) ≤_S φ(x), because φ(x) − φ(y) = y − x.
    pub fn phi_reverses_order(&self, x: u32, y: u32) -> Result<bool> {
        let (px, py) = (self.phi(x)?, self.phi(y)?);
        Ok(self.leq(x, y) == self.leq(py, px))
    }

    /// Symmetric semigroups have as many gaps as small elements.
    pub fn is_symmetric(&self) -> bool {
        self.genus() == self.n()
    }

    /// No two consecutive elements below the conductor.
    pub fn is_sparse(&self) -> bool {
        self.small.windows(2).all(|w| w[1] - w[0] != 1)
    }

    pub fn info(&self) -> SemigroupInfo {
        let profile = self.delta_profile();
        SemigroupInfo {
            generators: self.generators.clone(),
            conductor: self.conductor,
            gaps: self.gaps(),
            genus: self.genus(),
            n: self.n(),
            multiplicity: self.multiplicity,
            sparse: self.is_sparse(),
            delta_argmax: profile.argmax,
            delta_max: profile.max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent membership oracle: closure of the generators by repeated addition.
    fn members_by_closure(gens: &[u32], bound: u32) -> Vec<bool> {
        let mut m = vec![false; bound as usize + 1];
        m[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for t in 0..=bound {
                if m[t as usize] {
                    for &g in gens {
                        let u = t + g;
                        if u <= bound && !m[u as usize] {
                            m[u as usize] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        m
    }

    #[test]
    fn small_examples() {
        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!((s.conductor(), s.genus(), s.n(), s.multiplicity()), (2, 1, 1, 2));
        assert_eq!(s.elements_in(0, 5), vec![0, 2, 3, 4, 5]);

        let s = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        assert_eq!(s.conductor(), 6);
        assert_eq!(s.gaps(), vec![1, 2, 5]);
        assert_eq!((s.genus(), s.n()), (3, 3));

        let s = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert_eq!((s.conductor(), s.genus(), s.n()), (0, 0, 0));
        assert!(s.is_naturals());
    }

    #[test]
    fn membership_matches_closure() {
        for gens in [
            vec![2, 3],
            vec![3, 4],
            vec![3, 5, 7],
            vec![4, 6, 9],
            vec![5, 7],
            vec![6, 10, 15],
        ] {
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            let oracle = members_by_closure(&gens, 80);
            for t in 0..=80 {
                assert_eq!(s.contains(t), oracle[t as usize], "gens {gens:?} t {t}");
            }
            assert!(!oracle[s.conductor() as usize - 1] || s.conductor() == 0);
        }
    }

    #[test]
    fn gcd_errors() {
        assert!(matches!(
            NumericalSemigroup::from_generators(&[2, 4]),
            Err(Error::GcdNotOne)
        ));
        assert!(matches!(
            NumericalSemigroup::from_generators(&[]),
            Err(Error::GcdNotOne)
        ));
        assert!(matches!(
            NumericalSemigroup::from_generators(&[0, 1]),
            Err(Error::GcdNotOne)
        ));
    }

    #[test]
    fn hermitian_examples() {
        assert_eq!(NumericalSemigroup::hermitian(2).unwrap().conductor(), 2);
        let s = NumericalSemigroup::hermitian(3).unwrap();
        assert_eq!((s.conductor(), s.genus()), (6, 3));
        let s = NumericalSemigroup::hermitian(4).unwrap();
        assert_eq!(s.conductor(), 12);
        assert_eq!(s.small_elements(), &[0, 4, 5, 8, 9, 10]);
    }

    #[test]
    fn leq_examples() {
        let s = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        assert!(s.leq(3, 7));
        assert!(!s.leq(3, 5));
        assert!(s.leq(9, 9));
        assert!(!s.leq(7, 3));
    }

    #[test]
    fn apery_examples() {
        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(s.apery(2).unwrap(), vec![0, 3]);
        assert_eq!(s.apery(3).unwrap(), vec![0, 4, 2]);
        let s = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        assert_eq!(s.apery(3).unwrap(), vec![0, 4, 8]);
        assert!(matches!(s.apery(5), Err(Error::NotInSemigroup(5))));
        assert!(matches!(s.apery(0), Err(Error::NotInSemigroup(0))));
    }

    #[test]
    fn n_of_examples() {
        let s = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        assert_eq!(s.n_of(0).unwrap(), 3);
        assert_eq!(s.n_of(3).unwrap(), 2);
        assert_eq!(s.n_of(6).unwrap(), 0);
        assert!(matches!(s.n_of(5), Err(Error::InvalidDelta(5))));
        assert!(matches!(s.n_of(7), Err(Error::InvalidDelta(7))));
    }

    #[test]
    fn delta_examples() {
        let s = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        let p = s.delta_profile();
        assert_eq!(p.domain, vec![0, 3, 4, 6]);
        assert_eq!(p.values, vec![6, 7, 6, 6]);
        assert_eq!(p.argmax, 3);

        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        let p = s.delta_profile();
        assert_eq!(p.values, vec![2, 2]);
        assert_eq!(p.argmax, 2);

        let p = NumericalSemigroup::naturals().delta_profile();
        assert_eq!((p.domain.clone(), p.values.clone(), p.argmax), (vec![0], vec![0], 0));
    }

    #[test]
    fn phi_examples() {
        let s = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        assert_eq!(s.phi(0).unwrap(), 5);
        assert_eq!(s.phi(5).unwrap(), 0);
        assert_eq!(s.phi(3).unwrap(), 2);
        assert!(!s.contains(2));
        assert!(matches!(s.phi(6), Err(Error::OutOfRange(6))));
        assert!(NumericalSemigroup::naturals().phi(0).is_err());
    }

    #[test]
    fn sparse_examples() {
        assert!(NumericalSemigroup::from_generators(&[2, 3]).unwrap().is_sparse());
        assert!(!NumericalSemigroup::from_generators(&[3, 4]).unwrap().is_sparse());
        assert!(NumericalSemigroup::naturals().is_sparse());
        // ⟨4, 6, 9⟩ below c: 0,4,6,8,9,10,... 8,9 consecutive
        assert!(!NumericalSemigroup::from_generators(&[4, 6, 9]).unwrap().is_sparse());
        assert!(NumericalSemigroup::from_generators(&[2, 7]).unwrap().is_sparse());
    }
}
