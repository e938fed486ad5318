use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;

use serde_json::{json, Value};

use super::curve::{Curve, FunctionElement};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// The basis {f_s} of L(k_max·Q), one function per semigroup element `s ≤ k_max`,
/// with `f_s` of pole order exactly `s`.
///
/// Entries are replaced during scheme setup (the two `tweak_*` methods) and the
/// registry is then frozen into a [`FrozenRegistry`].
#[derive(Clone, Debug)]
pub struct BasisRegistry {
    curve: Curve,
    bound: u32,
    entries: Vec<Option<FunctionElement>>,
}

/// Read-only registry, shared by encoder and decoder.
#[derive(Clone, Debug)]
pub struct FrozenRegistry(BasisRegistry);

impl Deref for FrozenRegistry {
    type Target = BasisRegistry;

    fn deref(&self) -> &BasisRegistry {
        &self.0
    }
}

impl BasisRegistry {
    /// f_s = x^i y^j with s = i·q0 + j·(q0+1), j < q0 (x^s on the rational curve).
    pub fn monomial(curve: &Curve, bound: u32) -> Self {
        let entries = (0..=bound).map(|s| curve.monomial_element(s).ok()).collect();
        BasisRegistry {
            curve: curve.clone(),
            bound,
            entries,
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn get(&self, s: u32) -> Result<&FunctionElement> {
        self.entries
            .get(s as usize)
            .and_then(Option::as_ref)
            .ok_or(Error::NotInSpan(s))
    }

    /// Semigroup elements covered, ascending.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some())
            .map(|(s, _)| s as u32)
    }

    /// Replaces f_s; the new function must keep pole order exactly `s`.
    pub fn set(&mut self, s: u32, f: FunctionElement) -> Result<()> {
        if s > self.bound {
            return Err(Error::NotInSpan(s));
        }
        if self.entries[s as usize].is_none() {
            return Err(Error::NotInSemigroup(s));
        }
        assert_eq!(f.pole_order(), Some(s), "basis element must have pole order {s}");
        self.entries[s as usize] = Some(f);
        Ok(())
    }

    pub fn freeze(self) -> FrozenRegistry {
        FrozenRegistry(self)
    }

    /// Every entry has pole order equal to its index.
    pub fn is_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(s, e)| e.as_ref().is_none_or(|f| f.pole_order() == Some(s as u32)))
    }

    /// Coordinates of `g` in the current basis, by triangular elimination from the
    /// highest pole order downwards. Entries `t` with `t < stop` are not computed.
    fn eliminate(&self, g: &FunctionElement, stop: u32) -> Result<BTreeMap<u32, FieldElement>> {
        let field = self.curve.field();
        let Some(top) = g.pole_order() else {
            return Ok(BTreeMap::new());
        };
        if top > self.bound {
            return Err(Error::NotInSpan(top));
        }
        let mut rem: Vec<FieldElement> = (0..=top).map(|s| g.coeff(s)).collect();
        let mut out = BTreeMap::new();
        for t in (stop..=top).rev() {
            let c = rem[t as usize];
            if c.is_zero() {
                continue;
            }
            let ft = self.get(t)?;
            let lambda = field.div(c, ft.coeff(t))?;
            for (u, fc) in ft.terms() {
                if u < stop {
                    continue;
                }
                let cell = &mut rem[u as usize];
                *cell = field.sub(*cell, field.mul(lambda, fc));
            }
            out.insert(t, lambda);
        }
        Ok(out)
    }

    /// Full expansion g = Σ λ_t f_t (nonzero λ only).
    pub fn expand(&self, g: &FunctionElement) -> Result<BTreeMap<u32, FieldElement>> {
        self.eliminate(g, 0)
    }

    /// π_{f_s}(g), the coefficient of f_s in the expansion of g.
    pub fn project(&self, g: &FunctionElement, s: u32) -> Result<FieldElement> {
        Ok(self.eliminate(g, s)?.get(&s).copied().unwrap_or_default())
    }

    /// Σ λ_t f_t.
    pub fn combine(&self, coords: &BTreeMap<u32, FieldElement>) -> Result<FunctionElement> {
        let mut acc = FunctionElement::zero();
        for (&t, &c) in coords {
            acc = self.curve.add(&acc, &self.curve.scale(c, self.get(t)?));
        }
        Ok(acc)
    }

    /// Makes the basis multiplicative on `D_A × D_B`: for each pair in ascending
    /// order of `a + b`, `f_{a+b} := f_a · f_b`.
    pub fn tweak_poly(&mut self, da: &[u32], db: &[u32]) -> Result<()> {
        self.check_subset(da)?;
        self.check_subset(db)?;
        let mut pairs: Vec<(u32, u32)> = da.iter().flat_map(|&a| db.iter().map(move |&b| (a, b))).collect();
        pairs.sort_by_key(|&(a, b)| (a + b, a));
        if pairs.windows(2).any(|w| w[0].0 + w[0].1 == w[1].0 + w[1].1) {
            return Err(Error::InvalidSolution("two pairs share the same sum".into()));
        }
        for (a, b) in pairs {
            let prod = self.curve.mul(self.get(a)?, self.get(b)?);
            self.set(a + b, prod)?;
        }
        Ok(())
    }

    /// Modifies the basis so that π_{f_d}(f_a f_b) is 1 when a + b = d and 0
    /// otherwise, for every (a, b) ∈ D_A × D_B.
    ///
    /// Walks D = D_A ∪ D_B upwards from the first element with 2·d_i ≥ d. Each
    /// element is corrected against its smaller partners e (those with e + d_i ≥ d):
    /// scaled so the exact pair projects to 1, then each remaining partner's
    /// projection is cancelled by subtracting a multiple of f_{d−e}. Elements in
    /// both sets also redefine f_{2d_i} as their own square when 2d_i > d.
    pub fn tweak_matdot(&mut self, da: &[u32], db: &[u32], d: u32) -> Result<()> {
        self.check_subset(da)?;
        self.check_subset(db)?;
        let set_a: BTreeSet<u32> = da.iter().copied().collect();
        let set_b: BTreeSet<u32> = db.iter().copied().collect();
        if set_a.len() != da.len() || set_b.len() != db.len() || da.len() != db.len() {
            return Err(Error::InvalidSolution("D_A and D_B must be sets of equal size".into()));
        }
        let exact = set_a.iter().filter(|&&a| a <= d && set_b.contains(&(d - a))).count();
        if exact != da.len() || !self.curve.semigroup().contains(d) {
            return Err(Error::InvalidSolution(format!(
                "d = {d} is not matched by exactly m pairs"
            )));
        }
        if set_a.contains(&d) || set_b.contains(&d) {
            // Only S = N reaches d ∈ D_A ∪ D_B; monomials x^a x^b = x^{a+b} already
            // satisfy the indicator there.
            if self.curve.semigroup().is_naturals() {
                return Ok(());
            }
            return Err(Error::DInSets(d));
        }

        let union: Vec<u32> = set_a.union(&set_b).copied().collect();
        let Some(start) = union.iter().position(|&x| 2 * x >= d) else {
            return Ok(());
        };
        if 2 * union[start] == d && set_a.contains(&union[start]) && set_b.contains(&union[start]) {
            let half = self.get(d / 2)?;
            let sq = self.curve.mul(half, half);
            self.set(d, sq)?;
        }
        for &x in &union[start..] {
            let (in_a, in_b) = (set_a.contains(&x), set_b.contains(&x));
            let partners: Vec<u32> = union
                .iter()
                .copied()
                .filter(|&e| e < x && e + x >= d)
                .filter(|e| match (in_a, in_b) {
                    (true, false) => set_b.contains(e),
                    (false, true) => set_a.contains(e),
                    _ => true,
                })
                .collect();
            self.adjust_against(x, &partners, d)?;
            if in_a && in_b && 2 * x > d {
                let fx = self.get(x)?;
                let sq = self.curve.mul(fx, fx);
                self.set(2 * x, sq)?;
            }
        }
        Ok(())
    }

    /// Replaces f_a by f'_a with π_{f_d}(f'_a f_b) = [a + b = d] for the ascending
    /// `partners` b (all with b < a ≤ d and a + b ≥ d).
    fn adjust_against(&mut self, a: u32, partners: &[u32], d: u32) -> Result<()> {
        let curve = self.curve.clone();
        let field = curve.field();
        let mut fa = self.get(a)?.clone();
        for (i, &b) in partners.iter().enumerate() {
            let fb = self.get(b)?;
            let current = self.project(&curve.mul(&fa, fb), d)?;
            if i == 0 && a + b == d {
                if current.is_zero() {
                    return Err(Error::ZeroProjection(d));
                }
                fa = curve.scale(field.inv(current)?, &fa);
            } else if !current.is_zero() {
                let partner = self.get(d - b)?;
                let pivot = self.project(&curve.mul(partner, fb), d)?;
                if pivot.is_zero() {
                    return Err(Error::ZeroProjection(d));
                }
                let lambda = field.div(current, pivot)?;
                fa = curve.sub(&fa, &curve.scale(lambda, partner));
            }
        }
        self.set(a, fa)
    }

    /// Pairs of D_A × D_B where π_{f_d}(f_a f_b) differs from the indicator [a + b = d].
    pub fn indicator_violations(&self, da: &[u32], db: &[u32], d: u32) -> Result<Vec<(u32, u32)>> {
        let mut bad = Vec::new();
        for &a in da {
            for &b in db {
                let prod = self.curve.mul(self.get(a)?, self.get(b)?);
                let want = if a + b == d {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                };
                if self.project(&prod, d)? != want {
                    bad.push((a, b));
                }
            }
        }
        Ok(bad)
    }

    /// `{s: {"(i,j)": coeff_code}}`.
    pub fn dump_json(&self) -> Value {
        let mut out = serde_json::Map::new();
        for s in self.indices() {
            let f = self.get(s).expect("index listed");
            let mut terms = serde_json::Map::new();
            for (t, c) in f.terms() {
                let (i, j) = self.curve.monomial(t).expect("term on semigroup");
                terms.insert(format!("({i},{j})"), json!(c.code()));
            }
            out.insert(s.to_string(), Value::Object(terms));
        }
        Value::Object(out)
    }

    fn check_subset(&self, set: &[u32]) -> Result<()> {
        for &x in set {
            if !self.curve.semigroup().contains(x) {
                return Err(Error::InvalidSolution(format!("{x} is not in the semigroup")));
            }
            if x > self.bound {
                return Err(Error::NotInSpan(x));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(c: u32) -> FieldElement {
        FieldElement::from_code(c)
    }

    fn herm2(bound: u32) -> BasisRegistry {
        BasisRegistry::monomial(&Curve::hermitian(2).unwrap(), bound)
    }

    #[test]
    fn monomial_basis_examples() {
        let r = herm2(10);
        let c = r.curve().clone();
        assert_eq!(r.get(0).unwrap(), &c.element_from_terms(&[((0, 0), fe(1))]).unwrap());
        assert_eq!(r.get(2).unwrap(), &c.element_from_terms(&[((1, 0), fe(1))]).unwrap());
        assert_eq!(r.get(3).unwrap(), &c.element_from_terms(&[((0, 1), fe(1))]).unwrap());
        assert_eq!(r.get(5).unwrap(), &c.element_from_terms(&[((1, 1), fe(1))]).unwrap());
        assert_eq!(r.get(6).unwrap(), &c.element_from_terms(&[((3, 0), fe(1))]).unwrap());
        assert!(r.get(1).is_err());
        assert!(r.is_triangular());
    }

    #[test]
    fn projection_examples() {
        let r = herm2(10);
        let c = r.curve().clone();
        let y2 = c.mul(r.get(3).unwrap(), r.get(3).unwrap());
        assert_eq!(r.project(&y2, 6).unwrap(), fe(1));
        assert_eq!(r.project(&y2, 3).unwrap(), fe(1));
        assert_eq!(r.project(&y2, 2).unwrap(), fe(0));
        let big = c.monomial_element(12).unwrap();
        assert!(matches!(r.project(&big, 0), Err(Error::NotInSpan(12))));
    }

    #[test]
    fn poly_tweak_rational_is_identity() {
        let curve = Curve::rational(5).unwrap();
        let mut r = BasisRegistry::monomial(&curve, 12);
        let before = r.clone();
        r.tweak_poly(&[0, 1, 2], &[0, 3]).unwrap();
        for s in 0..=12 {
            assert_eq!(r.get(s).unwrap(), before.get(s).unwrap());
        }
    }

    #[test]
    fn poly_tweak_hermitian() {
        let mut r = herm2(10);
        let before = r.clone();
        r.tweak_poly(&[0, 3], &[0, 2]).unwrap();
        for s in [0, 2, 3, 5] {
            assert_eq!(r.get(s).unwrap(), before.get(s).unwrap());
        }
        assert!(matches!(r.tweak_poly(&[0, 3], &[0, 3]), Err(Error::InvalidSolution(_))));
    }

    #[test]
    fn poly_tweak_rewrites_colliding_products() {
        // f_3 * f_3 = y^2 = x^3 + y, so f_6 must become that product
        let mut r = herm2(12);
        r.tweak_poly(&[0, 3], &[0, 3, 6]).unwrap_err();
        r.tweak_poly(&[0, 3], &[0, 2, 4]).unwrap();
        let c = r.curve().clone();
        for a in [0, 3] {
            for b in [0, 2, 4] {
                let prod = c.mul(r.get(a).unwrap(), r.get(b).unwrap());
                assert_eq!(&prod, r.get(a + b).unwrap());
            }
        }
        assert!(r.is_triangular());
    }

    #[test]
    fn matdot_tweak_small_example() {
        let mut r = herm2(10);
        let before = r.clone();
        r.tweak_matdot(&[2, 3], &[2, 3], 5).unwrap();
        for s in [0, 2, 3, 5] {
            assert_eq!(r.get(s).unwrap(), before.get(s).unwrap());
        }
        // 2·3 > 5 so f_6 is redefined as f_3², i.e. x^3 + y
        let c = r.curve().clone();
        assert_eq!(
            r.get(6).unwrap(),
            &c.mul(before.get(3).unwrap(), before.get(3).unwrap())
        );
        assert!(r.indicator_violations(&[2, 3], &[2, 3], 5).unwrap().is_empty());
    }

    #[test]
    fn matdot_tweak_redefines_square() {
        let mut r = herm2(14);
        let before = r.clone();
        let c = r.curve().clone();
        // before the tweak, f_5 f_5 = f_10 + f_7 projects to 1 on f_7
        let sq = c.mul(before.get(5).unwrap(), before.get(5).unwrap());
        assert_eq!(before.project(&sq, 7).unwrap(), fe(1));
        r.tweak_matdot(&[2, 5], &[2, 5], 7).unwrap();
        assert_eq!(r.get(5).unwrap(), before.get(5).unwrap());
        assert_eq!(r.get(10).unwrap(), &sq);
        assert_eq!(r.project(&sq, 7).unwrap(), fe(0));
        assert!(r.indicator_violations(&[2, 5], &[2, 5], 7).unwrap().is_empty());
        assert!(r.is_triangular());
    }

    #[test]
    fn matdot_tweak_rejections() {
        let mut r = herm2(14);
        assert!(matches!(
            r.tweak_matdot(&[2, 3], &[2, 3], 6),
            Err(Error::InvalidSolution(_))
        ));
        // d = 5 ∈ D_A
        assert!(matches!(r.tweak_matdot(&[0, 5], &[0, 5], 5), Err(Error::DInSets(5))));

        let curve = Curve::rational(5).unwrap();
        let mut r = BasisRegistry::monomial(&curve, 10);
        let before = r.clone();
        r.tweak_matdot(&[0, 1, 2], &[0, 1, 2], 2).unwrap();
        r.tweak_matdot(&[1, 2], &[2, 3], 4).unwrap();
        for s in 0..=10 {
            assert_eq!(r.get(s).unwrap(), before.get(s).unwrap());
        }
    }

    #[test]
    fn dump_shape() {
        let r = herm2(3);
        let v = r.dump_json();
        assert_eq!(v["3"]["(0,1)"], json!(1));
        assert_eq!(v["0"]["(0,0)"], json!(1));
    }
}
