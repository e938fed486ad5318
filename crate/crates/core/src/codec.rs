//! Encoding, worker computation and interpolation decoding for poly and matdot
//! schemes on a curve.
//!
//! The master evaluates p_A and p_B at each worker's place and ships the two
//! resulting blocks; a worker multiplies them; the master interpolates the
//! product's coordinates in the frozen basis from any `threshold` results.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{construct, Kind, Method, SolutionPair};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::funcfield::{BasisRegistry, Curve, FrozenRegistry, Place};
use crate::matrix::{right_inverse, Matrix};

/// An executable scheme: solution, tweaked basis and the worker places.
#[derive(Clone, Debug)]
pub struct CodeScheme {
    curve: Curve,
    solution: SolutionPair,
    registry: FrozenRegistry,
    places: Vec<Place>,
    /// `values[i][s]` = f_s(P_i) for s ∈ [0, k], zero at gaps.
    values: Vec<Vec<FieldElement>>,
    /// Elements of [0, k] ∩ S, ascending.
    support: Vec<u32>,
}

/// What the master sends to one worker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedShare {
    pub place_index: usize,
    pub a: Matrix,
    pub b: Matrix,
}

/// A worker's product and its multiplication count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkerResult {
    pub place_index: usize,
    pub product: Matrix,
    pub mults: u64,
}

/// Output of [`CodeScheme::decode`].
#[derive(Clone, Debug)]
pub struct Decoded {
    pub product: Matrix,
    /// Canonically sorted place indices that were interpolated.
    pub responders_used: Vec<usize>,
    pub decode_mults: u64,
}

/// Summary written by `dmm run`.
#[derive(Clone, Debug, Serialize)]
pub struct DecodeReport {
    pub threshold: u32,
    pub responders_used: Vec<usize>,
    pub worker_mults: u64,
    pub decode_mults: u64,
    pub ok: bool,
}

impl DecodeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "threshold": self.threshold,
            "responders_used": self.responders_used,
            "ops": {"worker_mults": self.worker_mults, "decode_mults": self.decode_mults},
            "ok": self.ok,
        })
    }
}

impl CodeScheme {
    /// Runs the named construction on the curve's semigroup and sets up a
    /// scheme over the first `workers` places.
    pub fn build(curve: &Curve, kind: Kind, method: Method, m: u32, n: Option<u32>, workers: usize) -> Result<Self> {
        let solution = construct(kind, method, curve.semigroup(), m, n)?;
        Self::from_solution(curve, solution, workers)
    }

    /// Sets up a scheme for an already validated solution.
    pub fn from_solution(curve: &Curve, solution: SolutionPair, workers: usize) -> Result<Self> {
        if solution.semigroup() != curve.semigroup() {
            return Err(Error::SemigroupCurveMismatch);
        }
        let available = curve.place_count();
        if workers > available {
            return Err(Error::NotEnoughPlaces {
                needed: workers,
                available,
            });
        }
        let threshold = solution.threshold() as usize;
        if threshold > workers {
            return Err(Error::NotEnoughPlaces {
                needed: threshold,
                available: workers,
            });
        }
        let k = solution.threshold() - 1;
        let q0 = curve.q0();
        let mut registry = BasisRegistry::monomial(curve, k + q0 * (q0 + 1));
        match solution.kind() {
            Kind::Poly => registry.tweak_poly(solution.d_a(), solution.d_b())?,
            Kind::Matdot => {
                let d = solution.d().expect("matdot solutions carry d");
                registry.tweak_matdot(solution.d_a(), solution.d_b(), d)?;
            }
        }
        let registry = registry.freeze();
        let places: Vec<Place> = curve.places().into_iter().take(workers).collect();
        let support: Vec<u32> = registry.indices().filter(|&s| s <= k).collect();
        let values = places
            .iter()
            .map(|p| {
                let mono = curve.monomial_values(p, k);
                (0..=k)
                    .map(|s| match registry.get(s) {
                        Ok(f) => curve.evaluate_with(f, &mono),
                        Err(_) => FieldElement::ZERO,
                    })
                    .collect()
            })
            .collect();
        Ok(CodeScheme {
            curve: curve.clone(),
            solution,
            registry,
            places,
            values,
            support,
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn field(&self) -> &FieldSpec {
        self.curve.field()
    }

    pub fn solution(&self) -> &SolutionPair {
        &self.solution
    }

    pub fn kind(&self) -> Kind {
        self.solution.kind()
    }

    pub fn registry(&self) -> &FrozenRegistry {
        &self.registry
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn workers(&self) -> usize {
        self.places.len()
    }

    /// max(D_A) + max(D_B).
    pub fn k(&self) -> u32 {
        self.solution.threshold() - 1
    }

    pub fn threshold(&self) -> usize {
        self.solution.threshold() as usize
    }

    /// f_s(P_i) for a chosen place.
    pub fn basis_value(&self, place_index: usize, s: u32) -> FieldElement {
        self.values[place_index][s as usize]
    }

    /// Zero-pads A and B up to the nearest partition-compatible sizes. The
    /// product AB is the top-left corner of the padded product.
    pub fn pad_inputs(&self, a: &Matrix, b: &Matrix) -> (Matrix, Matrix) {
        let up = |x: usize, k: u32| x.div_ceil(k as usize) * k as usize;
        let m = self.solution.m();
        match self.kind() {
            Kind::Poly => {
                let n = self.solution.n();
                (a.padded(up(a.rows(), m), a.cols()), b.padded(b.rows(), up(b.cols(), n)))
            }
            Kind::Matdot => (a.padded(a.rows(), up(a.cols(), m)), b.padded(up(b.rows(), m), b.cols())),
        }
    }

    /// Splits A and B into the blocks paired with D_A and D_B.
    fn blocks(&self, a: &Matrix, b: &Matrix) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let m = self.solution.m() as usize;
        match self.kind() {
            Kind::Poly => Ok((a.split_rows(m)?, b.split_cols(self.solution.n() as usize)?)),
            Kind::Matdot => Ok((a.split_cols(m)?, b.split_rows(m)?)),
        }
    }

    /// D_B in the order that pairs with B's blocks. For matdot the block
    /// B_i goes with f_{d − a_i}, which makes A_i B_i the f_d coordinate.
    fn b_degrees(&self) -> Vec<u32> {
        match self.kind() {
            Kind::Poly => self.solution.d_b().to_vec(),
            Kind::Matdot => {
                let d = self.solution.d().unwrap();
                self.solution.d_a().iter().map(|&a| d - a).collect()
            }
        }
    }

    /// Share for every chosen place.
    pub fn encode(&self, a: &Matrix, b: &Matrix) -> Result<Vec<EncodedShare>> {
        let (a_blocks, b_blocks) = self.blocks(a, b)?;
        let b_deg = self.b_degrees();
        let field = self.field();
        Ok((0..self.workers())
            .map(|i| {
                let combine = |blocks: &[Matrix], degrees: &[u32]| {
                    let mut acc = Matrix::zeros(blocks[0].rows(), blocks[0].cols());
                    for (blk, &s) in blocks.iter().zip(degrees) {
                        acc.add_scaled(field, self.basis_value(i, s), blk);
                    }
                    acc
                };
                EncodedShare {
                    place_index: i,
                    a: combine(&a_blocks, self.solution.d_a()),
                    b: combine(&b_blocks, &b_deg),
                }
            })
            .collect())
    }

    /// G[l][j] = f_{s_l}(P_{responders[j]}) over s_l ∈ [0, k] ∩ S.
    pub fn build_g(&self, responders: &[usize]) -> Result<Matrix> {
        let needed = self.threshold();
        if responders.len() < needed {
            return Err(Error::TooFewResponders {
                got: responders.len(),
                needed,
            });
        }
        let mut seen = BTreeSet::new();
        for &r in responders {
            if r >= self.workers() {
                return Err(Error::UnknownPlace(r));
            }
            if !seen.insert(r) {
                return Err(Error::DuplicatePlace(r));
            }
        }
        let mut g = Matrix::zeros(self.support.len(), responders.len());
        for (l, &s) in self.support.iter().enumerate() {
            for (j, &r) in responders.iter().enumerate() {
                g.set(l, j, self.basis_value(r, s));
            }
        }
        Ok(g)
    }

    /// Recovers AB from the first `threshold` results in arrival order.
    pub fn decode(&self, results: &[WorkerResult]) -> Result<Decoded> {
        let needed = self.threshold();
        if results.len() < needed {
            return Err(Error::TooFewResponders {
                got: results.len(),
                needed,
            });
        }
        let mut chosen: Vec<&WorkerResult> = results[..needed].iter().collect();
        chosen.sort_by_key(|r| r.place_index);
        let responders: Vec<usize> = chosen.iter().map(|r| r.place_index).collect();
        let g = self.build_g(&responders)?;
        let (rinv, mut ops) = right_inverse(self.field(), &g)?;

        let (h, w) = (chosen[0].product.rows(), chosen[0].product.cols());
        if chosen.iter().any(|r| (r.product.rows(), r.product.cols()) != (h, w)) {
            return Err(Error::DimensionMismatch("worker results differ in size".into()));
        }
        let field = self.field();
        let coordinate = |l: usize, u: usize, v: usize| {
            chosen.iter().enumerate().fold(FieldElement::ZERO, |acc, (i, r)| {
                field.mul_add(acc, r.product.get(u, v), rinv.get(i, l))
            })
        };
        let index_of = |s: u32| self.support.binary_search(&s).expect("degree lies in the support");

        let product = match self.kind() {
            Kind::Poly => {
                let (da, db) = (self.solution.d_a(), self.solution.d_b());
                let mut coords: Vec<Matrix> = (0..self.support.len()).map(|_| Matrix::zeros(h, w)).collect();
                for u in 0..h {
                    for v in 0..w {
                        for (l, c) in coords.iter_mut().enumerate() {
                            c.set(u, v, coordinate(l, u, v));
                        }
                    }
                }
                ops += (h * w * self.support.len() * chosen.len()) as u64;
                debug_assert!(self.interpolates(&coords, &chosen));
                let grid: Vec<Vec<Matrix>> = da
                    .iter()
                    .map(|&a| db.iter().map(|&b| coords[index_of(a + b)].clone()).collect())
                    .collect();
                Matrix::from_blocks(&grid)?
            }
            Kind::Matdot => {
                let l = index_of(self.solution.d().unwrap());
                let mut out = Matrix::zeros(h, w);
                for u in 0..h {
                    for v in 0..w {
                        out.set(u, v, coordinate(l, u, v));
                    }
                }
                ops += (h * w * chosen.len()) as u64;
                out
            }
        };
        Ok(Decoded {
            product,
            responders_used: responders,
            decode_mults: ops,
        })
    }

    /// The recovered coordinates reproduce every worker's product.
    fn interpolates(&self, coords: &[Matrix], chosen: &[&WorkerResult]) -> bool {
        let field = self.field();
        chosen.iter().all(|r| {
            let mut acc = Matrix::zeros(r.product.rows(), r.product.cols());
            for (c, &s) in coords.iter().zip(&self.support) {
                acc.add_scaled(field, self.basis_value(r.place_index, s), c);
            }
            acc == r.product
        })
    }
}

/// h(P_i) = Ã_i · B̃_i.
pub fn worker_multiply(field: &FieldSpec, share: &EncodedShare) -> Result<WorkerResult> {
    let (product, mults) = share.a.mul(field, &share.b)?;
    Ok(WorkerResult {
        place_index: share.place_index,
        product,
        mults,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn herm2() -> Curve {
        Curve::hermitian(2).unwrap()
    }

    #[test]
    fn build_examples() {
        let s = CodeScheme::build(&herm2(), Kind::Poly, Method::Apery, 2, Some(2), 8).unwrap();
        assert_eq!((s.solution().d_a(), s.solution().d_b()), (&[0, 3][..], &[0, 2][..]));
        assert_eq!((s.k(), s.threshold()), (5, 6));

        let s = CodeScheme::build(&herm2(), Kind::Matdot, Method::Trivial, 2, None, 8).unwrap();
        assert_eq!((s.solution().d(), s.threshold()), (Some(5), 7));

        assert!(matches!(
            CodeScheme::build(&herm2(), Kind::Poly, Method::Trivial, 3, Some(3), 8),
            Err(Error::NotEnoughPlaces {
                needed: 13,
                available: 8
            })
        ));
        assert!(matches!(
            CodeScheme::build(&herm2(), Kind::Poly, Method::Apery, 2, Some(2), 9),
            Err(Error::NotEnoughPlaces {
                needed: 9,
                available: 8
            })
        ));
        let other = crate::constructions::poly_classical(2, 2).unwrap();
        assert!(matches!(
            CodeScheme::from_solution(&herm2(), other, 8),
            Err(Error::SemigroupCurveMismatch)
        ));
    }

    #[test]
    fn matdot_share_by_hand() {
        let s = CodeScheme::build(&herm2(), Kind::Matdot, Method::Trivial, 2, None, 8).unwrap();
        let id = Matrix::identity(2);
        let shares = s.encode(&id, &id).unwrap();
        let i = s
            .places()
            .iter()
            .position(|p| p.x.code() == 0 && p.y.code() == 1)
            .unwrap();
        // f_2 = x and f_3 = y (up to the tweak, which leaves them alone here).
        let want = Matrix::from_codes(2, 1, &[0, 1]).unwrap();
        assert_eq!(shares[i].a, want);
    }

    #[test]
    fn g_shape() {
        let s = CodeScheme::build(&herm2(), Kind::Poly, Method::Apery, 2, Some(2), 8).unwrap();
        let g = s.build_g(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!((g.rows(), g.cols()), (5, 6));
        assert!((0..6).all(|j| g.get(0, j) == FieldElement::ONE));
        assert!(matches!(
            s.build_g(&[0, 1, 2, 3, 4]),
            Err(Error::TooFewResponders { got: 5, needed: 6 })
        ));
        assert!(matches!(s.build_g(&[0, 1, 2, 3, 4, 4]), Err(Error::DuplicatePlace(4))));
        assert!(matches!(s.build_g(&[0, 1, 2, 3, 4, 8]), Err(Error::UnknownPlace(8))));

        let r = CodeScheme::build(
            &Curve::rational(4).unwrap(),
            Kind::Matdot,
            Method::Classical,
            2,
            None,
            4,
        )
        .unwrap();
        let g = r.build_g(&[0, 1, 2, 3]).unwrap();
        let f = r.field();
        for j in 0..4 {
            let x = r.places()[j].x;
            for l in 0..3 {
                assert_eq!(g.get(l, j), f.pow(x, l as u64));
            }
        }
    }

    fn round_trip(scheme: &CodeScheme, r: usize, inner: usize, t: usize, seed: u64) {
        let f = scheme.field();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        let a = Matrix::random(f, r, inner, &mut rng);
        let b = Matrix::random(f, inner, t, &mut rng);
        let want = a.mul(f, &b).unwrap().0;
        let results: Vec<WorkerResult> = scheme
            .encode(&a, &b)
            .unwrap()
            .iter()
            .map(|s| worker_multiply(f, s).unwrap())
            .collect();
        for subset in (0..scheme.workers()).combinations(scheme.threshold()) {
            let picked: Vec<WorkerResult> = subset.iter().map(|&i| results[i].clone()).collect();
            let got = scheme.decode(&picked).unwrap();
            assert_eq!(got.product, want, "responders {subset:?}");
            assert_eq!(got.responders_used, subset);
        }
        let short: Vec<WorkerResult> = results[..scheme.threshold() - 1].to_vec();
        assert!(matches!(scheme.decode(&short), Err(Error::TooFewResponders { .. })));
    }

    #[test]
    fn poly_and_matdot_round_trips() {
        let c = herm2();
        for method in [Method::Apery, Method::Recursive] {
            round_trip(
                &CodeScheme::build(&c, Kind::Poly, method, 2, Some(2), 8).unwrap(),
                4,
                4,
                4,
                1,
            );
        }
        round_trip(
            &CodeScheme::build(&c, Kind::Matdot, Method::Trivial, 2, None, 8).unwrap(),
            4,
            4,
            4,
            2,
        );
        let rat = Curve::rational(5).unwrap();
        round_trip(
            &CodeScheme::build(&rat, Kind::Poly, Method::Classical, 2, Some(2), 5).unwrap(),
            4,
            3,
            4,
            3,
        );
        round_trip(
            &CodeScheme::build(&rat, Kind::Matdot, Method::Classical, 2, None, 5).unwrap(),
            3,
            4,
            3,
            4,
        );
    }

    #[test]
    fn decode_is_order_independent_and_uses_first_arrivals() {
        let s = CodeScheme::build(&herm2(), Kind::Poly, Method::Apery, 2, Some(2), 8).unwrap();
        let f = s.field();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        let a = Matrix::random(f, 4, 4, &mut rng);
        let b = Matrix::random(f, 4, 4, &mut rng);
        let mut results: Vec<WorkerResult> = s
            .encode(&a, &b)
            .unwrap()
            .iter()
            .map(|x| worker_multiply(f, x).unwrap())
            .collect();
        results.reverse();
        let got = s.decode(&results).unwrap();
        assert_eq!(got.responders_used, vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(got.product, a.mul(f, &b).unwrap().0);
    }

    #[test]
    fn worker_counts_follow_partition() {
        let c = herm2();
        let f = c.field().clone();
        let a = Matrix::zeros(4, 4);
        let s = CodeScheme::build(&c, Kind::Poly, Method::Apery, 2, Some(2), 8).unwrap();
        let share = &s.encode(&a, &a).unwrap()[0];
        let r = worker_multiply(&f, share).unwrap();
        assert!(r.product.is_zero());
        assert_eq!(r.mults, 4 * 4 * 4 / 4);
    }

    #[test]
    fn padding() {
        let s = CodeScheme::build(&herm2(), Kind::Poly, Method::Apery, 2, Some(2), 8).unwrap();
        let (a, b) = s.pad_inputs(&Matrix::zeros(3, 5), &Matrix::zeros(5, 3));
        assert_eq!((a.rows(), a.cols(), b.rows(), b.cols()), (4, 5, 5, 4));
        let s = CodeScheme::build(&herm2(), Kind::Matdot, Method::Trivial, 2, None, 8).unwrap();
        let (a, b) = s.pad_inputs(&Matrix::zeros(3, 5), &Matrix::zeros(5, 3));
        assert_eq!((a.rows(), a.cols(), b.rows(), b.cols()), (3, 6, 6, 3));
    }
}
