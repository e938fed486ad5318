use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveKind {
    /// The rational function field over GF(q); L(∞Q) = GF(q)[x].
    Rational { q: u32 },
    /// y^{q0} + y = x^{q0+1} over GF(q0²).
    Hermitian { q0: u32 },
}

/// A curve with a distinguished place Q at infinity, the model for L(∞Q).
#[derive(Clone, Debug)]
pub struct Curve {
    kind: CurveKind,
    field: FieldSpec,
    semigroup: NumericalSemigroup,
}

/// An affine rational place. Rational places carry `y = 0`, which is never read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Place {
    pub index: usize,
    pub x: FieldElement,
    pub y: FieldElement,
}

/// An element of L(∞Q) in reduced monomial coordinates.
///
/// Reduced monomials `x^i y^j` (`j < q0`) have pairwise distinct pole orders,
/// which run exactly over the Weierstrass semigroup, so the element is stored
/// densely by pole order: `coeffs[s]` multiplies the monomial of pole order `s`.
/// Gap positions are always zero and the vector carries no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctionElement {
    coeffs: Vec<FieldElement>,
}

impl FunctionElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pole_order(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|s| s as u32)
    }

    /// Coefficient of the reduced monomial with pole order `s`.
    pub fn coeff(&self, s: u32) -> FieldElement {
        self.coeffs.get(s as usize).copied().unwrap_or_default()
    }

    /// Nonzero `(pole order, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, FieldElement)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, &c)| (s as u32, c))
    }

    fn from_dense(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FunctionElement { coeffs }
    }
}

impl Curve {
    pub fn rational(q: u32) -> Result<Self> {
        Ok(Curve {
            kind: CurveKind::Rational { q },
            field: FieldSpec::of_order(q)?,
            semigroup: NumericalSemigroup::naturals(),
        })
    }

    pub fn hermitian(q0: u32) -> Result<Self> {
        let field = FieldSpec::of_order(q0 * q0)?;
        Ok(Curve {
            kind: CurveKind::Hermitian { q0 },
            field,
            semigroup: NumericalSemigroup::hermitian(q0)?,
        })
    }

    /// Parses `rational:<q>` or `hermitian:<q0>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("curve must be rational:<q> or hermitian:<q0>, got {spec:?}"));
        let (name, arg) = spec.split_once(':').ok_or_else(bad)?;
        let arg: u32 = arg.parse().map_err(|_| bad())?;
        match name {
            "rational" => Self::rational(arg),
            "hermitian" => Self::hermitian(arg),
            _ => Err(bad()),
        }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Weierstrass semigroup of Q.
    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    /// q0 for Hermitian curves; 1 for the rational curve (no y).
    pub fn q0(&self) -> u32 {
        match self.kind {
            CurveKind::Rational { .. } => 1,
            CurveKind::Hermitian { q0 } => q0,
        }
    }

    pub fn place_count(&self) -> usize {
        match self.kind {
            CurveKind::Rational { q } => q as usize,
            CurveKind::Hermitian { q0 } => (q0 as usize).pow(3),
        }
    }

    /// Exponents `(i, j)` of the reduced monomial with pole order `s`.
    pub fn monomial(&self, s: u32) -> Option<(u32, u32)> {
        match self.kind {
            CurveKind::Rational { .. } => Some((s, 0)),
            CurveKind::Hermitian { q0 } => {
                let j = s % q0;
                let rest = s.checked_sub(j * (q0 + 1))?;
                Some((rest / q0, j))
            }
        }
    }

    pub fn pole_order_of(&self, i: u32, j: u32) -> u32 {
        match self.kind {
            CurveKind::Rational { .. } => i,
            CurveKind::Hermitian { q0 } => i * q0 + j * (q0 + 1),
        }
    }

    /// The reduced monomial of pole order `s` as a function.
    pub fn monomial_element(&self, s: u32) -> Result<FunctionElement> {
        if !self.semigroup.contains(s) {
            return Err(Error::NotInSemigroup(s));
        }
        let mut coeffs = vec![FieldElement::ZERO; s as usize + 1];
        coeffs[s as usize] = FieldElement::ONE;
        Ok(FunctionElement { coeffs })
    }

    /// Builds an element from explicit `(i, j)` monomial terms (must already be reduced).
    pub fn element_from_terms(&self, terms: &[((u32, u32), FieldElement)]) -> Result<FunctionElement> {
        let mut coeffs = Vec::new();
        for &((i, j), c) in terms {
            if j >= self.q0() || (matches!(self.kind, CurveKind::Rational { .. }) && j != 0) {
                return Err(Error::Parse(format!("monomial x^{i} y^{j} is not reduced")));
            }
            let s = self.pole_order_of(i, j) as usize;
            if coeffs.len() <= s {
                coeffs.resize(s + 1, FieldElement::ZERO);
            }
            coeffs[s] = self.field.add(coeffs[s], c);
        }
        Ok(FunctionElement::from_dense(coeffs))
    }

    /// All affine rational places, ordered by `(x, y)` codes.
    pub fn places(&self) -> Vec<Place> {
        let f = &self.field;
        match self.kind {
            CurveKind::Rational { .. } => f
                .elements()
                .enumerate()
                .map(|(index, x)| Place {
                    index,
                    x,
                    y: FieldElement::ZERO,
                })
                .collect(),
            CurveKind::Hermitian { q0 } => {
                let mut out = Vec::new();
                for x in f.elements() {
                    let rhs = f.pow(x, q0 as u64 + 1);
                    for y in f.elements() {
                        if f.add(f.pow(y, q0 as u64), y) == rhs {
                            out.push(Place { index: out.len(), x, y });
                        }
                    }
                }
                out
            }
        }
    }

    pub fn on_curve(&self, p: &Place) -> bool {
        match self.kind {
            CurveKind::Rational { .. } => true,
            CurveKind::Hermitian { q0 } => {
                let f = &self.field;
                f.add(f.pow(p.y, q0 as u64), p.y) == f.pow(p.x, q0 as u64 + 1)
            }
        }
    }

    pub fn add(&self, f: &FunctionElement, g: &FunctionElement) -> FunctionElement {
        let n = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..n as u32).map(|s| self.field.add(f.coeff(s), g.coeff(s))).collect();
        FunctionElement::from_dense(coeffs)
    }

    pub fn sub(&self, f: &FunctionElement, g: &FunctionElement) -> FunctionElement {
        let n = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..n as u32).map(|s| self.field.sub(f.coeff(s), g.coeff(s))).collect();
        FunctionElement::from_dense(coeffs)
    }

    pub fn scale(&self, c: FieldElement, f: &FunctionElement) -> FunctionElement {
        if c.is_zero() {
            return FunctionElement::zero();
        }
        FunctionElement {
            coeffs: f.coeffs.iter().map(|&x| self.field.mul(c, x)).collect(),
        }
    }

    /// Product in L(∞Q), reduced with y^{q0} = x^{q0+1} − y.
    ///
    /// A product of reduced monomials `x^i y^j` with `j ≥ q0` becomes
    /// `x^{i+q0+1} y^{j-q0} − x^i y^{j-q0+1}`: the first term keeps the pole
    /// order, the second has lower order and is already reduced.
    pub fn mul(&self, f: &FunctionElement, g: &FunctionElement) -> FunctionElement {
        let (Some(pf), Some(pg)) = (f.pole_order(), g.pole_order()) else {
            return FunctionElement::zero();
        };
        let field = &self.field;
        let mut acc = vec![FieldElement::ZERO; (pf + pg) as usize + 1];
        let q0 = self.q0();
        let hermitian = matches!(self.kind, CurveKind::Hermitian { .. });
        let tf: Vec<(u32, u32, u32, FieldElement)> = f
            .terms()
            .map(|(s, c)| {
                let (i, j) = self.monomial(s).expect("terms sit on semigroup elements");
                (s, i, j, c)
            })
            .collect();
        let tg: Vec<(u32, u32, u32, FieldElement)> = g
            .terms()
            .map(|(s, c)| {
                let (i, j) = self.monomial(s).expect("terms sit on semigroup elements");
                (s, i, j, c)
            })
            .collect();
        for &(s1, i1, j1, c1) in &tf {
            for &(s2, i2, j2, c2) in &tg {
                let c = field.mul(c1, c2);
                let top = (s1 + s2) as usize;
                acc[top] = field.add(acc[top], c);
                if hermitian && j1 + j2 >= q0 {
                    let low = self.pole_order_of(i1 + i2, j1 + j2 - q0 + 1) as usize;
                    acc[low] = field.sub(acc[low], c);
                }
            }
        }
        FunctionElement::from_dense(acc)
    }

    /// Values of every reduced monomial of pole order ≤ `bound` at `p`
    /// (index = pole order, zero at gaps).
    pub fn monomial_values(&self, p: &Place, bound: u32) -> Vec<FieldElement> {
        let f = &self.field;
        (0..=bound)
            .map(|s| match self.monomial(s) {
                Some((i, j)) if self.semigroup.contains(s) => {
                    let xv = f.pow(p.x, i as u64);
                    if j == 0 {
                        xv
                    } else {
                        f.mul(xv, f.pow(p.y, j as u64))
                    }
                }
                _ => FieldElement::ZERO,
            })
            .collect()
    }

    pub fn evaluate(&self, g: &FunctionElement, p: &Place) -> FieldElement {
        let Some(top) = g.pole_order() else {
            return FieldElement::ZERO;
        };
        let vals = self.monomial_values(p, top);
        self.evaluate_with(g, &vals)
    }

    /// Evaluation against precomputed [`Curve::monomial_values`].
    pub fn evaluate_with(&self, g: &FunctionElement, values: &[FieldElement]) -> FieldElement {
        g.terms().fold(FieldElement::ZERO, |acc, (s, c)| {
            self.field.mul_add(acc, c, values[s as usize])
        })
    }
}
