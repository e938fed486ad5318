//! Exact arithmetic in small finite fields GF(p^k).
//!
//! Elements are integer codes: the polynomial `c_0 + c_1 z + ... + c_{k-1} z^{k-1}`
//! over GF(p) is stored as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. The field itself is
//! a [`FieldSpec`] value and every operation goes through it.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Orders up to this size get a cached multiplication table.
const TABLE_ORDER: u32 = 256;

/// A field element, as its base-p digit code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw code without checking it against a field; use
    /// [`FieldSpec::element`] for validated construction.
    pub const fn from_code(code: u32) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic operation selector, mostly useful for table-driven callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

/// GF(p^k) with a fixed monic irreducible modulus.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    q: u32,
    mul_table: Option<Arc<[u32]>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Built-in moduli, little-endian coefficient order (constant term first).
pub fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, k) {
        (_, 1) => &[0, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 1, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FieldSpec {
    /// Builds GF(p^k); with `modulus = None` one of the built-in defaults is used.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidModulus("extension degree must be >= 1".into()));
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(p, k).ok_or(Error::NoDefaultModulus { p, k })?,
        };
        if modulus.len() != k as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficient out of range".into()));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        let mut field = FieldSpec {
            p,
            k,
            modulus,
            q: order as u32,
            mul_table: None,
        };
        if field.q <= TABLE_ORDER {
            let q = field.q;
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(field.mul_schoolbook(a, b));
                }
            }
            field.mul_table = Some(table.into());
        }
        Ok(field)
    }

    /// GF(q) with the default modulus for the prime power `q`.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p, k, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(Error::InvalidElement { code, q: self.q });
        }
        Ok(FieldElement(code))
    }

    /// The prime-field element `n mod p`.
    pub fn from_int(&self, n: u64) -> FieldElement {
        FieldElement((n % self.p as u64) as u32)
    }

    /// All q elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.mul_schoolbook(a.0, b.0)),
        }
    }

    /// `a + b * c`, the inner-loop primitive of every matrix routine.
    pub fn mul_add(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> FieldElement {
        self.add(a, self.mul(b, c))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Dispatches on [`Op`]; unary ops ignore `b`.
    pub fn apply(&self, op: Op, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(match op {
            Op::Add => self.add(a, b),
            Op::Sub => self.sub(a, b),
            Op::Mul => self.mul(a, b),
            Op::Div => self.div(a, b)?,
            Op::Inv => self.inv(a)?,
            Op::Pow(e) => self.pow(a, e),
        })
    }

    /// Header line used by the matrix CSV format.
    pub fn header(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        format!("# gf {} {} modulus={}", self.p, self.k, coeffs.join(","))
    }

    /// Parses a line produced by [`FieldSpec::header`].
    pub fn parse_header(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad field header: {line:?}"));
        let rest = line.trim().strip_prefix('#').ok_or_else(bad)?.trim();
        let mut parts = rest.split_whitespace();
        if parts.next() != Some("gf") {
            return Err(bad());
        }
        let p: u32 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let k: u32 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let modulus = parts
            .next()
            .and_then(|s| s.strip_prefix("modulus="))
            .ok_or_else(bad)?
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::new(p, k, Some(modulus))
    }

    fn digits(&self, mut code: u32) -> [u32; 16] {
        let mut d = [0u32; 16];
        for slot in d.iter_mut().take(self.k as usize) {
            *slot = code % self.p;
            code /= self.p;
        }
        d
    }

    fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        if k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 32];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        // reduce with z^k = -(m_0 + ... + m_{k-1} z^{k-1})
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let mut code = 0u64;
        for i in (0..k).rev() {
            code = code * p + prod[i];
        }
        code as u32
    }
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients in GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let base = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[base + i] = (r[base + i] + (p - lead) * c as u64) % p;
            }
        }
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(c: u32) -> FieldElement {
        FieldElement::from_code(c)
    }

    #[test]
    fn gf4_default_and_table() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(fe(2), fe(2)), fe(3));
        assert_eq!(f.add(fe(3), fe(3)), fe(0));
        assert_eq!(f.inv(fe(2)).unwrap(), fe(3));
    }

    #[test]
    fn rejects_composite_and_reducible() {
        assert!(matches!(FieldSpec::new(4, 1, None), Err(Error::NotPrime(4))));
        // z^2 + 1 = (z + 1)^2 over GF(2)
        assert!(matches!(
            FieldSpec::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            FieldSpec::new(7, 2, None),
            Err(Error::NoDefaultModulus { p: 7, k: 2 })
        ));
        assert!(FieldSpec::new(2, 2, Some(vec![1, 1, 0])).is_err());
    }

    #[test]
    fn gf25_modulus_has_no_roots() {
        // brute force: z^2 + z + 2 has no root in GF(5)
        assert!((0..5u32).all(|z| (z * z + z + 2) % 5 != 0));
        assert!(FieldSpec::new(5, 2, Some(vec![2, 1, 1])).is_ok());
    }

    #[test]
    fn division_by_zero() {
        let f = FieldSpec::of_order(9).unwrap();
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero)));
        assert!(matches!(f.div(fe(4), FieldElement::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn enumeration_is_code_order() {
        let f = FieldSpec::of_order(2).unwrap();
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![fe(0), fe(1)]);
        let f = FieldSpec::of_order(4).unwrap();
        assert_eq!(f.elements().map(|e| e.code()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let f = FieldSpec::of_order(9).unwrap();
        let all: std::collections::HashSet<_> = f.elements().collect();
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn table_agrees_with_schoolbook() {
        for q in [4, 8, 9, 16, 25, 27] {
            let f = FieldSpec::of_order(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.mul(fe(a), fe(b)).code(), f.mul_schoolbook(a, b));
                }
            }
        }
    }

    #[test]
    fn header_round_trip() {
        let f = FieldSpec::of_order(25).unwrap();
        assert_eq!(f.header(), "# gf 5 2 modulus=2,1,1");
        assert_eq!(FieldSpec::parse_header(&f.header()).unwrap(), f);
        assert!(FieldSpec::parse_header("# gf 5").is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }
}
