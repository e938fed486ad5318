//! Threshold-to-workers ratios along a family of curves.
//!
//! For a curve with N places and conductor c, poly schemes reach
//! ρ = (c + m²)/N against the ideal m²/N, and matdot schemes reach
//! (2(m + c) − 1)/N against (2m − 1)/N. The excess is c/N or 2c/N. For
//! families whose c/N tends to 1/(√q − 1) the excess limits are 1/(√q − 1) and
//! 2/(√q − 1).

use num_integer::Roots;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::constructions::Kind;
use crate::error::{Error, Result};

pub type Rational = Ratio<u64>;

/// One member of the family: N places, conductor c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    pub places: u64,
    pub conductor: u64,
}

/// Parses `N=<n>,c=<c>;N=<n>,c=<c>;...`.
pub fn parse_series(text: &str) -> Result<Vec<FamilyPoint>> {
    let bad = |s: &str| Error::Parse(format!("series entries look like N=<int>,c=<int>, got {s:?}"));
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|entry| {
            let (mut n, mut c) = (None, None);
            for kv in entry.split(',') {
                let (k, v) = kv.split_once('=').ok_or_else(|| bad(entry))?;
                let v: u64 = v.trim().parse().map_err(|_| bad(entry))?;
                match k.trim() {
                    "N" => n = Some(v),
                    "c" => c = Some(v),
                    _ => return Err(bad(entry)),
                }
            }
            match (n, c) {
                (Some(places), Some(conductor)) if places > 0 => Ok(FamilyPoint { places, conductor }),
                _ => Err(bad(entry)),
            }
        })
        .collect()
}

/// √q for a perfect square q > 1.
fn sqrt_exact(q: u64) -> Result<u64> {
    let r = q.sqrt();
    if r * r != q || r < 2 {
        return Err(Error::HypothesisUnmet(format!(
            "q = {q} is not a square of an integer above 1"
        )));
    }
    Ok(r)
}

/// 1/(√q − 1).
pub fn epsilon(q: u64) -> Result<Rational> {
    Ok(Rational::new(1, sqrt_exact(q)? - 1))
}

/// Limit of the excess ratio: ε(q) for poly, 2ε(q) for matdot.
pub fn excess_limit(q: u64, kind: Kind) -> Result<Rational> {
    let e = epsilon(q)?;
    Ok(match kind {
        Kind::Poly => e,
        Kind::Matdot => e * 2,
    })
}

/// (ρ, ideal ratio, excess) at one family member.
pub fn ratios(point: FamilyPoint, m: u64, kind: Kind) -> (Rational, Rational, Rational) {
    let (n, c) = (point.places, point.conductor);
    let (threshold, ideal) = match kind {
        Kind::Poly => (c + m * m, m * m),
        Kind::Matdot => (2 * (m + c) - 1, 2 * m - 1),
    };
    (
        Rational::new(threshold, n),
        Rational::new(ideal, n),
        Rational::new(threshold - ideal, n),
    )
}

fn show(r: Rational) -> Value {
    json!({
        "exact": r.to_string(),
        "decimal": format!("{:.6}", *r.numer() as f64 / *r.denom() as f64),
    })
}

/// The JSON report printed by `report asymptotic`.
pub fn report(q: u64, m: u64, kind: Kind, series: &[FamilyPoint]) -> Result<Value> {
    let eps = epsilon(q)?;
    let rows: Vec<Value> = series
        .iter()
        .map(|&p| {
            let (rho, ideal, excess) = ratios(p, m, kind);
            json!({
                "N": p.places,
                "c": p.conductor,
                "rho": show(rho),
                "ideal": show(ideal),
                "excess": show(excess),
            })
        })
        .collect();
    Ok(json!({
        "q": q,
        "m": m,
        "mode": kind,
        "epsilon": show(eps),
        "poly_limit": show(excess_limit(q, Kind::Poly)?),
        "matdot_limit": show(excess_limit(q, Kind::Matdot)?),
        "series": rows,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        assert_eq!(epsilon(25).unwrap(), Rational::new(1, 4));
        assert_eq!(excess_limit(25, Kind::Matdot).unwrap(), Rational::new(1, 2));
        assert_eq!(epsilon(16).unwrap(), Rational::new(1, 3));
        assert!(epsilon(5).is_err());
        assert!(epsilon(1).is_err());
    }

    #[test]
    fn series_values() {
        let pts = parse_series("N=125,c=20; N=64,c=12").unwrap();
        assert_eq!(
            pts[1],
            FamilyPoint {
                places: 64,
                conductor: 12
            }
        );
        let (rho, ideal, ex) = ratios(pts[0], 40, Kind::Poly);
        assert_eq!(
            (rho, ideal, ex),
            (
                Rational::new(1620, 125),
                Rational::new(1600, 125),
                Rational::new(20, 125)
            )
        );
        let (_, _, ex) = ratios(pts[0], 40, Kind::Matdot);
        assert_eq!(ex, Rational::new(40, 125));
        assert!(parse_series("N=5").is_err());
        assert!(parse_series("N=0,c=1").is_err());
    }

    #[test]
    fn report_shape() {
        let v = report(16, 2, Kind::Poly, &parse_series("N=64,c=12").unwrap()).unwrap();
        assert_eq!(v["epsilon"]["exact"], "1/3");
        assert_eq!(v["epsilon"]["decimal"], "0.333333");
        assert_eq!(v["series"][0]["excess"]["exact"], "3/16");
    }
}
