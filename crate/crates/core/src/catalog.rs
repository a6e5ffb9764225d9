//! Built-in varieties with the presentations their invariants are computed
//! from.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{QPoly, ZPoly};
use crate::betti::{degree_and_sectional_genus, koszul, BettiTable};
use crate::chow::{chern_of_omega, chern_twist, dependency_locus_degree, BundleChernData};
use crate::error::{invalid, Result};
use crate::les::{
    geometric_prior, ideal_table_from_presentation, les_solve, resolution_table, IdealPresentation, SheafExpr,
    ShiftedSequence, ShortExactSeq, Slot,
};
use crate::quadric::{ideal_resolution, series_sequence, QuadricClass, QuadricDivisorSpec};
use crate::reg::{regularity_scan, RegScanResult};
use crate::table::CohTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarietySpec {
    CompleteIntersection { ambient: usize, degrees: Vec<i64> },
    /// Dependency locus of four sections of `Omega^1_{P^5}(2 + t)`.
    PalatiniScroll { t: u32 },
    /// `P^1 x P^2` in `P^5`.
    SegreThreefold,
    QuadricDivisor(QuadricDivisorSpec),
    /// Two disjoint lines in `P^3`.
    TwoSkewLines,
}

impl VarietySpec {
    pub fn complete_intersection(ambient: usize, degrees: &[i64]) -> Result<Self> {
        koszul(ambient, degrees)?;
        Ok(VarietySpec::CompleteIntersection { ambient, degrees: degrees.to_vec() })
    }

    pub fn ambient(&self) -> usize {
        match self {
            VarietySpec::CompleteIntersection { ambient, .. } => *ambient,
            VarietySpec::PalatiniScroll { .. } | VarietySpec::SegreThreefold => 5,
            VarietySpec::QuadricDivisor(q) => q.ambient(),
            VarietySpec::TwoSkewLines => 3,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            VarietySpec::CompleteIntersection { ambient, degrees } => ambient - degrees.len(),
            VarietySpec::PalatiniScroll { .. } | VarietySpec::SegreThreefold => 3,
            VarietySpec::QuadricDivisor(q) => q.n(),
            VarietySpec::TwoSkewLines => 1,
        }
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    /// Degree as recorded in the catalog entry, independent of any
    /// computation.
    pub fn declared_degree(&self) -> BigInt {
        match self {
            VarietySpec::CompleteIntersection { degrees, .. } => degrees.iter().map(|&d| BigInt::from(d)).product(),
            VarietySpec::PalatiniScroll { t } => {
                let t = BigInt::from(*t);
                BigInt::from(10) * &t * &t + BigInt::from(16) * &t + 7
            }
            VarietySpec::SegreThreefold => BigInt::from(3),
            VarietySpec::QuadricDivisor(q) => BigInt::from(q.degree()),
            VarietySpec::TwoSkewLines => BigInt::from(2),
        }
    }

    pub fn description(&self) -> String {
        match self {
            VarietySpec::CompleteIntersection { ambient, degrees } => {
                let ds: Vec<String> = degrees.iter().map(i64::to_string).collect();
                format!("complete intersection of type ({}) in P^{ambient}", ds.join(","))
            }
            VarietySpec::PalatiniScroll { t } => format!("Palatini scroll X_{t} in P^5"),
            VarietySpec::SegreThreefold => "Segre threefold P^1 x P^2 in P^5".to_string(),
            VarietySpec::QuadricDivisor(q) => q.to_string(),
            VarietySpec::TwoSkewLines => "two skew lines in P^3".to_string(),
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::CompleteIntersection { ambient, degrees } => {
                let ds: Vec<String> = degrees.iter().map(i64::to_string).collect();
                write!(f, "ci:{ambient}:{}", ds.join(","))
            }
            VarietySpec::PalatiniScroll { t } => write!(f, "palatini:{t}"),
            VarietySpec::SegreThreefold => write!(f, "segre"),
            VarietySpec::QuadricDivisor(q) => match q.class() {
                QuadricClass::Rank4 { a, b } => write!(f, "quadric:{}:4:{a},{b}", q.n()),
                QuadricClass::Rank3 { s } => write!(f, "quadric:{}:3:{s}", q.n()),
            },
            VarietySpec::TwoSkewLines => write!(f, "skew-lines"),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| invalid(format!("'{p}' is not an integer"))))
        .collect()
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| invalid(format!("'{s}' is not a valid {what}")))
}

impl FromStr for VarietySpec {
    type Err = crate::error::Error;

    /// Accepts `ci:N:d1,d2,..`, `palatini:T`, `segre`,
    /// `quadric:N:4:A,B`, `quadric:N:3:S` and `skew-lines`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["ci", n, ds] => VarietySpec::complete_intersection(parse_num(n, "ambient dimension")?, &parse_list(ds)?),
            ["palatini"] => Ok(VarietySpec::PalatiniScroll { t: 0 }),
            ["palatini", t] => Ok(VarietySpec::PalatiniScroll { t: parse_num(t, "family parameter")? }),
            ["segre"] => Ok(VarietySpec::SegreThreefold),
            ["skew-lines"] => Ok(VarietySpec::TwoSkewLines),
            ["quadric", n, "4", class] => match parse_list(class)?.as_slice() {
                [a, b] => Ok(VarietySpec::QuadricDivisor(QuadricDivisorSpec::rank4(parse_num(n, "dimension")?, *a, *b)?)),
                _ => Err(invalid("rank-4 quadric class needs two integers a,b")),
            },
            ["quadric", n, "3", s] => Ok(VarietySpec::QuadricDivisor(QuadricDivisorSpec::rank3(
                parse_num(n, "dimension")?,
                parse_num(s, "degree")?,
            )?)),
            _ => Err(invalid(format!("unknown variety '{s}'"))),
        }
    }
}

/// The built-in entries.
pub fn catalog() -> Vec<VarietySpec> {
    vec![
        VarietySpec::CompleteIntersection { ambient: 5, degrees: vec![2, 2] },
        VarietySpec::PalatiniScroll { t: 0 },
        VarietySpec::SegreThreefold,
        VarietySpec::QuadricDivisor(QuadricDivisorSpec::rank4(3, 3, 2).expect("valid class")),
        VarietySpec::QuadricDivisor(QuadricDivisorSpec::rank4(3, 3, 3).expect("valid class")),
        VarietySpec::QuadricDivisor(QuadricDivisorSpec::rank3(3, 5).expect("valid class")),
        VarietySpec::TwoSkewLines,
    ]
}

/// `c_1(Omega^1_{P^5}(2 + t)) = 4 + 5t`.
pub fn palatini_c1(t: i64) -> i64 {
    4 + 5 * t
}

/// Chern data of `Omega^1_{P^5}(2 + t)` as a family in `t`.
pub fn palatini_bundle() -> Result<BundleChernData> {
    Ok(chern_twist(&chern_of_omega(5)?, &ZPoly::from_i64(&[2, 1])))
}

pub fn presentation(spec: &VarietySpec) -> Result<IdealPresentation> {
    let ambient = spec.ambient();
    let dim = spec.dim();
    let (betti, sequences) = match spec {
        VarietySpec::CompleteIntersection { ambient, degrees } => (Some(koszul(*ambient, degrees)?), vec![]),
        VarietySpec::PalatiniScroll { t } => {
            let t = i64::from(*t);
            // 0 -> O^4 -> Omega^1(2+t) -> I_X(c1) -> 0
            let seq = ShortExactSeq::new(
                Slot::Known(SheafExpr::line(5, 0, 4)),
                Slot::Known(SheafExpr::Omega { n: 5, p: 1, twist: 2 + t }),
                Slot::unknown(),
            )?;
            (None, vec![ShiftedSequence { seq, offset: palatini_c1(t) }])
        }
        VarietySpec::SegreThreefold => {
            let seq = ShortExactSeq::new(
                Slot::unknown(),
                Slot::Known(SheafExpr::line(5, 0, 1)),
                Slot::Known(SheafExpr::Product { n1: 1, n2: 2, a: 0, b: 0 }),
            )?;
            let betti = BettiTable::new(5, vec![vec![(2, 3)], vec![(3, 2)]])?;
            (Some(betti), vec![ShiftedSequence { seq, offset: 0 }])
        }
        VarietySpec::QuadricDivisor(q) => {
            let seq = series_sequence(q)?;
            (Some(ideal_resolution(q)?), vec![ShiftedSequence { seq, offset: 0 }])
        }
        VarietySpec::TwoSkewLines => {
            let seq = ShortExactSeq::new(
                Slot::unknown(),
                Slot::Known(SheafExpr::line(3, 0, 1)),
                Slot::Known(SheafExpr::line(1, 0, 2)),
            )?;
            let betti = BettiTable::new(3, vec![vec![(2, 4)], vec![(3, 4)], vec![(4, 1)]])?;
            (Some(betti), vec![ShiftedSequence { seq, offset: 0 }])
        }
    };
    Ok(IdealPresentation { ambient, dim, betti, sequences })
}

/// Cohomology table of `I_X(k)` combining every presentation.
pub fn ideal_table(spec: &VarietySpec) -> Result<CohTable> {
    ideal_table_from_presentation(&presentation(spec)?)
}

/// Each presentation solved on its own, with only the geometric prior.
pub fn route_tables(spec: &VarietySpec) -> Result<Vec<(String, CohTable)>> {
    let pres = presentation(spec)?;
    let prior = geometric_prior(pres.ambient, pres.dim)?;
    let mut out = Vec::new();
    if let Some(b) = &pres.betti {
        out.push(("resolution".to_string(), resolution_table(b, Some(prior.clone()))));
    }
    for s in &pres.sequences {
        let seq = s.seq.clone().with_prior(prior.twist(s.offset))?;
        out.push((format!("sequence {}", s.seq), les_solve(&seq)?.twist(-s.offset)));
    }
    Ok(out)
}

pub fn regularity(spec: &VarietySpec) -> Result<RegScanResult> {
    regularity_scan(&ideal_table(spec)?, spec.dim())
}

/// Degree from Chern classes: the dependency-locus formula for Palatini
/// scrolls, the resolution otherwise.
pub fn chern_degree(spec: &VarietySpec) -> Result<BigInt> {
    match spec {
        VarietySpec::PalatiniScroll { t } => Ok(dependency_locus_degree(&palatini_bundle()?)?.eval_i64(i64::from(*t))),
        _ => match presentation(spec)?.betti {
            Some(b) => b.chern_degree(spec.codim()),
            None => Err(invalid("no resolution to compute Chern classes from")),
        },
    }
}

/// Hilbert polynomial of `X`: from the resolution when there is one, else
/// interpolated from `h^0(O_X(k)) = h^0(O(k)) - h^0(I_X(k))` at `dim + 1`
/// twists past the regularity.
pub fn hilbert_polynomial(spec: &VarietySpec) -> Result<QPoly> {
    let pres = presentation(spec)?;
    if let Some(b) = &pres.betti {
        return Ok(b.variety_hilbert_polynomial());
    }
    let table = ideal_table_from_presentation(&pres)?;
    let reg = regularity_scan(&table, spec.dim())?.reg;
    let ambient = QPoly::binomial_in(spec.ambient() as i64, spec.ambient() as u32);
    let points = (reg..=reg + spec.dim() as i64)
        .map(|k| {
            let h0 = table.exact(0, k)?;
            let total = ambient.eval_i64(k).to_integer();
            Ok((k, total - h0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QPoly::interpolate(&points))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub degree: BigInt,
    pub dim: usize,
    pub codim: usize,
    pub reg: i64,
    pub first_normal_from: Option<i64>,
    pub hilbert_polynomial: QPoly,
    pub sectional_genus: BigInt,
}

pub fn invariants(spec: &VarietySpec) -> Result<Invariants> {
    let poly = hilbert_polynomial(spec)?;
    let (degree, sectional_genus) = degree_and_sectional_genus(&poly, spec.dim())?;
    let scan = regularity(spec)?;
    Ok(Invariants {
        degree,
        dim: spec.dim(),
        codim: spec.codim(),
        reg: scan.reg,
        first_normal_from: scan.first_normal_from,
        hilbert_polynomial: poly,
        sectional_genus,
    })
}

/// Degree three ways: catalog entry, Chern classes, Hilbert polynomial.
pub fn degree_triple(spec: &VarietySpec) -> Result<[BigInt; 3]> {
    let poly = hilbert_polynomial(spec)?;
    let (from_poly, _) = degree_and_sectional_genus(&poly, spec.dim())?;
    Ok([spec.declared_degree(), chern_degree(spec)?, from_poly])
}

/// Value of a Hilbert polynomial at an integer, as an integer when it is one.
pub fn eval_integer(poly: &QPoly, k: i64) -> Option<BigInt> {
    let v: BigRational = poly.eval_i64(k);
    v.is_integer().then(|| v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for spec in catalog() {
            let again: VarietySpec = spec.to_string().parse().unwrap();
            assert_eq!(again, spec);
        }
        assert!("quadric:3:4:5,2".parse::<VarietySpec>().is_err());
        assert!("nonsense".parse::<VarietySpec>().is_err());
    }

    #[test]
    fn palatini_zero_invariants() {
        let inv = invariants(&VarietySpec::PalatiniScroll { t: 0 }).unwrap();
        assert_eq!(inv.degree, BigInt::from(7));
        assert_eq!(inv.sectional_genus, BigInt::from(4));
        assert_eq!(inv.reg, 4);
        assert_eq!(inv.first_normal_from, Some(3));
    }

    #[test]
    fn small_entries() {
        let inv = invariants(&VarietySpec::SegreThreefold).unwrap();
        assert_eq!((inv.degree, inv.reg), (BigInt::from(3), 2));
        let inv = invariants(&VarietySpec::CompleteIntersection { ambient: 5, degrees: vec![2, 2] }).unwrap();
        assert_eq!((inv.degree, inv.reg), (BigInt::from(4), 3));
        let inv = invariants(&VarietySpec::TwoSkewLines).unwrap();
        assert_eq!((inv.degree, inv.reg, inv.first_normal_from), (BigInt::from(2), 2, Some(1)));
        assert_eq!(inv.sectional_genus, BigInt::from(-1));
    }

    #[test]
    fn degrees_agree_three_ways() {
        for spec in catalog() {
            let [a, b, c] = degree_triple(&spec).unwrap();
            assert_eq!(a, b, "{spec}");
            assert_eq!(a, c, "{spec}");
        }
    }
}
