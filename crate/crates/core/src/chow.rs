//! Chern class arithmetic in the Chow ring `Z[h]/(h^{N+1})` of `P^N`, with
//! coefficients that may depend polynomially on a family parameter `t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, gen_binomial, ZPoly};
use crate::error::{invalid, Error, Result};

/// `sum_i c_i h^i` modulo `h^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    ambient: usize,
    coeffs: Vec<ZPoly>,
}

impl ChowClass {
    /// Terms of degree above `ambient` are discarded.
    pub fn new(ambient: usize, coeffs: Vec<ZPoly>) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(ambient + 1);
        coeffs.resize(ambient + 1, ZPoly::zero());
        ChowClass { ambient, coeffs }
    }

    pub fn from_i64(ambient: usize, coeffs: &[i64]) -> Self {
        ChowClass::new(ambient, coeffs.iter().map(|&c| ZPoly::from_i64(&[c])).collect())
    }

    pub fn one(ambient: usize) -> Self {
        ChowClass::from_i64(ambient, &[1])
    }

    /// `1 + a h`, the total Chern class of `O(a)`.
    pub fn line(ambient: usize, a: ZPoly) -> Self {
        ChowClass::new(ambient, vec![ZPoly::from_i64(&[1]), a])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coefficient of `h^i`; zero above the truncation.
    pub fn coeff(&self, i: usize) -> ZPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(ZPoly::zero)
    }

    pub fn coeffs(&self) -> &[ZPoly] {
        &self.coeffs
    }

    fn check_same(&self, other: &ChowClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(invalid(format!(
                "Chow classes live on P^{} and P^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same(other)?;
        let n = self.ambient;
        let mut out = vec![ZPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(ChowClass::new(n, out))
    }

    /// Multiplicative inverse; requires constant term `1`.
    pub fn inverse(&self) -> Result<ChowClass> {
        if self.coeffs[0] != ZPoly::from_i64(&[1]) {
            return Err(invalid("only classes with constant term 1 are invertible"));
        }
        let n = self.ambient;
        let mut out = vec![ZPoly::zero(); n + 1];
        out[0] = ZPoly::from_i64(&[1]);
        for k in 1..=n {
            let mut acc = ZPoly::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -acc;
        }
        Ok(ChowClass::new(n, out))
    }

    pub fn pow(&self, e: i64) -> Result<ChowClass> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = ChowClass::one(self.ambient);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Sign flip in odd degrees.
    pub fn dual(&self) -> ChowClass {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        ChowClass::new(self.ambient, coeffs)
    }

    /// Substitute an integer for `t`.
    pub fn specialize(&self, t: i64) -> ChowClass {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ZPoly::constant(c.eval_i64(t)))
            .collect();
        ChowClass::new(self.ambient, coeffs)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let coef = if c.degree() == Some(0) { text } else { format!("({text})") };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}h"),
                _ => format!("{coef}h^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Rank and total Chern class of a bundle on `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleChernData {
    rank: i64,
    total: ChowClass,
}

impl BundleChernData {
    /// Requires a positive rank, constant term `1` and `c_i = 0` for `i > rank`.
    pub fn new(rank: i64, total: ChowClass) -> Result<Self> {
        if rank < 1 {
            return Err(invalid(format!("rank must be positive, got {rank}")));
        }
        BundleChernData::virtual_class(rank, total)
    }

    /// Same checks except positivity of the rank, for formal differences.
    pub fn virtual_class(rank: i64, total: ChowClass) -> Result<Self> {
        if total.coeff(0) != ZPoly::from_i64(&[1]) {
            return Err(invalid("total Chern class must start with 1"));
        }
        if rank >= 0 {
            let r = rank as usize;
            if let Some(i) = (r + 1..=total.ambient()).find(|&i| !total.coeff(i).is_zero()) {
                return Err(invalid(format!("c_{i} is nonzero on a bundle of rank {rank}")));
            }
        }
        Ok(BundleChernData { rank, total })
    }

    /// `O(a_1) + ... + O(a_r)`.
    pub fn split(ambient: usize, twists: &[i64]) -> Result<Self> {
        if twists.is_empty() {
            return Err(invalid("a split bundle needs at least one summand"));
        }
        let mut total = ChowClass::one(ambient);
        for &a in twists {
            total = total.mul(&ChowClass::line(ambient, ZPoly::from_i64(&[a])))?;
        }
        BundleChernData::new(twists.len() as i64, total)
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total(&self) -> &ChowClass {
        &self.total
    }

    pub fn ambient(&self) -> usize {
        self.total.ambient()
    }

    /// `c_i` as a polynomial in `t`.
    pub fn c(&self, i: usize) -> ZPoly {
        self.total.coeff(i)
    }

    pub fn dual(&self) -> BundleChernData {
        BundleChernData { rank: self.rank, total: self.total.dual() }
    }

    pub fn specialize(&self, t: i64) -> BundleChernData {
        BundleChernData { rank: self.rank, total: self.total.specialize(t) }
    }
}

/// `c(E (x) O(l))` via `c_k = sum_i binom(r-i, k-i) c_i l^{k-i}`.
pub fn chern_twist(data: &BundleChernData, l: &ZPoly) -> BundleChernData {
    let n = data.ambient();
    let r = BigInt::from(data.rank);
    let mut powers = vec![ZPoly::from_i64(&[1])];
    for _ in 0..n {
        let next = powers.last().unwrap().clone() * l.clone();
        powers.push(next);
    }
    let coeffs = (0..=n)
        .map(|k| {
            (0..=k).fold(ZPoly::zero(), |acc, i| {
                let b = gen_binomial(&(&r - BigInt::from(i)), (k - i) as i64);
                acc + (data.c(i) * powers[k - i].clone()).scale(&b)
            })
        })
        .collect();
    BundleChernData { rank: data.rank, total: ChowClass::new(n, coeffs) }
}

pub fn chern_twist_by(data: &BundleChernData, l: i64) -> BundleChernData {
    chern_twist(data, &ZPoly::from_i64(&[l]))
}

/// `Omega^1_{P^n}`: total class `(1-h)^{n+1}`, rank `n`.
pub fn chern_of_omega(n: usize) -> Result<BundleChernData> {
    if n == 0 {
        return Err(invalid("ambient dimension must be positive"));
    }
    let total = ChowClass::line(n, ZPoly::from_i64(&[-1])).pow(n as i64 + 1)?;
    BundleChernData::new(n as i64, total)
}

/// Whitney sum.
pub fn direct_sum(operands: &[BundleChernData]) -> Result<BundleChernData> {
    let first = operands
        .first()
        .ok_or_else(|| invalid("direct sum of nothing"))?;
    let mut total = ChowClass::one(first.ambient());
    let mut rank = 0;
    for d in operands {
        total = total.mul(d.total())?;
        rank += d.rank;
    }
    BundleChernData::virtual_class(rank, total)
}

/// Degree of the codimension-2 locus where a general map `O^{r-1} -> E`
/// drops rank: the `h^2` coefficient of `c(E)`.
pub fn dependency_locus_degree(data: &BundleChernData) -> Result<ZPoly> {
    let trivial = BundleChernData::virtual_class(data.rank - 1, ChowClass::one(data.ambient()))?;
    dependency_locus_degree_of_map(data, &trivial)
}

/// Same for a general map `F -> E` with `rank E = rank F + 1`: the `h^2`
/// coefficient of `c(E) c(F)^{-1}`.
pub fn dependency_locus_degree_of_map(target: &BundleChernData, source: &BundleChernData) -> Result<ZPoly> {
    if target.rank - source.rank != 1 {
        return Err(invalid(format!(
            "rank difference must be 1, got {} - {}",
            target.rank, source.rank
        )));
    }
    if target.ambient() < 2 {
        return Err(invalid("a codimension-2 locus needs ambient dimension at least 2"));
    }
    let quotient = target.total.mul(&source.total.inverse()?)?;
    let deg = quotient.coeff(2);
    if deg.is_zero() {
        return Err(Error::DegenerateLocus);
    }
    Ok(deg)
}

/// Degree of a codimension-`codim` subscheme from the twists of a finite
/// free resolution `F_0 -> I_X` given as multisets `(twist, multiplicity)`
/// per homological degree, `F_j = sum O(-twist)^mult`.
///
/// Uses `c(I_X) = prod_j c(F_j)^{(-1)^j}` and
/// `c_e(I_X) = (-1)^e (e-1)! deg(X) h^e`.
pub fn degree_from_resolution(ambient: usize, codim: usize, terms: &[Vec<(i64, u64)>]) -> Result<BigInt> {
    if codim == 0 || codim > ambient {
        return Err(invalid(format!("codimension {codim} is not in 1..={ambient}")));
    }
    let mut total = ChowClass::one(ambient);
    for (j, summands) in terms.iter().enumerate() {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        for &(twist, mult) in summands {
            let line = ChowClass::line(ambient, ZPoly::from_i64(&[-twist]));
            total = total.mul(&line.pow(sign * mult as i64)?)?;
        }
    }
    if let Some(i) = (1..codim).find(|&i| !total.coeff(i).is_zero()) {
        return Err(invalid(format!("resolution has nonzero c_{i}, inconsistent with codimension {codim}")));
    }
    let ce = total.coeff(codim);
    let value = ce.coeff(0);
    if ce.degree().unwrap_or(0) > 0 {
        return Err(invalid("resolution twists must be integers"));
    }
    let signed = if codim.is_multiple_of(2) { value } else { -value };
    let fact = factorial((codim - 1) as u32);
    if !(&signed % &fact).is_zero() || signed.is_negative() {
        return Err(Error::NonIntegralDegree(format!("{signed}/{fact}")));
    }
    Ok(signed / fact)
}

impl BundleChernData {
    pub fn is_trivial(&self) -> bool {
        (1..=self.ambient()).all(|i| self.c(i).is_zero()) && self.c(0) == ZPoly::constant(BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t_poly(s: &str) -> ZPoly {
        ZPoly::parse(s).unwrap()
    }

    #[test]
    fn palatini_family_classes() {
        let omega = chern_of_omega(5).unwrap();
        assert_eq!(omega.c(1), ZPoly::from_i64(&[-6]));
        assert_eq!(omega.c(2), ZPoly::from_i64(&[15]));
        let e = chern_twist(&omega, &t_poly("2+t"));
        assert_eq!(e.c(1), t_poly("4+5t"));
        assert_eq!(e.c(2), t_poly("10t^2+16t+7"));
        let deg = dependency_locus_degree(&e).unwrap();
        assert_eq!(deg.to_string(), "10t^2 + 16t + 7");
        assert_eq!(deg.eval_i64(0), BigInt::from(7));
        assert_eq!(deg.eval_i64(1), BigInt::from(33));
        assert_eq!(dependency_locus_degree(&e.specialize(0)).unwrap(), ZPoly::from_i64(&[7]));
    }

    #[test]
    fn omega_of_projective_line() {
        assert_eq!(chern_of_omega(1).unwrap().c(1), ZPoly::from_i64(&[-2]));
    }

    #[test]
    fn identity_twist() {
        let omega = chern_of_omega(4).unwrap();
        assert_eq!(chern_twist_by(&omega, 0), omega);
    }

    #[test]
    fn sums_and_duals() {
        let e = BundleChernData::split(5, &[-3, -2, -1, 0]).unwrap();
        assert_eq!(e.c(1), ZPoly::from_i64(&[-6]));
        let omega = chern_of_omega(5).unwrap();
        let dual = omega.dual();
        assert_eq!(dual.c(1), ZPoly::from_i64(&[6]));
        assert_eq!(dual.c(2), ZPoly::from_i64(&[15]));
        let l = BundleChernData::split(5, &[3]).unwrap();
        let both = direct_sum(&[l.clone(), l.dual()]).unwrap();
        assert_eq!(both.rank(), 2);
        assert!(both.c(1).is_zero());
    }

    #[test]
    fn degenerate_locus_is_reported() {
        let trivial = BundleChernData::split(4, &[0, 0, 0]).unwrap();
        assert_eq!(dependency_locus_degree(&trivial), Err(Error::DegenerateLocus));
        let wrong = BundleChernData::split(4, &[0]).unwrap();
        assert!(dependency_locus_degree_of_map(&trivial, &wrong).is_err());
    }

    #[test]
    fn invariant_checks() {
        let bad = ChowClass::from_i64(3, &[1, 0, 2]);
        assert!(BundleChernData::new(1, bad).is_err());
        assert!(BundleChernData::new(2, ChowClass::from_i64(3, &[2])).is_err());
        assert!(ChowClass::from_i64(2, &[1, 1, 1, 1]).coeffs().len() == 3);
    }

    #[test]
    fn degrees_from_resolutions() {
        // complete intersection of two quadrics
        assert_eq!(degree_from_resolution(5, 2, &[vec![(2, 2)], vec![(4, 1)]]).unwrap(), BigInt::from(4));
        // two skew lines in P^3
        let skew = [vec![(2, 4)], vec![(3, 4)], vec![(4, 1)]];
        assert_eq!(degree_from_resolution(3, 2, &skew).unwrap(), BigInt::from(2));
        // twisted cubic / Segre threefold type
        assert_eq!(degree_from_resolution(5, 2, &[vec![(2, 3)], vec![(3, 2)]]).unwrap(), BigInt::from(3));
        // CI (2,3,4) in P^4
        let ci = [vec![(2, 1), (3, 1), (4, 1)], vec![(5, 1), (6, 1), (7, 1)], vec![(9, 1)]];
        assert_eq!(degree_from_resolution(4, 3, &ci).unwrap(), BigInt::from(24));
    }

    fn split_total(ambient: usize, twists: &[i64]) -> BundleChernData {
        BundleChernData::split(ambient, twists).unwrap()
    }

    proptest! {
        #[test]
        fn twist_composes(a in -6i64..6, b in -6i64..6, n in 1usize..7) {
            let d = chern_of_omega(n).unwrap();
            prop_assert_eq!(chern_twist_by(&chern_twist_by(&d, a), b), chern_twist_by(&d, a + b));
        }

        #[test]
        fn whitney_matches_twist_on_split(twists in prop::collection::vec(-5i64..=5, 1..5), a in -5i64..=5) {
            let pieces: Vec<_> = twists.iter().map(|&x| split_total(5, &[x + a])).collect();
            let summed = direct_sum(&pieces).unwrap();
            let twisted = chern_twist_by(&split_total(5, &twists), a);
            prop_assert_eq!(summed, twisted);
        }

        #[test]
        fn split_twist_brute_force(twists in prop::collection::vec(-4i64..=4, 1..=5), l in -4i64..=4) {
            let shifted: Vec<i64> = twists.iter().map(|x| x + l).collect();
            prop_assert_eq!(chern_twist_by(&split_total(6, &twists), l), split_total(6, &shifted));
        }

        #[test]
        fn inverse_is_inverse(cs in prop::collection::vec(-9i64..9, 1..6)) {
            let mut coeffs = vec![1];
            coeffs.extend(cs);
            let c = ChowClass::from_i64(5, &coeffs);
            prop_assert_eq!(c.mul(&c.inverse().unwrap()).unwrap(), ChowClass::one(5));
        }
    }
}
