//! Graded Betti tables of ideal resolutions and what can be read off them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorial, QPoly};
use crate::chow::degree_from_resolution;
use crate::error::{invalid, Error, Result};

/// `beta_{i,j}` of a minimal free resolution
/// `0 -> F_s -> ... -> F_0 -> I -> 0` over `S = k[x_0..x_N]`, with
/// `F_i = sum_j S(-j)^{beta_{i,j}}`. Row `0` lists the generators of `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiTable {
    ambient: usize,
    rows: Vec<BTreeMap<i64, u64>>,
}

impl BettiTable {
    /// `rows[i]` lists `(j, beta_{i,j})`; repeated `j` are added up.
    pub fn new(ambient: usize, rows: Vec<Vec<(i64, u64)>>) -> Result<Self> {
        if ambient == 0 {
            return Err(invalid("ambient dimension must be positive"));
        }
        let mut out: Vec<BTreeMap<i64, u64>> = rows
            .into_iter()
            .map(|row| {
                let mut m = BTreeMap::new();
                for (j, b) in row {
                    if b > 0 {
                        *m.entry(j).or_insert(0) += b;
                    }
                }
                m
            })
            .collect();
        while out.last().is_some_and(BTreeMap::is_empty) {
            out.pop();
        }
        if out.is_empty() {
            return Err(invalid("a Betti table needs at least one generator"));
        }
        if out.len() > ambient {
            return Err(invalid(format!(
                "a saturated ideal in {} variables has projective dimension at most {}",
                ambient + 1,
                ambient - 1
            )));
        }
        if out.iter().any(BTreeMap::is_empty) {
            return Err(invalid("a resolution cannot have an empty intermediate module"));
        }
        Ok(BettiTable { ambient, rows: out })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Length `s` of the resolution (index of the last nonzero module).
    pub fn length(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn beta(&self, i: usize, j: i64) -> u64 {
        self.rows.get(i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.rows.get(i).into_iter().flat_map(|r| r.iter().map(|(j, b)| (*j, *b)))
    }

    /// Summands of each `F_i` as `(j, beta_{i,j})`.
    pub fn terms(&self) -> Vec<Vec<(i64, u64)>> {
        self.rows.iter().map(|r| r.iter().map(|(j, b)| (*j, *b)).collect()).collect()
    }

    pub fn min_degree(&self, i: usize) -> Option<i64> {
        self.rows.get(i).and_then(|r| r.keys().next().copied())
    }

    pub fn max_degree(&self, i: usize) -> Option<i64> {
        self.rows.get(i).and_then(|r| r.keys().next_back().copied())
    }

    pub fn rank(&self, i: usize) -> u64 {
        self.rows.get(i).map_or(0, |r| r.values().sum())
    }

    /// `reg(I) = max (j - i)` over nonzero entries.
    pub fn regularity(&self) -> i64 {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.keys().next_back().map(|j| j - i as i64))
            .max()
            .expect("tables are nonempty")
    }

    /// `dim I_k` from the alternating sum of shifted polynomial ring
    /// dimensions.
    pub fn hilbert_function(&self, k: i64) -> Result<BigInt> {
        let n = self.ambient as i64;
        let mut acc = BigInt::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                let term = binomial(k - j + n, n) * BigInt::from(*b);
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
        if acc.is_negative() || acc > binomial(k + n, n) {
            return Err(Error::NonExactTable { k, value: acc.to_string() });
        }
        Ok(acc)
    }

    /// Polynomial agreeing with [`hilbert_function`](Self::hilbert_function)
    /// for `k >= regularity - 1`.
    pub fn hilbert_polynomial(&self) -> QPoly {
        let n = self.ambient as i64;
        let mut acc = QPoly::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let c = BigRational::from_integer(BigInt::from(sign) * BigInt::from(*b));
                acc = acc + QPoly::binomial_in(n - j, self.ambient as u32).scale(&c);
            }
        }
        acc
    }

    /// Hilbert polynomial of `S/I`.
    pub fn variety_hilbert_polynomial(&self) -> QPoly {
        QPoly::binomial_in(self.ambient as i64, self.ambient as u32) - self.hilbert_polynomial()
    }

    /// Degree of the resolved scheme of the given codimension, computed from
    /// Chern classes of the resolution.
    pub fn chern_degree(&self, codim: usize) -> Result<BigInt> {
        degree_from_resolution(self.ambient, codim, &self.terms())
    }

    /// Macaulay-style diagonal layout: column `i`, row `j - i`.
    pub fn render(&self) -> String {
        let lo = (0..self.rows.len())
            .filter_map(|i| self.min_degree(i).map(|j| j - i as i64))
            .min()
            .unwrap_or(0);
        let hi = self.regularity();
        let cols = self.rows.len();
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push(
            std::iter::once(String::new())
                .chain((0..cols).map(|i| i.to_string()))
                .collect(),
        );
        cells.push(
            std::iter::once("total:".to_string())
                .chain((0..cols).map(|i| self.rank(i).to_string()))
                .collect(),
        );
        for r in lo..=hi {
            let mut line = vec![format!("{r}:")];
            for i in 0..cols {
                let b = self.beta(i, r + i as i64);
                line.push(if b == 0 { ".".to_string() } else { b.to_string() });
            }
            cells.push(line);
        }
        let widths: Vec<usize> = (0..=cols)
            .map(|c| cells.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        cells
            .iter()
            .map(|l| {
                l.iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Koszul resolution of a complete intersection of the given degrees.
pub fn koszul(ambient: usize, degrees: &[i64]) -> Result<BettiTable> {
    let e = degrees.len();
    if e == 0 {
        return Err(invalid("a complete intersection needs at least one equation"));
    }
    if e > ambient {
        return Err(invalid(format!("{e} equations cannot cut a proper subvariety of P^{ambient}")));
    }
    if let Some(d) = degrees.iter().find(|&&d| d < 1) {
        return Err(invalid(format!("equation degrees must be positive, got {d}")));
    }
    let mut rows = vec![Vec::new(); e];
    for mask in 1u32..(1 << e) {
        let size = mask.count_ones() as usize;
        let sum = (0..e).filter(|b| mask & (1 << b) != 0).map(|b| degrees[b]).sum();
        rows[size - 1].push((sum, 1));
    }
    BettiTable::new(ambient, rows)
}

/// Degree and sectional genus from the Hilbert polynomial of an
/// `n`-dimensional variety.
pub fn degree_and_sectional_genus(poly: &QPoly, n: usize) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(invalid("sectional genus needs a positive-dimensional variety"));
    }
    if poly.degree() != Some(n) {
        return Err(invalid(format!("Hilbert polynomial {poly} does not have degree {n}")));
    }
    let lead = poly.leading() * BigRational::from_integer(factorial(n as u32));
    if !lead.is_integer() {
        return Err(Error::NonIntegralDegree(lead.to_string()));
    }
    let mut curve = poly.clone();
    for _ in 1..n {
        curve = curve.backward_difference();
    }
    let genus = BigRational::one() - curve.eval_i64(0);
    if !genus.is_integer() {
        return Err(invalid(format!("sectional genus {genus} is not an integer")));
    }
    Ok((lead.to_integer(), genus.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn segre() -> BettiTable {
        BettiTable::new(5, vec![vec![(2, 3)], vec![(3, 2)]]).unwrap()
    }

    fn skew_lines() -> BettiTable {
        BettiTable::new(3, vec![vec![(2, 4)], vec![(3, 4)], vec![(4, 1)]]).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn koszul_examples() {
        let t = koszul(5, &[2, 2]).unwrap();
        assert_eq!(t.row(0).collect::<Vec<_>>(), vec![(2, 2)]);
        assert_eq!(t.row(1).collect::<Vec<_>>(), vec![(4, 1)]);
        let t = koszul(5, &[2, 5]).unwrap();
        assert_eq!(t.row(0).collect::<Vec<_>>(), vec![(2, 1), (5, 1)]);
        assert_eq!(t.row(1).collect::<Vec<_>>(), vec![(7, 1)]);
        assert_eq!(koszul(4, &[2, 3, 4]).unwrap().row(2).collect::<Vec<_>>(), vec![(9, 1)]);
        assert!(koszul(2, &[1, 1, 1]).is_err());
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(koszul(5, &[2, 2]).unwrap().regularity(), 3);
        assert_eq!(segre().regularity(), 2);
        for a in 2..7 {
            let t = BettiTable::new(5, vec![vec![(2, 1), (a, 2)], vec![(a + 1, 2)]]).unwrap();
            assert_eq!(t.regularity(), a);
        }
    }

    #[test]
    fn hilbert_function_examples() {
        assert_eq!(koszul(3, &[2, 2]).unwrap().hilbert_function(2).unwrap(), BigInt::from(2));
        assert_eq!(segre().hilbert_function(2).unwrap(), BigInt::from(3));
        for k in -3..=1 {
            assert!(segre().hilbert_function(k).unwrap().is_zero());
        }
        let bogus = BettiTable::new(3, vec![vec![(2, 1)], vec![(1, 5)]]).unwrap();
        assert!(matches!(bogus.hilbert_function(1), Err(Error::NonExactTable { .. })));
    }

    #[test]
    fn hilbert_polynomial_examples() {
        let ci = koszul(5, &[2, 2]).unwrap().variety_hilbert_polynomial();
        assert_eq!(ci.leading(), BigRational::new(BigInt::from(4), BigInt::from(6)));
        let lines = skew_lines().variety_hilbert_polynomial();
        assert_eq!(lines, QPoly::new(vec![q(2), q(2)]));
        let s = segre().variety_hilbert_polynomial();
        for k in -4..8 {
            assert_eq!(s.eval_i64(k), q((k + 1) * (k + 1) * (k + 2)) / q(2));
        }
    }

    #[test]
    fn polynomial_agrees_past_regularity() {
        for t in [segre(), skew_lines(), koszul(4, &[2, 3, 4]).unwrap()] {
            let p = t.hilbert_polynomial();
            for k in t.regularity() - 1..t.regularity() + 8 {
                assert_eq!(p.eval_i64(k), BigRational::from_integer(t.hilbert_function(k).unwrap()));
            }
        }
    }

    #[test]
    fn degree_genus_examples() {
        let palatini = QPoly::new(vec![q(6), q(11), q(12), q(7)]).scale(&BigRational::new(BigInt::one(), BigInt::from(6)));
        assert_eq!(degree_and_sectional_genus(&palatini, 3).unwrap(), (BigInt::from(7), BigInt::from(4)));
        let p3 = QPoly::binomial_in(3, 3);
        assert_eq!(degree_and_sectional_genus(&p3, 3).unwrap(), (BigInt::one(), BigInt::zero()));
        let ci = koszul(5, &[2, 2]).unwrap().variety_hilbert_polynomial();
        assert_eq!(degree_and_sectional_genus(&ci, 3).unwrap(), (BigInt::from(4), BigInt::one()));
        assert!(degree_and_sectional_genus(&ci, 2).is_err());
    }

    #[test]
    fn chern_degree_matches_polynomial() {
        assert_eq!(skew_lines().chern_degree(2).unwrap(), BigInt::from(2));
        assert_eq!(segre().chern_degree(2).unwrap(), BigInt::from(3));
        assert_eq!(koszul(4, &[2, 3, 4]).unwrap().chern_degree(3).unwrap(), BigInt::from(24));
    }

    #[test]
    fn macaulay_layout() {
        let text = skew_lines().render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["0", "1", "2"]);
        assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["total:", "4", "4", "1"]);
        assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["2:", "4", "4", "1"]);
    }

    /// Monomials of degree `k` in `n + 1` variables lying in
    /// `(x_0^{d_0}, x_1^{d_1}, ...)`.
    fn monomial_ideal_count(n: usize, degrees: &[i64], k: i64) -> BigInt {
        fn walk(var: usize, n: usize, left: i64, degrees: &[i64], hit: bool) -> u64 {
            if var == n {
                let hit = hit || degrees.get(var).is_some_and(|&d| left >= d);
                return u64::from(hit);
            }
            (0..=left)
                .map(|e| walk(var + 1, n, left - e, degrees, hit || degrees.get(var).is_some_and(|&d| e >= d)))
                .sum()
        }
        if k < 0 {
            return BigInt::zero();
        }
        BigInt::from(walk(0, n, k, degrees, false))
    }

    proptest! {
        #[test]
        fn koszul_regularity(degrees in prop::collection::vec(1i64..=6, 1..=4)) {
            let e = degrees.len() as i64;
            let t = koszul(5, &degrees).unwrap();
            prop_assert_eq!(t.regularity(), degrees.iter().sum::<i64>() - e + 1);
        }

        #[test]
        fn koszul_hilbert_matches_monomials(n in 1usize..=4, degrees in prop::collection::vec(1i64..=4, 1..=4), k in 0i64..=12) {
            prop_assume!(degrees.len() <= n);
            let t = koszul(n, &degrees).unwrap();
            prop_assert_eq!(t.hilbert_function(k).unwrap(), monomial_ideal_count(n, &degrees, k));
        }
    }
}
