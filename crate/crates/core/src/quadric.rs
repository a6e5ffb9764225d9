//! Divisors on quadric cones of rank 3 and 4: cohomology through the
//! pushforward series, classification, and resolutions.
//!
//! Let `Q` be a quadric of rank 4 (resp. 3) in `P^{n+2}` with vertex `L`,
//! and `U = Q \ L`, which projects onto `Q_1 = P^1 x P^1` (resp. a conic
//! `C = P^1`) with fibres `V` of dimension `n - 1` (resp. `n`). A divisor
//! `X` is recorded by the line bundle `I_{X/Q}|_U`:
//!
//! | rank | stored class | `I_{X/Q}|_U`           | `deg X` |
//! |------|--------------|------------------------|---------|
//! | 4    | `(a, b)`     | pullback of `O(-a,-b)` | `a + b` |
//! | 3    | `s`          | pullback of `O_{P^1}(-s)` | `s`  |
//!
//! On the conic `O_C(1)` restricts to `O_{P^1}(2)`, so twisting by `O_Q(k)`
//! adds `2k` to the `P^1` degree. With `pi_* O_U = sum_m S^m V (x) O(-m)`:
//!
//! `h^i(Q, I_{X/Q}(k)) = sum_m dim S^m V * h^i(Q_1, O(k-a-m, k-b-m))` for `i = 0, 1`.
//!
//! On `P^1 x P^1` only `h^0` factors can pair with an `h^1` factor, so every
//! contributing `m` satisfies `m <= k - min(a, b)`; the sums are finite.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::binomial;
use crate::betti::{koszul, BettiTable};
use crate::bott::{coh_line, coh_product, LineBundleOnPn, ProductLineBundle};
use crate::error::{invalid, Error, Result};
use crate::les::{geometric_prior, SheafExpr, ShortExactSeq, Slot};
use crate::table::{CohTable, DimRange, Support};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadricClass {
    Rank4 { a: i64, b: i64 },
    Rank3 { s: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadricDivisorSpec {
    n: usize,
    class: QuadricClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `X = Q ∩ F` with `deg F = other_degree`.
    CompleteIntersection { other_degree: i64 },
    /// `Q ∪ F` with `deg F = hypersurface_degree` links `X` to a linear `P^n`.
    LinkedToLinear { hypersurface_degree: i64 },
}

impl QuadricDivisorSpec {
    pub fn rank4(n: usize, a: i64, b: i64) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("divisor dimension must be at least 2, got {n}")));
        }
        if a < 0 || b < 0 || a + b == 0 {
            return Err(invalid(format!("class ({a},{b}) must be nonnegative and nonzero")));
        }
        if (a - b).abs() > 1 {
            return Err(invalid(format!(
                "class ({a},{b}) violates |a - b| <= 1 required for a smooth divisor"
            )));
        }
        Ok(QuadricDivisorSpec { n, class: QuadricClass::Rank4 { a, b } })
    }

    pub fn rank3(n: usize, s: i64) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("divisor dimension must be at least 2, got {n}")));
        }
        if s < 1 {
            return Err(invalid(format!("degree {s} must be positive")));
        }
        Ok(QuadricDivisorSpec { n, class: QuadricClass::Rank3 { s } })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> QuadricClass {
        self.class
    }

    pub fn ambient(&self) -> usize {
        self.n + 2
    }

    pub fn rank(&self) -> usize {
        match self.class {
            QuadricClass::Rank4 { .. } => 4,
            QuadricClass::Rank3 { .. } => 3,
        }
    }

    pub fn degree(&self) -> i64 {
        match self.class {
            QuadricClass::Rank4 { a, b } => a + b,
            QuadricClass::Rank3 { s } => s,
        }
    }

    pub fn vertex_dim(&self) -> usize {
        match self.class {
            QuadricClass::Rank4 { .. } => self.n - 2,
            QuadricClass::Rank3 { .. } => self.n - 1,
        }
    }

    pub fn fibre_dim(&self) -> usize {
        match self.class {
            QuadricClass::Rank4 { .. } => self.n - 1,
            QuadricClass::Rank3 { .. } => self.n,
        }
    }

    /// Least `k` with `h^0(Q, I_{X/Q}(k)) != 0`.
    fn first_section(&self) -> i64 {
        match self.class {
            QuadricClass::Rank4 { a, b } => a.max(b),
            QuadricClass::Rank3 { s } => (s + 1).div_euclid(2),
        }
    }
}

impl fmt::Display for QuadricDivisorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            QuadricClass::Rank4 { a, b } => write!(f, "rank-4 quadric divisor of class ({a},{b}) in P^{}", self.n + 2),
            QuadricClass::Rank3 { s } => write!(f, "rank-3 quadric divisor of degree {s} in P^{}", self.n + 2),
        }
    }
}

/// `h^i(Q, I_{X/Q}(k))` for `i` in `{0, 1}`.
pub fn series_coh(spec: &QuadricDivisorSpec, i: usize, k: i64) -> Result<BigInt> {
    if i >= 2 {
        return Err(Error::Unsupported(format!(
            "h^{i} of a quadric divisor ideal is not computed by the series (only i = 0, 1)"
        )));
    }
    let v = spec.fibre_dim() as i64;
    let mut total = BigInt::zero();
    match spec.class {
        QuadricClass::Rank4 { a, b } => {
            for m in 0..=(k - a.min(b)) {
                let bundle = ProductLineBundle { n1: 1, n2: 1, a: k - a - m, b: k - b - m };
                let h = coh_product(&bundle, i)?;
                if !h.is_zero() {
                    total += binomial(m + v - 1, m) * h;
                }
            }
        }
        // h^1 of the conic series has infinitely many terms; the ideal of a
        // divisor on a rank-3 cone is nonetheless 1-normal in every degree.
        QuadricClass::Rank3 { .. } if i == 1 => {}
        QuadricClass::Rank3 { s } => {
            for m in 0..=(2 * k - s).div_euclid(2) {
                let bundle = LineBundleOnPn { n: 1, k: 2 * k - s - 2 * m, r: 1 };
                total += binomial(m + v - 1, m) * coh_line(&bundle, 0)?;
            }
        }
    }
    Ok(total)
}

/// `I_{X/Q}` as a sheaf on `P^{n+2}`: `h^0` and `h^1` from the series,
/// higher groups unknown.
pub fn series_table(spec: &QuadricDivisorSpec) -> CohTable {
    let spec = *spec;
    let top = spec.n + 1;
    let supports = (0..=top)
        .map(|i| match i {
            0 => Support::at_least(spec.first_section()),
            1 => Support::Empty,
            _ => Support::all(),
        })
        .collect();
    CohTable::from_fn(top, supports, move |i, k| {
        if i <= 1 {
            series_coh(&spec, i, k).map(DimRange::exact)
        } else {
            Ok(DimRange::unknown())
        }
    })
}

pub fn classify(spec: &QuadricDivisorSpec) -> Classification {
    let d = spec.degree();
    if d % 2 == 0 {
        Classification::CompleteIntersection { other_degree: d / 2 }
    } else {
        Classification::LinkedToLinear { hypersurface_degree: (d + 1) / 2 }
    }
}

/// Minimal resolution `0 -> S(-a-1)^2 -> S(-2) + S(-a)^2 -> I_X -> 0` of a
/// divisor linked to a linear space.
pub fn resolution(spec: &QuadricDivisorSpec) -> Result<BettiTable> {
    match classify(spec) {
        Classification::CompleteIntersection { .. } => Err(invalid(
            "divisor is a complete intersection; its resolution is a Koszul complex",
        )),
        Classification::LinkedToLinear { hypersurface_degree: a } if a < 2 => {
            Err(invalid(format!("linked divisor needs a >= 2, got {a}")))
        }
        Classification::LinkedToLinear { hypersurface_degree: a } => {
            BettiTable::new(spec.ambient(), vec![vec![(2, 1), (a, 2)], vec![(a + 1, 2)]])
        }
    }
}

/// Resolution of the ideal in either case.
pub fn ideal_resolution(spec: &QuadricDivisorSpec) -> Result<BettiTable> {
    match classify(spec) {
        Classification::CompleteIntersection { other_degree } => koszul(spec.ambient(), &[2, other_degree]),
        Classification::LinkedToLinear { .. } => resolution(spec),
    }
}

pub fn depth_at_vertex(spec: &QuadricDivisorSpec) -> usize {
    match spec.class {
        QuadricClass::Rank4 { .. } => 3,
        QuadricClass::Rank3 { .. } => 2,
    }
}

/// Whether the vertex of the cone lies on `X`.
pub fn vertex_containment(spec: &QuadricDivisorSpec) -> bool {
    matches!(classify(spec), Classification::LinkedToLinear { .. })
}

/// `0 -> O(k-2) -> I_X(k) -> I_{X/Q}(k) -> 0` with the middle unknown.
pub fn series_sequence(spec: &QuadricDivisorSpec) -> Result<ShortExactSeq> {
    let n = spec.ambient();
    ShortExactSeq::new(
        Slot::Known(SheafExpr::line(n, -2, 1)),
        Slot::unknown(),
        Slot::Known(SheafExpr::Series(*spec)),
    )?
    .with_prior(geometric_prior(n, spec.n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::les::{les_solve, resolution_table};
    use proptest::prelude::*;

    #[test]
    fn series_examples() {
        for n in 2..=4 {
            for a in 2..=6 {
                let linked = QuadricDivisorSpec::rank4(n, a, a - 1).unwrap();
                assert_eq!(series_coh(&linked, 0, a).unwrap(), BigInt::from(2));
                assert_eq!(series_coh(&linked, 0, a + 1).unwrap(), BigInt::from(2 * n as i64 + 4));
                let ci = QuadricDivisorSpec::rank4(n, a, a).unwrap();
                assert_eq!(series_coh(&ci, 0, a).unwrap(), BigInt::from(1));
                let cone = QuadricDivisorSpec::rank3(n, 2 * a - 1).unwrap();
                assert_eq!(series_coh(&cone, 0, a).unwrap(), BigInt::from(2));
                assert_eq!(series_coh(&cone, 0, a + 1).unwrap(), BigInt::from(2 * n as i64 + 4));
            }
        }
    }

    #[test]
    fn higher_indices_are_refused() {
        let s = QuadricDivisorSpec::rank4(3, 3, 2).unwrap();
        assert!(matches!(series_coh(&s, 2, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn class_constraint() {
        assert!(QuadricDivisorSpec::rank4(3, 4, 2).is_err());
        assert!(QuadricDivisorSpec::rank4(1, 1, 1).is_err());
        assert!(QuadricDivisorSpec::rank3(3, 0).is_err());
    }

    #[test]
    fn classification_examples() {
        let ci = QuadricDivisorSpec::rank4(3, 3, 3).unwrap();
        assert_eq!(classify(&ci), Classification::CompleteIntersection { other_degree: 3 });
        assert_eq!(ci.degree(), 6);
        assert!(!vertex_containment(&ci));
        let linked = QuadricDivisorSpec::rank4(3, 3, 2).unwrap();
        assert_eq!(classify(&linked), Classification::LinkedToLinear { hypersurface_degree: 3 });
        assert_eq!(linked.degree(), 5);
        assert!(vertex_containment(&linked));
        let cone = QuadricDivisorSpec::rank3(3, 5).unwrap();
        assert_eq!(classify(&cone), Classification::LinkedToLinear { hypersurface_degree: 3 });
        assert!(vertex_containment(&cone));
        assert_eq!(depth_at_vertex(&linked), 3);
        assert_eq!(depth_at_vertex(&cone), 2);
    }

    #[test]
    fn resolution_examples() {
        for a in 2..=8 {
            let spec = QuadricDivisorSpec::rank4(3, a, a - 1).unwrap();
            let t = resolution(&spec).unwrap();
            assert_eq!(t.rank(0), 3);
            assert_eq!(t.regularity(), a);
            assert_eq!(2 * t.regularity() - 1, spec.degree());
            assert_eq!(t.chern_degree(2).unwrap(), BigInt::from(spec.degree()));
        }
        assert!(resolution(&QuadricDivisorSpec::rank4(3, 2, 2).unwrap()).is_err());
    }

    #[test]
    fn series_sequence_matches_resolution() {
        for spec in [
            QuadricDivisorSpec::rank4(3, 3, 2).unwrap(),
            QuadricDivisorSpec::rank4(2, 4, 4).unwrap(),
            QuadricDivisorSpec::rank3(4, 7).unwrap(),
            QuadricDivisorSpec::rank3(2, 6).unwrap(),
        ] {
            let via_series = les_solve(&series_sequence(&spec).unwrap()).unwrap();
            let betti = ideal_resolution(&spec).unwrap();
            let a = betti.regularity();
            for k in 0..=2 * a + 2 {
                assert_eq!(via_series.exact(0, k).unwrap(), betti.hilbert_function(k).unwrap());
                assert!(via_series.h(1, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn linked_divisors_are_acm() {
        for a in 2..=5 {
            let spec = QuadricDivisorSpec::rank4(3, a, a - 1).unwrap();
            let t = resolution_table(&resolution(&spec).unwrap(), Some(geometric_prior(5, 3).unwrap()));
            for k in -10..=a + 10 {
                for i in 1..=3 {
                    assert!(t.h(i, k).unwrap().is_zero());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn first_cohomology_vanishes(n in 2usize..6, a in 1i64..8, odd in any::<bool>(), k in -10i64..20) {
            let spec = QuadricDivisorSpec::rank4(n, a, a - i64::from(odd && a > 1)).unwrap();
            prop_assert!(series_coh(&spec, 1, k).unwrap().is_zero());
        }

        #[test]
        fn series_is_finite_beyond_bound(a in 1i64..6, k in -5i64..15) {
            // terms past the truncation contribute nothing
            let extra: BigInt = (k - a + 1..=k + a + 2)
                .filter(|m| *m >= 0)
                .map(|m| coh_product(&ProductLineBundle { n1: 1, n2: 1, a: k - a - m, b: k - a - m }, 0).unwrap())
                .sum();
            prop_assert!(extra.is_zero());
        }
    }
}
