//! Closed-form cohomology of line bundles and twisted differentials on
//! projective spaces, and of line bundles on a product of two of them.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::binomial;
use crate::error::{invalid, Error, Result};
use crate::table::{CohTable, DimRange, Support};

/// `O_{P^n}(k)^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineBundleOnPn {
    pub n: usize,
    pub k: i64,
    pub r: u64,
}

impl LineBundleOnPn {
    pub fn new(n: usize, k: i64, r: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("ambient dimension must be positive"));
        }
        if r == 0 {
            return Err(invalid("rank multiplier must be positive"));
        }
        Ok(LineBundleOnPn { n, k, r })
    }
}

/// `Omega^p_{P^n}(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistedDifferential {
    pub n: usize,
    pub p: usize,
    pub k: i64,
}

impl TwistedDifferential {
    pub fn new(n: usize, p: usize, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("ambient dimension must be positive"));
        }
        if p > n {
            return Err(invalid(format!("form degree {p} exceeds dimension {n}")));
        }
        Ok(TwistedDifferential { n, p, k })
    }
}

/// `O(a, b)` on `P^{n1} x P^{n2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductLineBundle {
    pub n1: usize,
    pub n2: usize,
    pub a: i64,
    pub b: i64,
}

impl ProductLineBundle {
    pub fn new(n1: usize, n2: usize, a: i64, b: i64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(invalid("factor dimensions must be positive"));
        }
        Ok(ProductLineBundle { n1, n2, a, b })
    }
}

fn check_index(q: usize, top: usize) -> Result<()> {
    if q > top {
        Err(Error::IndexOutOfRange { q, top })
    } else {
        Ok(())
    }
}

fn to_i64(n: usize) -> i64 {
    i64::try_from(n).expect("dimension fits in i64")
}

pub fn coh_line(bundle: &LineBundleOnPn, q: usize) -> Result<BigInt> {
    let LineBundleOnPn { n, k, r } = *bundle;
    check_index(q, n)?;
    let n = to_i64(n);
    let base = if q == 0 && k >= 0 {
        binomial(n + k, n)
    } else if q == n as usize && k < -n {
        binomial(-k - 1, n)
    } else {
        BigInt::zero()
    };
    Ok(base * r)
}

/// Bott's formula.
pub fn coh_omega(bundle: &TwistedDifferential, q: usize) -> Result<BigInt> {
    let TwistedDifferential { n, p, k } = *bundle;
    check_index(q, n)?;
    let (ni, pi) = (to_i64(n), to_i64(p));
    let mut v = BigInt::zero();
    if q == 0 && k > pi {
        v += binomial(k + ni - pi, k) * binomial(k - 1, pi);
    }
    if q == p && k == 0 {
        v += 1;
    }
    if q == n && k < pi - ni {
        v += binomial(-k + pi, -k) * binomial(-k - 1, ni - pi);
    }
    Ok(v)
}

/// Kunneth formula.
pub fn coh_product(bundle: &ProductLineBundle, q: usize) -> Result<BigInt> {
    let ProductLineBundle { n1, n2, a, b } = *bundle;
    check_index(q, n1 + n2)?;
    let mut total = BigInt::zero();
    for i in 0..=q.min(n1) {
        let j = q - i;
        if j > n2 {
            continue;
        }
        let x = coh_line(&LineBundleOnPn { n: n1, k: a, r: 1 }, i)?;
        if x.is_zero() {
            continue;
        }
        total += x * coh_line(&LineBundleOnPn { n: n2, k: b, r: 1 }, j)?;
    }
    Ok(total)
}

/// Twists `k` for which `h^q(O_{P^n}(k))` can be nonzero.
pub fn line_support(n: usize, q: usize) -> Result<Support> {
    check_index(q, n)?;
    let ni = to_i64(n);
    Ok(if q == 0 {
        Support::at_least(0)
    } else if q == n {
        Support::at_most(-ni - 1)
    } else {
        Support::Empty
    })
}

/// Twists `k` for which `h^q(Omega^p(k))` can be nonzero.
pub fn omega_support(n: usize, p: usize, q: usize) -> Result<Support> {
    TwistedDifferential::new(n, p, 0)?;
    check_index(q, n)?;
    let (ni, pi) = (to_i64(n), to_i64(p));
    let mut s = Support::Empty;
    if q == 0 {
        s = s.hull(&Support::at_least(pi + 1));
    }
    if q == p {
        s = s.hull(&Support::between(0, 0));
    }
    if q == n {
        s = s.hull(&Support::at_most(pi - ni - 1));
    }
    Ok(s)
}

/// Twists `k` for which `h^q(O(a + k, b + k))` can be nonzero.
pub fn product_support(bundle: &ProductLineBundle, q: usize) -> Result<Support> {
    let ProductLineBundle { n1, n2, a, b } = *bundle;
    check_index(q, n1 + n2)?;
    let mut s = Support::Empty;
    for i in 0..=q.min(n1) {
        let j = q - i;
        if j > n2 {
            continue;
        }
        let left = line_support(n1, i)?.shift(a);
        let right = line_support(n2, j)?.shift(b);
        s = s.hull(&left.intersect(&right));
    }
    Ok(s)
}

/// Table of `k -> h^q(O_{P^n}(k + twist)^r)`.
pub fn line_table(n: usize, twist: i64, r: u64) -> Result<CohTable> {
    LineBundleOnPn::new(n, twist, r)?;
    let supports = (0..=n)
        .map(|q| line_support(n, q).map(|s| s.shift(twist)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohTable::from_fn(n, supports, move |q, k| {
        coh_line(&LineBundleOnPn { n, k: k + twist, r }, q).map(DimRange::exact)
    }))
}

/// Table of `k -> h^q(Omega^p_{P^n}(k + twist))`.
pub fn omega_table(n: usize, p: usize, twist: i64) -> Result<CohTable> {
    TwistedDifferential::new(n, p, twist)?;
    let supports = (0..=n)
        .map(|q| omega_support(n, p, q).map(|s| s.shift(twist)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohTable::from_fn(n, supports, move |q, k| {
        coh_omega(&TwistedDifferential { n, p, k: k + twist }, q).map(DimRange::exact)
    }))
}

/// Table of `k -> h^q(O(a + k, b + k))` on `P^{n1} x P^{n2}`.
pub fn product_table(n1: usize, n2: usize, a: i64, b: i64) -> Result<CohTable> {
    let base = ProductLineBundle::new(n1, n2, a, b)?;
    let supports = (0..=n1 + n2)
        .map(|q| product_support(&base, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohTable::from_fn(n1 + n2, supports, move |q, k| {
        coh_product(&ProductLineBundle { n1, n2, a: a + k, b: b + k }, q).map(DimRange::exact)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(n: usize, k: i64, q: usize) -> BigInt {
        coh_line(&LineBundleOnPn::new(n, k, 1).unwrap(), q).unwrap()
    }

    fn omega(n: usize, p: usize, k: i64, q: usize) -> BigInt {
        coh_omega(&TwistedDifferential::new(n, p, k).unwrap(), q).unwrap()
    }

    #[test]
    fn line_bundle_examples() {
        assert_eq!(line(5, 2, 0), BigInt::from(21));
        assert_eq!(line(5, -6, 5), BigInt::from(1));
        for q in 0..=3 {
            assert!(line(3, -2, q).is_zero());
        }
        let twice = LineBundleOnPn::new(2, 1, 2).unwrap();
        assert_eq!(coh_line(&twice, 0).unwrap(), BigInt::from(6));
        assert!(matches!(coh_line(&twice, 3), Err(Error::IndexOutOfRange { q: 3, top: 2 })));
    }

    #[test]
    fn differential_examples() {
        assert_eq!(omega(5, 1, 0, 1), BigInt::from(1));
        assert_eq!(omega(5, 1, 2, 0), BigInt::from(15));
        assert!(omega(5, 2, 2, 0).is_zero());
        // Omega^n = O(-n-1)
        for k in -8..8 {
            for q in 0..=3 {
                assert_eq!(omega(3, 3, k, q), line(3, k - 4, q));
                assert_eq!(omega(3, 0, k, q), line(3, k, q));
            }
        }
    }

    #[test]
    fn product_examples() {
        let b = |a, bb| ProductLineBundle::new(1, 1, a, bb).unwrap();
        assert_eq!(coh_product(&b(1, 1), 0).unwrap(), BigInt::from(4));
        assert_eq!(coh_product(&b(0, -2), 1).unwrap(), BigInt::from(1));
        for k in 0..6 {
            let v = coh_product(&ProductLineBundle::new(1, 2, k, k).unwrap(), 0).unwrap();
            assert_eq!(v, BigInt::from(k + 1) * binomial(k + 2, 2));
        }
    }

    #[test]
    fn tables_respect_support() {
        let t = omega_table(4, 2, 0).unwrap();
        for q in 0..=4 {
            for k in -12..12 {
                let v = t.exact(q, k).unwrap();
                if !t.support(q).contains(k) {
                    assert!(v.is_zero());
                }
                assert_eq!(v, omega(4, 2, k, q));
            }
        }
        let p = product_table(1, 2, 0, -1).unwrap();
        for q in 0..=3 {
            for k in -10..10 {
                let direct = coh_product(&ProductLineBundle::new(1, 2, k, k - 1).unwrap(), q).unwrap();
                assert_eq!(p.exact(q, k).unwrap(), direct);
                if !direct.is_zero() {
                    assert!(p.support(q).contains(k));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn serre_duality(n in 1usize..7, k in -20i64..20, q in 0usize..7) {
            prop_assume!(q <= n);
            prop_assert_eq!(line(n, k, q), line(n, -k - n as i64 - 1, n - q));
        }

        #[test]
        fn single_nonzero_index(n in 1usize..7, k in -20i64..20) {
            let nonzero = (0..=n).filter(|&q| !line(n, k, q).is_zero()).count();
            prop_assert!(nonzero <= 1);
        }

        #[test]
        fn hodge_orthogonality(n in 1usize..7, p in 0usize..7, q in 0usize..7) {
            prop_assume!(p <= n && q <= n);
            let expected = BigInt::from(u8::from(p == q));
            prop_assert_eq!(omega(n, p, 0, q), expected);
        }

        #[test]
        fn omega_serre_duality(n in 1usize..6, p in 0usize..6, k in -12i64..12, q in 0usize..6) {
            prop_assume!(p <= n && q <= n);
            prop_assert_eq!(omega(n, p, k, q), omega(n, n - p, -k, n - q));
        }

        #[test]
        fn product_support_is_sound(a in -6i64..6, b in -6i64..6, k in -12i64..12, q in 0usize..4) {
            let base = ProductLineBundle::new(1, 2, a, b).unwrap();
            let v = coh_product(&ProductLineBundle::new(1, 2, a + k, b + k).unwrap(), q).unwrap();
            if !v.is_zero() {
                prop_assert!(product_support(&base, q).unwrap().contains(k));
            }
        }
    }
}
