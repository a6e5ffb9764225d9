use castelnuovo::bott::line_table;
use castelnuovo::catalog::{self, VarietySpec};
use castelnuovo::les::les_solve;
use castelnuovo::liaison::linked_ideal_sequence;
use castelnuovo::quadric::QuadricDivisorSpec;
use castelnuovo::reg::{self, regularity_scan};
use castelnuovo::table::DimRange;
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;

fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn entries() -> Vec<VarietySpec> {
    let mut v = catalog::catalog();
    v.extend((1..=3).map(|t| VarietySpec::PalatiniScroll { t }));
    v.push(VarietySpec::CompleteIntersection { ambient: 4, degrees: vec![2, 3] });
    v.push(VarietySpec::CompleteIntersection { ambient: 6, degrees: vec![3, 2, 2] });
    v
}

#[test]
fn routes_are_compatible() {
    for spec in entries() {
        let reg = catalog::regularity(&spec).unwrap().reg;
        let combined = catalog::ideal_table(&spec).unwrap();
        let routes = catalog::route_tables(&spec).unwrap();
        for i in 0..=spec.dim() + 1 {
            for k in -5..=reg + 5 {
                let c = combined.h(i, k).unwrap();
                for (name, t) in &routes {
                    let r = t.h(i, k).unwrap();
                    assert!(c.within(&r), "{spec} via {name}: i={i} k={k}: {c} not in {r}");
                }
                for (a, ta) in &routes {
                    for (b, tb) in &routes {
                        let (ra, rb) = (ta.h(i, k).unwrap(), tb.h(i, k).unwrap());
                        assert!(ra.intersect(&rb).is_some(), "{spec}: {a} and {b} disagree at i={i} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn sequence_h0_contains_hilbert_function() {
    for spec in entries() {
        let Some(b) = catalog::presentation(&spec).unwrap().betti else { continue };
        let reg = b.regularity();
        for (name, t) in catalog::route_tables(&spec).unwrap() {
            if name == "resolution" {
                continue;
            }
            for k in 0..=reg + 3 {
                let hf = b.hilbert_function(k).unwrap();
                let r = t.h(0, k).unwrap();
                assert!(r.contains(&hf), "{spec} via {name}: k={k}: {hf} not in {r}");
            }
        }
    }
}

#[test]
fn scan_matches_resolution_regularity() {
    for spec in entries() {
        if let Some(b) = catalog::presentation(&spec).unwrap().betti {
            let scan = regularity_scan(&catalog::ideal_table(&spec).unwrap(), spec.dim()).unwrap();
            assert_eq!(scan.reg, b.regularity(), "{spec}");
        }
    }
}

#[test]
fn threefold_regularity_within_symbolic_bound() {
    for spec in entries().into_iter().filter(|s| s.ambient() == 5 && s.dim() == 3) {
        let d = i64::try_from(spec.declared_degree()).unwrap();
        let r = catalog::regularity(&spec).unwrap().reg;
        let bound = reg::global_bound(d).unwrap();
        assert!(Rational64::from_integer(r) <= bound, "{spec}: reg {r} exceeds {bound}");
    }
}

#[test]
fn segre_matches_kunneth() {
    let spec = VarietySpec::SegreThreefold;
    let t = catalog::ideal_table(&spec).unwrap();
    let b = catalog::presentation(&spec).unwrap().betti.unwrap();
    for k in 0..=12 {
        let on_x = BigInt::from(k + 1) * choose(k + 2, 2);
        let expected = choose(k + 5, 5) - on_x;
        assert_eq!(t.h(0, k).unwrap(), DimRange::exact(expected.clone()), "k={k}");
        assert_eq!(b.hilbert_function(k).unwrap(), expected, "k={k}");
    }
}

#[test]
fn skew_lines_linked_by_quadrics() {
    let spec = VarietySpec::TwoSkewLines;
    let x1 = catalog::ideal_table(&spec).unwrap();
    let linked = linked_ideal_sequence(x1, 3, 1, &[2, 2]).unwrap();
    assert_eq!(linked.ci_degree, 4);
    let omega = les_solve(&linked.seq).unwrap();
    let oracle = line_table(1, -2, 2).unwrap();
    for i in 0..=1 {
        for k in -8..=8 {
            let expected = oracle.h(i, k).unwrap();
            let got = omega.h(i, k).unwrap();
            assert_eq!(got, expected, "i={i} k={k}");
        }
    }
}

#[test]
fn degrees_agree_three_ways() {
    for spec in entries() {
        let [a, b, c] = catalog::degree_triple(&spec).unwrap();
        assert!(a == b && b == c, "{spec}: {a} {b} {c}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linked_quadric_divisors_are_acm(n in 2usize..=4, a in 2i64..=7) {
        let spec = VarietySpec::QuadricDivisor(QuadricDivisorSpec::rank4(n, a, a - 1).unwrap());
        let t = catalog::ideal_table(&spec).unwrap();
        for i in 1..=n {
            for k in -6..=a + 6 {
                prop_assert!(t.h(i, k).unwrap().is_zero());
            }
        }
        prop_assert_eq!(catalog::regularity(&spec).unwrap().reg, a);
    }

    #[test]
    fn ci_hilbert_function_matches_table(d1 in 1i64..=4, d2 in 1i64..=4, k in 0i64..=10) {
        let spec = VarietySpec::CompleteIntersection { ambient: 4, degrees: vec![d1, d2] };
        let t = catalog::ideal_table(&spec).unwrap();
        // Ideal of two forms: k-th graded piece by inclusion-exclusion.
        let expected = choose(k - d1 + 4, 4) + choose(k - d2 + 4, 4) - choose(k - d1 - d2 + 4, 4);
        prop_assert_eq!(t.h(0, k).unwrap(), DimRange::exact(expected));
    }
}
