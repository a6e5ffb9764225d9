//! Deficiency modules and the duality they satisfy under linkage.
//!
//! If `X1` and `X2` of dimension `n` in `P^N` are linked by a complete
//! intersection of degrees summing to `d`, then
//! `M^{n-i+1}(X2) = M^i(X1)^v (N + 1 - d)` with `(M^v)_k = (M_{-k})^*`, so in
//! terms of dimensions
//! `dim M^{n-i+1}(X2)_k = dim M^i(X1)_{d - N - 1 - k}`.

use std::collections::BTreeSet;

use crate::betti::koszul;
use crate::error::{invalid, Result};
use crate::les::{ideal_table_from_presentation, IdealPresentation, SheafExpr, ShortExactSeq, Slot};
use crate::table::{CohTable, DimRange, GradedDims, Support};

/// `M^i(X) = sum_k H^i(I_X(k))` for `i = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyModules {
    ambient: usize,
    dim: usize,
    ci_degree: i64,
    modules: Vec<GradedDims>,
}

impl DeficiencyModules {
    /// `modules[i - 1]` is `M^i`.
    pub fn new(ambient: usize, dim: usize, ci_degree: i64, modules: Vec<GradedDims>) -> Result<Self> {
        if dim == 0 || dim >= ambient {
            return Err(invalid(format!("dimension {dim} is not in 1..{ambient}")));
        }
        if modules.len() != dim {
            return Err(invalid(format!("expected {dim} deficiency modules, got {}", modules.len())));
        }
        Ok(DeficiencyModules { ambient, dim, ci_degree, modules })
    }

    /// Reads `M^1..M^n` off an ideal-sheaf table; each row must have finite
    /// support and exact values.
    pub fn from_table(table: &CohTable, ambient: usize, dim: usize, ci_degree: i64) -> Result<Self> {
        let modules = (1..=dim)
            .map(|i| GradedDims::from_table_row(table, i))
            .collect::<Result<Vec<_>>>()?;
        DeficiencyModules::new(ambient, dim, ci_degree, modules)
    }

    pub fn module(&self, i: usize) -> Option<&GradedDims> {
        i.checked_sub(1).and_then(|j| self.modules.get(j))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ci_degree(&self) -> i64 {
        self.ci_degree
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(GradedDims::is_zero)
    }

    /// Copy with `M^i` replaced.
    pub fn with_module(mut self, i: usize, module: GradedDims) -> Result<Self> {
        match i.checked_sub(1).and_then(|j| self.modules.get_mut(j)) {
            Some(slot) => *slot = module,
            None => return Err(invalid(format!("no deficiency module M^{i}"))),
        }
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub holds: bool,
    /// `(i, k)` with `dim M^{n-i+1}(X2)_k != dim M^i(X1)_{d-N-1-k}`.
    pub witnesses: Vec<(usize, i64)>,
}

pub fn duality_check(m1: &DeficiencyModules, m2: &DeficiencyModules) -> Result<DualityReport> {
    if (m1.ambient, m1.dim, m1.ci_degree) != (m2.ambient, m2.dim, m2.ci_degree) {
        return Err(invalid(format!(
            "linked pair must share (N, n, d), got {:?} and {:?}",
            (m1.ambient, m1.dim, m1.ci_degree),
            (m2.ambient, m2.dim, m2.ci_degree)
        )));
    }
    let n = m1.dim;
    let shift = m1.ci_degree - m1.ambient as i64 - 1;
    let mut witnesses = Vec::new();
    for i in 1..=n {
        let left = &m2.modules[n - i];
        let right = &m1.modules[i - 1];
        let degrees: BTreeSet<i64> = left.degrees().chain(right.degrees().map(|k| shift - k)).collect();
        for k in degrees {
            if left.get(k) != right.get(shift - k) {
                witnesses.push((i, k));
            }
        }
    }
    Ok(DualityReport { holds: witnesses.is_empty(), witnesses })
}

/// `0 -> I_X -> I_{X1} -> omega_{X2}(N + 1 - d) -> 0` for `X` the linking
/// complete intersection.
#[derive(Clone, Debug)]
pub struct LinkedSequence {
    pub seq: ShortExactSeq,
    pub ci_degree: i64,
}

pub fn linked_ideal_sequence(x1_table: CohTable, ambient: usize, dim: usize, ci_degrees: &[i64]) -> Result<LinkedSequence> {
    if ci_degrees.len() + dim != ambient {
        return Err(invalid(format!(
            "a linking complete intersection of {} equations does not have dimension {dim} in P^{ambient}",
            ci_degrees.len()
        )));
    }
    let ci = ideal_table_from_presentation(&IdealPresentation {
        ambient,
        dim,
        betti: Some(koszul(ambient, ci_degrees)?),
        sequences: vec![],
    })?;
    let supports = (0..=ambient)
        .map(|i| if i <= dim { Support::all() } else { Support::Empty })
        .collect();
    let on_x2 = CohTable::from_fn(ambient, supports, |_, _| Ok(DimRange::unknown()));
    let seq = ShortExactSeq::new(
        Slot::Known(SheafExpr::opaque("I_CI", ci)),
        Slot::Known(SheafExpr::opaque("I_X1", x1_table)),
        Slot::unknown(),
    )?
    .with_prior(on_x2)?;
    Ok(LinkedSequence { seq, ci_degree: ci_degrees.iter().sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::les::geometric_prior;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn module(pairs: &[(i64, i64)]) -> GradedDims {
        GradedDims::new(pairs.iter().map(|&(k, v)| (k, BigInt::from(v)))).unwrap()
    }

    fn skew() -> DeficiencyModules {
        DeficiencyModules::new(3, 1, 4, vec![module(&[(0, 1)])]).unwrap()
    }

    #[test]
    fn skew_lines_self_dual() {
        let r = duality_check(&skew(), &skew()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn shifted_module_fails() {
        let shifted = skew().with_module(1, module(&[(1, 1)])).unwrap();
        let r = duality_check(&skew(), &shifted).unwrap();
        assert!(!r.holds);
        assert!(r.witnesses.contains(&(1, 1)));
    }

    #[test]
    fn mismatched_data_rejected() {
        let other = DeficiencyModules::new(3, 1, 5, vec![module(&[(0, 1)])]).unwrap();
        assert!(duality_check(&skew(), &other).is_err());
        assert!(DeficiencyModules::new(3, 2, 4, vec![]).is_err());
    }

    #[test]
    fn wrong_codimension_rejected() {
        let t = geometric_prior(3, 1).unwrap();
        assert!(linked_ideal_sequence(t, 3, 1, &[2]).is_err());
    }

    fn arb_module() -> impl Strategy<Value = GradedDims> {
        prop::collection::vec((-4i64..4, 0i64..3), 0..4).prop_map(|v| module(&v))
    }

    proptest! {
        #[test]
        fn check_is_symmetric(a in prop::collection::vec(arb_module(), 2), b in prop::collection::vec(arb_module(), 2), d in 2i64..8) {
            let m1 = DeficiencyModules::new(4, 2, d, a).unwrap();
            let m2 = DeficiencyModules::new(4, 2, d, b).unwrap();
            prop_assert_eq!(duality_check(&m1, &m2).unwrap().holds, duality_check(&m2, &m1).unwrap().holds);
        }

        #[test]
        fn zero_forces_zero(a in prop::collection::vec(arb_module(), 2), d in 2i64..8) {
            let m1 = DeficiencyModules::new(4, 2, d, a).unwrap();
            let zero = DeficiencyModules::new(4, 2, d, vec![GradedDims::default(), GradedDims::default()]).unwrap();
            prop_assert_eq!(duality_check(&m1, &zero).unwrap().holds, m1.is_zero());
        }
    }
}
