//! Dimension bookkeeping for long exact cohomology sequences.
//!
//! Every computation here reduces to one primitive: a bounded complex
//! `0 -> V_0 -> V_1 -> ... -> V_{M-1} -> 0` in which each term and each
//! homology group is known up to an interval. Writing `r_j` for the rank of
//! the map into `V_j`, the constraints are `r_0 = r_M = 0` and
//! `r_j + r_{j+1} = dim V_j - dim H_j`. A forward and a backward sweep give
//! the exact set of feasible ranks at every position, and from those the
//! tightest interval for each term and each homology group. Exact sequences
//! are the special case `H_j = 0`.

use std::fmt;

use num_bigint::BigInt;

use crate::betti::BettiTable;
use crate::bott::{coh_line, line_table, omega_table, product_table, LineBundleOnPn};
use crate::arith::binomial;
use crate::error::{invalid, Error, Result};
use crate::quadric::{series_table, QuadricDivisorSpec};
use crate::table::{CohSource, CohTable, ColumnMemo, DimRange, Support};

/// One term of a bounded complex together with its homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub value: DimRange,
    pub homology: DimRange,
}

impl Position {
    /// A term of an exact sequence.
    pub fn exact(value: DimRange) -> Self {
        Position { value, homology: DimRange::zero() }
    }
}

/// Tightest intervals for every term and homology group of the complex
/// `0 -> V_0 -> ... -> V_{M-1} -> 0`. `k` is only used in error messages.
pub fn solve_complex(k: i64, positions: &[Position]) -> Result<Vec<Position>> {
    let fail = |j: usize, what: &str| Error::Inconsistent {
        k,
        detail: format!("{what} at position {j} of the sequence"),
    };
    let m = positions.len();
    let sums = positions
        .iter()
        .enumerate()
        .map(|(j, p)| p.value.minus(&p.homology).ok_or_else(|| fail(j, "homology larger than its term")))
        .collect::<Result<Vec<_>>>()?;

    let mut fwd = Vec::with_capacity(m + 1);
    fwd.push(DimRange::zero());
    for (j, s) in sums.iter().enumerate() {
        let next = s.minus(&fwd[j]).ok_or_else(|| fail(j, "negative forced rank"))?;
        fwd.push(next);
    }
    let mut bwd = vec![DimRange::zero(); m + 1];
    for j in (0..m).rev() {
        bwd[j] = sums[j].minus(&bwd[j + 1]).ok_or_else(|| fail(j, "negative forced rank"))?;
    }
    if !fwd[m].contains(&BigInt::from(0)) || !bwd[0].contains(&BigInt::from(0)) {
        return Err(fail(m, "nonzero rank into the final zero"));
    }

    let mut out = Vec::with_capacity(m);
    for (j, p) in positions.iter().enumerate() {
        let lo = (&sums[j].lo().clone()).max(&(fwd[j].lo() + bwd[j + 1].lo())).clone();
        let cap = fwd[j].hi().zip(bwd[j + 1].hi()).map(|(a, b)| a + b);
        let hi = match (sums[j].hi(), cap) {
            (Some(a), Some(b)) => Some(a.min(&b).clone()),
            (Some(a), None) => Some(a.clone()),
            (None, b) => b,
        };
        let range = DimRange::new(lo, hi).ok_or_else(|| fail(j, "no feasible image dimensions"))?;
        let value = p
            .value
            .intersect(&range.add(&p.homology))
            .ok_or_else(|| fail(j, "term outside its forced range"))?;
        let homology = p
            .value
            .minus(&range)
            .and_then(|h| h.intersect(&p.homology))
            .ok_or_else(|| fail(j, "homology outside its forced range"))?;
        out.push(Position { value, homology });
    }
    Ok(out)
}

/// A sheaf on projective space whose cohomology can be queried.
#[derive(Clone, Debug)]
pub enum SheafExpr {
    /// `sum O_{P^n}(twist)^mult`.
    LineSum { n: usize, summands: Vec<(i64, u64)> },
    /// `Omega^p_{P^n}(twist)`.
    Omega { n: usize, p: usize, twist: i64 },
    /// `O(a, b)` on `P^{n1} x P^{n2}`, twisted diagonally.
    Product { n1: usize, n2: usize, a: i64, b: i64 },
    /// Ideal of a divisor on a quadric cone, via its pushforward series.
    Series(QuadricDivisorSpec),
    /// A table computed elsewhere.
    Opaque { label: String, table: CohTable },
    Twist(Box<SheafExpr>, i64),
}

impl SheafExpr {
    pub fn line(n: usize, twist: i64, mult: u64) -> Self {
        SheafExpr::LineSum { n, summands: vec![(twist, mult)] }
    }

    pub fn opaque(label: impl Into<String>, table: CohTable) -> Self {
        SheafExpr::Opaque { label: label.into(), table }
    }

    /// `F(j)`; nested twists compose additively.
    pub fn twisted(self, j: i64) -> Self {
        match self {
            _ if j == 0 => self,
            SheafExpr::Twist(inner, a) if a + j == 0 => *inner,
            SheafExpr::Twist(inner, a) => SheafExpr::Twist(inner, a + j),
            other => SheafExpr::Twist(Box::new(other), j),
        }
    }

    pub fn table(&self) -> Result<CohTable> {
        match self {
            SheafExpr::LineSum { n, summands } => line_sum_table(*n, summands),
            SheafExpr::Omega { n, p, twist } => omega_table(*n, *p, *twist),
            SheafExpr::Product { n1, n2, a, b } => product_table(*n1, *n2, *a, *b),
            SheafExpr::Series(spec) => Ok(series_table(spec)),
            SheafExpr::Opaque { table, .. } => Ok(table.clone()),
            SheafExpr::Twist(inner, j) => Ok(inner.table()?.twist(*j)),
        }
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafExpr::LineSum { summands, .. } => {
                let parts: Vec<String> = summands
                    .iter()
                    .map(|(t, m)| if *m == 1 { format!("O({t})") } else { format!("O({t})^{m}") })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            SheafExpr::Omega { p, twist, .. } => write!(f, "Omega^{p}({twist})"),
            SheafExpr::Product { n1, n2, a, b } => write!(f, "O({a},{b}) on P^{n1} x P^{n2}"),
            SheafExpr::Series(spec) => write!(f, "I_X/Q for {spec}"),
            SheafExpr::Opaque { label, .. } => write!(f, "{label}"),
            SheafExpr::Twist(inner, j) => write!(f, "({inner})({j})"),
        }
    }
}

fn line_sum_table(n: usize, summands: &[(i64, u64)]) -> Result<CohTable> {
    let summands: Vec<(i64, u64)> = summands.iter().copied().filter(|(_, m)| *m > 0).collect();
    if summands.is_empty() {
        return Err(invalid("a sum of line bundles needs a summand"));
    }
    if summands.len() == 1 {
        return line_table(n, summands[0].0, summands[0].1);
    }
    let mut supports = vec![Support::Empty; n + 1];
    for &(t, m) in &summands {
        let single = line_table(n, t, m)?;
        for (q, s) in supports.iter_mut().enumerate() {
            *s = s.hull(&single.support(q));
        }
    }
    Ok(CohTable::from_fn(n, supports, move |q, k| {
        let mut acc = BigInt::from(0);
        for &(t, m) in &summands {
            acc += coh_line(&LineBundleOnPn { n, k: k + t, r: m }, q)?;
        }
        Ok(DimRange::exact(acc))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotPosition {
    Left,
    Middle,
    Right,
}

impl SlotPosition {
    fn index(self) -> usize {
        match self {
            SlotPosition::Left => 0,
            SlotPosition::Middle => 1,
            SlotPosition::Right => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Slot {
    Known(SheafExpr),
    /// The sheaf to solve for, with optional prior knowledge of its table.
    Unknown { prior: Option<CohTable> },
}

impl Slot {
    pub fn unknown() -> Self {
        Slot::Unknown { prior: None }
    }
}

/// `0 -> left -> middle -> right -> 0` with exactly one unknown slot.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    slots: [Slot; 3],
}

impl ShortExactSeq {
    pub fn new(left: Slot, middle: Slot, right: Slot) -> Result<Self> {
        let slots = [left, middle, right];
        let unknowns = slots.iter().filter(|s| matches!(s, Slot::Unknown { .. })).count();
        if unknowns != 1 {
            return Err(invalid(format!("a short exact sequence needs exactly one unknown slot, found {unknowns}")));
        }
        Ok(ShortExactSeq { slots })
    }

    pub fn unknown_position(&self) -> SlotPosition {
        let idx = self
            .slots
            .iter()
            .position(|s| matches!(s, Slot::Unknown { .. }))
            .expect("checked on construction");
        [SlotPosition::Left, SlotPosition::Middle, SlotPosition::Right][idx]
    }

    pub fn slot(&self, pos: SlotPosition) -> &Slot {
        &self.slots[pos.index()]
    }

    /// Adds `prior` to what is known about the unknown slot.
    pub fn with_prior(mut self, prior: CohTable) -> Result<Self> {
        let idx = self.unknown_position().index();
        if let Slot::Unknown { prior: current } = &mut self.slots[idx] {
            *current = Some(match current.take() {
                Some(old) => CohTable::intersect(vec![old, prior])?,
                None => prior,
            });
        }
        Ok(self)
    }
}

impl fmt::Display for ShortExactSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Slot| match s {
            Slot::Known(e) => e.to_string(),
            Slot::Unknown { .. } => "?".to_string(),
        };
        write!(
            f,
            "0 -> {} -> {} -> {} -> 0",
            show(&self.slots[0]),
            show(&self.slots[1]),
            show(&self.slots[2])
        )
    }
}

struct LesSource {
    known: [Option<CohTable>; 3],
    unknown: usize,
    prior: Option<CohTable>,
    top: usize,
    supports: Vec<Support>,
    memo: ColumnMemo,
}

impl LesSource {
    fn column(&self, k: i64) -> Result<Vec<DimRange>> {
        let mut positions = Vec::with_capacity(3 * (self.top + 1));
        for i in 0..=self.top {
            for (slot, table) in self.known.iter().enumerate() {
                let value = match table {
                    Some(t) => t.h(i, k)?,
                    None if !self.supports[i].contains(k) => DimRange::zero(),
                    None => match &self.prior {
                        Some(p) => p.h(i, k)?,
                        None => DimRange::unknown(),
                    },
                };
                debug_assert!(table.is_some() || slot == self.unknown);
                positions.push(Position::exact(value));
            }
        }
        let solved = solve_complex(k, &positions)?;
        Ok((0..=self.top).map(|i| solved[3 * i + self.unknown].value.clone()).collect())
    }
}

impl CohSource for LesSource {
    fn top(&self) -> usize {
        self.top
    }
    fn support(&self, i: usize) -> Support {
        self.supports.get(i).copied().unwrap_or(Support::Empty)
    }
    fn eval(&self, i: usize, k: i64) -> Result<DimRange> {
        let column = self.memo.get_or_compute(k, || self.column(k))?;
        Ok(column[i].clone())
    }
}

/// Table of the unknown slot, derived from the long exact sequence.
pub fn les_solve(seq: &ShortExactSeq) -> Result<CohTable> {
    let unknown = seq.unknown_position().index();
    let mut known: [Option<CohTable>; 3] = [None, None, None];
    let mut prior = None;
    for (idx, slot) in seq.slots.iter().enumerate() {
        match slot {
            Slot::Known(e) => known[idx] = Some(e.table()?),
            Slot::Unknown { prior: p } => prior = p.clone(),
        }
    }
    let known_top = known.iter().flatten().map(CohTable::top).max().unwrap_or(0);
    let top = known_top + usize::from(unknown == 0);
    let supp = |slot: usize, i: Option<usize>| match (i, &known[slot]) {
        (Some(i), Some(t)) => t.support(i),
        _ => Support::Empty,
    };
    let supports = (0..=top)
        .map(|i| {
            let s = match unknown {
                0 => supp(2, i.checked_sub(1)).hull(&supp(1, Some(i))),
                1 => supp(0, Some(i)).hull(&supp(2, Some(i))),
                _ => supp(1, Some(i)).hull(&supp(0, Some(i + 1))),
            };
            match &prior {
                Some(p) => s.intersect(&p.support(i)),
                None => s,
            }
        })
        .collect();
    Ok(CohTable::new(LesSource {
        known,
        unknown,
        prior,
        top,
        supports,
        memo: ColumnMemo::default(),
    }))
}

/// What is known about `h^i(I_X(k))` for any closed `X` of dimension `n` in
/// `P^N` before looking at equations: `h^0(I(k)) <= h^0(O(k))`, vanishing
/// for `n + 2 <= i <= N - 1`, and `h^N(I(k)) = h^N(O(k))` in codimension at
/// least two.
pub fn geometric_prior(ambient: usize, dim: usize) -> Result<CohTable> {
    if dim >= ambient {
        return Err(invalid(format!("a proper subvariety of P^{ambient} has dimension below {ambient}")));
    }
    let n_amb = ambient as i64;
    let codim_two = dim + 2 <= ambient;
    let supports = (0..=ambient)
        .map(|i| match i {
            0 => Support::at_least(0),
            _ if i == ambient && codim_two => Support::at_most(-n_amb - 1),
            _ if i == ambient => Support::all(),
            _ if i >= dim + 2 => Support::Empty,
            _ => Support::all(),
        })
        .collect();
    Ok(CohTable::from_fn(ambient, supports, move |i, k| {
        Ok(match i {
            0 => DimRange::new(BigInt::from(0), Some(binomial(k + n_amb, n_amb))).expect("nonnegative"),
            _ if i == ambient && codim_two => DimRange::exact(binomial(-k - 1, n_amb)),
            _ => DimRange::unknown(),
        })
    }))
}

struct ResolutionSource {
    betti: BettiTable,
    prior: Option<CohTable>,
    memo: ColumnMemo,
}

impl ResolutionSource {
    fn top_row(&self, j: usize, k: i64) -> DimRange {
        let n = self.betti.ambient() as i64;
        let total = self
            .betti
            .row(j)
            .map(|(d, b)| binomial(d - k - 1, n) * BigInt::from(b))
            .sum::<BigInt>();
        DimRange::exact(total)
    }

    /// Homology of `H^N(F_s(k)) -> ... -> H^N(F_0(k))`, indexed by `j`.
    fn column(&self, k: i64) -> Result<Vec<DimRange>> {
        let n = self.betti.ambient();
        let s = self.betti.length();
        let mut positions = Vec::with_capacity(s + 1);
        for j in (0..=s).rev() {
            let homology = match &self.prior {
                Some(p) => p.h(n - j, k)?,
                None => DimRange::unknown(),
            };
            positions.push(Position { value: self.top_row(j, k), homology });
        }
        let solved = solve_complex(k, &positions)?;
        Ok(solved.into_iter().rev().map(|p| p.homology).collect())
    }
}

impl CohSource for ResolutionSource {
    fn top(&self) -> usize {
        self.betti.ambient()
    }

    fn support(&self, i: usize) -> Support {
        let n = self.betti.ambient();
        let base = if i == 0 {
            Support::at_least(self.betti.min_degree(0).expect("generators exist"))
        } else {
            match self.betti.max_degree(n - i) {
                Some(d) => Support::at_most(d - n as i64 - 1),
                None => Support::Empty,
            }
        };
        match &self.prior {
            Some(p) => base.intersect(&p.support(i)),
            None => base,
        }
    }

    fn eval(&self, i: usize, k: i64) -> Result<DimRange> {
        let value = if i == 0 {
            DimRange::exact(self.betti.hilbert_function(k)?)
        } else {
            let column = self.memo.get_or_compute(k, || self.column(k))?;
            column[self.betti.ambient() - i].clone()
        };
        match &self.prior {
            Some(p) => {
                let known = p.h(i, k)?;
                value.intersect(&known).ok_or_else(|| Error::Inconsistent {
                    k,
                    detail: format!("resolution gives h^{i} = {value}, prior says {known}"),
                })
            }
            None => Ok(value),
        }
    }
}

/// Ideal-sheaf table read off a minimal free resolution: `h^0` is the
/// Hilbert function and `h^i`, `i >= 1`, is the homology of the top
/// cohomology row of the resolution at homological degree `N - i`.
pub fn resolution_table(betti: &BettiTable, prior: Option<CohTable>) -> CohTable {
    CohTable::new(ResolutionSource {
        betti: betti.clone(),
        prior,
        memo: ColumnMemo::default(),
    })
}

/// Ideal-sheaf table obtained by splitting the resolution into short exact
/// sequences `0 -> K_{j+1} -> F_j -> K_j -> 0` and solving each in turn.
pub fn resolution_chain_table(betti: &BettiTable) -> Result<CohTable> {
    let n = betti.ambient();
    let free = |j: usize| SheafExpr::LineSum {
        n,
        summands: betti.row(j).map(|(d, b)| (-d, b)).collect(),
    };
    let s = betti.length();
    let mut kernel = free(s).table()?;
    for j in (0..s).rev() {
        let seq = ShortExactSeq::new(
            Slot::Known(SheafExpr::opaque(format!("K_{}", j + 1), kernel)),
            Slot::Known(free(j)),
            Slot::unknown(),
        )?;
        kernel = les_solve(&seq)?;
    }
    Ok(kernel)
}

/// A short exact sequence whose unknown slot is `I_X(offset)`.
#[derive(Clone, Debug)]
pub struct ShiftedSequence {
    pub seq: ShortExactSeq,
    pub offset: i64,
}

/// All ways of computing the ideal sheaf of a subvariety.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub ambient: usize,
    pub dim: usize,
    pub betti: Option<BettiTable>,
    pub sequences: Vec<ShiftedSequence>,
}

/// Full cohomology table of `I_X(k)`, in its natural grading, combining
/// every route of the presentation.
pub fn ideal_table_from_presentation(pres: &IdealPresentation) -> Result<CohTable> {
    if pres.betti.is_none() && pres.sequences.is_empty() {
        return Err(invalid("presentation has neither a resolution nor a sequence"));
    }
    let prior = geometric_prior(pres.ambient, pres.dim)?;
    let mut routes = vec![prior.clone()];
    for shifted in &pres.sequences {
        let seq = shifted.seq.clone().with_prior(prior.twist(shifted.offset))?;
        routes.push(les_solve(&seq)?.twist(-shifted.offset));
    }
    if let Some(betti) = &pres.betti {
        if betti.ambient() != pres.ambient {
            return Err(invalid("resolution lives in a different ambient space"));
        }
        let so_far = CohTable::intersect(routes.clone())?;
        routes.push(resolution_table(betti, Some(so_far)));
    }
    CohTable::intersect(routes)
}

/// `Omega^p_{P^n}` derived from the pieces
/// `0 -> Omega^q(k) -> wedge^q V (x) O(k - q) -> Omega^{q-1}(k) -> 0` of the
/// Koszul complex, starting from `Omega^n = O(-n-1)` on one side and
/// `Omega^0 = O` on the other. The case `q = 1` is the Euler sequence.
pub fn omega_from_sequences(n: usize, p: usize) -> Result<CohTable> {
    if n == 0 || p > n {
        return Err(invalid(format!("no Omega^{p} on P^{n}")));
    }
    let wedge = |q: usize| SheafExpr::line(n, -(q as i64), binomial(n as i64 + 1, q as i64).try_into().unwrap());
    let mut from_top = vec![None; n + 1];
    let mut current = line_table(n, -(n as i64) - 1, 1)?;
    from_top[n] = Some(current.clone());
    for q in (1..=n).rev() {
        let seq = ShortExactSeq::new(
            Slot::Known(SheafExpr::opaque(format!("Omega^{q}"), current)),
            Slot::Known(wedge(q)),
            Slot::unknown(),
        )?;
        current = les_solve(&seq)?;
        from_top[q - 1] = Some(current.clone());
    }
    let mut current = CohTable::intersect(vec![line_table(n, 0, 1)?, from_top[0].clone().unwrap()])?;
    for (q, prior) in (1..=p).zip(&from_top[1..]) {
        let seq = ShortExactSeq::new(
            Slot::unknown(),
            Slot::Known(wedge(q)),
            Slot::Known(SheafExpr::opaque(format!("Omega^{}", q - 1), current)),
        )?
        .with_prior(prior.clone().unwrap())?;
        current = les_solve(&seq)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::koszul;
    use crate::bott::{coh_omega, TwistedDifferential};
    use proptest::prelude::*;

    fn ex(v: i64) -> DimRange {
        DimRange::exact(v)
    }

    #[test]
    fn single_unknown_is_forced() {
        let pos = vec![Position::exact(ex(2)), Position::exact(ex(5)), Position::exact(DimRange::unknown())];
        let out = solve_complex(0, &pos).unwrap();
        assert_eq!(out[2].value, ex(3));
    }

    #[test]
    fn two_unknowns_give_interval() {
        let pos = vec![
            Position::exact(ex(1)),
            Position::exact(DimRange::unknown()),
            Position::exact(ex(4)),
            Position::exact(DimRange::unknown()),
        ];
        let out = solve_complex(0, &pos).unwrap();
        assert_eq!(out[1].value.to_string(), "1..5");
        assert_eq!(out[3].value.to_string(), "0..4");
    }

    #[test]
    fn inconsistency_is_reported() {
        let pos = vec![Position::exact(ex(3)), Position::exact(ex(1))];
        assert!(matches!(solve_complex(7, &pos), Err(Error::Inconsistent { k: 7, .. })));
    }

    #[test]
    fn complex_homology() {
        // 0 -> 2 -> 3 -> 1 -> 0 with unknown homology only in the middle
        let pos = vec![
            Position { value: ex(2), homology: DimRange::zero() },
            Position { value: ex(3), homology: DimRange::unknown() },
            Position { value: ex(1), homology: DimRange::zero() },
        ];
        let out = solve_complex(0, &pos).unwrap();
        assert_eq!(out[1].homology, ex(0));
    }

    #[test]
    fn exactly_one_unknown_slot() {
        let o = || Slot::Known(SheafExpr::line(2, 0, 1));
        assert!(ShortExactSeq::new(o(), o(), o()).is_err());
        assert!(ShortExactSeq::new(Slot::unknown(), o(), Slot::unknown()).is_err());
    }

    #[test]
    fn euler_sequence_at_zero_twist() {
        let seq = ShortExactSeq::new(
            Slot::unknown(),
            Slot::Known(SheafExpr::line(5, -1, 6)),
            Slot::Known(SheafExpr::line(5, 0, 1)),
        )
        .unwrap();
        let t = les_solve(&seq).unwrap();
        assert_eq!(t.exact(1, 0).unwrap(), BigInt::from(1));
        assert_eq!(t.exact(0, 0).unwrap(), BigInt::from(0));
        // one sequence alone leaves positive twists ambiguous
        assert!(!t.h(0, 2).unwrap().is_exact());
    }

    #[test]
    fn filtration_reproduces_bott() {
        for n in 1..=5 {
            for p in 0..=n {
                let t = omega_from_sequences(n, p).unwrap();
                for k in -10..=10 {
                    for q in 0..=n {
                        let expected = coh_omega(&TwistedDifferential::new(n, p, k).unwrap(), q).unwrap();
                        assert_eq!(t.h(q, k).unwrap(), DimRange::exact(expected), "n={n} p={p} k={k} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn chained_and_complex_routes_agree_on_ci() {
        let b = koszul(5, &[2, 2]).unwrap();
        let chain = resolution_chain_table(&b).unwrap();
        let cx = resolution_table(&b, Some(geometric_prior(5, 3).unwrap()));
        for k in -8..10 {
            for i in 0..=5 {
                let (a, c) = (chain.h(i, k).unwrap(), cx.h(i, k).unwrap());
                assert!(a.intersect(&c).is_some(), "i={i} k={k}");
                assert!(c.is_exact());
                if (1..=3).contains(&i) {
                    assert!(cx.h(i, k).unwrap().is_zero());
                }
            }
            assert_eq!(chain.exact(0, k).unwrap(), b.hilbert_function(k).unwrap());
        }
    }

    #[test]
    fn geometric_prior_shape() {
        let p = geometric_prior(5, 3).unwrap();
        assert_eq!(p.exact(5, -6).unwrap(), BigInt::from(1));
        assert!(p.support(3).contains(4));
        assert!(p.support(5).upper() == Some(-6));
        let hyper = geometric_prior(4, 3).unwrap();
        assert!(!hyper.h(4, -5).unwrap().is_exact());
    }

    proptest! {
        #[test]
        fn euler_characteristic_is_additive(a in -6i64..6, b in -6i64..6, k in -12i64..12) {
            // 0 -> O(a) -> O(a) + O(b) -> O(b) -> 0 on P^3, unknown in each slot
            let l = SheafExpr::line(3, a, 1);
            let r = SheafExpr::line(3, b, 1);
            let m = SheafExpr::LineSum { n: 3, summands: vec![(a, 1), (b, 1)] };
            for pos in 0..3 {
                let mut slots = [Slot::Known(l.clone()), Slot::Known(m.clone()), Slot::Known(r.clone())];
                slots[pos] = Slot::unknown();
                let [s0, s1, s2] = slots;
                let seq = ShortExactSeq::new(s0, s1, s2).unwrap();
                let solved = les_solve(&seq).unwrap();
                let tables: Vec<CohTable> = (0..3)
                    .map(|i| if i == pos { solved.clone() } else { [&l, &m, &r][i].table().unwrap() })
                    .collect();
                if let (Some(x), Some(y), Some(z)) = (
                    tables[0].euler_characteristic(k).unwrap(),
                    tables[1].euler_characteristic(k).unwrap(),
                    tables[2].euler_characteristic(k).unwrap(),
                ) {
                    prop_assert_eq!(y, x + z);
                }
            }
        }

        #[test]
        fn refinement_is_monotone(vals in prop::collection::vec(0i64..8, 3..7), mask in prop::collection::vec(any::<bool>(), 7), extra in 0usize..7) {
            // build a consistent exact sequence from random ranks
            let m = vals.len();
            let ranks: Vec<i64> = std::iter::once(0).chain(vals.iter().copied().take(m - 1)).chain(std::iter::once(0)).collect();
            let dims: Vec<i64> = (0..m).map(|j| ranks[j] + ranks[j + 1]).collect();
            let coarse: Vec<Position> = (0..m)
                .map(|j| Position::exact(if mask[j] { DimRange::unknown() } else { ex(dims[j]) }))
                .collect();
            let mut fine = coarse.clone();
            let idx = extra % m;
            fine[idx] = Position::exact(ex(dims[idx]));
            let a = solve_complex(0, &coarse).unwrap();
            let b = solve_complex(0, &fine).unwrap();
            for j in 0..m {
                prop_assert!(b[j].value.within(&a[j].value));
                prop_assert!(a[j].value.contains(&BigInt::from(dims[j])));
            }
        }
    }
}
