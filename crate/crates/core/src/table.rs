//! Dimension ranges, support windows and lazily evaluated cohomology tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};

/// A nonnegative dimension known exactly or only up to an interval.
/// `hi == None` means no upper bound is known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimRange {
    lo: BigInt,
    hi: Option<BigInt>,
}

impl DimRange {
    pub fn exact(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        DimRange { lo: v.clone(), hi: Some(v) }
    }

    pub fn zero() -> Self {
        DimRange::exact(0)
    }

    /// Any nonnegative value.
    pub fn unknown() -> Self {
        DimRange { lo: BigInt::zero(), hi: None }
    }

    /// Clamps `lo` at zero; fails if the result is empty.
    pub fn new(lo: BigInt, hi: Option<BigInt>) -> Option<Self> {
        let lo = if lo.is_negative() { BigInt::zero() } else { lo };
        match &hi {
            Some(h) if *h < lo => None,
            _ => Some(DimRange { lo, hi }),
        }
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> Option<&BigInt> {
        self.hi.as_ref()
    }

    pub fn exact_value(&self) -> Option<&BigInt> {
        match &self.hi {
            Some(h) if *h == self.lo => Some(h),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_value().is_some()
    }

    /// Certainly zero.
    pub fn is_zero(&self) -> bool {
        self.hi.as_ref().is_some_and(Zero::is_zero)
    }

    /// Certainly nonzero.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        *v >= self.lo && self.hi.as_ref().is_none_or(|h| v <= h)
    }

    pub fn intersect(&self, other: &DimRange) -> Option<DimRange> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        DimRange::new(lo, hi)
    }

    /// `self` is contained in `other`.
    pub fn within(&self, other: &DimRange) -> bool {
        self.lo >= other.lo
            && match (&self.hi, &other.hi) {
                (_, None) => true,
                (Some(a), Some(b)) => a <= b,
                (None, Some(_)) => false,
            }
    }

    pub fn add(&self, other: &DimRange) -> DimRange {
        DimRange {
            lo: &self.lo + &other.lo,
            hi: self.hi.as_ref().zip(other.hi.as_ref()).map(|(a, b)| a + b),
        }
    }

    /// All `x - y` with `x` in `self`, `y` in `other`, clipped at zero.
    /// `None` when every such difference is negative.
    pub fn minus(&self, other: &DimRange) -> Option<DimRange> {
        let lo = match &other.hi {
            Some(h) => &self.lo - h,
            None => BigInt::zero(),
        };
        let hi = self.hi.as_ref().map(|h| h - &other.lo);
        DimRange::new(lo, hi)
    }

    pub fn scale(&self, c: u64) -> DimRange {
        let c = BigInt::from(c);
        DimRange {
            lo: &self.lo * &c,
            hi: self.hi.as_ref().map(|h| h * &c),
        }
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.hi, self.exact_value()) {
            (_, Some(v)) => write!(f, "{v}"),
            (Some(h), None) => write!(f, "{}..{}", self.lo, h),
            (None, _) => write!(f, "{}..inf", self.lo),
        }
    }
}

/// Window of twists outside of which a cohomology group is certified to
/// vanish. Unbounded ends are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Support {
    Empty,
    Range { lo: Option<i64>, hi: Option<i64> },
}

impl Support {
    pub fn all() -> Self {
        Support::Range { lo: None, hi: None }
    }

    pub fn at_least(lo: i64) -> Self {
        Support::Range { lo: Some(lo), hi: None }
    }

    pub fn at_most(hi: i64) -> Self {
        Support::Range { lo: None, hi: Some(hi) }
    }

    pub fn between(lo: i64, hi: i64) -> Self {
        if lo > hi {
            Support::Empty
        } else {
            Support::Range { lo: Some(lo), hi: Some(hi) }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Support::Empty)
    }

    pub fn contains(&self, k: i64) -> bool {
        match *self {
            Support::Empty => false,
            Support::Range { lo, hi } => lo.is_none_or(|l| k >= l) && hi.is_none_or(|h| k <= h),
        }
    }

    pub fn lower(&self) -> Option<i64> {
        match *self {
            Support::Empty => None,
            Support::Range { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> Option<i64> {
        match *self {
            Support::Empty => None,
            Support::Range { hi, .. } => hi,
        }
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Support) -> Support {
        match (*self, *other) {
            (Support::Empty, s) | (s, Support::Empty) => s,
            (Support::Range { lo: a, hi: b }, Support::Range { lo: c, hi: d }) => Support::Range {
                lo: a.zip(c).map(|(x, y)| x.min(y)),
                hi: b.zip(d).map(|(x, y)| x.max(y)),
            },
        }
    }

    pub fn intersect(&self, other: &Support) -> Support {
        match (*self, *other) {
            (Support::Empty, _) | (_, Support::Empty) => Support::Empty,
            (Support::Range { lo: a, hi: b }, Support::Range { lo: c, hi: d }) => {
                let lo = match (a, c) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                };
                let hi = match (b, d) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                match (lo, hi) {
                    (Some(l), Some(h)) if l > h => Support::Empty,
                    _ => Support::Range { lo, hi },
                }
            }
        }
    }

    /// Support of `k -> f(k + by)` given the support of `f`.
    pub fn shift(&self, by: i64) -> Support {
        match *self {
            Support::Empty => Support::Empty,
            Support::Range { lo, hi } => Support::Range {
                lo: lo.map(|l| l - by),
                hi: hi.map(|h| h - by),
            },
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Support::Empty => write!(f, "empty"),
            Support::Range { lo, hi } => {
                let l = lo.map_or("-inf".to_string(), |v| v.to_string());
                let h = hi.map_or("inf".to_string(), |v| v.to_string());
                write!(f, "[{l}, {h}]")
            }
        }
    }
}

/// Anything that can answer `h^i(k)` queries together with per-index
/// support windows.
pub trait CohSource: Send + Sync {
    /// Largest cohomological index that may be nonzero.
    fn top(&self) -> usize;
    fn support(&self, i: usize) -> Support;
    /// Only called for `i <= top` and `k` inside `support(i)`.
    fn eval(&self, i: usize, k: i64) -> Result<DimRange>;
}

/// A lazily evaluated cohomology table `(i, k) -> dimension`.
///
/// Queries outside the declared support return an exact zero without
/// touching the evaluator.
#[derive(Clone)]
pub struct CohTable {
    src: Arc<dyn CohSource>,
}

impl fmt::Debug for CohTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohTable").field("top", &self.top()).finish()
    }
}

impl CohTable {
    pub fn new(src: impl CohSource + 'static) -> Self {
        CohTable { src: Arc::new(src) }
    }

    pub fn top(&self) -> usize {
        self.src.top()
    }

    pub fn support(&self, i: usize) -> Support {
        if i > self.top() {
            Support::Empty
        } else {
            self.src.support(i)
        }
    }

    pub fn h(&self, i: usize, k: i64) -> Result<DimRange> {
        if i > self.top() || !self.support(i).contains(k) {
            return Ok(DimRange::zero());
        }
        self.src.eval(i, k)
    }

    /// Exact value or an `Uncertified` error.
    pub fn exact(&self, i: usize, k: i64) -> Result<BigInt> {
        let r = self.h(i, k)?;
        r.exact_value().cloned().ok_or_else(|| Error::Uncertified {
            i,
            k,
            range: r.to_string(),
        })
    }

    /// The table of `F(j)`: entry `(i, k)` is `h^i(F(k + j))`.
    pub fn twist(&self, j: i64) -> CohTable {
        if j == 0 {
            return self.clone();
        }
        CohTable::new(Twisted { inner: self.clone(), by: j })
    }

    /// Entry-wise intersection of several descriptions of the same sheaf.
    pub fn intersect(tables: Vec<CohTable>) -> Result<CohTable> {
        match tables.len() {
            0 => Err(invalid("nothing to intersect")),
            1 => Ok(tables.into_iter().next().unwrap()),
            _ => Ok(CohTable::new(Intersection { tables })),
        }
    }

    /// A table with no information beyond its top index: every entry is
    /// unknown.
    pub fn unconstrained(top: usize) -> CohTable {
        CohTable::from_fn(top, vec![Support::all(); top + 1], |_, _| Ok(DimRange::unknown()))
    }

    pub fn from_fn<F>(top: usize, supports: Vec<Support>, f: F) -> CohTable
    where
        F: Fn(usize, i64) -> Result<DimRange> + Send + Sync + 'static,
    {
        CohTable::new(FnSource { top, supports, f })
    }

    /// `sum_i (-1)^i h^i(k)` when every entry is exact.
    pub fn euler_characteristic(&self, k: i64) -> Result<Option<BigInt>> {
        let mut acc = BigInt::zero();
        for i in 0..=self.top() {
            match self.h(i, k)?.exact_value() {
                Some(v) if i % 2 == 0 => acc += v,
                Some(v) => acc -= v,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

struct Twisted {
    inner: CohTable,
    by: i64,
}

impl CohSource for Twisted {
    fn top(&self) -> usize {
        self.inner.top()
    }
    fn support(&self, i: usize) -> Support {
        self.inner.support(i).shift(self.by)
    }
    fn eval(&self, i: usize, k: i64) -> Result<DimRange> {
        self.inner.h(i, k + self.by)
    }
}

struct Intersection {
    tables: Vec<CohTable>,
}

impl CohSource for Intersection {
    fn top(&self) -> usize {
        self.tables.iter().map(CohTable::top).max().unwrap_or(0)
    }
    fn support(&self, i: usize) -> Support {
        self.tables
            .iter()
            .map(|t| t.support(i))
            .fold(Support::all(), |acc, s| acc.intersect(&s))
    }
    fn eval(&self, i: usize, k: i64) -> Result<DimRange> {
        let mut acc = DimRange::unknown();
        for t in &self.tables {
            let r = t.h(i, k)?;
            acc = acc.intersect(&r).ok_or_else(|| Error::Inconsistent {
                k,
                detail: format!("descriptions of h^{i} disagree ({acc} vs {r})"),
            })?;
        }
        Ok(acc)
    }
}

struct FnSource<F> {
    top: usize,
    supports: Vec<Support>,
    f: F,
}

impl<F> CohSource for FnSource<F>
where
    F: Fn(usize, i64) -> Result<DimRange> + Send + Sync,
{
    fn top(&self) -> usize {
        self.top
    }
    fn support(&self, i: usize) -> Support {
        self.supports.get(i).copied().unwrap_or(Support::Empty)
    }
    fn eval(&self, i: usize, k: i64) -> Result<DimRange> {
        (self.f)(i, k)
    }
}

/// Per-twist cache of a whole column `i = 0..=top`. Safe to share between
/// threads.
#[derive(Default)]
pub(crate) struct ColumnMemo {
    cache: Mutex<HashMap<i64, Result<Arc<Vec<DimRange>>>>>,
}

impl ColumnMemo {
    pub(crate) fn get_or_compute<F>(&self, k: i64, compute: F) -> Result<Arc<Vec<DimRange>>>
    where
        F: FnOnce() -> Result<Vec<DimRange>>,
    {
        if let Some(hit) = self.cache.lock().expect("memo poisoned").get(&k) {
            return hit.clone();
        }
        // computed outside the lock: nested tables may recurse into other memos
        let value = compute().map(Arc::new);
        self.cache
            .lock()
            .expect("memo poisoned")
            .entry(k)
            .or_insert(value)
            .clone()
    }
}

/// Finitely supported graded dimensions `k -> dim M_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims {
    values: BTreeMap<i64, BigInt>,
}

impl GradedDims {
    pub fn new(values: impl IntoIterator<Item = (i64, BigInt)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in values {
            if v.is_negative() {
                return Err(invalid(format!("negative graded dimension {v} in degree {k}")));
            }
            if !v.is_zero() {
                map.insert(k, v);
            }
        }
        Ok(GradedDims { values: map })
    }

    pub fn get(&self, k: i64) -> BigInt {
        self.values.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    /// Row `i` of a table; the support must be bounded on both sides and
    /// every value in it exact.
    pub fn from_table_row(table: &CohTable, i: usize) -> Result<Self> {
        let (lo, hi) = match table.support(i) {
            Support::Empty => return Ok(GradedDims::default()),
            Support::Range { lo: None, .. } => return Err(Error::UnboundedSupport { i, side: "below" }),
            Support::Range { hi: None, .. } => return Err(Error::UnboundedSupport { i, side: "above" }),
            Support::Range { lo: Some(l), hi: Some(h) } => (l, h),
        };
        let values = (lo..=hi)
            .map(|k| table.exact(i, k).map(|v| (k, v)))
            .collect::<Result<Vec<_>>>()?;
        GradedDims::new(values)
    }

    /// The same module with every degree moved up by `by`.
    pub fn shifted(&self, by: i64) -> GradedDims {
        GradedDims {
            values: self.values.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        }
    }
}
