//! Symbolic regularity bounds and regularity/normality scans over
//! cohomology tables.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::arith::binomial;
use crate::error::{invalid, Error, Result};
use crate::table::{CohTable, Support};

/// `c0 + c1 * d` with rational coefficients in a formal degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub c0: Rational64,
    pub c1: Rational64,
}

impl Affine {
    pub fn new(c0: Rational64, c1: Rational64) -> Self {
        Affine { c0, c1 }
    }

    pub fn constant(c: i64) -> Self {
        Affine::new(Rational64::from_integer(c), Rational64::zero())
    }

    /// `c + coef * d`.
    pub fn linear(c: i64, coef: i64) -> Self {
        Affine::new(Rational64::from_integer(c), Rational64::from_integer(coef))
    }

    pub fn add(&self, o: &Affine) -> Affine {
        Affine::new(self.c0 + o.c0, self.c1 + o.c1)
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine::new(self.c0 - o.c0, self.c1 - o.c1)
    }

    pub fn scale(&self, s: Rational64) -> Affine {
        Affine::new(self.c0 * s, self.c1 * s)
    }

    pub fn eval(&self, d: i64) -> Rational64 {
        self.c0 + self.c1 * Rational64::from_integer(d)
    }

    /// Integer `d` with `self(d) > 0`.
    pub fn positive_set(&self) -> DegreeSet {
        if self.c1.is_zero() {
            return if self.c0.is_positive() { DegreeSet::All } else { DegreeSet::Empty };
        }
        let root = -self.c0 / self.c1;
        if self.c1.is_positive() {
            DegreeSet::AtLeast(root.floor().to_integer() + 1)
        } else {
            DegreeSet::AtMost(root.ceil().to_integer() - 1)
        }
    }

    /// Integer `d` with `self(d) >= 0`.
    pub fn nonneg_set(&self) -> DegreeSet {
        if self.c1.is_zero() {
            return if self.c0 >= Rational64::zero() { DegreeSet::All } else { DegreeSet::Empty };
        }
        let root = -self.c0 / self.c1;
        if self.c1.is_positive() {
            DegreeSet::AtLeast(root.ceil().to_integer())
        } else {
            DegreeSet::AtMost(root.floor().to_integer())
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.c0.denom().lcm(self.c1.denom());
        let a = (self.c1 * Rational64::from_integer(den)).to_integer();
        let b = (self.c0 * Rational64::from_integer(den)).to_integer();
        let body = match (a, b) {
            (0, b) => b.to_string(),
            (a, 0) => format!("{}d", coef(a)),
            (a, b) if b < 0 => format!("{}d - {}", coef(a), -b),
            (a, b) => format!("{}d + {}", coef(a), b),
        };
        if den == 1 {
            write!(f, "{body}")
        } else if a == 0 || b == 0 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

fn coef(a: i64) -> String {
    match a {
        1 => String::new(),
        -1 => "-".to_string(),
        _ => a.to_string(),
    }
}

/// Solution set of a one-variable affine inequality over the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSet {
    Empty,
    All,
    AtLeast(i64),
    AtMost(i64),
}

impl DegreeSet {
    pub fn contains(&self, d: i64) -> bool {
        match *self {
            DegreeSet::Empty => false,
            DegreeSet::All => true,
            DegreeSet::AtLeast(x) => d >= x,
            DegreeSet::AtMost(x) => d <= x,
        }
    }
}

/// A bundle expression whose regularity is bounded from its pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegTerm {
    Atom { name: String, rank: i64, bound: Affine },
    Tensor(Box<RegTerm>, Box<RegTerm>),
    Sym(u32, Box<RegTerm>),
    Wedge(u32, Box<RegTerm>),
    Twist(Box<RegTerm>, i64),
    Det(Box<RegTerm>),
}

impl RegTerm {
    pub fn atom(name: impl Into<String>, rank: i64, bound: Affine) -> Self {
        RegTerm::Atom { name: name.into(), rank, bound }
    }

    pub fn tensor(a: RegTerm, b: RegTerm) -> Self {
        RegTerm::Tensor(Box::new(a), Box::new(b))
    }

    pub fn wedge(k: u32, a: RegTerm) -> Self {
        RegTerm::Wedge(k, Box::new(a))
    }

    pub fn sym(k: u32, a: RegTerm) -> Self {
        RegTerm::Sym(k, Box::new(a))
    }

    pub fn twist(a: RegTerm, j: i64) -> Self {
        RegTerm::Twist(Box::new(a), j)
    }

    pub fn det(a: RegTerm) -> Self {
        RegTerm::Det(Box::new(a))
    }

    pub fn rank(&self) -> i64 {
        let to_i64 = |b: num_bigint::BigInt| i64::try_from(b).expect("rank fits in i64");
        match self {
            RegTerm::Atom { rank, .. } => *rank,
            RegTerm::Tensor(a, b) => a.rank() * b.rank(),
            RegTerm::Sym(k, a) => to_i64(binomial(a.rank() + *k as i64 - 1, *k as i64)),
            RegTerm::Wedge(k, a) => to_i64(binomial(a.rank(), *k as i64)),
            RegTerm::Twist(a, _) => a.rank(),
            RegTerm::Det(_) => 1,
        }
    }
}

impl fmt::Display for RegTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegTerm::Atom { name, .. } => write!(f, "{name}"),
            RegTerm::Tensor(a, b) => write!(f, "{a} (x) {b}"),
            RegTerm::Sym(k, a) => write!(f, "S^{k}({a})"),
            RegTerm::Wedge(k, a) => write!(f, "wedge^{k}({a})"),
            RegTerm::Twist(a, j) => write!(f, "({a})({j})"),
            RegTerm::Det(a) => write!(f, "det({a})"),
        }
    }
}

/// Upper bound for the regularity of `term`, affine in `d`.
pub fn propagate_bound(term: &RegTerm) -> Affine {
    match term {
        RegTerm::Atom { bound, .. } => *bound,
        RegTerm::Tensor(a, b) => propagate_bound(a).add(&propagate_bound(b)),
        RegTerm::Sym(k, a) | RegTerm::Wedge(k, a) => propagate_bound(a).scale(Rational64::from_integer(*k as i64)),
        RegTerm::Twist(a, j) => propagate_bound(a).sub(&Affine::constant(*j)),
        RegTerm::Det(a) => propagate_bound(&RegTerm::Wedge(a.rank().max(0) as u32, a.clone())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Setting {
    /// Smooth threefold in `P^5`.
    ThreefoldP5,
    /// Regular smooth surface in `P^4`.
    SurfaceP4,
}

impl Setting {
    pub fn name(&self) -> &'static str {
        match self {
            Setting::ThreefoldP5 => "threefold-p5",
            Setting::SurfaceP4 => "surface-p4",
        }
    }
}

/// A premise taken on trust rather than verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: &'static str,
    pub statement: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundDerivation {
    pub setting: Setting,
    pub term: RegTerm,
    pub bound: Affine,
    pub axioms: Vec<Axiom>,
    pub notes: Vec<&'static str>,
}

/// Bound `reg(X) <= reg(E) <= reg(wedge^{r-1} E* (x) det E)` for the kernel
/// bundle `E` of rank `r` of a generic projection, with `E*` taken to be
/// `(-3)`-regular.
pub fn kernel_bundle_bound(setting: Setting) -> BoundDerivation {
    let (rank, det_shift, axioms) = match setting {
        Setting::ThreefoldP5 => (
            4,
            6,
            vec![
                Axiom { name: "Kodaira vanishing", statement: "H^i(X, K_X (x) L) = 0 for i > 0 and L ample" },
                Axiom { name: "Barth-Larsen", statement: "h^1(O_X) = 0 for a smooth threefold in P^5" },
                Axiom { name: "Zak linear normality", statement: "X is linearly normal" },
                Axiom { name: "no hyperquadric", statement: "X lies on no quadric hypersurface" },
            ],
        ),
        Setting::SurfaceP4 => (
            3,
            3,
            vec![
                Axiom { name: "Kodaira vanishing", statement: "H^i(S, K_S (x) L) = 0 for i > 0 and L ample" },
                Axiom { name: "regularity of S", statement: "h^1(O_S) = 0" },
                Axiom { name: "Zak linear normality", statement: "S is linearly normal" },
                Axiom { name: "no hyperquadric", statement: "S lies on no quadric hypersurface" },
            ],
        ),
    };
    let dual = RegTerm::atom("E*", rank, Affine::constant(-3));
    let det = RegTerm::atom(format!("det E = O(-{det_shift}-d)"), 1, Affine::linear(det_shift, 1));
    let term = RegTerm::tensor(RegTerm::wedge(rank as u32 - 1, dual), det);
    BoundDerivation {
        setting,
        bound: propagate_bound(&term),
        term,
        axioms,
        notes: vec![
            "E = wedge^{r-1} E* (x) det E",
            "det E is taken as given, not derived from the pushforward of O_X",
            "the generic projection has fibres of length at most 4, giving the four-term presentation of E",
        ],
    }
}

/// One case of the regularity bound for a threefold in `P^5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub name: &'static str,
    pub bound: Affine,
    pub min_degree: i64,
    /// `Some(r)` restricts to `d = r (mod 2)`.
    pub parity: Option<i64>,
}

impl Branch {
    pub fn applies(&self, d: i64) -> bool {
        d >= self.min_degree && self.parity.is_none_or(|r| d.rem_euclid(2) == r)
    }
}

pub fn threefold_branches() -> Vec<Branch> {
    let half = Rational64::new(1, 2);
    vec![
        Branch { name: "not on a quadric", bound: Affine::linear(-3, 1), min_degree: 1, parity: None },
        Branch {
            name: "complete intersection with a quadric",
            bound: Affine::new(Rational64::one(), half),
            min_degree: 4,
            parity: Some(0),
        },
        Branch {
            name: "on a quadric, linked to a linear space",
            bound: Affine::new(half, half),
            min_degree: 3,
            parity: Some(1),
        },
    ]
}

/// Largest branch bound applying in degree `d`.
pub fn global_bound(d: i64) -> Option<Rational64> {
    threefold_branches()
        .iter()
        .filter(|b| b.applies(d))
        .map(|b| b.bound.eval(d))
        .max()
}

/// Degrees at which some branch allows `reg = d - 1`.
pub fn extremal_degrees() -> Result<Vec<i64>> {
    let target = Affine::linear(-1, 1);
    let mut out = Vec::new();
    for b in threefold_branches() {
        match b.bound.sub(&target).nonneg_set() {
            DegreeSet::Empty => {}
            DegreeSet::AtMost(x) => out.extend((b.min_degree..=x).filter(|&d| b.applies(d))),
            _ => return Err(Error::Unsupported(format!("branch '{}' is extremal in infinitely many degrees", b.name))),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Least `d0` such that every branch bound is below `d - 1` for all `d >= d0`.
pub fn strict_bound_threshold() -> Result<i64> {
    let target = Affine::linear(-1, 1);
    let mut threshold = i64::MIN;
    for b in threefold_branches() {
        match target.sub(&b.bound).positive_set() {
            DegreeSet::All => {}
            DegreeSet::AtLeast(x) => threshold = threshold.max(x),
            _ => return Err(Error::Unsupported(format!("branch '{}' is never below d - 1 eventually", b.name))),
        }
    }
    Ok(threshold)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegScanResult {
    pub reg: i64,
    /// Least `k0` with `h^1(I_X(k)) = 0` for all `k >= k0`; `None` when it
    /// vanishes in every degree.
    pub first_normal_from: Option<i64>,
    /// Nonzero `h^i(I_X(reg - 1 - i))`, showing `reg - 1` fails.
    pub failures: Vec<(usize, i64)>,
}

const MAX_SCAN: i64 = 4096;

/// Regularity of `I_X` and the normality threshold, certified through the
/// table's support bounds.
pub fn regularity_scan(table: &CohTable, dim_x: usize) -> Result<RegScanResult> {
    let last = (dim_x + 1).min(table.top());
    let mut uppers = Vec::new();
    for i in 1..=last {
        match table.support(i) {
            Support::Empty => {}
            s => match s.upper() {
                Some(h) => uppers.push((i, h, s.lower())),
                None => return Err(Error::UnboundedSupport { i, side: "above" }),
            },
        }
    }
    if uppers.is_empty() {
        return Err(invalid("no intermediate cohomology can be nonzero; regularity is unbounded below"));
    }
    let m_top = uppers.iter().map(|(i, h, _)| h + *i as i64).max().unwrap() + 1;
    let floor = uppers
        .iter()
        .map(|(i, _, lo)| lo.map(|l| l + *i as i64))
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().min().unwrap());
    let mut m = m_top - 1;
    loop {
        if floor.is_some_and(|f| m < f) {
            return Err(invalid("all intermediate cohomology vanishes; regularity is unbounded below"));
        }
        if m_top - m > MAX_SCAN {
            return Err(Error::UnboundedSupport { i: 1, side: "below" });
        }
        let mut failures = Vec::new();
        for &(i, _, _) in &uppers {
            let k = m - i as i64;
            let v = table.h(i, k)?;
            if v.is_positive() {
                failures.push((i, k));
            } else if !v.is_zero() {
                return Err(Error::Uncertified { i, k, range: v.to_string() });
            }
        }
        if !failures.is_empty() {
            return Ok(RegScanResult {
                reg: m + 1,
                first_normal_from: first_normal_from(table)?,
                failures,
            });
        }
        m -= 1;
    }
}

/// Least `k0` with `h^1(I_X(k)) = 0` for every `k >= k0`.
pub fn first_normal_from(table: &CohTable) -> Result<Option<i64>> {
    let s = table.support(1);
    let (lo, hi) = match s {
        Support::Empty => return Ok(None),
        Support::Range { hi: None, .. } => return Err(Error::UnboundedSupport { i: 1, side: "above" }),
        Support::Range { lo, hi: Some(h) } => (lo, h),
    };
    let mut k = hi;
    loop {
        if lo.is_some_and(|l| k < l) {
            return Ok(None);
        }
        if hi - k > MAX_SCAN {
            return Err(Error::UnboundedSupport { i: 1, side: "below" });
        }
        let v = table.h(1, k)?;
        if v.is_positive() {
            return Ok(Some(k + 1));
        }
        if !v.is_zero() {
            return Err(Error::Uncertified { i: 1, k, range: v.to_string() });
        }
        k -= 1;
    }
}
