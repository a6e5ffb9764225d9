//! Exact integer and rational helpers: binomial coefficients and dense
//! univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Binomial coefficient with the truncating convention: zero whenever
/// `b < 0` or `a < b` (including every negative `a`).
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for j in 0..b {
        acc *= BigInt::from(a - j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// Falling-factorial binomial `x (x-1) ... (x-m+1) / m!`, valid for every
/// integer `x`. Zero for `m < 0`.
pub fn gen_binomial(x: &BigInt, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..m {
        acc *= x - BigInt::from(j);
    }
    let mut fact = BigInt::one();
    for j in 1..=m {
        fact *= BigInt::from(j);
    }
    acc / fact
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Dense univariate polynomial, lowest degree first. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Integer polynomial, used for family parameters such as `t`.
pub type ZPoly = Poly<BigInt>;
/// Rational polynomial, used for Hilbert polynomials in `k`.
pub type QPoly = Poly<BigRational>;

impl<T: Clone + Zero> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }
}

impl<T> Poly<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    /// The monomial `x`.
    pub fn var() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Substitute `x + shift` for `x`.
    pub fn shift(&self, shift: &T) -> Self {
        let lin = Poly::new(vec![shift.clone(), T::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc * lin.clone() + Poly::constant(c.clone()))
    }
}

impl<T> Poly<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Sub<Output = T>,
{
    /// Backward difference `p(x) - p(x - 1)`.
    pub fn backward_difference(&self) -> Self {
        let minus_one = T::zero() - T::one();
        self.clone() - self.shift(&minus_one)
    }
}

impl<T: Clone + Zero + Add<Output = T>> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                a + b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Clone + Zero + Sub<Output = T>> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                a - b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Clone + Zero + Add<Output = T> + Mul<Output = T>> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl ZPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn to_rational(&self) -> QPoly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Parse expressions like `2+t`, `4 + 5t`, `-3t^2+1` in the variable `t`.
    pub fn parse(src: &str) -> Option<ZPoly> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in s.char_indices() {
            if idx > 0 && (ch == '+' || ch == '-') && !s[..idx].ends_with('^') {
                terms.push(&s[start..idx]);
                start = idx;
            }
        }
        terms.push(&s[start..]);
        let mut acc = ZPoly::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1i64, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (coef, exp) = match body.find('t') {
                None => (body.parse::<i64>().ok()?, 0usize),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { body[..pos].trim_end_matches('*').parse::<i64>().ok()? };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<usize>().ok()? };
                    (c, e)
                }
            };
            let mut cs = vec![0i64; exp + 1];
            cs[exp] = sign * coef;
            acc = acc + ZPoly::from_i64(&cs);
        }
        Some(acc)
    }
}

impl QPoly {
    /// `binom(x + shift, n)` as a polynomial in `x`; agrees with
    /// [`binomial`] whenever `x + shift >= 0`.
    pub fn binomial_in(shift: i64, n: u32) -> QPoly {
        let mut acc = QPoly::constant(BigRational::one());
        for j in 0..n as i64 {
            let lin = Poly::new(vec![
                BigRational::from_integer(BigInt::from(shift - j)),
                BigRational::one(),
            ]);
            acc = acc * lin;
        }
        acc.scale(&BigRational::new(BigInt::one(), factorial(n)))
    }

    pub fn eval_i64(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Lagrange interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
    pub fn interpolate(points: &[(i64, BigInt)]) -> QPoly {
        let mut acc = QPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = QPoly::constant(BigRational::from_integer(yi.clone()));
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = BigRational::from_integer(BigInt::from(xi - xj));
                let lin = Poly::new(vec![
                    BigRational::from_integer(BigInt::from(-xj)) / denom.clone(),
                    BigRational::one() / denom,
                ]);
                basis = basis * lin;
            }
            acc = acc + basis;
        }
        acc
    }
}

fn fmt_terms<T, F>(f: &mut fmt::Formatter<'_>, coeffs: &[T], var: &str, render: F) -> fmt::Result
where
    F: Fn(&T) -> (bool, String),
{
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (deg, c) in coeffs.iter().enumerate().rev() {
        let (negative, mag) = render(c);
        if mag == "0" {
            continue;
        }
        let sign = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let body = match deg {
            0 => mag,
            1 if mag == "1" => var.to_string(),
            1 => format!("{mag}{var}"),
            _ if mag == "1" => format!("{var}^{deg}"),
            _ => format!("{mag}{var}^{deg}"),
        };
        write!(f, "{sign}{body}")?;
        first = false;
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "t", |c| (c.is_negative(), c.abs().to_string()))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "k", |c| {
            let a = c.abs();
            let s = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            (c.is_negative(), s)
        })
    }
}
