//! g-polynomials of uniform matroids.
//!
//! `g(n, d)` is built either from the factorial closed form or by running one
//! of the recurrence schemes from its initial values. Indices `d = 0` and
//! `d = n` give the zero polynomial.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::polycore::{frac, rat, ExactRational, PolyError, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GPolyError {
    #[error("index out of domain for {context}: (n, d) = ({n}, {d}) violates {bound}")]
    Domain {
        context: String,
        n: usize,
        d: usize,
        bound: String,
    },
    #[error("singular recurrence coefficient at (n, d) = ({n}, {d}): {factor} = 0")]
    Singular { n: usize, d: usize, factor: String },
    #[error("recurrence produced non-integral coefficients at (n, d) = ({n}, {d})")]
    NonIntegral { n: usize, d: usize },
    #[error("unknown recurrence scheme {0:?}")]
    UnknownScheme(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `g(n, d)` together with its indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GPolyRecord {
    pub n: usize,
    pub d: usize,
    pub poly: UniPoly,
}

impl GPolyRecord {
    /// `S_i(n, d)`, the coefficient of `t^i`.
    pub fn coefficient(&self, i: usize) -> ExactRational {
        self.poly.coeff(i)
    }

    /// `(f(1), f'(1), f''(1))`.
    pub fn values_at_one(&self) -> (ExactRational, ExactRational, ExactRational) {
        let one = ExactRational::one();
        let d1 = self.poly.derivative();
        let d2 = d1.derivative();
        (self.poly.evaluate(&one), d1.evaluate(&one), d2.evaluate(&one))
    }
}

/// Factorials `0!, 1!, ..., m!` built by one running product.
#[derive(Clone, Debug)]
pub struct Factorials(Vec<BigInt>);

impl Factorials {
    pub fn up_to(m: usize) -> Self {
        let mut v = Vec::with_capacity(m + 1);
        v.push(BigInt::one());
        for k in 1..=m {
            let next = &v[k - 1] * BigInt::from(k);
            v.push(next);
        }
        Factorials(v)
    }

    pub fn get(&self, k: usize) -> &BigInt {
        &self.0[k]
    }

    /// `(n-i-1)! / ((d-i)! (n-d-i)! (i-1)!)`, valid for `1 <= i <= min(d, n-d)`.
    fn g_coefficient(&self, n: usize, d: usize, i: usize) -> BigInt {
        let den = self.get(d - i) * self.get(n - d - i) * self.get(i - 1);
        self.get(n - i - 1) / den
    }
}

fn check_indices(n: usize, d: usize, context: &str) -> Result<(), GPolyError> {
    if d > n {
        return Err(GPolyError::Domain {
            context: context.to_string(),
            n,
            d,
            bound: "0 <= d <= n".into(),
        });
    }
    Ok(())
}

fn closed_form_with(f: &Factorials, n: usize, d: usize) -> UniPoly {
    let top = d.min(n - d);
    if top == 0 {
        return UniPoly::zero();
    }
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (i, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = f.g_coefficient(n, d, i);
    }
    UniPoly::from_bigints(&coeffs)
}

/// `g(n, d)` from the factorial formula.
pub fn closed_form(n: usize, d: usize) -> Result<GPolyRecord, GPolyError> {
    check_indices(n, d, "closed form")?;
    let f = Factorials::up_to(n);
    Ok(GPolyRecord {
        n,
        d,
        poly: closed_form_with(&f, n, d),
    })
}

/// `S_i(n, d)`; zero outside `1 <= i <= min(d, n - d)`.
pub fn coefficient(n: usize, d: usize, i: usize) -> ExactRational {
    if d > n || i == 0 || i > d.min(n - d) {
        return ExactRational::zero();
    }
    let f = Factorials::up_to(n);
    BigRational::from_integer(f.g_coefficient(n, d, i))
}

/// `(n, min(d, n - d))`. Callers must pass `d <= n`; larger `d` maps to 0.
pub fn symmetry_normalize(n: usize, d: usize) -> (usize, usize) {
    (n, d.min(n.saturating_sub(d)))
}

/// Closed forms for every `0 <= d <= n <= n_max`, sharing one factorial
/// table. Immutable once built.
#[derive(Clone, Debug)]
pub struct GTable {
    n_max: usize,
    rows: Vec<Vec<UniPoly>>,
}

impl GTable {
    pub fn new(n_max: usize) -> Self {
        let f = Factorials::up_to(n_max);
        let rows = (0..=n_max)
            .map(|n| (0..=n).map(|d| closed_form_with(&f, n, d)).collect())
            .collect();
        GTable { n_max, rows }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Panics when `d > n` or `n > n_max`.
    pub fn get(&self, n: usize, d: usize) -> &UniPoly {
        &self.rows[n][d]
    }
}

/// Construction routes that start from initial values and apply one
/// recurrence. Each carries the identifier of the identity it runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RecurrenceScheme {
    /// Three-term recurrence in `n` at fixed `d` (`2.1`).
    FixedDThreeTerm,
    /// Derivative recurrence in `n` at fixed `d` (`2.2`).
    FixedDDerivative,
    /// Three-term recurrence in `d` at fixed `n` (`2.3`).
    FixedNThreeTerm,
    /// Derivative recurrence in `d` at fixed `n` (`2.4`).
    FixedNDerivative,
    /// Triangular recurrence with polynomial coefficients (`2.5`).
    Triangular,
    /// Triangular recurrence with a denominator linear in `t` (`2.6`).
    TriangularRational,
    /// Even diagonal `g(2d, d)` (`2.7`).
    EvenDiagonal,
    /// Odd diagonal `g(2d+1, d)` (`2.8`).
    OddDiagonal,
    /// Half diagonal `g(n, floor(n/2))` alternating `2.9` and `2.10`.
    HalfDiagonal,
}

impl RecurrenceScheme {
    pub const ALL: [RecurrenceScheme; 9] = [
        RecurrenceScheme::FixedDThreeTerm,
        RecurrenceScheme::FixedDDerivative,
        RecurrenceScheme::FixedNThreeTerm,
        RecurrenceScheme::FixedNDerivative,
        RecurrenceScheme::Triangular,
        RecurrenceScheme::TriangularRational,
        RecurrenceScheme::EvenDiagonal,
        RecurrenceScheme::OddDiagonal,
        RecurrenceScheme::HalfDiagonal,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RecurrenceScheme::FixedDThreeTerm => "2.1",
            RecurrenceScheme::FixedDDerivative => "2.2",
            RecurrenceScheme::FixedNThreeTerm => "2.3",
            RecurrenceScheme::FixedNDerivative => "2.4",
            RecurrenceScheme::Triangular => "2.5",
            RecurrenceScheme::TriangularRational => "2.6",
            RecurrenceScheme::EvenDiagonal => "2.7",
            RecurrenceScheme::OddDiagonal => "2.8",
            RecurrenceScheme::HalfDiagonal => "2.9+2.10",
        }
    }

    /// Whether `(n, d)` lies in the scheme's domain.
    pub fn applies(self, n: usize, d: usize) -> bool {
        self.check_domain(n, d).is_ok()
    }

    fn check_domain(self, n: usize, d: usize) -> Result<(), GPolyError> {
        let bound: Option<&str> = match self {
            RecurrenceScheme::FixedDThreeTerm | RecurrenceScheme::FixedDDerivative => {
                (d < 1 || n < d + 2).then_some("d >= 1 and n >= d + 2")
            }
            RecurrenceScheme::FixedNThreeTerm => {
                (n < 3 || d < 2 || d > n / 2 + 1).then_some("n >= 3 and 2 <= d <= floor(n/2) + 1")
            }
            RecurrenceScheme::FixedNDerivative | RecurrenceScheme::Triangular | RecurrenceScheme::TriangularRational => {
                (n < 3 || d < 2 || d + 1 > n).then_some("n >= 3 and 2 <= d <= n - 1")
            }
            RecurrenceScheme::EvenDiagonal => (d < 1 || n != 2 * d).then_some("n = 2d with d >= 1"),
            RecurrenceScheme::OddDiagonal => (d < 1 || n != 2 * d + 1).then_some("n = 2d + 1 with d >= 1"),
            RecurrenceScheme::HalfDiagonal => (n < 2 || d != n / 2).then_some("n >= 2 and d = floor(n/2)"),
        };
        match bound {
            None => Ok(()),
            Some(b) => Err(GPolyError::Domain {
                context: format!("scheme {}", self.id()),
                n,
                d,
                bound: b.into(),
            }),
        }
    }
}

impl fmt::Display for RecurrenceScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for RecurrenceScheme {
    type Err = GPolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let alias = match s {
            "2.9" | "2.10" | "half" => "2.9+2.10",
            other => other,
        };
        RecurrenceScheme::ALL
            .into_iter()
            .find(|sch| sch.id() == alias)
            .ok_or_else(|| GPolyError::UnknownScheme(s.to_string()))
    }
}

fn lin(a: i64, b: i64) -> UniPoly {
    UniPoly::linear(rat(a), rat(b))
}

fn t_times(c: ExactRational) -> UniPoly {
    UniPoly::monomial(c, 1)
}

/// `t (t + 1)`.
fn t_t_plus_1() -> UniPoly {
    UniPoly::from_ints(&[0, 1, 1])
}

fn finish(n: usize, d: usize, poly: UniPoly) -> Result<GPolyRecord, GPolyError> {
    if !poly.is_integral() {
        return Err(GPolyError::NonIntegral { n, d });
    }
    Ok(GPolyRecord { n, d, poly })
}

/// `g(n, d)` computed by running `scheme` from its initial values only.
pub fn via_recurrence(n: usize, d: usize, scheme: RecurrenceScheme) -> Result<GPolyRecord, GPolyError> {
    scheme.check_domain(n, d)?;
    let poly = match scheme {
        RecurrenceScheme::FixedDThreeTerm => fixed_d_three_term(n, d),
        RecurrenceScheme::FixedDDerivative => fixed_d_derivative(n, d),
        RecurrenceScheme::FixedNThreeTerm => fixed_n_three_term(n, d)?,
        RecurrenceScheme::FixedNDerivative => fixed_n_derivative(n, d),
        RecurrenceScheme::Triangular => triangular(n, d),
        RecurrenceScheme::TriangularRational => triangular_rational(n, d)?,
        RecurrenceScheme::EvenDiagonal => even_diagonal(d),
        RecurrenceScheme::OddDiagonal => odd_diagonal(d),
        RecurrenceScheme::HalfDiagonal => half_diagonal(n),
    };
    finish(n, d, poly)
}

fn fixed_d_three_term(n: usize, d: usize) -> UniPoly {
    let di = d as i64;
    let (mut older, mut prev) = (UniPoly::zero(), UniPoly::t());
    for m in (d + 2)..=n {
        let m = m as i64;
        let den = m - di - 1;
        let a = lin(2 * di - m + 1, m - 2).scale(&frac(1, den));
        let b = t_times(frac(m - di - 2, den));
        let next = &(&a * &prev) + &(&b * &older);
        older = std::mem::replace(&mut prev, next);
    }
    prev
}

fn fixed_d_derivative(n: usize, d: usize) -> UniPoly {
    let di = d as i64;
    let mut prev = UniPoly::t();
    for m in (d + 2)..=n {
        let m = m as i64;
        let den = frac(1, m - di - 1);
        let a = lin(di, m - 1).scale(&den);
        let b = t_t_plus_1().scale(&den);
        prev = &(&a * &prev) - &(&b * &prev.derivative());
    }
    prev
}

fn fixed_n_three_term(n: usize, d: usize) -> Result<UniPoly, GPolyError> {
    let ni = n as i64;
    let (mut older, mut prev) = (UniPoly::zero(), UniPoly::t());
    for k in 2..=d {
        let k_i = k as i64;
        let c = |x: i64| x + 1 - 2 * k_i;
        let den = (k_i - 1) * (ni - k_i) * c(ni + 2);
        if den == 0 {
            return Err(GPolyError::Singular {
                n,
                d: k,
                factor: "(d-1)(n-d)c_d(n+2)".into(),
            });
        }
        let konst = (ni - k_i).pow(2) + (k_i - 2).pow(2) + ni - 2;
        let a = lin(c(ni) * c(ni + 2), konst).scale(&frac(c(ni + 1), den));
        let b = frac(-(k_i - 2) * (ni + 1 - k_i) * c(ni), den);
        let next = &(&a * &prev) + &older.scale(&b);
        older = std::mem::replace(&mut prev, next);
    }
    Ok(prev)
}

fn fixed_n_derivative(n: usize, d: usize) -> UniPoly {
    let ni = n as i64;
    let mut prev = UniPoly::t();
    for k in 2..=d {
        let k = k as i64;
        let den = frac(1, (k - 1) * (ni - k));
        let c = ni + 1 - 2 * k;
        let a = lin(c * (ni + 1 - k), (ni - k).pow(2) + ni - 2 * k + 1).scale(&den);
        let b = t_t_plus_1().scale(&(den * rat(c)));
        prev = &(&a * &prev) - &(&b * &prev.derivative());
    }
    prev
}

/// Row-by-row table for `g(n', d')` with `d' <= d`; `n'` runs over the
/// window the recurrence actually touches.
fn triangular(n: usize, d: usize) -> UniPoly {
    let mut table: HashMap<(usize, usize), UniPoly> = HashMap::new();
    for dp in 1..=d {
        for np in (n - (d - dp))..=n {
            let val = if dp == 1 {
                UniPoly::t()
            } else {
                let (ni, di) = (np as i64, dp as i64);
                let same_n = &table[&(np, dp - 1)];
                let prev_n = &table[&(np - 1, dp - 1)];
                let a = frac(ni - di, di - 1);
                let b = t_times(frac(ni + 1 - 2 * di, di - 1));
                &same_n.scale(&a) + &(&b * prev_n)
            };
            table.insert((np, dp), val);
        }
    }
    table.remove(&(n, d)).expect("filled above")
}

fn triangular_rational(n: usize, d: usize) -> Result<UniPoly, GPolyError> {
    let mut table: HashMap<(usize, usize), UniPoly> = HashMap::new();
    let get = |table: &HashMap<(usize, usize), UniPoly>, np: usize, dp: usize| -> UniPoly {
        if dp == 0 || dp >= np {
            UniPoly::zero()
        } else {
            table[&(np, dp)].clone()
        }
    };
    for np in 2..=n {
        for dp in 1..=d.min(np - 1) {
            let val = if dp == 1 {
                UniPoly::t()
            } else {
                let (ni, di) = (np as i64, dp as i64);
                let denom = lin((ni - 2 * di) * (ni + 1 - 2 * di), (di - 1).pow(2));
                let a = rat((di - 1) * (ni - di));
                let b = t_times(rat((ni + 1 - 2 * di) * (ni - 1 - di)));
                let num = &get(&table, np, dp - 1).scale(&a) + &(&b * &get(&table, np - 1, dp));
                num.div_exact(&denom).map_err(|_| GPolyError::NonIntegral { n: np, d: dp })?
            };
            table.insert((np, dp), val);
        }
    }
    Ok(get(&table, n, d))
}

fn even_diagonal(d: usize) -> UniPoly {
    let (mut older, mut prev) = (UniPoly::zero(), UniPoly::t());
    for k in 1..d {
        let k = k as i64;
        let a = lin(2 * k - 1, 2 * (2 * k - 1)).scale(&frac(1, k));
        let b = UniPoly::monomial(frac(-(k - 1), k), 2);
        let next = &(&a * &prev) + &(&b * &older);
        older = std::mem::replace(&mut prev, next);
    }
    prev
}

fn odd_diagonal(d: usize) -> UniPoly {
    let (mut older, mut prev) = (UniPoly::zero(), UniPoly::t());
    for k in 1..d {
        let k = k as i64;
        let den = (k + 1) * (2 * k - 1);
        let a = lin(4 * k * k, 2 * (4 * k * k - 1)).scale(&frac(1, den));
        let b = UniPoly::monomial(frac(-(2 * k + 1) * (k - 1), den), 2);
        let next = &(&a * &prev) + &(&b * &older);
        older = std::mem::replace(&mut prev, next);
    }
    prev
}

/// `f_m = g(m, floor(m/2))`, stepping with the odd-index and even-index
/// identities alternately from `f_1 = 0`, `f_2 = t`.
fn half_diagonal(n: usize) -> UniPoly {
    let (mut older, mut prev) = (UniPoly::zero(), UniPoly::t());
    for m in 2..n {
        let next = if m % 2 == 0 {
            let k = (m / 2) as i64;
            &prev.scale(&frac(2 * k - 1, k)) + &(&t_times(frac(k - 1, k)) * &older)
        } else {
            &prev.scale(&rat(2)) + &(&UniPoly::t() * &older)
        };
        older = std::mem::replace(&mut prev, next);
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn closed_form_examples() {
        for d in 1..12 {
            assert_eq!(closed_form(d + 1, d).unwrap().poly, UniPoly::t());
            let di = d as i64;
            assert_eq!(closed_form(d + 2, d).unwrap().poly, p(&[0, di, di - 1]));
        }
        assert_eq!(closed_form(5, 3).unwrap().poly, p(&[0, 3, 2]));
        assert_eq!(closed_form(6, 2).unwrap().poly, p(&[0, 4, 3]));
        assert_eq!(closed_form(7, 3).unwrap().poly, p(&[0, 10, 12, 3]));
    }

    #[test]
    fn boundary_and_domain() {
        assert!(closed_form(0, 0).unwrap().poly.is_zero());
        assert!(closed_form(1, 0).unwrap().poly.is_zero());
        assert!(closed_form(7, 7).unwrap().poly.is_zero());
        assert!(matches!(closed_form(3, 4), Err(GPolyError::Domain { .. })));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient(4, 2, 1), rat(2));
        assert_eq!(coefficient(4, 2, 2), rat(1));
        assert_eq!(coefficient(9, 4, 5), rat(0));
        assert_eq!(coefficient(6, 3, 2), rat(6));
        assert_eq!(coefficient(6, 3, 0), rat(0));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(symmetry_normalize(7, 5), (7, 2));
        assert_eq!(symmetry_normalize(8, 4), (8, 4));
        assert_eq!(closed_form(7, 5).unwrap().poly, p(&[0, 5, 4]));
        assert_eq!(closed_form(7, 2).unwrap().poly, p(&[0, 5, 4]));
    }

    #[test]
    fn recurrence_examples() {
        let g = via_recurrence(4, 2, RecurrenceScheme::FixedDThreeTerm).unwrap();
        assert_eq!(g.poly, p(&[0, 2, 1]));
        let g = via_recurrence(6, 3, RecurrenceScheme::HalfDiagonal).unwrap();
        assert_eq!(g.poly, p(&[0, 6, 6, 1]));
        for d in 1..8 {
            let di = d as i64;
            let g = via_recurrence(d + 2, d, RecurrenceScheme::FixedDDerivative).unwrap();
            assert_eq!(g.poly, p(&[0, di, di - 1]));
        }
    }

    #[test]
    fn every_scheme_matches_closed_form() {
        for n in 2..=24 {
            for d in 1..n {
                let expect = closed_form(n, d).unwrap().poly;
                for s in RecurrenceScheme::ALL {
                    if s.applies(n, d) {
                        let got = via_recurrence(n, d, s).unwrap();
                        assert_eq!(got.poly, expect, "scheme {s} at ({n}, {d})");
                    }
                }
            }
        }
    }

    #[test]
    fn domain_errors_name_the_bound() {
        let e = via_recurrence(4, 3, RecurrenceScheme::FixedDThreeTerm).unwrap_err();
        assert!(e.to_string().contains("n >= d + 2"), "{e}");
        let e = via_recurrence(10, 7, RecurrenceScheme::FixedNThreeTerm).unwrap_err();
        assert!(e.to_string().contains("floor(n/2) + 1"), "{e}");
        assert!(via_recurrence(7, 3, RecurrenceScheme::EvenDiagonal).is_err());
    }

    #[test]
    fn scheme_ids_parse() {
        for s in RecurrenceScheme::ALL {
            assert_eq!(s.id().parse::<RecurrenceScheme>().unwrap(), s);
        }
        assert_eq!("2.10".parse::<RecurrenceScheme>().unwrap(), RecurrenceScheme::HalfDiagonal);
        assert!("9.9".parse::<RecurrenceScheme>().is_err());
    }
}
