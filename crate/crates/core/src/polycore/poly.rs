//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational scalar. `BigRational` keeps values reduced with a positive
/// denominator, so equality is structural.
pub type ExactRational = BigRational;

/// Shorthand for building an integer-valued rational.
pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Polynomial in `t` with coefficient `coeffs[i]` on `t^i`.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and two equal polynomials have identical storage.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<ExactRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(ExactRational::one(), 1)
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: ExactRational, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); power + 1];
        coeffs[power] = c;
        UniPoly { coeffs }
    }

    /// Linear polynomial `a*t + b`.
    pub fn linear(a: ExactRational, b: ExactRational) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Product of `(t - r)` over the given roots.
    pub fn from_roots(roots: &[ExactRational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::linear(ExactRational::one(), -r.clone())
        })
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rat(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, a| acc * x + a)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![ExactRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient of a division that must leave no remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Monic copy; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor checked non-zero");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Integer coefficients with gcd 1, obtained by a *positive* rational
    /// rescaling (signs of values are preserved).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Rescaled by a positive rational so that coefficients are coprime
    /// integers.
    pub fn primitive(&self) -> UniPoly {
        Self::from_bigints(&self.primitive_integer())
    }

    /// Squarefree decomposition (Yun): returns `[a_1, a_2, ...]`, monic and
    /// pairwise coprime, with `self = c * prod a_k^k`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<UniPoly>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut factors = Vec::new();
        let dp = self.derivative();
        let a0 = self.gcd(&dp);
        let mut b = self.div_exact(&a0)?;
        let mut c = dp.div_exact(&a0)?;
        let mut d = &c - &b.derivative();
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.div_exact(&a)?;
            c = d.div_exact(&a)?;
            d = &c - &b.derivative();
            factors.push(a.monic());
        }
        Ok(factors)
    }
}

/// `(gcd(p, p'), p / gcd(p, p'))`, both monic up to the sign of `p`'s
/// leading coefficient being absorbed into the squarefree part.
pub fn gcd_squarefree(p: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let sqf = p.div_exact(&g)?;
    Ok((g, sqf))
}

/// Arithmetic selector mirroring the four ring operations the workbench needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Multiply `p` by a scalar; `q` is ignored.
    Scale(ExactRational),
}

pub fn poly_arith(p: &UniPoly, q: &UniPoly, op: ArithOp) -> UniPoly {
    match op {
        ArithOp::Add => p + q,
        ArithOp::Sub => p - q,
        ArithOp::Mul => p * q,
        ArithOp::Scale(c) => p.scale(&c),
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly { (&self).$m(rhs) }
        }
        impl<'a> $tr<UniPoly> for &'a UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn arith_examples() {
        assert_eq!(poly_arith(&UniPoly::t(), &UniPoly::t(), ArithOp::Add), p(&[0, 2]));
        assert_eq!(poly_arith(&p(&[2, 1]), &UniPoly::t(), ArithOp::Mul), p(&[0, 2, 1]));
        assert!(poly_arith(&p(&[3, 1, 4]), &UniPoly::zero(), ArithOp::Mul).is_zero());
        assert_eq!(
            poly_arith(&p(&[0, 2, 1]), &UniPoly::zero(), ArithOp::Scale(frac(1, 2))),
            UniPoly::from_coeffs(vec![rat(0), rat(1), frac(1, 2)])
        );
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), UniPoly::zero());
    }

    #[test]
    fn canonical_form() {
        let q = UniPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 2, 1]).derivative(), p(&[2, 2]));
        assert!(p(&[7]).derivative().is_zero());
        // (d-1)t^2 + dt at d = 3
        assert_eq!(p(&[0, 3, 2]).derivative(), p(&[3, 4]));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p(&[0, 2, 1]).evaluate(&rat(1)), rat(3));
        assert_eq!(p(&[5, 2, 1]).evaluate(&rat(0)), rat(5));
        assert_eq!(p(&[0, 6, 6, 1]).evaluate(&rat(1)), rat(13));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[0, 1, 2, 1]); // t (t+1)^2
        let (q, r) = a.div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[0, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&a.derivative()), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), UniPoly::one());
        assert!(matches!(a.div_rem(&UniPoly::zero()), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn squarefree_examples() {
        let (_, s) = gcd_squarefree(&p(&[0, 2, 1])).unwrap();
        assert_eq!(s.monic(), p(&[0, 2, 1]));
        let (_, s) = gcd_squarefree(&p(&[0, 0, 1])).unwrap();
        assert_eq!(s.monic(), p(&[0, 1]));
        let (g, s) = gcd_squarefree(&p(&[0, 1, 2, 1])).unwrap();
        assert_eq!(s.monic(), p(&[0, 1, 1]));
        assert_eq!(&g * &s, p(&[0, 1, 2, 1]));
        assert!(gcd_squarefree(&UniPoly::zero()).is_err());
    }

    #[test]
    fn yun_decomposition() {
        // t * (t+1)^2 * (t+2)^3
        let f = &(&p(&[0, 1]) * &p(&[1, 2, 1])) * &p(&[8, 12, 6, 1]);
        let parts = f.squarefree_decomposition().unwrap();
        assert_eq!(parts, vec![p(&[0, 1]), p(&[1, 1]), p(&[2, 1])]);
    }

    #[test]
    fn primitive_keeps_sign() {
        let q = UniPoly::from_coeffs(vec![frac(-1, 2), frac(3, 4)]);
        assert_eq!(q.primitive_integer(), vec![BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 10, 12, 3]).to_string(), "3t^3 + 12t^2 + 10t");
        assert_eq!(p(&[-2, 0, 1]).to_string(), "t^2 - 2");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
