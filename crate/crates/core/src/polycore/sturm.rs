//! Sturm chains over primitive integer polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{ExactRational, UniPoly};
use super::PolyError;

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &ExactRational) -> Sign {
        Self::of_int(x.numer())
    }

    pub fn of_int(x: &BigInt) -> Sign {
        match x.cmp(&BigInt::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// One end of a counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    At(ExactRational),
    PosInf,
}

impl Endpoint {
    fn rank(&self) -> u8 {
        match self {
            Endpoint::NegInf => 0,
            Endpoint::At(_) => 1,
            Endpoint::PosInf => 2,
        }
    }

    fn lt(&self, other: &Endpoint) -> bool {
        match (self, other) {
            (Endpoint::At(a), Endpoint::At(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

impl From<ExactRational> for Endpoint {
    fn from(x: ExactRational) -> Self {
        Endpoint::At(x)
    }
}

/// Sign of an integer polynomial at `x = a/b` (`b > 0`), computed from the
/// homogenised value `sum c_i a^i b^(n-i)` so no rational arithmetic is needed.
pub(crate) fn int_poly_sign_at(coeffs: &[BigInt], x: &BigRational) -> Sign {
    let Some((lead, rest)) = coeffs.split_last() else {
        return Sign::Zero;
    };
    let (a, b) = (x.numer(), x.denom());
    let mut acc = lead.clone();
    let mut bp = BigInt::one();
    for c in rest.iter().rev() {
        bp *= b;
        acc = acc * a + c * &bp;
    }
    Sign::of_int(&acc)
}

fn int_poly_sign_at_infinity(coeffs: &[BigInt], positive: bool) -> Sign {
    let Some(lead) = coeffs.last() else {
        return Sign::Zero;
    };
    let s = Sign::of_int(lead);
    if positive || coeffs.len() % 2 == 1 {
        s
    } else {
        s.flip()
    }
}

/// Negative-remainder sequence `p, p', -rem(p, p'), ...`, each member
/// rescaled by a positive rational to a primitive integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut polys = vec![p.primitive()];
        let d = p.derivative();
        if !d.is_zero() {
            polys.push(d.primitive());
            loop {
                let n = polys.len();
                let (_, r) = polys[n - 2].div_rem(&polys[n - 1])?;
                if r.is_zero() {
                    break;
                }
                polys.push((-r).primitive());
            }
        }
        let chain = polys.iter().map(UniPoly::primitive_integer).collect();
        Ok(SturmChain { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// The head polynomial is squarefree iff the chain ends in a constant
    /// (the last member is `gcd(p, p')` up to scale).
    pub fn is_squarefree(&self) -> bool {
        self.chain.last().is_some_and(|c| c.len() <= 1)
    }

    pub fn head(&self) -> &[BigInt] {
        &self.chain[0]
    }

    pub fn sign_at(&self, x: &ExactRational) -> Sign {
        int_poly_sign_at(&self.chain[0], x)
    }

    fn variations(&self, at: &Endpoint) -> usize {
        let mut count = 0;
        let mut prev = Sign::Zero;
        for c in &self.chain {
            let s = match at {
                Endpoint::NegInf => int_poly_sign_at_infinity(c, false),
                Endpoint::PosInf => int_poly_sign_at_infinity(c, true),
                Endpoint::At(x) => int_poly_sign_at(c, x),
            };
            if s == Sign::Zero {
                continue;
            }
            if prev != Sign::Zero && prev != s {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in the open interval `(lo, hi)`. Both endpoints
    /// must be non-roots of the head polynomial.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> Result<usize, PolyError> {
        if !lo.lt(hi) {
            return Err(PolyError::EmptyInterval);
        }
        for e in [lo, hi] {
            if let Endpoint::At(x) = e {
                if self.sign_at(x) == Sign::Zero {
                    return Err(PolyError::EndpointIsRoot(x.clone()));
                }
            }
        }
        let (vl, vh) = (self.variations(lo), self.variations(hi));
        Ok(vl.saturating_sub(vh))
    }

    /// Unchecked count for internal callers that already guarantee both
    /// endpoints are finite non-roots.
    pub(crate) fn count_between(&self, lo: &ExactRational, hi: &ExactRational) -> usize {
        let vl = self.variations(&Endpoint::At(lo.clone()));
        let vh = self.variations(&Endpoint::At(hi.clone()));
        vl.saturating_sub(vh)
    }

    pub(crate) fn count_all(&self) -> usize {
        self.variations(&Endpoint::NegInf)
            .saturating_sub(self.variations(&Endpoint::PosInf))
    }
}

/// Number of distinct real roots of the squarefree polynomial `p` in
/// `(lo, hi)`.
pub fn sturm_count(p: &UniPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize, PolyError> {
    let chain = SturmChain::new(p)?;
    if !chain.is_squarefree() {
        return Err(PolyError::NotSquarefree);
    }
    chain.count(lo, hi)
}

/// Shift the root `x` of `p` off itself: returns `s > 0` such that
/// `x - s` and `x + s` are non-roots and `x` is the only root between them.
/// The first trial step is `1 / (1 + den(B))` with `B` the Cauchy bound.
pub(crate) fn nudge_radius(chain: &SturmChain, x: &ExactRational, cap: &ExactRational) -> ExactRational {
    let bound = super::roots::cauchy_bound_ints(chain.head());
    let mut s = BigRational::new(BigInt::one(), BigInt::one() + bound.denom());
    if &s > cap {
        s = cap.clone();
    }
    let two = BigRational::from_integer(BigInt::from(2));
    loop {
        let lo = x - &s;
        let hi = x + &s;
        if chain.sign_at(&lo) != Sign::Zero
            && chain.sign_at(&hi) != Sign::Zero
            && chain.count_between(&lo, &hi) == 1
        {
            return s;
        }
        s /= &two;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::poly::{frac, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn counts_whole_line() {
        let all = |q: &UniPoly| sturm_count(q, &Endpoint::NegInf, &Endpoint::PosInf).unwrap();
        assert_eq!(all(&p(&[0, 2, 1])), 2);
        assert_eq!(all(&p(&[1, 0, 1])), 0);
        assert_eq!(all(&p(&[5])), 0);
    }

    #[test]
    fn counts_reversed_g73_window() {
        // 3t^3 + 12t^2 + 10t has roots 0 and (-6 +- sqrt 6)/3, all inside (-3, 1).
        let q = p(&[0, 10, 12, 3]);
        let n = sturm_count(&q, &Endpoint::At(rat(-3)), &Endpoint::At(rat(1))).unwrap();
        assert_eq!(n, 3);
        let n = sturm_count(&q, &Endpoint::At(frac(-1, 2)), &Endpoint::At(rat(1))).unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn endpoint_root_is_rejected() {
        let q = p(&[0, 2, 1]);
        let err = sturm_count(&q, &Endpoint::At(rat(0)), &Endpoint::PosInf).unwrap_err();
        assert!(matches!(err, PolyError::EndpointIsRoot(_)));
        assert!(matches!(
            sturm_count(&UniPoly::zero(), &Endpoint::NegInf, &Endpoint::PosInf),
            Err(PolyError::ZeroPolynomial)
        ));
        assert!(matches!(
            sturm_count(&q, &Endpoint::At(rat(2)), &Endpoint::At(rat(1))),
            Err(PolyError::EmptyInterval)
        ));
        assert!(matches!(
            sturm_count(&p(&[0, 0, 1]), &Endpoint::NegInf, &Endpoint::PosInf),
            Err(PolyError::NotSquarefree)
        ));
    }

    #[test]
    fn homogeneous_sign() {
        let q = p(&[-2, 0, 1]).primitive_integer();
        assert_eq!(int_poly_sign_at(&q, &frac(3, 2)), Sign::Positive);
        assert_eq!(int_poly_sign_at(&q, &frac(7, 5)), Sign::Negative);
        assert_eq!(int_poly_sign_at(&q, &frac(-7, 5)), Sign::Negative);
    }

    #[test]
    fn nudge_isolates_root() {
        let q = p(&[0, 2, 1]);
        let chain = SturmChain::new(&q).unwrap();
        let s = nudge_radius(&chain, &rat(0), &rat(10));
        assert_eq!(chain.count_between(&-s.clone(), &s), 1);
        assert!(s < rat(2));
    }
}
