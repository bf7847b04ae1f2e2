//! Certified real-root isolation, refinement and sign determination.
//!
//! Everything here works on the squarefree part of the input and uses only
//! exact rational arithmetic. Isolation is Sturm-guided bisection on
//! `(-B, B)` with `B` an integer above the Cauchy bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::{gcd_squarefree, ExactRational, UniPoly};
use super::sturm::{int_poly_sign_at, nudge_radius, Sign, SturmChain};
use super::PolyError;
use crate::json::rational_str;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    /// `lo == hi` is itself the root.
    ExactRationalRoot,
    /// The root lies strictly inside `(lo, hi)`; neither endpoint is a root.
    OpenInterval,
}

/// An interval holding exactly one distinct real root of its polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "rational_str")]
    pub lo: ExactRational,
    #[serde(serialize_with = "rational_str")]
    pub hi: ExactRational,
    pub kind: RootKind,
}

impl IsolatingInterval {
    pub fn exact(x: ExactRational) -> Self {
        IsolatingInterval {
            lo: x.clone(),
            hi: x,
            kind: RootKind::ExactRationalRoot,
        }
    }

    pub fn open(lo: ExactRational, hi: ExactRational) -> Self {
        debug_assert!(lo < hi);
        IsolatingInterval {
            lo,
            hi,
            kind: RootKind::OpenInterval,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == RootKind::ExactRationalRoot
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> ExactRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// `true` when every point of `self` is strictly below every point of
    /// `other`.
    pub fn strictly_below(&self, other: &IsolatingInterval) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.hi < other.lo,
            _ => self.hi <= other.lo,
        }
    }

    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// `1 + max |a_i / a_n|`; every complex root has modulus strictly below it.
pub fn cauchy_bound(p: &UniPoly) -> ExactRational {
    let Some(lead) = p.leading() else {
        return ExactRational::one();
    };
    let lead = lead.abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(ExactRational::zero);
    ExactRational::one() + m
}

pub(crate) fn cauchy_bound_ints(c: &[BigInt]) -> ExactRational {
    cauchy_bound(&UniPoly::from_bigints(c))
}

fn half() -> ExactRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Squarefree part of a polynomial with its Sturm chain, reused across
/// isolation, refinement and sign queries.
#[derive(Clone, Debug)]
pub struct RootOracle {
    sqf: UniPoly,
    chain: SturmChain,
}

impl RootOracle {
    pub fn new(p: &UniPoly) -> Result<Self, PolyError> {
        let (_, sqf) = gcd_squarefree(p)?;
        let chain = SturmChain::new(&sqf)?;
        Ok(RootOracle { sqf, chain })
    }

    /// Caller guarantees `p` is already squarefree.
    pub(crate) fn from_squarefree(sqf: UniPoly) -> Result<Self, PolyError> {
        let chain = SturmChain::new(&sqf)?;
        Ok(RootOracle { sqf, chain })
    }

    pub fn squarefree_part(&self) -> &UniPoly {
        &self.sqf
    }

    pub fn distinct_root_count(&self) -> usize {
        self.chain.count_all()
    }

    pub fn sign_at(&self, x: &ExactRational) -> Sign {
        self.chain.sign_at(x)
    }

    /// Number of roots in the open interval; endpoints must be non-roots.
    pub fn count_in(&self, lo: &ExactRational, hi: &ExactRational) -> usize {
        self.chain.count_between(lo, hi)
    }

    /// Whether the root inside `iv` is a root of this polynomial. `iv` must
    /// have non-root endpoints for every polynomial involved.
    pub(crate) fn has_root_in(&self, iv: &IsolatingInterval) -> bool {
        if iv.is_exact() {
            self.sign_at(&iv.lo) == Sign::Zero
        } else {
            self.count_in(&iv.lo, &iv.hi) > 0
        }
    }

    fn check_isolating(&self, iv: &IsolatingInterval) -> Result<(), PolyError> {
        let ok = if iv.is_exact() {
            self.sign_at(&iv.lo) == Sign::Zero
        } else {
            iv.lo < iv.hi
                && self.sign_at(&iv.lo) != Sign::Zero
                && self.sign_at(&iv.hi) != Sign::Zero
                && self.count_in(&iv.lo, &iv.hi) == 1
        };
        if ok {
            Ok(())
        } else {
            Err(PolyError::NotIsolating)
        }
    }

    /// Sorted isolating intervals for all distinct real roots. With
    /// `detect_rational`, every rational root is reported exactly.
    pub fn isolate(&self, detect_rational: bool) -> Vec<IsolatingInterval> {
        if self.sqf.is_constant() {
            return Vec::new();
        }
        let b = cauchy_bound(&self.sqf).ceil();
        let mut pending = vec![(-b.clone(), b, self.distinct_root_count())];
        let mut out = Vec::new();
        while let Some((a, b, n)) = pending.pop() {
            match n {
                0 => {}
                1 => out.push(IsolatingInterval::open(a, b)),
                _ => {
                    let m = (&a + &b) * half();
                    if self.sign_at(&m) == Sign::Zero {
                        let cap = (&b - &a) * half() * half();
                        let s = nudge_radius(&self.chain, &m, &cap);
                        let (ml, mr) = (&m - &s, &m + &s);
                        let nl = self.count_in(&a, &ml);
                        let nr = self.count_in(&mr, &b);
                        out.push(IsolatingInterval::exact(m.clone()));
                        pending.push((a, ml, nl));
                        pending.push((mr, b, nr));
                    } else {
                        let nl = self.count_in(&a, &m);
                        pending.push((m.clone(), b, n - nl));
                        pending.push((a, m, nl));
                    }
                }
            }
        }
        if detect_rational {
            out = out.into_iter().map(|iv| self.pin_rational(iv)).collect();
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// A rational root `u/v` in lowest terms of the primitive integer form has
    /// `v | lead`, so it equals `j / |lead|` for an integer `j`. Narrow the
    /// interval below `1/|lead|` and test the single candidate.
    fn pin_rational(&self, iv: IsolatingInterval) -> IsolatingInterval {
        if iv.is_exact() {
            return iv;
        }
        let lead = self.chain.head().last().expect("non-constant").abs();
        let target = BigRational::new(BigInt::one(), lead.clone());
        let narrow = self.bisect_to(iv, &target);
        if narrow.is_exact() {
            return narrow;
        }
        let scaled = &narrow.lo * BigRational::from_integer(lead.clone());
        let j = scaled.floor().to_integer() + BigInt::one();
        let cand = BigRational::new(j, lead);
        if cand < narrow.hi && self.sign_at(&cand) == Sign::Zero {
            IsolatingInterval::exact(cand)
        } else {
            narrow
        }
    }

    /// Bisection on a sign change; stops early on an exact hit.
    fn bisect_to(&self, mut iv: IsolatingInterval, width: &ExactRational) -> IsolatingInterval {
        let s_lo = self.sign_at(&iv.lo);
        while !iv.is_exact() && &iv.width() >= width {
            let m = iv.midpoint();
            match self.sign_at(&m) {
                Sign::Zero => return IsolatingInterval::exact(m),
                s if s == s_lo => iv.lo = m,
                _ => iv.hi = m,
            }
        }
        iv
    }

    /// Shrink `iv` to width at most `width`, keeping the same root.
    pub fn refine(&self, iv: &IsolatingInterval, width: &ExactRational) -> Result<IsolatingInterval, PolyError> {
        if !width.is_positive() {
            return Err(PolyError::NonPositiveWidth);
        }
        if iv.is_exact() {
            return if self.sign_at(&iv.lo) == Sign::Zero {
                Ok(iv.clone())
            } else {
                Err(PolyError::NotIsolating)
            };
        }
        let (sl, sh) = (self.sign_at(&iv.lo), self.sign_at(&iv.hi));
        if sl == Sign::Zero || sh == Sign::Zero || sl == sh {
            return Err(PolyError::NotIsolating);
        }
        let mut out = iv.clone();
        let s_lo = sl;
        while !out.is_exact() && &out.width() > width {
            let m = out.midpoint();
            match self.sign_at(&m) {
                Sign::Zero => out = IsolatingInterval::exact(m),
                s if s == s_lo => out.lo = m,
                _ => out.hi = m,
            }
        }
        Ok(out)
    }

    /// Exact sign of `q` at the root isolated by `iv`.
    pub fn sign_of_at_root(&self, q: &UniPoly, iv: &IsolatingInterval) -> Result<Sign, PolyError> {
        self.check_isolating(iv)?;
        if q.is_zero() {
            return Ok(Sign::Zero);
        }
        if iv.is_exact() {
            return Ok(Sign::of(&q.evaluate(&iv.lo)));
        }
        let h = self.sqf.gcd(q);
        if !h.is_constant() && RootOracle::from_squarefree(h)?.has_root_in(iv) {
            return Ok(Sign::Zero);
        }
        if q.is_constant() {
            return Ok(Sign::of(&q.coeff(0)));
        }
        let q_roots = RootOracle::new(q)?;
        let qi = q.primitive_integer();
        let mut cur = iv.clone();
        let s_lo = self.sign_at(&cur.lo);
        loop {
            if cur.is_exact() {
                return Ok(Sign::of(&q.evaluate(&cur.lo)));
            }
            let sl = int_poly_sign_at(&qi, &cur.lo);
            let sh = int_poly_sign_at(&qi, &cur.hi);
            if sl != Sign::Zero && sh != Sign::Zero && q_roots.count_in(&cur.lo, &cur.hi) == 0 {
                return Ok(sl);
            }
            let m = cur.midpoint();
            match self.sign_at(&m) {
                Sign::Zero => cur = IsolatingInterval::exact(m),
                s if s == s_lo => cur.lo = m,
                _ => cur.hi = m,
            }
        }
    }
}

/// Sorted isolating intervals covering every distinct real root of `p`.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>, PolyError> {
    Ok(RootOracle::new(p)?.isolate(true))
}

/// Refine `iv` (which isolates a root of `p`) to width at most `width`.
pub fn refine(p: &UniPoly, iv: &IsolatingInterval, width: &ExactRational) -> Result<IsolatingInterval, PolyError> {
    RootOracle::new(p)?.refine(iv, width)
}

/// Sign of `q(r)` where `r` is the root of `p` isolated by `iv`.
pub fn sign_at_root(q: &UniPoly, p: &UniPoly, iv: &IsolatingInterval) -> Result<Sign, PolyError> {
    RootOracle::new(p)?.sign_of_at_root(q, iv)
}

/// Smallest power-of-two fraction `1/2^k` not exceeding `w`; handy for
/// turning float tolerances into exact widths.
pub fn dyadic_at_most(w: f64) -> ExactRational {
    let mut k = 0u32;
    while 0.5f64.powi(k as i32) > w {
        k += 1;
    }
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::poly::{frac, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn isolates_rational_roots_exactly() {
        let r = isolate_roots(&p(&[0, 2, 1])).unwrap();
        assert_eq!(r, vec![IsolatingInterval::exact(rat(-2)), IsolatingInterval::exact(rat(0))]);
        let r = isolate_roots(&p(&[0, 1])).unwrap();
        assert_eq!(r, vec![IsolatingInterval::exact(rat(0))]);
        let r = isolate_roots(&p(&[0, 3, 2])).unwrap();
        assert_eq!(r, vec![IsolatingInterval::exact(frac(-3, 2)), IsolatingInterval::exact(rat(0))]);
    }

    #[test]
    fn irrational_roots_are_open() {
        let r = isolate_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|iv| !iv.is_exact()));
        assert!(r[0].hi <= r[1].lo);
        assert!(isolate_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert!(matches!(isolate_roots(&UniPoly::zero()), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn repeated_roots_reported_once() {
        // t^2 (t+1)^3
        let q = &p(&[0, 0, 1]) * &p(&[1, 3, 3, 1]);
        let r = isolate_roots(&q).unwrap();
        assert_eq!(r, vec![IsolatingInterval::exact(rat(-1)), IsolatingInterval::exact(rat(0))]);
    }

    #[test]
    fn refine_examples() {
        let q = p(&[-2, 0, 1]);
        let w = frac(1, 100);
        let iv = refine(&q, &IsolatingInterval::open(rat(1), rat(2)), &w).unwrap();
        assert!(iv.width() <= w);
        assert!(&iv.lo * &iv.lo < rat(2) && &iv.hi * &iv.hi > rat(2));

        let ex = IsolatingInterval::exact(rat(0));
        assert_eq!(refine(&p(&[0, 2, 1]), &ex, &w).unwrap(), ex);

        let iv = refine(&p(&[0, 2, 1]), &IsolatingInterval::open(rat(-3), rat(-1)), &frac(1, 10)).unwrap();
        assert_eq!(iv, IsolatingInterval::exact(rat(-2)));

        let bad = IsolatingInterval::open(rat(2), rat(3));
        assert!(matches!(refine(&q, &bad, &w), Err(PolyError::NotIsolating)));
    }

    #[test]
    fn sign_at_root_examples() {
        let s = sign_at_root(&UniPoly::t(), &p(&[-2, 0, 1]), &IsolatingInterval::open(rat(1), rat(2))).unwrap();
        assert_eq!(s, Sign::Positive);
        let s = sign_at_root(&UniPoly::t(), &p(&[0, 2, 1]), &IsolatingInterval::exact(rat(0))).unwrap();
        assert_eq!(s, Sign::Zero);
        // psi = (3/4) t at the root -4/3 of g(6,2) = 4t + 3t^2
        let psi = UniPoly::monomial(frac(3, 4), 1);
        let s = sign_at_root(&psi, &p(&[0, 4, 3]), &IsolatingInterval::exact(frac(-4, 3))).unwrap();
        assert_eq!(s, Sign::Negative);
        let s = sign_at_root(&psi, &p(&[0, 4, 3]), &IsolatingInterval::open(rat(-2), rat(-1))).unwrap();
        assert_eq!(s, Sign::Negative);
    }

    #[test]
    fn sign_at_shared_irrational_root_is_zero() {
        // q shares the root sqrt 2 with p.
        let p2 = p(&[-2, 0, 1]);
        let q = &p2 * &p(&[5, 1]);
        let s = sign_at_root(&q, &p2, &IsolatingInterval::open(rat(1), rat(2))).unwrap();
        assert_eq!(s, Sign::Zero);
        // t - 3/2 changes sign next to sqrt 2 = 1.414...
        let q = p(&[-3, 2]);
        let s = sign_at_root(&q, &p2, &IsolatingInterval::open(rat(1), rat(2))).unwrap();
        assert_eq!(s, Sign::Negative);
    }

    #[test]
    fn non_isolating_interval_rejected() {
        let e = sign_at_root(&UniPoly::t(), &p(&[0, 2, 1]), &IsolatingInterval::open(rat(-3), rat(1)));
        assert!(matches!(e, Err(PolyError::NotIsolating)));
    }
}
