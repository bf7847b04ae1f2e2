//! The Liu–Wang sufficient condition for `f ⪯ F` where
//! `F = φ f + ψ_1 h_1 + ... + ψ_k h_k`, and the concrete recursions it is
//! applied to.

use std::fmt;

use serde::Serialize;

use super::interlace::{interlaces, is_real_rooted, REPORT_WIDTH};
use super::RootlineError;
use crate::gpoly::closed_form;
use crate::polycore::{dyadic_at_most, frac, rat, IsolatingInterval, RootOracle, Sign, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuWangInstance {
    pub label: String,
    pub big_f: UniPoly,
    pub f: UniPoly,
    pub phi: UniPoly,
    pub h: Vec<UniPoly>,
    pub psi: Vec<UniPoly>,
}

impl LiuWangInstance {
    /// Checks `F = φ f + Σ ψ_j h_j` exactly.
    pub fn new(
        label: impl Into<String>,
        big_f: UniPoly,
        f: UniPoly,
        phi: UniPoly,
        h: Vec<UniPoly>,
        psi: Vec<UniPoly>,
    ) -> Result<Self, RootlineError> {
        let inst = LiuWangInstance {
            label: label.into(),
            big_f,
            f,
            phi,
            h,
            psi,
        };
        inst.validate()?;
        if inst.combine() != inst.big_f {
            return Err(RootlineError::Malformed(format!(
                "{}: F differs from phi*f + sum psi_j*h_j",
                inst.label
            )));
        }
        Ok(inst)
    }

    /// Instance whose `F` is defined by the recursion itself.
    pub fn from_parts(
        label: impl Into<String>,
        f: UniPoly,
        phi: UniPoly,
        h: Vec<UniPoly>,
        psi: Vec<UniPoly>,
    ) -> Result<Self, RootlineError> {
        let mut inst = LiuWangInstance {
            label: label.into(),
            big_f: UniPoly::zero(),
            f,
            phi,
            h,
            psi,
        };
        inst.validate()?;
        inst.big_f = inst.combine();
        Ok(inst)
    }

    /// Flip the sign of `ψ_j` and recompute `F`.
    pub fn with_negated_psi(&self, j: usize) -> Result<Self, RootlineError> {
        if j >= self.psi.len() {
            return Err(RootlineError::Malformed(format!("no psi_{}", j + 1)));
        }
        let mut psi = self.psi.clone();
        psi[j] = -&psi[j];
        Self::from_parts(
            format!("{} (psi_{} negated)", self.label, j + 1),
            self.f.clone(),
            self.phi.clone(),
            self.h.clone(),
            psi,
        )
    }

    fn validate(&self) -> Result<(), RootlineError> {
        if self.h.len() != self.psi.len() || self.h.is_empty() {
            return Err(RootlineError::Malformed(format!(
                "{}: {} h_j against {} psi_j",
                self.label,
                self.h.len(),
                self.psi.len()
            )));
        }
        if self.f.is_zero() {
            return Err(RootlineError::Malformed(format!("{}: f is zero", self.label)));
        }
        Ok(())
    }

    fn combine(&self) -> UniPoly {
        self.h
            .iter()
            .zip(&self.psi)
            .fold(&self.phi * &self.f, |acc, (h, psi)| &acc + &(psi * h))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Degree,
    RealRooted,
    Interlacing,
    LeadingSign,
    PsiAtRoots,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub reason: String,
    /// Root of `f` at which some `ψ_j` is positive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IsolatingInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiuWangOutcome {
    pub label: String,
    pub satisfied: bool,
    pub violations: Vec<Violation>,
}

fn violation(condition: Condition, reason: String) -> Violation {
    Violation {
        condition,
        reason,
        witness: None,
    }
}

/// Check every hypothesis of the criterion and collect the failures.
pub fn liu_wang_check(inst: &LiuWangInstance) -> Result<LiuWangOutcome, RootlineError> {
    inst.validate()?;
    let mut out = Vec::new();

    let df = inst.f.degree().unwrap_or(0);
    match inst.big_f.degree() {
        Some(dbig) if dbig == df || dbig == df + 1 => {}
        other => out.push(violation(
            Condition::Degree,
            format!("deg F = {other:?}, deg f = {df}"),
        )),
    }

    let f_real = is_real_rooted(&inst.f)?;
    if !f_real {
        out.push(violation(Condition::RealRooted, "f has non-real zeros".into()));
    }
    for (j, h) in inst.h.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        if !is_real_rooted(h)? {
            out.push(violation(Condition::RealRooted, format!("h_{} has non-real zeros", j + 1)));
        } else if f_real {
            let v = interlaces(h, &inst.f)?;
            if !v.relation.holds() {
                let why = v.reason.unwrap_or_else(|| "roots out of order".into());
                out.push(violation(Condition::Interlacing, format!("h_{} does not interlace f: {why}", j + 1)));
            }
        }
    }

    let lead_sign = |p: &UniPoly| p.leading().map(Sign::of);
    let reference = lead_sign(&inst.big_f);
    for (j, h) in inst.h.iter().enumerate() {
        let s = lead_sign(h);
        if s.is_some() && s != reference {
            out.push(violation(
                Condition::LeadingSign,
                format!("leading coefficients of F and h_{} differ in sign", j + 1),
            ));
        }
    }

    let oracle = RootOracle::new(&inst.f)?;
    let width = dyadic_at_most(REPORT_WIDTH);
    for (j, psi) in inst.psi.iter().enumerate() {
        for iv in oracle.isolate(true) {
            if oracle.sign_of_at_root(psi, &iv)? == Sign::Positive {
                let w = oracle.refine(&iv, &width)?;
                out.push(Violation {
                    condition: Condition::PsiAtRoots,
                    reason: format!("psi_{}(r) > 0 at the root r ~ {:.9} of f", j + 1, w.approx()),
                    witness: Some(w),
                });
                break;
            }
        }
    }

    Ok(LiuWangOutcome {
        label: inst.label.clone(),
        satisfied: out.is_empty(),
        violations: out,
    })
}

/// The recursions the interlacing proofs feed into the criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recursion {
    /// `g(n+2,d)` from `g(n+1,d)`, `g(n,d)`; parameters `(n, d)`.
    FixedD,
    /// `g(n,d+2)` from `g(n,d+1)`, `g(n,d)`; parameters `(n, d)`.
    FixedN,
    /// `g(2k+4,k+2)` from `g(2k+2,k+1)`, `g(2k,k)`; parameter `k`.
    EvenDiagonal,
    /// `g(2k+5,k+2)` from `g(2k+3,k+1)`, `g(2k+1,k)`; parameter `k`.
    OddDiagonal,
    /// `g(2k+3,k+1)` from `g(2k+2,k+1)`, `g(2k+1,k)`; parameter `k`.
    HalfOdd,
    /// `g(2k+4,k+2)` from `g(2k+3,k+1)`, `g(2k+2,k+1)`; parameter `k`.
    HalfEven,
}

impl Recursion {
    pub const ALL: [Recursion; 6] = [
        Recursion::FixedD,
        Recursion::FixedN,
        Recursion::EvenDiagonal,
        Recursion::OddDiagonal,
        Recursion::HalfOdd,
        Recursion::HalfEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recursion::FixedD => "fixed-d",
            Recursion::FixedN => "fixed-n",
            Recursion::EvenDiagonal => "even-diagonal",
            Recursion::OddDiagonal => "odd-diagonal",
            Recursion::HalfOdd => "half-odd",
            Recursion::HalfEven => "half-even",
        }
    }

    /// Parameters `(a, b)` of every instance whose output `F` has `n <= n_max`.
    /// The one-parameter recursions use `(k, 0)`.
    pub fn grid(self, n_max: usize) -> Vec<(usize, usize)> {
        let ks = |first: usize, top: usize| -> Vec<(usize, usize)> {
            (first..).take_while(|k| 2 * k + top <= n_max).map(|k| (k, 0)).collect()
        };
        match self {
            Recursion::FixedD => (3..n_max)
                .flat_map(|d| (d + 1..).take_while(move |n| n + 2 <= n_max).map(move |n| (n, d)))
                .collect(),
            Recursion::FixedN => (6..=n_max)
                .flat_map(|n| (1..=(n / 2).saturating_sub(2)).map(move |d| (n, d)))
                .collect(),
            Recursion::EvenDiagonal => ks(1, 4),
            Recursion::OddDiagonal => ks(1, 5),
            Recursion::HalfOdd => ks(1, 3),
            Recursion::HalfEven => ks(0, 4),
        }
    }

    /// Build the instance; the identity is re-checked exactly.
    pub fn instance(self, a: usize, b: usize) -> Result<LiuWangInstance, RootlineError> {
        let g = |n: usize, d: usize| -> Result<UniPoly, RootlineError> { Ok(closed_form(n, d)?.poly) };
        let bad = |why: &str| Err(RootlineError::Malformed(format!("{}: {why}", self.name())));
        let (ai, bi) = (a as i64, b as i64);
        let lin = |x: i64, y: i64| UniPoly::linear(rat(x), rat(y));
        let (label, big_f, f, phi, h, psi) = match self {
            Recursion::FixedD => {
                let (n, d) = (ai, bi);
                if d < 1 || n < d + 1 {
                    return bad("needs d >= 1 and n >= d + 1");
                }
                let s = frac(1, n - d + 1);
                (
                    format!("fixed-d n={a} d={b}"),
                    g(a + 2, b)?,
                    g(a + 1, b)?,
                    lin(2 * d - n - 1, n).scale(&s),
                    g(a, b)?,
                    UniPoly::monomial(frac(n - d, n - d + 1), 1),
                )
            }
            Recursion::FixedN => {
                let (n, d) = (ai, bi);
                if d < 1 || d > n / 2 - 2 {
                    return bad("needs 1 <= d <= n/2 - 2");
                }
                let den = (d + 1) * (n - 2 - d) * (n - 1 - 2 * d);
                let c = n - 3 - 2 * d;
                let phi = lin(c * (n - 1 - 2 * d), (n - d - 2).pow(2) + d * d + n - 2)
                    .scale(&frac(n - 2 - 2 * d, den));
                (
                    format!("fixed-n n={a} d={b}"),
                    g(a, b + 2)?,
                    g(a, b + 1)?,
                    phi,
                    g(a, b)?,
                    UniPoly::constant(frac(-d * (n - 1 - d) * c, den)),
                )
            }
            Recursion::EvenDiagonal => {
                let k = ai;
                if k < 1 {
                    return bad("needs k >= 1");
                }
                (
                    format!("even-diagonal k={a}"),
                    g(2 * a + 4, a + 2)?,
                    g(2 * a + 2, a + 1)?,
                    lin(2 * k + 1, 2 * (2 * k + 1)).scale(&frac(1, k + 1)),
                    g(2 * a, a)?,
                    UniPoly::monomial(frac(-k, k + 1), 2),
                )
            }
            Recursion::OddDiagonal => {
                let k = ai;
                if k < 1 {
                    return bad("needs k >= 1");
                }
                let m = (k + 1) * (k + 1);
                let den = (k + 2) * (2 * k + 1);
                (
                    format!("odd-diagonal k={a}"),
                    g(2 * a + 5, a + 2)?,
                    g(2 * a + 3, a + 1)?,
                    lin(4 * m, 2 * (4 * m - 1)).scale(&frac(1, den)),
                    g(2 * a + 1, a)?,
                    UniPoly::monomial(frac(-(2 * k + 3) * k, den), 2),
                )
            }
            Recursion::HalfOdd => {
                let k = ai;
                if k < 1 {
                    return bad("needs k >= 1");
                }
                (
                    format!("half-odd k={a}"),
                    g(2 * a + 3, a + 1)?,
                    g(2 * a + 2, a + 1)?,
                    UniPoly::constant(frac(2 * k + 1, k + 1)),
                    g(2 * a + 1, a)?,
                    UniPoly::monomial(frac(k, k + 1), 1),
                )
            }
            Recursion::HalfEven => (
                format!("half-even k={a}"),
                g(2 * a + 4, a + 2)?,
                g(2 * a + 3, a + 1)?,
                UniPoly::constant(rat(2)),
                g(2 * a + 2, a + 1)?,
                UniPoly::t(),
            ),
        };
        LiuWangInstance::new(label, big_f, f, phi, vec![h], vec![psi])
    }

    /// Every instance with output index `n <= n_max`.
    pub fn instances(self, n_max: usize) -> Result<Vec<LiuWangInstance>, RootlineError> {
        self.grid(n_max).into_iter().map(|(a, b)| self.instance(a, b)).collect()
    }
}

impl fmt::Display for Recursion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Recursion {
    type Err = RootlineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Recursion::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| RootlineError::Malformed(format!("unknown recursion {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_d_at_5_3_is_satisfied() {
        let inst = Recursion::FixedD.instance(5, 3).unwrap();
        let out = liu_wang_check(&inst).unwrap();
        assert!(out.satisfied, "{:?}", out.violations);
    }

    #[test]
    fn fixed_n_constant_psi_is_negative() {
        let inst = Recursion::FixedN.instance(10, 2).unwrap();
        assert_eq!(inst.psi[0], UniPoly::constant(frac(-7, 15)));
        assert!(liu_wang_check(&inst).unwrap().satisfied);
    }

    #[test]
    fn negated_psi_gives_root_witness() {
        for inst in [Recursion::FixedD.instance(5, 3).unwrap(), Recursion::FixedN.instance(10, 2).unwrap()] {
            let bad = inst.with_negated_psi(0).unwrap();
            let out = liu_wang_check(&bad).unwrap();
            assert!(!out.satisfied);
            let v = out
                .violations
                .iter()
                .find(|v| v.condition == Condition::PsiAtRoots)
                .expect("psi violation");
            assert!(v.witness.is_some());
        }
    }

    #[test]
    fn malformed_instances_rejected() {
        let inst = Recursion::HalfEven.instance(1, 0).unwrap();
        let wrong = LiuWangInstance::new("x", inst.f.clone(), inst.f.clone(), inst.phi.clone(), inst.h.clone(), inst.psi.clone());
        assert!(matches!(wrong, Err(RootlineError::Malformed(_))));
        assert!(inst.with_negated_psi(3).is_err());
        assert!(Recursion::FixedN.instance(7, 2).is_err());
    }

    #[test]
    fn every_recursion_small_grid() {
        for r in Recursion::ALL {
            let insts = r.instances(14).unwrap();
            assert!(!insts.is_empty(), "{r}");
            for inst in insts {
                let out = liu_wang_check(&inst).unwrap();
                assert!(out.satisfied, "{}: {:?}", inst.label, out.violations);
            }
        }
    }
}
