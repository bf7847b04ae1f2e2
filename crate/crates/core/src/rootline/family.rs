//! The five families of g-polynomials that form generalized Sturm sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::interlace::{interlaces, nonzero_roots_strict, Relation, Witness};
use super::RootlineError;
use crate::gpoly::closed_form;
use crate::polycore::{IsolatingInterval, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `g(n, d)` for `n >= d + 1`, fixed `d`.
    FixedD { d: usize },
    /// `g(n, d)` for `1 <= d <= n/2`, fixed `n`.
    FixedN { n: usize },
    /// `g(2d, d)`, `d >= 1`.
    Diag2d,
    /// `g(2d + 1, d)`, `d >= 1`.
    Diag2dPlus1,
    /// `g(n, floor(n/2))`, `n >= 2`.
    DiagHalf,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::FixedD { .. } => "fixed-d",
            Family::FixedN { .. } => "fixed-n",
            Family::Diag2d => "diag-2d",
            Family::Diag2dPlus1 => "diag-2d+1",
            Family::DiagHalf => "diag-half",
        }
    }

    fn params(self) -> BTreeMap<&'static str, usize> {
        match self {
            Family::FixedD { d } => BTreeMap::from([("d", d)]),
            Family::FixedN { n } => BTreeMap::from([("n", n)]),
            _ => BTreeMap::new(),
        }
    }

    /// Members `(n, d)` in sequence order. `limit` bounds `n`, except for
    /// `fixed-n` where it bounds `d`.
    pub fn members(self, limit: usize) -> Vec<(usize, usize)> {
        match self {
            Family::FixedD { d } => (d + 1..=limit).map(|n| (n, d)).collect(),
            Family::FixedN { n } => (1..=(n / 2).min(limit)).map(|d| (n, d)).collect(),
            Family::Diag2d => (1..).map(|d| (2 * d, d)).take_while(|&(n, _)| n <= limit).collect(),
            Family::Diag2dPlus1 => (1..).map(|d| (2 * d + 1, d)).take_while(|&(n, _)| n <= limit).collect(),
            Family::DiagHalf => (2..=limit).map(|n| (n, n / 2)).collect(),
        }
    }

    /// `fixed-d` needs `d >= 1`; `fixed-n` needs `n >= 2`.
    pub fn check(self) -> Result<(), RootlineError> {
        match self {
            Family::FixedD { d: 0 } => Err(RootlineError::BadFamily("fixed-d needs d >= 1".into())),
            Family::FixedN { n } if n < 2 => Err(RootlineError::BadFamily("fixed-n needs n >= 2".into())),
            _ => Ok(()),
        }
    }

    /// Parse a family name together with its optional parameter.
    pub fn parse(name: &str, param: Option<usize>) -> Result<Family, RootlineError> {
        let need = |what: &str| {
            param.ok_or_else(|| RootlineError::BadFamily(format!("{name} requires --{what}")))
        };
        let fam = match name {
            "fixed-d" => Family::FixedD { d: need("d")? },
            "fixed-n" => Family::FixedN { n: need("n")? },
            "diag-2d" => Family::Diag2d,
            "diag-2d+1" => Family::Diag2dPlus1,
            "diag-half" => Family::DiagHalf,
            other => return Err(RootlineError::BadFamily(format!("unknown family {other:?}"))),
        };
        fam.check()?;
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = RootlineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((name, p)) => {
                let p = p
                    .parse()
                    .map_err(|_| RootlineError::BadFamily(format!("bad parameter {p:?}")))?;
                Family::parse(name, Some(p))
            }
            None => Family::parse(s, None),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Member {
    pub n: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub index: usize,
    pub lower: Member,
    pub upper: Member,
    pub verdict: Relation,
    pub shared_roots: Vec<IsolatingInterval>,
    pub nonzero_roots_strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: &'static str,
    pub params: BTreeMap<&'static str, usize>,
    pub limit: usize,
    pub pairs: Vec<PairReport>,
    pub pass: bool,
}

fn member_poly((n, d): (usize, usize)) -> Result<UniPoly, RootlineError> {
    Ok(closed_form(n, d)?.poly)
}

/// Check `member_i ⪯ member_{i+1}` for every consecutive pair.
pub fn verify_sturm_family(family: Family, limit: usize) -> Result<FamilyReport, RootlineError> {
    family.check()?;
    let members = family.members(limit);
    let polys: Vec<UniPoly> = members.iter().map(|&m| member_poly(m)).collect::<Result<_, _>>()?;
    let pairs: Vec<PairReport> = (0..members.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let (g, f) = (&polys[i], &polys[i + 1]);
            let v = interlaces(g, f)?;
            let member = |(n, d): (usize, usize)| Member { n, d };
            Ok(PairReport {
                index: i,
                lower: member(members[i]),
                upper: member(members[i + 1]),
                verdict: v.relation,
                shared_roots: v.shared_roots,
                nonzero_roots_strict: nonzero_roots_strict(g, f)?,
                witness: v.witness,
            })
        })
        .collect::<Result<_, RootlineError>>()?;
    let pass = pairs.iter().all(|p| p.verdict.holds());
    Ok(FamilyReport {
        family: family.name(),
        params: family.params(),
        limit,
        pairs,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_and_parsing() {
        assert_eq!(Family::FixedN { n: 9 }.members(100), vec![(9, 1), (9, 2), (9, 3), (9, 4)]);
        assert_eq!(Family::Diag2dPlus1.members(7), vec![(3, 1), (5, 2), (7, 3)]);
        assert_eq!(Family::DiagHalf.members(4), vec![(2, 1), (3, 1), (4, 2)]);
        assert_eq!("fixed-d:3".parse::<Family>().unwrap(), Family::FixedD { d: 3 });
        assert!("fixed-d".parse::<Family>().is_err());
        assert!("diag".parse::<Family>().is_err());
    }

    #[test]
    fn small_families_interlace() {
        for fam in [
            Family::FixedD { d: 3 },
            Family::FixedN { n: 9 },
            Family::Diag2d,
            Family::Diag2dPlus1,
            Family::DiagHalf,
        ] {
            let r = verify_sturm_family(fam, 16).unwrap();
            assert!(r.pass, "{fam}: {:?}", r.pairs.iter().find(|p| !p.verdict.holds()));
            assert!(!r.pairs.is_empty());
            let idx: Vec<_> = r.pairs.iter().map(|p| p.index).collect();
            assert!(idx.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn fixed_d_pairs_share_zero() {
        let r = verify_sturm_family(Family::FixedD { d: 3 }, 10).unwrap();
        for p in &r.pairs {
            assert_eq!(p.verdict, Relation::Weak);
            assert!(p.shared_roots.iter().any(|iv| iv.is_exact() && iv.lo == crate::polycore::rat(0)));
        }
    }
}
