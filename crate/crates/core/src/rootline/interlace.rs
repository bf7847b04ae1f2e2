//! Real-rootedness and the interlacing relation `g ⪯ f`.

use serde::Serialize;

use super::RootlineError;
use crate::polycore::{IsolatingInterval, RootOracle, UniPoly};
use crate::polycore::{dyadic_at_most, Sign};

/// Width to which witness and shared-root intervals are refined.
pub const REPORT_WIDTH: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Strict,
    Weak,
    Fails,
}

impl Relation {
    /// `strict` and `weak` both count as interlacing.
    pub fn holds(self) -> bool {
        self != Relation::Fails
    }
}

/// Two roots appearing in the wrong order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Root of `g` (the interlacing polynomial) or `f`, whichever comes first
    /// in the required chain.
    pub first: IsolatingInterval,
    pub first_of: &'static str,
    pub second: IsolatingInterval,
    pub second_of: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterlacingVerdict {
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub shared_roots: Vec<IsolatingInterval>,
}

impl InterlacingVerdict {
    fn convention() -> Self {
        InterlacingVerdict {
            relation: Relation::Weak,
            reason: None,
            witness: None,
            shared_roots: Vec::new(),
        }
    }

    fn degree_gap(dg: usize, df: usize) -> Self {
        InterlacingVerdict {
            relation: Relation::Fails,
            reason: Some(format!("degree gap: deg g = {dg}, deg f = {df}")),
            witness: None,
            shared_roots: Vec::new(),
        }
    }
}

/// Whether every complex zero of `p` is real.
pub fn is_real_rooted(p: &UniPoly) -> Result<bool, RootlineError> {
    if p.is_zero() {
        return Err(RootlineError::ZeroPolynomial);
    }
    let oracle = RootOracle::new(p)?;
    let deg = oracle.squarefree_part().degree().unwrap_or(0);
    Ok(oracle.distinct_root_count() == deg)
}

/// Yun parts of `p`; part `i` holds the roots of multiplicity `i + 1`.
struct Multiplicities {
    parts: Vec<RootOracle>,
}

impl Multiplicities {
    fn new(p: &UniPoly) -> Result<Self, RootlineError> {
        let parts = p
            .squarefree_decomposition()?
            .into_iter()
            .map(RootOracle::from_squarefree)
            .collect::<Result<_, _>>()?;
        Ok(Multiplicities { parts })
    }

    /// Multiplicity of the root of the merged polynomial isolated by `iv`
    /// (zero when it is not a root of `p`).
    fn at(&self, iv: &IsolatingInterval) -> usize {
        self.parts
            .iter()
            .position(|o| o.has_root_in(iv))
            .map_or(0, |i| i + 1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    G,
    F,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::G => "g",
            Side::F => "f",
        }
    }
}

/// Whether `g ⪯ f`. Common roots are pinned to equal positions, which
/// makes the relation weak at best.
pub fn interlaces(g: &UniPoly, f: &UniPoly) -> Result<InterlacingVerdict, RootlineError> {
    if g.is_zero() || f.is_zero() {
        return Ok(InterlacingVerdict::convention());
    }
    for (p, which) in [(g, "g"), (f, "f")] {
        if !is_real_rooted(p)? {
            return Err(RootlineError::NotRealRooted(which));
        }
    }
    let (dg, df) = (g.degree().unwrap_or(0), f.degree().unwrap_or(0));
    if dg == 0 && df <= 1 {
        return Ok(InterlacingVerdict::convention());
    }
    if df != dg && df != dg + 1 {
        return Ok(InterlacingVerdict::degree_gap(dg, df));
    }

    let (_, gs) = crate::polycore::gcd_squarefree(g)?;
    let (_, fs) = crate::polycore::gcd_squarefree(f)?;
    let common = gs.gcd(&fs);
    let merged = (&gs * &fs).div_exact(&common)?;
    let oracle = RootOracle::new(&merged)?;
    let roots = oracle.isolate(false);
    let (mg, mf) = (Multiplicities::new(g)?, Multiplicities::new(f)?);

    // Root lists by position in the merged order, repeated per multiplicity.
    let mut gr = Vec::new();
    let mut fr = Vec::new();
    let mut shared = Vec::new();
    for (rank, iv) in roots.iter().enumerate() {
        let (kg, kf) = (mg.at(iv), mf.at(iv));
        gr.extend(std::iter::repeat_n(rank, kg));
        fr.extend(std::iter::repeat_n(rank, kf));
        if kg > 0 && kf > 0 {
            shared.push(rank);
        }
    }

    // Required ascending chain: g0 <= f0 <= g1 <= ... (equal degrees) or
    // f0 <= g0 <= f1 <= ... (f one degree higher).
    let mut chain = Vec::with_capacity(gr.len() + fr.len());
    let (first, second, a, b) = if df == dg {
        (Side::G, Side::F, &gr, &fr)
    } else {
        (Side::F, Side::G, &fr, &gr)
    };
    for i in 0..a.len().max(b.len()) {
        if let Some(&r) = a.get(i) {
            chain.push((first, r));
        }
        if let Some(&r) = b.get(i) {
            chain.push((second, r));
        }
    }

    let width = dyadic_at_most(REPORT_WIDTH);
    let report = |rank: usize| oracle.refine(&roots[rank], &width);
    let mut strict = shared.is_empty();
    for w in chain.windows(2) {
        let ((s0, r0), (s1, r1)) = (w[0], w[1]);
        if r0 > r1 {
            return Ok(InterlacingVerdict {
                relation: Relation::Fails,
                reason: Some("roots out of order".into()),
                witness: Some(Witness {
                    first: report(r0)?,
                    first_of: s0.name(),
                    second: report(r1)?,
                    second_of: s1.name(),
                }),
                shared_roots: shared.iter().map(|&r| report(r)).collect::<Result<_, _>>()?,
            });
        }
        if r0 == r1 {
            strict = false;
        }
    }
    Ok(InterlacingVerdict {
        relation: if strict { Relation::Strict } else { Relation::Weak },
        reason: None,
        witness: None,
        shared_roots: shared.iter().map(|&r| report(r)).collect::<Result<_, _>>()?,
    })
}

/// Strictness of the pattern after removing one common factor `t`, i.e. the
/// ordering of the roots away from the shared root 0. Convention cases count
/// as strict.
pub fn nonzero_roots_strict(g: &UniPoly, f: &UniPoly) -> Result<bool, RootlineError> {
    let vanishes = |p: &UniPoly| !p.is_zero() && Sign::of(&p.coeff(0)) == Sign::Zero;
    let (g, f) = if vanishes(g) && vanishes(f) {
        let t = UniPoly::t();
        (g.div_exact(&t)?, f.div_exact(&t)?)
    } else {
        (g.clone(), f.clone())
    };
    let v = interlaces(&g, &f)?;
    Ok(match v.relation {
        Relation::Strict => true,
        Relation::Weak => is_convention(&g, &f),
        Relation::Fails => false,
    })
}

fn is_convention(g: &UniPoly, f: &UniPoly) -> bool {
    g.is_zero() || f.is_zero() || (g.is_constant() && f.degree().unwrap_or(0) <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{frac, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn real_rootedness() {
        assert!(is_real_rooted(&p(&[0, 10, 12, 3])).unwrap());
        assert!(!is_real_rooted(&p(&[1, 0, 1])).unwrap());
        assert!(is_real_rooted(&p(&[1, 2, 1])).unwrap());
        assert!(matches!(is_real_rooted(&UniPoly::zero()), Err(RootlineError::ZeroPolynomial)));
    }

    #[test]
    fn shared_root_is_weak() {
        let v = interlaces(&p(&[0, 1]), &p(&[0, 2, 1])).unwrap();
        assert_eq!(v.relation, Relation::Weak);
        assert_eq!(v.shared_roots.len(), 1);
        assert_eq!(v.shared_roots[0], IsolatingInterval::exact(rat(0)));
        let v = interlaces(&p(&[0, 2, 1]), &p(&[0, 3, 2])).unwrap();
        assert_eq!(v.relation, Relation::Weak);
    }

    #[test]
    fn conventions_and_gaps() {
        assert_eq!(interlaces(&p(&[5]), &p(&[7, 3])).unwrap().relation, Relation::Weak);
        assert_eq!(interlaces(&UniPoly::zero(), &p(&[0, 2, 1])).unwrap().relation, Relation::Weak);
        let v = interlaces(&p(&[0, 1]), &p(&[0, 0, 2, 1])).unwrap();
        assert_eq!(v.relation, Relation::Fails);
        assert!(v.reason.unwrap().starts_with("degree gap"));
        assert!(matches!(interlaces(&p(&[1, 0, 1]), &p(&[0, 1])), Err(RootlineError::NotRealRooted("g"))));
    }

    #[test]
    fn strict_and_failing() {
        let g = &p(&[1, 1]) * &p(&[3, 1]);
        let f = &p(&[2, 1]) * &p(&[0, 1]);
        assert_eq!(interlaces(&g, &f).unwrap().relation, Relation::Strict);
        let v = interlaces(&f, &g).unwrap();
        assert_eq!(v.relation, Relation::Fails);
        let w = v.witness.unwrap();
        assert!(w.second.strictly_below(&w.first) || w.second.hi <= w.first.lo);
    }

    #[test]
    fn self_interlacing_is_weak() {
        let f = p(&[0, 10, 12, 3]);
        let v = interlaces(&f, &f).unwrap();
        assert_eq!(v.relation, Relation::Weak);
        assert_eq!(v.shared_roots.len(), 3);
        for iv in &v.shared_roots {
            assert!(iv.is_exact() || iv.width() <= frac(1, 1_000_000));
        }
    }

    #[test]
    fn multiplicities_respected() {
        // (t+1)^2 vs (t+1)(t+2): -2 <= -1 <= -1 <= -1 in chain g0 f0 g1 f1
        let g = &p(&[1, 1]) * &p(&[2, 1]);
        let f = &p(&[1, 1]) * &p(&[1, 1]);
        assert_eq!(interlaces(&g, &f).unwrap().relation, Relation::Weak);
        // t^3 against (t+1)^2 t fails: -1 must sit between roots of g.
        let g = p(&[0, 0, 0, 1]);
        let f = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[0, 1]);
        assert_eq!(interlaces(&g, &f).unwrap().relation, Relation::Fails);
    }

    #[test]
    fn nonzero_pattern() {
        assert!(nonzero_roots_strict(&p(&[0, 1]), &p(&[0, 2, 1])).unwrap());
        assert!(nonzero_roots_strict(&p(&[0, 2, 1]), &p(&[0, 3, 2])).unwrap());
        assert!(!nonzero_roots_strict(&p(&[0, 2, 1]), &p(&[0, 2, 1])).unwrap());
    }
}
