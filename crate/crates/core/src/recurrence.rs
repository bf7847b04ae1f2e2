//! Registry of recurrence identities for `g(n, d)` and an exact verifier.
//!
//! Each identity is stored in cleared form
//!
//! ```text
//! L(t) * g(n, d) = sum_j  c_j(t) * g^(k_j)(n_j, d_j)
//! ```
//!
//! where every t-dependent denominator has been moved to the left factor
//! `L`. Scalar denominators stay as rational coefficients; a vanishing one is
//! logged as a skipped grid point rather than a failure.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gpoly::GTable;
use crate::polycore::{frac, rat, ExactRational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("unknown recurrence id {0:?}")]
    UnknownId(String),
    #[error("no grid point of recurrence {id} has n <= {n_max}")]
    NothingToCheck { id: String, n_max: usize },
}

/// One `c(t) * g^(deriv)(n, d)` summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub factor: UniPoly,
    pub n: i64,
    pub d: i64,
    pub deriv: usize,
}

impl Term {
    fn new(factor: UniPoly, n: i64, d: i64) -> Self {
        Term { factor, n, d, deriv: 0 }
    }

    fn derived(mut self, k: usize) -> Self {
        self.deriv = k;
        self
    }
}

/// A recurrence instantiated at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    /// Multiplier of `g(n, d)` on the left.
    pub lhs_factor: UniPoly,
    pub rhs: Vec<Term>,
}

/// Well-founded order in which the right-hand side refers only to earlier
/// members. `None` marks identities that also involve derivatives of the
/// left-hand polynomial itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WellFoundedOrder {
    ByN,
    ByD,
    ByIndexSum,
    ByDiagonal,
    None,
}

impl WellFoundedOrder {
    /// Whether `(n2, d2)` precedes `(n1, d1)`.
    pub fn precedes(self, (n2, d2): (i64, i64), (n1, d1): (i64, i64)) -> bool {
        match self {
            WellFoundedOrder::ByN => n2 < n1 && d2 == d1,
            WellFoundedOrder::ByD => d2 < d1,
            WellFoundedOrder::ByIndexSum => n2 + d2 < n1 + d1,
            WellFoundedOrder::ByDiagonal => n2 < n1 && d2 < d1,
            WellFoundedOrder::None => true,
        }
    }
}

type Domain = fn(i64, i64) -> bool;
type Builder = fn(i64, i64) -> Result<Identity, String>;

/// A registered identity with its printed domain.
#[derive(Clone, Debug)]
pub struct RecurrenceSpec {
    pub id: &'static str,
    /// Human-readable statement of the identity.
    pub formula: &'static str,
    pub domain: &'static str,
    pub order: WellFoundedOrder,
    in_domain: Domain,
    build: Builder,
    negated_term: Option<usize>,
}

impl RecurrenceSpec {
    pub fn in_domain(&self, n: usize, d: usize) -> bool {
        (self.in_domain)(n as i64, d as i64)
    }

    /// The identity at `(n, d)`, or the reason a scalar denominator vanishes.
    pub fn instantiate(&self, n: usize, d: usize) -> Result<Identity, String> {
        let mut id = (self.build)(n as i64, d as i64)?;
        if let Some(j) = self.negated_term {
            if let Some(term) = id.rhs.get_mut(j) {
                term.factor = -&term.factor;
            }
        }
        Ok(id)
    }

    /// Same identity with the sign of right-hand summand `j` flipped.
    pub fn mutated(&self, j: usize) -> RecurrenceSpec {
        RecurrenceSpec {
            negated_term: Some(j),
            ..self.clone()
        }
    }

    pub fn term_count(&self) -> usize {
        // every registered identity has two right-hand summands
        2
    }
}

/// Scalar `num / den`, or a skip reason naming the vanishing factor.
fn ratio(num: i64, den: i64, what: &str) -> Result<ExactRational, String> {
    if den == 0 {
        Err(format!("{what} = 0"))
    } else {
        Ok(frac(num, den))
    }
}

fn lin(a: i64, b: i64) -> UniPoly {
    UniPoly::linear(rat(a), rat(b))
}

fn konst(c: ExactRational) -> UniPoly {
    UniPoly::constant(c)
}

fn t_pow(c: ExactRational, k: usize) -> UniPoly {
    UniPoly::monomial(c, k)
}

/// `t (t + 1)^k`.
fn t_t1(k: u32) -> UniPoly {
    let base = UniPoly::from_ints(&[1, 1]);
    (0..k).fold(UniPoly::t(), |acc, _| &acc * &base)
}

fn c_d(d: i64, n: i64) -> i64 {
    n + 1 - 2 * d
}

fn build_2_1(n: i64, d: i64) -> Result<Identity, String> {
    let den = n - d - 1;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(lin(2 * d - n + 1, n - 2).scale(&ratio(1, den, "n-d-1")?), n - 1, d),
            Term::new(t_pow(ratio(n - d - 2, den, "n-d-1")?, 1), n - 2, d),
        ],
    })
}

fn build_2_2(n: i64, d: i64) -> Result<Identity, String> {
    let s = ratio(1, n - d - 1, "n-d-1")?;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(lin(d, n - 1).scale(&s), n - 1, d),
            Term::new(t_t1(1).scale(&-s), n - 1, d).derived(1),
        ],
    })
}

fn build_2_3(n: i64, d: i64) -> Result<Identity, String> {
    let den = (d - 1) * (n - d) * c_d(d, n + 2);
    let what = "(d-1)(n-d)c_d(n+2)";
    let k = (n - d).pow(2) + (d - 2).pow(2) + n - 2;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(
                lin(c_d(d, n) * c_d(d, n + 2), k).scale(&ratio(c_d(d, n + 1), den, what)?),
                n,
                d - 1,
            ),
            Term::new(konst(ratio(-(d - 2) * (n + 1 - d) * c_d(d, n), den, what)?), n, d - 2),
        ],
    })
}

fn build_2_4(n: i64, d: i64) -> Result<Identity, String> {
    let s = ratio(1, (d - 1) * (n - d), "(d-1)(n-d)")?;
    let c = n + 1 - 2 * d;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(lin(c * (n + 1 - d), (n - d).pow(2) + n - 2 * d + 1).scale(&s), n, d - 1),
            Term::new(t_t1(1).scale(&(-s * rat(c))), n, d - 1).derived(1),
        ],
    })
}

fn build_2_5(n: i64, d: i64) -> Result<Identity, String> {
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(konst(ratio(n - d, d - 1, "d-1")?), n, d - 1),
            Term::new(t_pow(ratio(n + 1 - 2 * d, d - 1, "d-1")?, 1), n - 1, d - 1),
        ],
    })
}

fn build_2_6(n: i64, d: i64) -> Result<Identity, String> {
    Ok(Identity {
        lhs_factor: lin((n - 2 * d) * (n + 1 - 2 * d), (d - 1).pow(2)),
        rhs: vec![
            Term::new(konst(rat((d - 1) * (n - d))), n, d - 1),
            Term::new(t_pow(rat((n + 1 - 2 * d) * (n - 1 - d)), 1), n - 1, d),
        ],
    })
}

// The diagonal identities are stated for g(2k+2, k+1), g(2k+3, k+1), ...;
// the builders receive the left-hand (n, d) and recover k.

fn build_2_7(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d - 1;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(lin(2 * k - 1, 2 * (2 * k - 1)).scale(&ratio(1, k, "d")?), 2 * k, k),
            Term::new(t_pow(ratio(-(k - 1), k, "d")?, 2), 2 * k - 2, k - 1),
        ],
    })
}

fn build_2_8(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d - 1;
    let den = (k + 1) * (2 * k - 1);
    let what = "(d+1)(2d-1)";
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(lin(4 * k * k, 2 * (4 * k * k - 1)).scale(&ratio(1, den, what)?), 2 * k + 1, k),
            Term::new(t_pow(ratio(-(2 * k + 1) * (k - 1), den, what)?, 2), 2 * k - 1, k - 1),
        ],
    })
}

fn build_2_9(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(konst(ratio(2 * k - 1, k, "d")?), 2 * k, k),
            Term::new(t_pow(ratio(k - 1, k, "d")?, 1), 2 * k - 1, k - 1),
        ],
    })
}

fn build_2_10(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d - 1;
    Ok(Identity {
        lhs_factor: UniPoly::one(),
        rhs: vec![
            Term::new(konst(rat(2)), 2 * k + 1, k),
            Term::new(UniPoly::t(), 2 * k, k),
        ],
    })
}

fn build_2_11(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d;
    Ok(Identity {
        lhs_factor: lin(k, 1),
        rhs: vec![
            Term::new(t_pow(rat(k - 1), 1), 2 * k - 1, k - 1),
            Term::new(t_t1(1), 2 * k, k).derived(1),
        ],
    })
}

fn build_2_12(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d;
    Ok(Identity {
        lhs_factor: lin(k, k + 1).scale(&rat(k - 1)),
        rhs: vec![
            Term::new(lin(2 * k - 1, 2 * k).scale(&rat(k - 1)), 2 * k - 1, k - 1),
            Term::new(t_t1(2), 2 * k, k).derived(2),
        ],
    })
}

fn build_2_13(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d;
    Ok(Identity {
        lhs_factor: lin(k + 1, 1),
        rhs: vec![
            Term::new(t_pow(rat(k), 1), 2 * k, k),
            Term::new(t_t1(1), 2 * k + 1, k).derived(1),
        ],
    })
}

fn build_2_14(_n: i64, d: i64) -> Result<Identity, String> {
    let k = d;
    Ok(Identity {
        lhs_factor: lin(k + 1, k + 2).scale(&rat(k)),
        rhs: vec![
            Term::new(lin(2 * k, 2 * k + 1).scale(&rat(k)), 2 * k, k),
            Term::new(t_t1(2), 2 * k + 1, k).derived(2),
        ],
    })
}

fn spec(
    id: &'static str,
    formula: &'static str,
    domain: &'static str,
    order: WellFoundedOrder,
    in_domain: Domain,
    build: Builder,
) -> RecurrenceSpec {
    RecurrenceSpec {
        id,
        formula,
        domain,
        order,
        in_domain,
        build,
        negated_term: None,
    }
}

/// All registered identities, in id order.
pub fn registry() -> Vec<RecurrenceSpec> {
    use WellFoundedOrder::*;
    vec![
        spec(
            "2.1",
            "g(n,d) = [((2d-n+1)t+n-2) g(n-1,d) + t(n-d-2) g(n-2,d)] / (n-d-1)",
            "d >= 1, n >= d + 2",
            ByN,
            |n, d| d >= 1 && n >= d + 2,
            build_2_1,
        ),
        spec(
            "2.2",
            "g(n,d) = [(dt+n-1) g(n-1,d) - t(t+1) g'(n-1,d)] / (n-d-1)",
            "d >= 1, n >= d + 2",
            ByN,
            |n, d| d >= 1 && n >= d + 2,
            build_2_2,
        ),
        spec(
            "2.3",
            "g(n,d) = c_d(n+1)(c_d(n)c_d(n+2)t+(n-d)^2+(d-2)^2+n-2) / ((d-1)(n-d)c_d(n+2)) g(n,d-1) \
             - (d-2)(n+1-d)c_d(n) / ((d-1)(n-d)c_d(n+2)) g(n,d-2),  c_d(n) = n+1-2d",
            "n >= 3, 2 <= d <= floor(n/2) + 1",
            ByD,
            |n, d| n >= 3 && d >= 2 && d <= n / 2 + 1,
            build_2_3,
        ),
        spec(
            "2.4",
            "g(n,d) = [((n+1-2d)(n+1-d)t+(n-d)^2+n-2d+1) g(n,d-1) - t(t+1)(n+1-2d) g'(n,d-1)] / ((d-1)(n-d))",
            "n >= 3, 2 <= d <= n - 1",
            ByD,
            |n, d| n >= 3 && d >= 2 && d < n,
            build_2_4,
        ),
        spec(
            "2.5",
            "g(n,d) = (n-d)/(d-1) g(n,d-1) + t(n+1-2d)/(d-1) g(n-1,d-1)",
            "n >= 3, 2 <= d <= n - 1",
            ByD,
            |n, d| n >= 3 && d >= 2 && d < n,
            build_2_5,
        ),
        spec(
            "2.6",
            "((n-2d)(n+1-2d)t+(d-1)^2) g(n,d) = (d-1)(n-d) g(n,d-1) + (n+1-2d)(n-1-d)t g(n-1,d)",
            "n >= 3, 2 <= d <= n - 1",
            ByIndexSum,
            |n, d| n >= 3 && d >= 2 && d < n,
            build_2_6,
        ),
        spec(
            "2.7",
            "g(2k+2,k+1) = (t+2)(2k-1)/k g(2k,k) - (k-1)t^2/k g(2k-2,k-1)",
            "k >= 1 (n = 2k+2, d = k+1)",
            ByDiagonal,
            |n, d| d >= 2 && n == 2 * d,
            build_2_7,
        ),
        spec(
            "2.8",
            "g(2k+3,k+1) = 2(2k^2t+4k^2-1)/((k+1)(2k-1)) g(2k+1,k) - (2k+1)(k-1)t^2/((k+1)(2k-1)) g(2k-1,k-1)",
            "k >= 1 (n = 2k+3, d = k+1)",
            ByDiagonal,
            |n, d| d >= 2 && n == 2 * d + 1,
            build_2_8,
        ),
        spec(
            "2.9",
            "g(2k+1,k) = (2k-1)/k g(2k,k) + (k-1)t/k g(2k-1,k-1)",
            "k >= 1 (n = 2k+1, d = k)",
            ByIndexSum,
            |n, d| d >= 1 && n == 2 * d + 1,
            build_2_9,
        ),
        spec(
            "2.10",
            "g(2k+2,k+1) = 2 g(2k+1,k) + t g(2k,k)",
            "k >= 1 (n = 2k+2, d = k+1)",
            ByIndexSum,
            |n, d| d >= 2 && n == 2 * d,
            build_2_10,
        ),
        spec(
            "2.11",
            "(kt+1) g(2k,k) = (k-1)t g(2k-1,k-1) + t(t+1) g'(2k,k)",
            "k >= 2 (n = 2k, d = k)",
            None,
            |n, d| d >= 2 && n == 2 * d,
            build_2_11,
        ),
        spec(
            "2.12",
            "(k-1)(kt+k+1) g(2k,k) = (k-1)((2k-1)t+2k) g(2k-1,k-1) + t(t+1)^2 g''(2k,k)",
            "k >= 2 (n = 2k, d = k)",
            None,
            |n, d| d >= 2 && n == 2 * d,
            build_2_12,
        ),
        spec(
            "2.13",
            "((k+1)t+1) g(2k+1,k) = kt g(2k,k) + t(t+1) g'(2k+1,k)",
            "k >= 1 (n = 2k+1, d = k)",
            None,
            |n, d| d >= 1 && n == 2 * d + 1,
            build_2_13,
        ),
        spec(
            "2.14",
            "k((k+1)t+k+2) g(2k+1,k) = k(2kt+2k+1) g(2k,k) + t(t+1)^2 g''(2k+1,k)",
            "k >= 1 (n = 2k+1, d = k)",
            None,
            |n, d| d >= 1 && n == 2 * d + 1,
            build_2_14,
        ),
    ]
}

pub fn lookup(id: &str) -> Result<RecurrenceSpec, RecurrenceError> {
    registry()
        .into_iter()
        .find(|s| s.id == id.trim())
        .ok_or_else(|| RecurrenceError::UnknownId(id.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedPoint {
    pub n: usize,
    pub d: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailedPoint {
    pub n: usize,
    pub d: usize,
    pub lhs: UniPoly,
    pub rhs: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub domain: String,
    pub n_max: usize,
    pub checked: usize,
    pub skipped: Vec<SkippedPoint>,
    pub failures: Vec<FailedPoint>,
    pub pass: bool,
}

enum PointOutcome {
    Ok,
    Skipped(SkippedPoint),
    Failed(FailedPoint),
}

fn g_at(table: &GTable, n: i64, d: i64) -> UniPoly {
    if n < 0 || d < 0 || d > n {
        return UniPoly::zero();
    }
    table.get(n as usize, d as usize).clone()
}

fn check_point(spec: &RecurrenceSpec, table: &GTable, n: usize, d: usize) -> PointOutcome {
    let id = match spec.instantiate(n, d) {
        Ok(id) => id,
        Err(reason) => return PointOutcome::Skipped(SkippedPoint { n, d, reason }),
    };
    let lhs = &id.lhs_factor * table.get(n, d);
    let rhs = id.rhs.iter().fold(UniPoly::zero(), |acc, term| {
        let g = g_at(table, term.n, term.d).nth_derivative(term.deriv);
        &acc + &(&term.factor * &g)
    });
    if lhs == rhs {
        PointOutcome::Ok
    } else {
        PointOutcome::Failed(FailedPoint { n, d, lhs, rhs })
    }
}

/// Grid points `(n, d)` with `n <= n_max` in the identity's domain, sorted.
pub fn grid(spec: &RecurrenceSpec, n_max: usize) -> Vec<(usize, usize)> {
    (0..=n_max)
        .flat_map(|n| (0..=n).map(move |d| (n, d)))
        .filter(|&(n, d)| spec.in_domain(n, d))
        .collect()
}

/// Check `spec` against a prebuilt closed-form table.
pub fn verify_with(spec: &RecurrenceSpec, table: &GTable, n_max: usize) -> VerificationReport {
    assert!(n_max <= table.n_max(), "closed-form table too small");
    let outcomes: Vec<PointOutcome> = grid(spec, n_max)
        .into_par_iter()
        .map(|(n, d)| check_point(spec, table, n, d))
        .collect();
    let mut report = VerificationReport {
        id: spec.id.to_string(),
        domain: spec.domain.to_string(),
        n_max,
        checked: 0,
        skipped: Vec::new(),
        failures: Vec::new(),
        pass: true,
    };
    for o in outcomes {
        match o {
            PointOutcome::Ok => report.checked += 1,
            PointOutcome::Skipped(s) => report.skipped.push(s),
            PointOutcome::Failed(f) => {
                report.checked += 1;
                report.failures.push(f);
            }
        }
    }
    report.pass = report.failures.is_empty();
    report
}

/// Exact check of one identity on every grid point with `n <= n_max`.
pub fn verify(spec: &RecurrenceSpec, n_max: usize) -> Result<VerificationReport, RecurrenceError> {
    if grid(spec, n_max).is_empty() {
        return Err(RecurrenceError::NothingToCheck {
            id: spec.id.to_string(),
            n_max,
        });
    }
    Ok(verify_with(spec, &GTable::new(n_max), n_max))
}

/// One report per registered identity; an identity with no grid point below
/// `n_max` yields an empty (vacuously passing) report.
pub fn verify_all(n_max: usize) -> Vec<VerificationReport> {
    verify_specs(&registry(), n_max)
}

pub fn verify_specs(specs: &[RecurrenceSpec], n_max: usize) -> Vec<VerificationReport> {
    let table = GTable::new(n_max);
    specs.iter().map(|s| verify_with(s, &table, n_max)).collect()
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
