//! Mean, variance and limit behaviour of the half-diagonal family
//! `f_n = g(n, floor(n/2))`, plus Gaussian-distance reports.
//!
//! The values `f_n(1)`, `f_n'(1)`, `f_n''(1)` come from short integer
//! recurrences; [`stats`] recomputes the moments from the expanded
//! polynomial and refuses to answer if the two routes disagree.

mod interval;
mod lemmas;
mod normal;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use interval::Interval;
pub use lemmas::{
    below_sqrt2_minus_1, brackets_fixed_point, certify_vry, check_lemma44, check_lemma45, check_variance_bounds,
    exceeds_two_minus_sqrt2, limit_enclosures, vry_gap, Lemma44Report, Lemma44Row, Lemma45Report, Lemma45Row,
    VarianceBoundReport, VarianceBoundRow,
};
pub use normal::{distribution_of_ints, normal_cdf, normal_pdf, Distribution};

use crate::gpoly::{closed_form, GPolyError};
use crate::json::rational_str;
use crate::polycore::{frac, rat, ExactRational, UniPoly};

/// Minimum grid size for the sampled LLT self-check.
pub const MIN_GRID: usize = 101;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("{0}")]
    Domain(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    GPoly(#[from] GPolyError),
}

fn ceil_half(n: usize) -> i64 {
    n.div_ceil(2) as i64
}

/// `f_n(1)` for `0 <= n <= n_max` from
/// `f_{n+1}(1) = (n-1)/floor(n/2) f_n(1) + (ceil(n/2)-1)/floor(n/2) f_{n-1}(1)`
/// seeded with `f_1(1) = 0`, `f_2(1) = 1`.
pub fn values_at_one(n_max: usize) -> Vec<ExactRational> {
    let mut f = vec![ExactRational::zero(), ExactRational::zero(), ExactRational::one()];
    for n in 2..n_max {
        let fl = (n / 2) as i64;
        let next = frac(n as i64 - 1, fl) * &f[n] + frac(ceil_half(n) - 1, fl) * &f[n - 1];
        f.push(next);
    }
    f.truncate(n_max + 1);
    f
}

/// `(f_n(1), f_n'(1), f_n''(1))` of the half-diagonal family from the
/// recurrences alone; `n >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfDiagonalValues {
    pub n: usize,
    pub f: ExactRational,
    pub df: ExactRational,
    pub d2f: ExactRational,
}

pub fn half_diagonal_values(n_max: usize) -> Vec<HalfDiagonalValues> {
    let f = values_at_one(n_max);
    (3..=n_max)
        .map(|n| {
            let c = ceil_half(n);
            let (fn1, fprev) = (&f[n], &f[n - 1]);
            // f_n(1) = (c-1)/(c+1) f_{n-1}(1) + 2/(c+1) f_n'(1)
            let df = (rat(c + 1) * fn1 - rat(c - 1) * fprev) / rat(2);
            // f_n(1) = (2n-1)/(2c+1) f_{n-1}(1) + 4/((c-1)(2c+1)) f_n''(1)
            let d2f = (fn1 - frac(2 * n as i64 - 1, 2 * c + 1) * fprev) * rat((c - 1) * (2 * c + 1)) / rat(4);
            HalfDiagonalValues {
                n,
                f: fn1.clone(),
                df,
                d2f,
            }
        })
        .collect()
}

/// `r_n(1) = f_{n-1}(1) / f_n(1)` for `3 <= n <= n_max`.
pub fn r_sequence(n_max: usize) -> Result<Vec<(usize, ExactRational)>, AsymptoticsError> {
    if n_max < 4 {
        return Err(AsymptoticsError::Domain(format!("n_max must be >= 4, got {n_max}")));
    }
    let f = values_at_one(n_max);
    Ok((3..=n_max).map(|n| (n, &f[n - 1] / &f[n])).collect())
}

/// Mean and variance of `f_n` from `r = r_n(1)` by the closed forms
/// `mu = (1 - (c-1)/(c+1) r)(c+1)/2` and
/// `sigma2 = c(c-1)/4 - (c-1)(2 floor(n/2) - 1)/4 r - (c-1)^2/4 r^2`,
/// `c = ceil(n/2)`.
pub fn lemma_moments(n: usize, r: &ExactRational) -> (ExactRational, ExactRational) {
    let c = ceil_half(n);
    let fl = (n / 2) as i64;
    let mu = (rat(1) - frac(c - 1, c + 1) * r) * frac(c + 1, 2);
    let sigma2 = frac(c * (c - 1), 4) - frac((c - 1) * (2 * fl - 1), 4) * r - frac((c - 1) * (c - 1), 4) * r * r;
    (mu, sigma2)
}

/// `(f(1), mu, sigma2)` of any polynomial with `f(1) != 0`.
pub fn direct_moments(p: &UniPoly) -> Option<(ExactRational, ExactRational, ExactRational)> {
    let mut s = [ExactRational::zero(), ExactRational::zero(), ExactRational::zero()];
    for (k, a) in p.coeffs().iter().enumerate() {
        let k = rat(k as i64);
        s[0] += a;
        s[1] += &k * a;
        s[2] += &k * (&k - rat(1)) * a;
    }
    if s[0].is_zero() {
        return None;
    }
    let mu = &s[1] / &s[0];
    let sigma2 = &s[2] / &s[0] + &mu - &mu * &mu;
    Some((s[0].clone(), mu, sigma2))
}

/// Exact moments of the half-diagonal member `n` with float Gaussian
/// distances (absent when the variance vanishes).
#[derive(Clone, Debug, PartialEq)]
pub struct StatsRecord {
    pub n: usize,
    pub d: usize,
    pub mu: ExactRational,
    pub sigma2: ExactRational,
    pub r: ExactRational,
    pub clt_distance: Option<f64>,
    pub llt_distance: Option<f64>,
}

impl StatsRecord {
    pub const CSV_HEADER: [&'static str; 10] = [
        "n",
        "d",
        "mu_num",
        "mu_den",
        "sigma2_num",
        "sigma2_den",
        "r_num",
        "r_den",
        "clt_distance",
        "llt_distance",
    ];

    pub fn csv_fields(&self) -> Vec<String> {
        let dist = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:.17e}"));
        vec![
            self.n.to_string(),
            self.d.to_string(),
            self.mu.numer().to_string(),
            self.mu.denom().to_string(),
            self.sigma2.numer().to_string(),
            self.sigma2.denom().to_string(),
            self.r.numer().to_string(),
            self.r.denom().to_string(),
            dist(self.clt_distance),
            dist(self.llt_distance),
        ]
    }
}

impl Serialize for StatsRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StatsRecord", 10)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("mu_num", &self.mu.numer().to_string())?;
        st.serialize_field("mu_den", &self.mu.denom().to_string())?;
        st.serialize_field("sigma2_num", &self.sigma2.numer().to_string())?;
        st.serialize_field("sigma2_den", &self.sigma2.denom().to_string())?;
        st.serialize_field("r_num", &self.r.numer().to_string())?;
        st.serialize_field("r_den", &self.r.denom().to_string())?;
        st.serialize_field("clt_distance", &self.clt_distance)?;
        st.serialize_field("llt_distance", &self.llt_distance)?;
        st.end()
    }
}

fn distances(p: &UniPoly, mu: &ExactRational, sigma2: &ExactRational) -> (Option<f64>, Option<f64>) {
    if !sigma2.is_positive() {
        return (None, None);
    }
    let dist = Distribution::new(p.coeffs(), mu, sigma2);
    (Some(dist.clt_distance()), Some(dist.llt_distance()))
}

fn stats_with(n: usize, f_one: &[ExactRational]) -> Result<StatsRecord, AsymptoticsError> {
    if n < 3 {
        return Err(AsymptoticsError::Domain(format!("n must be >= 3, got {n}")));
    }
    let d = n / 2;
    let p = closed_form(n, d)?.poly;
    let prev = closed_form(n - 1, (n - 1) / 2)?.poly;
    let mismatch = |what: &str| AsymptoticsError::InvariantViolation(format!("{what} disagrees at n = {n}"));

    let (f1, mu, sigma2) = direct_moments(&p).ok_or_else(|| mismatch("f_n(1)"))?;
    if f1 != f_one[n] || prev.evaluate(&rat(1)) != f_one[n - 1] {
        return Err(mismatch("f_n(1) recurrence"));
    }
    let r = &f_one[n - 1] / &f_one[n];
    let (mu_l, sigma2_l) = lemma_moments(n, &r);
    if mu_l != mu {
        return Err(mismatch("closed-form mean"));
    }
    if sigma2_l != sigma2 {
        return Err(mismatch("closed-form variance"));
    }
    let (clt_distance, llt_distance) = distances(&p, &mu, &sigma2);
    Ok(StatsRecord {
        n,
        d,
        mu,
        sigma2,
        r,
        clt_distance,
        llt_distance,
    })
}

/// Moments of `g(n, floor(n/2))`, both from derivatives at 1 and from the
/// closed forms in `r_n(1)`; errors if they differ.
pub fn stats(n: usize) -> Result<StatsRecord, AsymptoticsError> {
    stats_with(n, &values_at_one(n.max(2)))
}

/// Stats rows for `n_min..=n_max`, in order.
pub fn stats_range(n_min: usize, n_max: usize) -> Result<Vec<StatsRecord>, AsymptoticsError> {
    let f = values_at_one(n_max.max(2));
    (n_min..=n_max).into_par_iter().map(|n| stats_with(n, &f)).collect()
}

/// Gaussian distances for each `n` in `ns`. The LLT supremum is exact per
/// cell; a sampled scan on `grid` points of `[-8, 8]` is run as a
/// consistency check and must never exceed it.
pub fn normality_report(ns: &[usize], grid: usize) -> Result<Vec<StatsRecord>, AsymptoticsError> {
    if grid < MIN_GRID {
        return Err(AsymptoticsError::Domain(format!("grid size must be >= {MIN_GRID}, got {grid}")));
    }
    if let Some(&bad) = ns.iter().find(|&&n| n < 4) {
        return Err(AsymptoticsError::Domain(format!("normality needs n >= 4, got {bad}")));
    }
    let top = ns.iter().copied().max().unwrap_or(4);
    let f = values_at_one(top);
    ns.par_iter()
        .map(|&n| {
            let rec = stats_with(n, &f)?;
            let p = closed_form(n, n / 2)?.poly;
            let dist = Distribution::new(p.coeffs(), &rec.mu, &rec.sigma2);
            let sampled = dist.llt_sampled(grid, 8.0);
            let exact = rec.llt_distance.unwrap_or(0.0);
            if sampled > exact + 1e-12 {
                return Err(AsymptoticsError::InvariantViolation(format!(
                    "sampled LLT {sampled} exceeds supremum {exact} at n = {n}"
                )));
            }
            Ok(rec)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Mixed,
}

fn trend(xs: &[&ExactRational]) -> Trend {
    if xs.windows(2).all(|w| w[0] < w[1]) {
        Trend::Increasing
    } else if xs.windows(2).all(|w| w[0] > w[1]) {
        Trend::Decreasing
    } else {
        Trend::Mixed
    }
}

/// Observed monotonicity of `r_n(1)` on `4 <= n <= n_max`, overall and
/// along each parity class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RMonotonicity {
    pub n_max: usize,
    pub overall: Trend,
    pub even: Trend,
    pub odd: Trend,
}

pub fn observe_r_monotonicity(n_max: usize) -> Result<RMonotonicity, AsymptoticsError> {
    let seq = r_sequence(n_max)?;
    let pick = |keep: fn(usize) -> bool| -> Vec<&ExactRational> {
        seq.iter().filter(|(n, _)| *n >= 4 && keep(*n)).map(|(_, r)| r).collect()
    };
    Ok(RMonotonicity {
        n_max,
        overall: trend(&pick(|_| true)),
        even: trend(&pick(|n| n % 2 == 0)),
        odd: trend(&pick(|n| n % 2 == 1)),
    })
}

/// `|r_n(1) - (sqrt 2 - 1)|` as a float, from an enclosure of `sqrt 2` at
/// `bits` of precision (the enclosure width is far below `f64` resolution
/// for `bits >= 64`).
pub fn distance_to_limit(r: &ExactRational, bits: u32) -> f64 {
    let s = Interval::sqrt(&rat(2), bits);
    let lo = (r + rat(1) - &s.hi).abs();
    let hi = (r + rat(1) - &s.lo).abs();
    let mid = (lo + hi) / rat(2);
    mid.to_f64().unwrap_or(f64::NAN)
}

/// A rule `n -> d(n)` for exploring other slices of the `(n, d)` table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Constant(usize),
    FloorSqrt,
    FloorLog,
    /// `floor(num/den * n)`.
    FloorAlpha { num: usize, den: usize },
    FloorHalf,
}

impl Schedule {
    pub fn d(self, n: usize) -> usize {
        match self {
            Schedule::Constant(c) => c,
            Schedule::FloorSqrt => n.isqrt(),
            Schedule::FloorLog => (n as f64).ln().floor() as usize,
            Schedule::FloorAlpha { num, den } => num * n / den,
            Schedule::FloorHalf => n / 2,
        }
    }

    /// First `n >= 4` with `1 <= d(n) <= floor(n/2)`.
    pub fn first_n(self) -> Option<usize> {
        match self {
            Schedule::Constant(0) => None,
            Schedule::Constant(c) => Some((2 * c).max(4)),
            Schedule::FloorAlpha { num, den } if num == 0 || den == 0 || 2 * num > den => None,
            Schedule::FloorAlpha { num, den } => Some(den.div_ceil(num).max(4)),
            _ => Some(4),
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Constant(c) => write!(f, "constant-{c}"),
            Schedule::FloorSqrt => f.write_str("floor-sqrt"),
            Schedule::FloorLog => f.write_str("floor-log"),
            Schedule::FloorAlpha { num, den } => write!(f, "floor-alpha-n:{num}/{den}"),
            Schedule::FloorHalf => f.write_str("floor-half"),
        }
    }
}

impl FromStr for Schedule {
    type Err = AsymptoticsError;

    /// `constant-C`, `floor-sqrt`, `floor-log`, `floor-alpha-n:P/Q`,
    /// `floor-half`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AsymptoticsError::Domain(format!("unknown schedule {s:?}"));
        let sched = match s {
            "floor-sqrt" => Schedule::FloorSqrt,
            "floor-log" => Schedule::FloorLog,
            "floor-half" => Schedule::FloorHalf,
            _ => {
                if let Some(c) = s.strip_prefix("constant-").or_else(|| s.strip_prefix("constant:")) {
                    Schedule::Constant(c.parse().map_err(|_| bad())?)
                } else if let Some(a) = s.strip_prefix("floor-alpha-n:").or_else(|| s.strip_prefix("floor-alpha:")) {
                    let (num, den) = a.split_once('/').ok_or_else(bad)?;
                    Schedule::FloorAlpha {
                        num: num.parse().map_err(|_| bad())?,
                        den: den.parse().map_err(|_| bad())?,
                    }
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(sched)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub d: usize,
    #[serde(serialize_with = "rational_str")]
    pub mu: ExactRational,
    #[serde(serialize_with = "rational_str")]
    pub sigma2: ExactRational,
    pub clt_distance: Option<f64>,
    pub llt_distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScheduleProbe {
    pub schedule: String,
    pub rows: Vec<ProbeRow>,
}

/// Moments and distances of `g(n, d(n))` for every valid `n <= n_max`.
/// Exploratory: nothing is asserted.
pub fn conjecture_probe(schedule: Schedule, n_max: usize) -> Result<ScheduleProbe, AsymptoticsError> {
    let out_of_range = || AsymptoticsError::Domain(format!("schedule {schedule} leaves 1 <= d(n) <= n/2"));
    let start = schedule.first_n().ok_or_else(out_of_range)?;
    if start > n_max {
        return Err(AsymptoticsError::Domain(format!(
            "schedule {schedule} starts at n = {start}, above n_max = {n_max}"
        )));
    }
    let rows = (start..=n_max)
        .into_par_iter()
        .map(|n| {
            let d = schedule.d(n);
            if d < 1 || d > n / 2 {
                return Err(out_of_range());
            }
            let p = closed_form(n, d)?.poly;
            let (_, mu, sigma2) = direct_moments(&p).ok_or_else(out_of_range)?;
            let (clt_distance, llt_distance) = distances(&p, &mu, &sigma2);
            Ok(ProbeRow {
                n,
                d,
                mu,
                sigma2,
                clt_distance,
                llt_distance,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(ScheduleProbe {
        schedule: schedule.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_recurrence() {
        let f = values_at_one(7);
        let ints: Vec<i64> = f.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
        assert_eq!(ints, vec![0, 0, 1, 1, 3, 5, 13, 25]);
    }

    #[test]
    fn recurrence_values_match_expansion() {
        for v in half_diagonal_values(60) {
            let p = closed_form(v.n, v.n / 2).unwrap().poly;
            let one = rat(1);
            assert_eq!(p.evaluate(&one), v.f, "n = {}", v.n);
            assert_eq!(p.derivative().evaluate(&one), v.df, "n = {}", v.n);
            assert_eq!(p.nth_derivative(2).evaluate(&one), v.d2f, "n = {}", v.n);
        }
    }

    #[test]
    fn small_stats() {
        let s = stats(4).unwrap();
        assert_eq!((s.mu.clone(), s.sigma2.clone(), s.r.clone()), (frac(4, 3), frac(2, 9), frac(1, 3)));
        assert!(s.clt_distance.unwrap().is_finite() && s.llt_distance.unwrap().is_finite());
        let s = stats(3).unwrap();
        assert_eq!((s.mu.clone(), s.sigma2.clone()), (rat(1), rat(0)));
        assert_eq!(s.clt_distance, None);
        assert_eq!(stats(7).unwrap().r, frac(13, 25));
        assert!(stats(2).is_err());
    }

    #[test]
    fn r_sequence_entries() {
        let seq = r_sequence(10).unwrap();
        assert_eq!(seq[0], (3, rat(1)));
        assert_eq!(seq[1], (4, frac(1, 3)));
        assert_eq!(seq[4], (7, frac(13, 25)));
        assert!(r_sequence(3).is_err());
    }

    #[test]
    fn normality_domain() {
        assert!(normality_report(&[3], 101).is_err());
        assert!(normality_report(&[10], 100).is_err());
        assert_eq!(normality_report(&[4, 10], 101).unwrap().len(), 2);
    }

    #[test]
    fn schedules() {
        assert_eq!("constant-2".parse::<Schedule>().unwrap(), Schedule::Constant(2));
        assert_eq!(
            "floor-alpha-n:1/3".parse::<Schedule>().unwrap(),
            Schedule::FloorAlpha { num: 1, den: 3 }
        );
        assert!("floor-cube".parse::<Schedule>().is_err());
        assert!(conjecture_probe(Schedule::FloorAlpha { num: 2, den: 3 }, 20).is_err());
        assert!(conjecture_probe(Schedule::Constant(0), 20).is_err());
        let half = conjecture_probe(Schedule::FloorHalf, 30).unwrap();
        let rows = stats_range(4, 30).unwrap();
        for (a, b) in half.rows.iter().zip(&rows) {
            assert_eq!((a.n, &a.sigma2, a.clt_distance), (b.n, &b.sigma2, b.clt_distance));
        }
    }

    #[test]
    fn limit_distance() {
        let seq = r_sequence(40).unwrap();
        let d = |n: usize| distance_to_limit(&seq[n - 3].1, 128);
        assert!(d(40) < d(10));
    }
}
