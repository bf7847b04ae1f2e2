//! Exact sweeps of the inequalities behind the variance growth of the
//! half-diagonal family. Irrational bounds are compared by squaring after
//! fixing signs, so every check is a rational inequality.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::interval::Interval;
use super::{r_sequence, AsymptoticsError};
use crate::json::rational_str;
use crate::polycore::{frac, rat, ExactRational};

/// `x > 2 - sqrt 2`: true when `x >= 2`, otherwise `0 < 2 - x` and the claim
/// is `(2 - x)^2 < 2`.
pub fn exceeds_two_minus_sqrt2(x: &ExactRational) -> bool {
    let two = rat(2);
    if x >= &two {
        return true;
    }
    let gap = &two - x;
    &gap * &gap < two
}

/// `r < sqrt 2 - 1` for `r > -1`: `(r + 1)^2 < 2`, i.e. `r^2 + 2r - 1 < 0`.
pub fn below_sqrt2_minus_1(r: &ExactRational) -> bool {
    assert!(r > &rat(-1));
    (r * r + r * rat(2) - rat(1)).is_negative()
}

fn r_at(seq: &[(usize, ExactRational)], n: usize) -> &ExactRational {
    let first = seq[0].0;
    &seq[n - first].1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma44Row {
    pub m: usize,
    #[serde(serialize_with = "rational_str")]
    pub r: ExactRational,
    /// `r^2 + 2r - 1`, negative iff `r < sqrt 2 - 1`.
    #[serde(serialize_with = "rational_str")]
    pub r_quadratic: ExactRational,
    pub r_below_limit: bool,
    /// `m - (2m-1) r - (m-1) r^2`.
    #[serde(serialize_with = "rational_str")]
    pub x: ExactRational,
    pub x_exceeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma44Report {
    pub m_max: usize,
    pub rows: Vec<Lemma44Row>,
    pub pass: bool,
}

/// For `2 <= m <= m_max`: `r_{2m} < sqrt 2 - 1` and
/// `m - (2m-1) r_{2m} - (m-1) r_{2m}^2 > 2 - sqrt 2`.
pub fn check_lemma44(m_max: usize) -> Result<Lemma44Report, AsymptoticsError> {
    if m_max < 2 {
        return Err(AsymptoticsError::Domain(format!("m_max must be >= 2, got {m_max}")));
    }
    let seq = r_sequence(2 * m_max)?;
    let rows: Vec<Lemma44Row> = (2..=m_max)
        .map(|m| {
            let r = r_at(&seq, 2 * m).clone();
            let mi = rat(m as i64);
            let x = &mi - (&mi * rat(2) - rat(1)) * &r - (&mi - rat(1)) * &r * &r;
            Lemma44Row {
                m,
                r_quadratic: &r * &r + &r * rat(2) - rat(1),
                r_below_limit: below_sqrt2_minus_1(&r),
                x_exceeds: exceeds_two_minus_sqrt2(&x),
                x,
                r,
            }
        })
        .collect();
    let pass = rows.iter().all(|row| row.r_below_limit && row.x_exceeds);
    Ok(Lemma44Report { m_max, rows, pass })
}

/// Certified enclosure of `R(m) - L(m)` for
/// `L(m) = 1 / ((2m+1)/(m+1) + m/(m+1) * m/(m + sqrt(2m^2+m)))` and
/// `R(m) = -1 + sqrt(2(m+1)^2 + m + 1)/(m+1)`, at `bits` of precision.
pub fn vry_gap(m: usize, bits: u32) -> Interval {
    let mi = m as i64;
    let q = |a: i64, b: i64| Interval::point(frac(a, b));
    let s1 = Interval::sqrt(&rat(2 * mi * mi + mi), bits);
    let inner = &q(mi, 1) / &(&q(mi, 1) + &s1);
    let denom = &q(2 * mi + 1, mi + 1) + &(&q(mi, mi + 1) * &inner);
    let left = denom.recip();
    let s2 = Interval::sqrt(&rat(2 * (mi + 1) * (mi + 1) + mi + 1), bits);
    let right = &(&s2 / &Interval::int(mi + 1)) - &Interval::int(1);
    &right - &left
}

/// Smallest precision in `32, 64, ..., 4096` at which `vry_gap(m)` is
/// certified positive, or `None`.
pub fn certify_vry(m: usize) -> Option<u32> {
    let mut bits = 32;
    while bits <= 4096 {
        let gap = vry_gap(m, bits);
        if gap.is_positive() {
            return Some(bits);
        }
        if gap.hi.is_negative() {
            return None;
        }
        bits *= 2;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma45Row {
    pub m: usize,
    #[serde(serialize_with = "rational_str")]
    pub r: ExactRational,
    /// `m + 1 - 2m r - m r^2`.
    #[serde(serialize_with = "rational_str")]
    pub y: ExactRational,
    pub y_positive: bool,
    /// `r < -1 + sqrt(2m^2+m)/m`, checked as `((r+1) m)^2 < 2m^2 + m`.
    pub upper_bound_holds: bool,
    /// Precision at which the auxiliary inequality was certified.
    pub vry_bits: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma45Report {
    pub m_max: usize,
    pub rows: Vec<Lemma45Row>,
    pub pass: bool,
}

/// For `3 <= m <= m_max`: `m + 1 - 2m r_{2m+1} - m r_{2m+1}^2 > 0`, the
/// equivalent upper bound on `r_{2m+1}`, and the auxiliary inequality used
/// for the induction step.
pub fn check_lemma45(m_max: usize) -> Result<Lemma45Report, AsymptoticsError> {
    if m_max < 3 {
        return Err(AsymptoticsError::Domain(format!("m_max must be >= 3, got {m_max}")));
    }
    let seq = r_sequence(2 * m_max + 1)?;
    let rows: Vec<Lemma45Row> = (3..=m_max)
        .map(|m| {
            let r = r_at(&seq, 2 * m + 1).clone();
            let mi = rat(m as i64);
            let y = &mi + rat(1) - &mi * rat(2) * &r - &mi * &r * &r;
            // r > 0 so (r + 1) m > 0 and squaring preserves the order
            let lhs = (&r + rat(1)) * &mi;
            let upper_bound_holds = &lhs * &lhs < &mi * &mi * rat(2) + &mi;
            Lemma45Row {
                m,
                y_positive: y.is_positive(),
                y,
                r,
                upper_bound_holds,
                vry_bits: certify_vry(m),
            }
        })
        .collect();
    let pass = rows
        .iter()
        .all(|row| row.y_positive && row.upper_bound_holds && row.vry_bits.is_some());
    Ok(Lemma45Report { m_max, rows, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarianceBoundRow {
    pub m: usize,
    #[serde(serialize_with = "rational_str")]
    pub sigma2_even: ExactRational,
    /// `sigma2_{2m} > (2 - sqrt 2)(m - 1)/4`; `None` below `m = 2`.
    pub even_bound: Option<bool>,
    #[serde(serialize_with = "rational_str")]
    pub sigma2_odd: ExactRational,
    /// `sigma2_{2m+1} > (m/4) r_{2m+1}`; `None` below `m = 3`.
    pub odd_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarianceBoundReport {
    pub m_max: usize,
    pub rows: Vec<VarianceBoundRow>,
    pub pass: bool,
}

/// Both variance lower bounds for `2 <= m <= m_max`, from the closed
/// variance form.
pub fn check_variance_bounds(m_max: usize) -> Result<VarianceBoundReport, AsymptoticsError> {
    if m_max < 2 {
        return Err(AsymptoticsError::Domain(format!("m_max must be >= 2, got {m_max}")));
    }
    let seq = r_sequence(2 * m_max + 1)?;
    let rows: Vec<VarianceBoundRow> = (2..=m_max)
        .map(|m| {
            let mi = rat(m as i64);
            let (_, sigma2_even) = super::lemma_moments(2 * m, r_at(&seq, 2 * m));
            let r_odd = r_at(&seq, 2 * m + 1);
            let (_, sigma2_odd) = super::lemma_moments(2 * m + 1, r_odd);
            // (2 - sqrt 2)(m-1)/4 < s  iff  4s/(m-1) > 2 - sqrt 2
            let z = &sigma2_even * rat(4) / (&mi - rat(1));
            let odd_bound = (m >= 3).then(|| sigma2_odd > &mi / rat(4) * r_odd);
            VarianceBoundRow {
                m,
                even_bound: Some(exceeds_two_minus_sqrt2(&z)),
                sigma2_even,
                sigma2_odd,
                odd_bound,
            }
        })
        .collect();
    let pass = rows
        .iter()
        .all(|row| row.even_bound != Some(false) && row.odd_bound != Some(false));
    Ok(VarianceBoundReport { m_max, rows, pass })
}

/// Both roots of `A^2 + 2A - 1`, the fixed-point equation `1/A = 2 + A`,
/// enclosed to `bits`: `-1 - sqrt 2` and `-1 + sqrt 2`.
pub fn limit_enclosures(bits: u32) -> [Interval; 2] {
    let s = Interval::sqrt(&rat(2), bits);
    let one = Interval::int(1);
    [&(-&s) - &one, &s - &one]
}

/// Whether an enclosure certifies a sign change of `A^2 + 2A - 1` across it.
pub fn brackets_fixed_point(iv: &Interval) -> bool {
    let q = |a: &ExactRational| a * a + a * rat(2) - ExactRational::one();
    let (a, b) = (q(&iv.lo), q(&iv.hi));
    a.is_zero() || b.is_zero() || (a.is_negative() != b.is_negative())
}
