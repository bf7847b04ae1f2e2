//! Distances between a coefficient distribution and the standard Gaussian.
//!
//! Probabilities and moments arrive exact; only the Gaussian side is
//! evaluated in `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::polycore::ExactRational;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

fn to_f64(x: &ExactRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Normalised coefficients `p_k` and the cumulative sums `C_k`, both as
/// floats obtained from exact ratios.
pub struct Distribution {
    p: Vec<f64>,
    cumulative: Vec<f64>,
    mu: f64,
    sigma: f64,
}

impl Distribution {
    /// `coeffs` must be non-negative with positive sum and `sigma2 > 0`.
    pub fn new(coeffs: &[ExactRational], mu: &ExactRational, sigma2: &ExactRational) -> Self {
        let total: ExactRational = coeffs.iter().sum();
        let mut run = BigRational::zero();
        let mut p = Vec::with_capacity(coeffs.len());
        let mut cumulative = Vec::with_capacity(coeffs.len());
        for a in coeffs {
            run += a;
            p.push(to_f64(&(a / &total)));
            cumulative.push(to_f64(&(&run / &total)));
        }
        Distribution {
            p,
            cumulative,
            mu: to_f64(mu),
            sigma: to_f64(sigma2).sqrt(),
        }
    }

    fn t_at(&self, k: f64) -> f64 {
        (k - self.mu) / self.sigma
    }

    /// `sup_t |sum_{k <= mu + t sigma} p_k - Phi(t)|`. Between jumps the
    /// step function is flat and `Phi` monotone, so both one-sided limits
    /// at each jump give the supremum.
    pub fn clt_distance(&self) -> f64 {
        let mut sup = 0.0f64;
        let mut before = 0.0;
        for (k, &after) in self.cumulative.iter().enumerate() {
            let phi = normal_cdf(self.t_at(k as f64));
            sup = sup.max((before - phi).abs()).max((after - phi).abs());
            before = after;
        }
        sup
    }

    /// `sup_t |sigma p_{floor(mu + t sigma)} - phi(t)|`, exact per cell: on
    /// the cell of index `k` the first term is constant and the density
    /// ranges between its values at the cell ends (and its peak, when the
    /// cell contains 0). Cells outside `0..=deg` carry `p = 0`.
    pub fn llt_distance(&self) -> f64 {
        let n = self.p.len();
        let mut sup = normal_pdf(self.t_at(0.0)).max(normal_pdf(self.t_at(n as f64)));
        for (k, &pk) in self.p.iter().enumerate() {
            let (a, b) = (self.t_at(k as f64), self.t_at(k as f64 + 1.0));
            let (fa, fb) = (normal_pdf(a), normal_pdf(b));
            let lo = fa.min(fb);
            let hi = if a <= 0.0 && 0.0 < b { INV_SQRT_2PI } else { fa.max(fb) };
            let c = self.sigma * pk;
            sup = sup.max((c - lo).abs()).max((c - hi).abs());
        }
        sup
    }

    /// The LLT difference sampled on `size` equally spaced points of
    /// `[-span, span]`; never exceeds [`Self::llt_distance`].
    pub fn llt_sampled(&self, size: usize, span: f64) -> f64 {
        let step = 2.0 * span / (size - 1) as f64;
        (0..size)
            .map(|i| {
                let t = -span + step * i as f64;
                let k = (self.mu + t * self.sigma).floor();
                let pk = if k >= 0.0 { self.p.get(k as usize).copied().unwrap_or(0.0) } else { 0.0 };
                (self.sigma * pk - normal_pdf(t)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Integer coefficients convenience for tests and examples.
pub fn distribution_of_ints(coeffs: &[i64]) -> Distribution {
    let c: Vec<ExactRational> = coeffs.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect();
    let total: ExactRational = c.iter().sum();
    let mean: ExactRational = c
        .iter()
        .enumerate()
        .map(|(k, a)| a * BigRational::from_integer(BigInt::from(k)))
        .sum::<ExactRational>()
        / &total;
    let second: ExactRational = c
        .iter()
        .enumerate()
        .map(|(k, a)| a * BigRational::from_integer(BigInt::from(k * k)))
        .sum::<ExactRational>()
        / &total;
    let var = second - &mean * &mean;
    Distribution::new(&c, &mean, &var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_reference_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-12);
        assert!((normal_pdf(0.0) - INV_SQRT_2PI).abs() < 1e-15);
    }

    #[test]
    fn binomial_distances_shrink() {
        // Binomial(m, 1/2) coefficients: both distances decay like 1/sqrt(m).
        let binom = |m: u64| -> Vec<i64> {
            let mut row = vec![1i64];
            for _ in 0..m {
                let mut next = vec![1i64; row.len() + 1];
                for i in 1..row.len() {
                    next[i] = row[i - 1] + row[i];
                }
                row = next;
            }
            row
        };
        let d10 = distribution_of_ints(&binom(10));
        let d40 = distribution_of_ints(&binom(40));
        assert!(d40.clt_distance() < d10.clt_distance());
        assert!(d40.llt_distance() < d10.llt_distance());
        assert!(d10.clt_distance() < 0.2);
    }

    #[test]
    fn sampled_llt_is_a_lower_bound() {
        let d = distribution_of_ints(&[0, 2, 1]);
        let exact = d.llt_distance();
        let sampled = d.llt_sampled(1001, 8.0);
        assert!(sampled <= exact + 1e-12);
        assert!(exact - sampled < 1e-2);
    }

    #[test]
    fn two_point_clt() {
        // p = (1/2, 1/2) at 0, 1: mu = 1/2, sigma = 1/2, jumps at t = -1, 1.
        let d = distribution_of_ints(&[1, 1]);
        let expect = (0.5 - normal_cdf(-1.0)).max(normal_cdf(-1.0));
        assert!((d.clt_distance() - expect).abs() < 1e-15);
    }
}
