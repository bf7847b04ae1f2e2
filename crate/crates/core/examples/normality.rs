//! Exact mean and variance of g(n, floor(n/2)) and its distances to the
//! normal law, in the CLT and LLT senses.
//!
//! `cargo run --release --example normality -- 50 100 200 400`

use gpoly::asymptotics::{normality_report, observe_r_monotonicity, MIN_GRID};
use num_traits::ToPrimitive;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut ns: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    if ns.is_empty() {
        ns = vec![50, 100, 200, 400];
    }
    println!("{:>5} {:>12} {:>12} {:>10} {:>10}", "n", "mu", "sigma2", "clt", "llt");
    for rec in normality_report(&ns, MIN_GRID)? {
        println!(
            "{:>5} {:>12.6} {:>12.6} {:>10.6} {:>10.6}",
            rec.n,
            rec.mu.to_f64().unwrap_or(f64::NAN),
            rec.sigma2.to_f64().unwrap_or(f64::NAN),
            rec.clt_distance.unwrap_or(f64::NAN),
            rec.llt_distance.unwrap_or(f64::NAN)
        );
    }
    let m = observe_r_monotonicity(200)?;
    println!("r_n(1) for n <= 200: overall {:?}, even n {:?}, odd n {:?}", m.overall, m.even, m.odd);
    Ok(())
}
