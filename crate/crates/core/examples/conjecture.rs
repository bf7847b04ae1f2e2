//! Exploratory slices g(n, d(n)) of the table along several schedules d(n),
//! watching whether the variance grows and the CLT distance shrinks.
//!
//! `cargo run --release --example conjecture -- 120`

use gpoly::asymptotics::{conjecture_probe, Schedule};
use num_traits::ToPrimitive;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(120);

    for name in ["constant-2", "floor-log", "floor-sqrt", "floor-alpha-n:1/3", "floor-half"] {
        let schedule: Schedule = name.parse()?;
        let probe = conjecture_probe(schedule, n_max)?;
        let last = probe.rows.last().ok_or("empty probe")?;
        println!(
            "{:<18} n = {:>4}  d = {:>3}  sigma2 = {:>10.4}  clt = {:.5}",
            probe.schedule,
            last.n,
            last.d,
            last.sigma2.to_f64().unwrap_or(f64::NAN),
            last.clt_distance.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
