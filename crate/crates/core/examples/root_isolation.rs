//! Certified isolation of the real roots of g(n, d), refined to a target
//! width, with a check that their count equals the degree.
//!
//! `cargo run --example root_isolation -- 12 5 1e-12`

use gpoly::closed_form;
use gpoly::polycore::{dyadic_at_most, RootOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(12);
    let d: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(5);
    let width: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1e-12);

    let p = closed_form(n, d)?.poly;
    let oracle = RootOracle::new(&p)?;
    let target = dyadic_at_most(width);
    println!("g({n},{d}) = {p}");
    for iv in oracle.isolate(true) {
        let iv = oracle.refine(&iv, &target)?;
        if iv.is_exact() {
            println!("  root {}", iv.lo);
        } else {
            println!("  root in ({}, {})  ~ {:.15}", iv.lo, iv.hi, iv.approx());
        }
    }
    let deg = p.degree().unwrap_or(0);
    println!("{} distinct real roots, degree {deg}", oracle.distinct_root_count());
    Ok(())
}
