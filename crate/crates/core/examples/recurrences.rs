//! Exact verification of every registered recurrence identity, plus a
//! mutated identity that the verifier must reject.
//!
//! `cargo run --release --example recurrences -- 30`

use gpoly::recurrence::{self, VerificationReport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(30);

    let reports = recurrence::verify_all(n_max);
    for r in &reports {
        println!(
            "{:<5} {:<34} checked {:>4}  skipped {:>2}  {}",
            r.id,
            r.domain,
            r.checked,
            r.skipped.len(),
            if r.pass { "PASS" } else { "FAIL" }
        );
    }

    let spec = recurrence::lookup("2.1")?.mutated(0);
    let broken: VerificationReport = recurrence::verify(&spec, n_max)?;
    println!("mutated 2.1: {} failures out of {} points", broken.failures.len(), broken.checked);
    if let Some(f) = broken.failures.first() {
        println!("  first at (n, d) = ({}, {})", f.n, f.d);
    }
    Ok(())
}
