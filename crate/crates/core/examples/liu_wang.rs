//! The Liu-Wang hypotheses for each recursion behind the interlacing
//! results, and the effect of flipping the sign of a psi coefficient.
//!
//! `cargo run --release --example liu_wang -- 20`

use gpoly::rootline::{liu_wang_check, Recursion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(20);

    for r in Recursion::ALL {
        let instances = r.instances(n_max)?;
        let mut ok = 0;
        for inst in &instances {
            if liu_wang_check(inst)?.satisfied {
                ok += 1;
            }
        }
        println!("{:<14} {ok}/{} satisfied", r.name(), instances.len());
    }

    let inst = Recursion::FixedN.instance(10, 2)?;
    println!("{}: F = {}", inst.label, inst.big_f);
    println!("  phi = {}, psi = {}", inst.phi, inst.psi[0]);
    let mutated = liu_wang_check(&inst.with_negated_psi(0)?)?;
    for v in &mutated.violations {
        println!("  negated psi: {:?}: {}", v.condition, v.reason);
    }
    Ok(())
}
