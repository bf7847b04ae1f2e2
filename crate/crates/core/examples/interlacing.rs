//! Interlacing along the five families of g-polynomials.
//!
//! `cargo run --release --example interlacing -- 20`

use gpoly::rootline::{interlaces, verify_sturm_family, Family};
use gpoly::UniPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limit: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(20);

    let families = [
        Family::FixedD { d: 3 },
        Family::FixedN { n: 16 },
        Family::Diag2d,
        Family::Diag2dPlus1,
        Family::DiagHalf,
    ];
    for fam in families {
        let report = verify_sturm_family(fam, limit)?;
        let weak = report.pairs.iter().filter(|p| !p.shared_roots.is_empty()).count();
        println!(
            "{:<10} {:>3} pairs, {:>3} with shared roots  {}",
            report.family,
            report.pairs.len(),
            weak,
            if report.pass { "PASS" } else { "FAIL" }
        );
    }

    // (t+1)(t+3) does not interlace (t+2)(t+4)(t+5): both -4 and -5 lie below -3
    let g = UniPoly::from_ints(&[3, 4, 1]);
    let f = UniPoly::from_ints(&[40, 38, 11, 1]);
    let v = interlaces(&g, &f)?;
    println!("counterexample: {:?} {}", v.relation, v.reason.unwrap_or_default());
    if let Some(w) = v.witness {
        println!("  {} root near {:.6} precedes {} root near {:.6}", w.first_of, w.first.approx(), w.second_of, w.second.approx());
    }
    Ok(())
}
