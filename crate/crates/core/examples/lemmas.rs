//! Exact sweeps of the ratio and variance inequalities, and the limit
//! sqrt 2 - 1 of r_n(1) along even n.
//!
//! `cargo run --release --example lemmas -- 100`

use gpoly::asymptotics::{check_lemma44, check_lemma45, check_variance_bounds, distance_to_limit, r_sequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(100);

    let even = check_lemma44(m_max)?;
    let odd = check_lemma45(m_max)?;
    let var = check_variance_bounds(m_max)?;
    let status = |b: bool| if b { "PASS" } else { "FAIL" };
    println!("even-index ratio bounds, m <= {m_max}: {}", status(even.pass));
    println!("odd-index ratio bounds,  m <= {m_max}: {}", status(odd.pass));
    println!("variance lower bounds,   m <= {m_max}: {}", status(var.pass));
    let bits: Vec<u32> = odd.rows.iter().filter_map(|r| r.vry_bits).collect();
    println!("auxiliary inequality certified at <= {} bits", bits.iter().max().unwrap_or(&0));

    let seq = r_sequence(2 * m_max)?;
    for (n, r) in seq.iter().filter(|(n, _)| [10, 20, 50, 100, 200].contains(n)) {
        println!("  n = {n:>3}: |r_n - (sqrt 2 - 1)| = {:.4e}", distance_to_limit(r, 128));
    }
    Ok(())
}
