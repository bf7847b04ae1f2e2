//! Coefficients of g(n, d) from the closed formula, and the same polynomial
//! rebuilt through each recurrence route.
//!
//! `cargo run --example closed_form -- 9 4`

use gpoly::{closed_form, via_recurrence, RecurrenceScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let n = args.next().transpose()?.unwrap_or(9);
    let d = args.next().transpose()?.unwrap_or(4);

    let rec = closed_form(n, d)?;
    let (f, df, d2f) = rec.values_at_one();
    println!("g({n},{d}) = {}", rec.poly);
    println!("f(1) = {f}, f'(1) = {df}, f''(1) = {d2f}");

    for scheme in RecurrenceScheme::ALL {
        if !scheme.applies(n, d) {
            continue;
        }
        let built = via_recurrence(n, d, scheme)?;
        let agree = if built.poly == rec.poly { "agrees" } else { "DIFFERS" };
        println!("  via {:<9} {agree}", scheme.id());
    }
    Ok(())
}
