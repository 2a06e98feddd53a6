//! Dirichlet pairs, approximant counts and coupling of pairs.
//!
//! `cargo run --example dirichlet_dichotomy`

use oppenheim::dirichlet::{count_approximants, coupling_factorize, dirichlet_pair};

pub fn run_example() -> oppenheim::Result<()> {
    for (name, theta) in [("pi", std::f64::consts::PI), ("sqrt2", 2f64.sqrt()), ("e", std::f64::consts::E)] {
        for n in [10u64, 1000, 100_000] {
            let p = dirichlet_pair(theta, n)?;
            println!("{name} N={n:>6}: {}/{} rho = {:+.3e}", p.x, p.y, p.rho);
        }
    }

    // rational theta: every approximant shares one ratio
    let rational = count_approximants(0.375, 0.01, 1000.0)?;
    let golden = count_approximants((1.0 + 5f64.sqrt()) / 2.0, 0.01, 1000.0)?;
    println!(
        "3/8: count {} same ratio {}; golden: count {} below 24 eta X {}",
        rational.count, rational.all_same_ratio, golden.count, golden.below_linear_bound
    );

    let f = coupling_factorize(&[(5, 7), (10, 7), (15, 7)], 0)?;
    println!("coupling: x = {} y = {} reconstructed {}", f.x, f.y, f.reconstructed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
