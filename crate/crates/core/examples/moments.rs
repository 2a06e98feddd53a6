//! Second moment of r(n) and fourth moments of squares.
//!
//! `cargo run --release --example moments`

use oppenheim::analysis::{fourth_moment_count, fourth_moment_integral, r2_moment};

pub fn run_example() -> oppenheim::Result<()> {
    for n in [100u64, 1000, 10_000, 100_000] {
        let m = r2_moment(n)?;
        let nf = n as f64;
        println!("N = {n:>6}: sum r(n)^2 = {m:>9}  / N ln N = {:.4}", m as f64 / (nf * nf.ln()));
    }
    for (lo, hi) in [(1, 50), (100, 300)] {
        let c = fourth_moment_count(lo, hi)?;
        let i = fourth_moment_integral(lo, hi)?;
        println!("[{lo}, {hi}]: count {c} integral {i:.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
