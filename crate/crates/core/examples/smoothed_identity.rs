//! Smoothed lattice count against the integral of the Weyl product.
//!
//! `cargo run --release --example smoothed_identity`

use oppenheim::analysis::kernel::default_kernel;
use oppenheim::analysis::{integral_decomposition, smoothed_count_identity};
use oppenheim::forms::DiagonalForm;

pub fn run_example() -> oppenheim::Result<()> {
    let k = default_kernel();
    for (coeffs, p) in [("1, -1, 2", 3.0), ("1, 1, 1, -1", 2.0), ("1, 1, 1, 1, -1", 2.0)] {
        let f = DiagonalForm::parse(coeffs)?;
        let r = smoothed_count_identity(&f, p, k, 1e-6)?;
        println!(
            "[{coeffs}] P = {p}: box {} lhs {:.10} rhs {:.10} diff {:.2e}",
            r.box_points, r.lhs, r.rhs, r.difference
        );
    }
    let f = DiagonalForm::parse("1, -1, 2")?;
    let d = integral_decomposition(&f, 3.0, k, 1e-6)?;
    println!(
        "ranges {:?}: M1 {:.4} R1 {:.4} R2 {:.4} M2 {:.4} R3 {:.4}",
        d.range_boundaries, d.m1, d.r1, d.r2, d.m2, d.r3
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
