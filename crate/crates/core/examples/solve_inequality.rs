//! Least nonzero m with |Q[m]| < epsilon for real forms, with certificates.
//!
//! `cargo run --example solve_inequality`

use oppenheim::forms::DiagonalForm;
use oppenheim::solver::{parse_epsilon, solve, verify_certificate, SolveOptions};

pub fn run_example() -> oppenheim::Result<()> {
    let cases = [
        ("1, sqrt(2), sqrt(3), -1, -sqrt(5)", "0.1"),
        ("sqrt(2), -1, sqrt(3), -sqrt(7), 1", "0.01"),
        ("pi, -e, 1, -sqrt(2), 1/3", "0.05"),
        ("1, 2, -3", "1/2"),
    ];
    for (coeffs, eps) in cases {
        let f = DiagonalForm::parse(coeffs)?;
        let e = parse_epsilon(eps)?;
        let c = solve(&f, &e, &SolveOptions::default())?;
        let v = verify_certificate(&c, &f, &e)?;
        println!(
            "[{coeffs}] eps {eps}: m = {:?} Q = {} norm = {} within bound: {} verified: {}",
            c.m, c.q_value, c.weighted_norm, c.within_theorem_bound, v.valid
        );
    }
    // x^2 - 2y^2 + 3z^2 has no rational zero, so nothing below 1/2 exists
    let f = DiagonalForm::parse("1, -2, 3")?;
    match solve(&f, &parse_epsilon("1/2")?, &SolveOptions { budget: 1e4, ..Default::default() }) {
        Err(oppenheim::Error::CertifiedEmpty { norm_bound }) => println!("[1, -2, 3]: empty up to norm {norm_bound}"),
        other => println!("[1, -2, 3]: unexpected {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
