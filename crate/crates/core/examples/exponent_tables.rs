//! Schlickewei exponents, restricted signatures and coupling exponents.
//!
//! `cargo run --example exponent_tables`

use oppenheim::exponents::{beta, exponent_table, ratio_to_string, theorem_bound, two_beta};
use oppenheim::forms::DiagonalForm;

pub fn run_example() -> oppenheim::Result<()> {
    for (r, s) in [(3, 2), (4, 1), (5, 5), (7, 3)] {
        println!(
            "({r},{s}): beta = {}, 2beta = {}",
            ratio_to_string(&beta(r, s)?),
            ratio_to_string(&two_beta(r, s)?)
        );
    }

    let t = exponent_table(9)?;
    println!("d = 9");
    for row in &t.rows {
        let p: Vec<String> = row.p.iter().map(|x| x.map(|v| ratio_to_string(&v)).unwrap_or("-".into())).collect();
        println!("  ({},{}) 2beta = {:>5}  p_1..p_3 = {}", row.r, row.s, ratio_to_string(&row.two_beta), p.join(", "));
    }

    // the bound shell for a form below e^e
    let f = DiagonalForm::parse("1, sqrt(2), sqrt(3), -1, -sqrt(5)")?;
    let b = theorem_bound(&f, 1.0)?;
    println!("ln P = {:.3}, ln rhs = {:.3}", b.ln_p, b.ln_theorem_rhs);
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
