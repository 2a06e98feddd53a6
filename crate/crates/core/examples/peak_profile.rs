//! Sizes of the Weyl sums at a frequency and the resulting classification.
//!
//! `cargo run --example peak_profile`

use oppenheim::analysis::peak_profile;
use oppenheim::forms::DiagonalForm;

pub fn run_example() -> oppenheim::Result<()> {
    let f = DiagonalForm::parse("1, sqrt(2), sqrt(3), -1, -sqrt(5), 2, -e")?;
    let alphas = [1e-3, 0.05, 0.5, 1.0 / 3.0, 2.0];
    for p in peak_profile(&f, 200.0, &alphas)? {
        let u: Vec<String> = p.u_class.iter().map(|u| u.to_string()).collect();
        println!("alpha {:.4}: U = [{}] in J {} in F {:?}", p.alpha, u.join(" "), p.in_j, p.in_f);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
