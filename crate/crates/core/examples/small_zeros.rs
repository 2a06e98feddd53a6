//! Least isotropic vectors of integer forms against |det|^((2 beta + 1)/d).
//!
//! `cargo run --example small_zeros`

use oppenheim::campaign::random_integer_forms;
use oppenheim::forms::IntegerForm;
use oppenheim::rational::{min_isotropic, verify_schlickewei, DEFAULT_HARD_CAP};

pub fn run_example() -> oppenheim::Result<()> {
    let f = IntegerForm::new(vec![1, 2, 3, -5, -7])?;
    let w = min_isotropic(&f, 1000)?.expect("zero within budget");
    println!("{:?}: m = {:?}, norm = {}", f.coeffs(), w.m, w.weighted_norm);

    let mut worst = 0.0f64;
    for f in random_integer_forms(7, 20, 5, 30) {
        let c = verify_schlickewei(&f, 64.0, DEFAULT_HARD_CAP)?;
        worst = worst.max(c.ratio);
        println!("{:?} norm {:>4} bound {:>10.1} ratio {:.2e}", f.coeffs(), c.min_norm, c.bound_base, c.ratio);
    }
    println!("largest ratio {worst:.3e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
