//! The compactly supported kernel psi and its Fourier transform.
//!
//! `cargo run --release --example kernel`

use oppenheim::analysis::kernel::default_kernel;

pub fn run_example() -> oppenheim::Result<()> {
    let k = default_kernel();
    let s = k.summary();
    println!("c = {:.15}, sum a_k = {}", s.c, s.a_sum);
    for alpha in [0.0, 1.0, 10.0, 100.0, 1000.0] {
        println!("  hat({alpha:>6}) = {:+.4e}  envelope {:.4e}", k.hat(alpha), k.envelope(alpha));
    }
    let (m, at) = k.decay_ratio_max(1.0, 1e4, 500);
    println!("max |hat| / envelope on [1, 1e4]: {m:.4} at {at:.3}");

    let g = k.psi_grid(1 << 12, 4.0)?;
    println!(
        "psi: mass {:.6} min {:.2e} psi(0) {:.4} outside 1/2 {:.2e}",
        g.mass(),
        g.min(),
        g.at_zero(),
        g.max_abs_outside(0.5 + 1e-2)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
