//! Weyl sums over P < |q|^(1/2) m < 2dP, Gauss sums and the two Weyl bounds.
//!
//! `cargo run --example weyl_sums`

use oppenheim::analysis::weyl::{vdc_scan, weyl_ratio_scan, VDC_RESIDUAL_CONSTANT, WEYL_RATIO_CONSTANT};
use oppenheim::analysis::{gauss_sum, weyl_bound_ratio, weyl_range, weyl_sum};
use oppenheim::dirichlet::dirichlet_pair;

pub fn run_example() -> oppenheim::Result<()> {
    let (lo, hi) = weyl_range(2.0, 100.0, 5);
    println!("q = 2, P = 100: m in [{lo}, {hi}]");
    for alpha in [0.0, 0.25, 1.0 / 7.0, 0.3183] {
        let s = weyl_sum(2.0, alpha, 100.0, 5);
        println!("  S({alpha:.4}) = {:+.4} {:+.4}i", s.re, s.im);
    }

    for y in [5u64, 12, 13] {
        let g = gauss_sum(1, y);
        println!("G(1,{y}) = {:+.4} {:+.4}i |G|^2 = {:.3}", g.re, g.im, g.norm_sqr());
    }

    let alpha = 1.0 / 7.0 + 1e-6;
    let pair = dirichlet_pair(alpha, 40_000)?;
    println!("ratio at {alpha}: {:.4}", weyl_bound_ratio(1.0, alpha, 1000.0, 5, &pair)?);

    let v = vdc_scan(11, 2000, 5)?;
    println!("van der Corput residual max {:.4} (constant {VDC_RESIDUAL_CONSTANT})", v.max);
    let w = weyl_ratio_scan(1, 200, 1.0, 1000.0, 5)?;
    println!("Weyl ratio max {:.4} (constant {WEYL_RATIO_CONSTANT})", w.max);
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
