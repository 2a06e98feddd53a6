//! A small verification campaign written to a temporary directory.
//!
//! `cargo run --release --example campaign`

use oppenheim::campaign::{run_campaign, CampaignConfig};

pub fn run_example() -> oppenheim::Result<()> {
    let dir = std::env::temp_dir().join(format!("oppenheim-campaign-{}", std::process::id()));
    let cfg = CampaignConfig::from_json(&format!(
        r#"{{"seed": 5, "suites": ["tables", "smallzeros", "dichotomy", "solver"],
            "smallzeros": {{"count": 10}}, "dichotomy": {{"trials": 50}},
            "solver": {{"count": 5}}, "output_dir": {:?}}}"#,
        dir.to_string_lossy()
    ))?;
    let r = run_campaign(&cfg)?;
    for s in &r.suites {
        println!("{:<12} {}", s.name, if s.passed { "pass" } else { "FAIL" });
    }
    println!("written to {}", dir.display());
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() -> oppenheim::Result<()> {
    run_example()
}
