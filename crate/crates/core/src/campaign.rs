//! Seeded verification campaigns: each suite runs independently and reports
//! pass/fail with a JSON payload; timing fields end in `_ms`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::kernel::default_kernel;
use crate::analysis::moments::R2_RATIO_CONSTANT;
use crate::analysis::weyl::{vdc_scan, VDC_RESIDUAL_CONSTANT};
use crate::analysis::{fourth_moment_count, fourth_moment_integral, gauss_sum, r2_moment};
use crate::dirichlet::count_approximants;
use crate::error::{Error, Result};
use crate::exponents::{beta, beta_lower_bound, exponent_table};
use crate::forms::{Coeff, DiagonalForm, IntegerForm};
use crate::rational::{verify_schlickewei, DEFAULT_BUDGET_FACTOR, DEFAULT_HARD_CAP};
use crate::report;
use crate::solver::{solve, verify_certificate, SolveOptions};

pub const SUITES: &[&str] = &["tables", "smallzeros", "gauss", "dichotomy", "kernel", "moments", "vdc", "solver"];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct CampaignConfig {
    pub seed: u64,
    pub suites: Vec<String>,
    pub tables: TablesCfg,
    pub smallzeros: SmallZerosCfg,
    pub gauss: GaussCfg,
    pub dichotomy: DichotomyCfg,
    pub moments: MomentsCfg,
    pub vdc: VdcCfg,
    pub solver: SolverCfg,
    /// directory for the summary and per-suite files; nothing is written when unset
    pub output_dir: Option<PathBuf>,
    pub format: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct TablesCfg {
    pub d_min: usize,
    pub d_max: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct SmallZerosCfg {
    pub count: usize,
    pub d: usize,
    pub coeff_max: i64,
    pub budget_factor: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct GaussCfg {
    pub y_max: u64,
    pub units: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct DichotomyCfg {
    pub trials: usize,
    pub eta_x_max: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct MomentsCfg {
    pub ranges: usize,
    pub range_len: i64,
    pub n_values: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct VdcCfg {
    pub trials: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct SolverCfg {
    pub count: usize,
    pub epsilon: String,
    pub budget: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 1,
            suites: vec![],
            tables: TablesCfg::default(),
            smallzeros: SmallZerosCfg::default(),
            gauss: GaussCfg::default(),
            dichotomy: DichotomyCfg::default(),
            moments: MomentsCfg::default(),
            vdc: VdcCfg::default(),
            solver: SolverCfg::default(),
            output_dir: None,
            format: "json".into(),
        }
    }
}

impl Default for TablesCfg {
    fn default() -> Self {
        TablesCfg { d_min: 8, d_max: 20 }
    }
}

impl Default for SmallZerosCfg {
    fn default() -> Self {
        SmallZerosCfg { count: 200, d: 5, coeff_max: 30, budget_factor: DEFAULT_BUDGET_FACTOR }
    }
}

impl Default for GaussCfg {
    fn default() -> Self {
        GaussCfg { y_max: 500, units: 20 }
    }
}

impl Default for DichotomyCfg {
    fn default() -> Self {
        DichotomyCfg { trials: 1000, eta_x_max: 50.0 }
    }
}

impl Default for MomentsCfg {
    fn default() -> Self {
        MomentsCfg { ranges: 5, range_len: 200, n_values: vec![1_000, 10_000, 100_000, 1_000_000] }
    }
}

impl Default for VdcCfg {
    fn default() -> Self {
        VdcCfg { trials: 10_000 }
    }
}

impl Default for SolverCfg {
    fn default() -> Self {
        SolverCfg { count: 50, epsilon: "0.5".into(), budget: 1e6 }
    }
}

impl CampaignConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: CampaignConfig = serde_json::from_str(s)?;
        for name in &c.suites {
            if !SUITES.contains(&name.as_str()) {
                return Err(Error::Invalid(format!("unknown suite `{name}` (known: {})", SUITES.join(", "))));
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub details: Value,
    /// extra files as (name, contents)
    #[serde(skip)]
    pub files: Vec<(String, String)>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CampaignReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// Seeded indefinite integer forms with 1 ≤ |f_i| ≤ `coeff_max`.
pub fn random_integer_forms(seed: u64, count: usize, d: usize, coeff_max: i64) -> Vec<IntegerForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let f: Vec<i64> = (0..d)
            .map(|_| rng.gen_range(1..=coeff_max) * if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        if let Ok(f) = IntegerForm::new(f) {
            if f.is_indefinite() {
                out.push(f);
            }
        }
    }
    out
}

/// One coefficient with |q| in [e^e, 50]; rational when `rational` is set.
fn random_coeff(rng: &mut ChaCha8Rng, rational: bool) -> Coeff {
    let kind = if rational { rng.gen_range(0..2) } else { rng.gen_range(0..6) };
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match kind {
        0 => Coeff::int(rng.gen_range(16..=50)),
        1 => {
            let den = rng.gen_range(2..=9);
            Coeff::rational(r(rng.gen_range(16 * den..=50 * den), den))
        }
        2 => Coeff::sqrt_of(r(rng.gen_range(231..=2500), 1)).expect("positive"),
        3 => "pi".parse::<Coeff>().expect("pi").scale(&r(rng.gen_range(5..=15), 1)),
        4 => "e".parse::<Coeff>().expect("e").scale(&r(rng.gen_range(6..=18), 1)),
        _ => "e^e".parse().expect("e^e"),
    }
}

/// Seeded indefinite real forms of dimension `d`; even indices are rational.
pub fn random_real_forms(seed: u64, count: usize, d: usize) -> Vec<DiagonalForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rational = out.len() % 2 == 0;
        let mut cs: Vec<Coeff> = (0..d).map(|_| random_coeff(&mut rng, rational)).collect();
        let negs = rng.gen_range(1..d);
        for c in cs.iter_mut().take(negs) {
            *c = c.neg();
        }
        // shuffle signs across positions
        for i in (1..d).rev() {
            let j = rng.gen_range(0..=i);
            cs.swap(i, j);
        }
        out.push(DiagonalForm::new(cs).expect("nonzero coefficients"));
    }
    out
}

fn odd_primes_below(n: u64) -> Vec<u64> {
    (3..n).step_by(2).filter(|&p| (3..).step_by(2).take_while(|k| k * k <= p).all(|k| p % k != 0)).collect()
}

fn suite_tables(c: &TablesCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let mut failures = Vec::new();
    let mut rows = 0;
    for d in c.d_min..=c.d_max {
        let t = exponent_table(d)?;
        let lower = beta_lower_bound(d)?;
        for row in &t.rows {
            rows += 1;
            if beta(row.r, row.s)? < lower {
                failures.push(format!("beta below lower bound at ({},{})", row.r, row.s));
            }
            let starred = d % 2 == 1 && row.r == (d + 3) / 2;
            for (k, p) in row.p.iter().enumerate() {
                if let Some(p) = p {
                    let zero_ok = k == 0 && starred;
                    if (zero_ok && !p.is_zero()) || (!zero_ok && !p.is_negative()) {
                        failures.push(format!("p_{} = {} at ({},{})", k + 1, p, row.r, row.s));
                    }
                }
            }
        }
    }
    Ok((failures.is_empty(), json!({"d_min": c.d_min, "d_max": c.d_max, "rows": rows, "failures": failures}), vec![]))
}

fn suite_smallzeros(seed: u64, c: &SmallZerosCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let forms = random_integer_forms(seed, c.count, c.d, c.coeff_max);
    let mut lines = vec![];
    let mut max_ratio = 0.0f64;
    let mut missing = 0;
    for f in &forms {
        match verify_schlickewei(f, c.budget_factor, DEFAULT_HARD_CAP) {
            Ok(chk) => {
                max_ratio = max_ratio.max(chk.ratio);
                let sig = f.signature();
                lines.push(vec![
                    format!("{:?}", f.coeffs()),
                    format!("({},{})", sig.r, sig.s),
                    f.abs_det().to_string(),
                    chk.min_norm.to_string(),
                    report::fmt_f64(chk.ratio),
                ]);
            }
            Err(_) => missing += 1,
        }
    }
    let csv = report::csv(&["coeffs", "signature", "abs_det", "min_norm", "ratio"], &lines);
    Ok((
        missing == 0 && max_ratio.is_finite(),
        json!({"instances": forms.len(), "missing": missing, "max_ratio": max_ratio}),
        vec![("smallzeros_ratios.csv".into(), csv)],
    ))
}

fn suite_gauss(seed: u64, c: &GaussCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let primes = odd_primes_below(c.y_max);
    for &y in &primes {
        for _ in 0..c.units {
            let a = rng.gen_range(1..y) as i64;
            worst = worst.max((gauss_sum(a, y).norm() - (y as f64).sqrt()).abs());
        }
    }
    Ok((worst < 1e-9, json!({"primes": primes.len(), "max_deviation": worst}), vec![]))
}

fn suite_dichotomy(seed: u64, c: &DichotomyCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut max_count = 0;
    for _ in 0..c.trials {
        let theta: f64 = rng.gen_range(-10.0..10.0);
        let x: f64 = 10f64.powf(rng.gen_range(1.0..5.0));
        let eta = rng.gen_range(0.0..c.eta_x_max) / x;
        if eta <= 0.0 {
            continue;
        }
        let r = count_approximants(theta, eta, x)?;
        max_count = max_count.max(r.count);
        if !r.dichotomy_holds {
            failures += 1;
        }
    }
    Ok((failures == 0, json!({"trials": c.trials, "failures": failures, "max_count": max_count}), vec![]))
}

/// Numbers behind the kernel checks.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct KernelChecks {
    pub hat_zero: f64,
    pub symmetric: bool,
    pub decay_max: f64,
    pub decay_argmax: f64,
    pub decay_constant: f64,
    pub psi_min: f64,
    pub mass: f64,
    pub outside_max: f64,
    pub psi_zero: f64,
    pub delta: f64,
}

impl KernelChecks {
    pub fn passed(&self) -> bool {
        (self.hat_zero - 1.0).abs() <= 1e-12
            && self.symmetric
            && self.decay_max < self.decay_constant
            && self.psi_min >= -1e-6
            && (self.mass - 1.0).abs() <= 1e-3
            && self.outside_max <= 1e-6
            && self.psi_zero >= 0.5
            && self.delta > 0.0
    }
}

pub fn kernel_checks(alpha_max: f64) -> Result<KernelChecks> {
    let k = default_kernel();
    let symmetric = (0..2000).all(|i| {
        let a = i as f64 * 0.37;
        k.hat(a) == k.hat(-a)
    });
    let (decay_max, decay_argmax) = k.decay_ratio_max(1.0, alpha_max, 20_000);
    let g = k.psi_grid(1 << 16, 4.0)?;
    Ok(KernelChecks {
        hat_zero: k.hat(0.0),
        symmetric,
        decay_max,
        decay_argmax,
        decay_constant: crate::analysis::kernel::DECAY_CONSTANT,
        psi_min: g.min(),
        mass: g.mass(),
        outside_max: g.max_abs_outside(1.05),
        psi_zero: g.at_zero(),
        delta: g.delta(),
    })
}

fn suite_kernel() -> Result<(bool, Value, Vec<(String, String)>)> {
    let c = kernel_checks(1e3)?;
    Ok((c.passed(), serde_json::to_value(&c)?, vec![]))
}

fn suite_moments(seed: u64, c: &MomentsCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut ranges = vec![];
    for _ in 0..c.ranges {
        let lo = rng.gen_range(1..2000);
        let hi = lo + c.range_len - 1;
        let n = fourth_moment_count(lo, hi)?;
        let i = fourth_moment_integral(lo, hi)?;
        let rel = (n as f64 - i).abs() / n as f64;
        ok &= rel <= 1e-6;
        ranges.push(json!({"lo": lo, "hi": hi, "count": n.to_string(), "integral": i, "rel": rel}));
    }
    let mut ratios = vec![];
    for &n in &c.n_values {
        let m = r2_moment(n)?;
        let r = m as f64 / (n as f64 * (n as f64).ln());
        ok &= r <= R2_RATIO_CONSTANT;
        ratios.push(json!({"n": n, "moment": m.to_string(), "ratio": r}));
    }
    Ok((ok, json!({"fourth": ranges, "r2": ratios, "r2_constant": R2_RATIO_CONSTANT}), vec![]))
}

fn suite_vdc(seed: u64, c: &VdcCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let s = vdc_scan(seed, c.trials, 5)?;
    Ok((s.max <= VDC_RESIDUAL_CONSTANT, json!({"scan": s, "constant": VDC_RESIDUAL_CONSTANT}), vec![]))
}

fn suite_solver(seed: u64, c: &SolverCfg) -> Result<(bool, Value, Vec<(String, String)>)> {
    let eps = crate::solver::parse_epsilon(&c.epsilon)?;
    let opts = SolveOptions { budget: c.budget, ..Default::default() };
    let mut ok = true;
    let mut rows = vec![];
    for f in random_real_forms(seed, c.count, 5) {
        let cert = solve(&f, &eps, &opts)?;
        let v = verify_certificate(&cert, &f, &eps)?;
        ok &= v.valid && cert.within_theorem_bound;
        rows.push(vec![f.to_string(), format!("{:?}", cert.m), report::fmt_f64(cert.weighted_norm), v.valid.to_string()]);
    }
    let csv = report::csv(&["form", "m", "weighted_norm", "verified"], &rows);
    Ok((ok, json!({"instances": c.count, "epsilon": c.epsilon}), vec![("solver_certificates.csv".into(), csv)]))
}

fn run_suite(name: &str, cfg: &CampaignConfig) -> Result<(bool, Value, Vec<(String, String)>)> {
    let seed = cfg.seed;
    match name {
        "tables" => suite_tables(&cfg.tables),
        "smallzeros" => suite_smallzeros(seed, &cfg.smallzeros),
        "gauss" => suite_gauss(seed, &cfg.gauss),
        "dichotomy" => suite_dichotomy(seed, &cfg.dichotomy),
        "kernel" => suite_kernel(),
        "moments" => suite_moments(seed, &cfg.moments),
        "vdc" => suite_vdc(seed, &cfg.vdc),
        "solver" => suite_solver(seed, &cfg.solver),
        other => Err(Error::Invalid(format!("unknown suite `{other}`"))),
    }
}

/// Runs the configured suites; a panicking or failing suite is reported
/// without stopping the others. Writes files when `output_dir` is set.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let mut suites = Vec::new();
    for name in &cfg.suites {
        let t = Instant::now();
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run_suite(name, cfg)));
        let (passed, details, files) = match res {
            Ok(Ok(x)) => x,
            Ok(Err(e)) => (false, json!({"error": e.to_string()}), vec![]),
            Err(_) => (false, json!({"error": "suite panicked"}), vec![]),
        };
        suites.push(SuiteReport { name: name.clone(), passed, details, files, elapsed_ms: t.elapsed().as_millis() as u64 });
    }
    let report = CampaignReport { seed: cfg.seed, passed: suites.iter().all(|s| s.passed), suites };
    if let Some(dir) = &cfg.output_dir {
        write_report(dir, &report)?;
    }
    Ok(report)
}

fn write_report(dir: &Path, r: &CampaignReport) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let doc = report::document("campaign/1", "campaign", r)?;
    std::fs::write(dir.join("summary.json"), report::to_json_string(&doc))?;
    for s in &r.suites {
        for (name, body) in &s.files {
            std::fs::write(dir.join(name), body)?;
        }
    }
    Ok(())
}
