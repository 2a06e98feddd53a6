//! Command-line front end. [`run`] parses arguments, dispatches, and
//! returns the process exit code: 0 ok, 1 usage, 2 certified-empty,
//! 3 failed check.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::kernel::default_kernel;
use crate::analysis::{
    fourth_moment_count, fourth_moment_integral, integral_decomposition, r2_moment, smoothed_count_identity, weyl_sum,
};
use crate::campaign::{kernel_checks, run_campaign, CampaignConfig};
use crate::dirichlet::{count_approximants, dirichlet_pair};
use crate::error::{Error, Result};
use crate::exponents::{
    beta, beta_lower_bound, exponent_table, p_exponent, ratio_to_string, restricted_signatures, theorem_bound,
    two_beta, two_beta_k_worst,
};
use crate::forms::{DiagonalForm, IntegerForm};
use crate::rational::{min_isotropic_with_stats, IsotropicWitness};
use crate::report::{self, fmt_f64};
use crate::solver::{parse_epsilon, solve, verify_certificate, SolutionCertificate, SolveOptions, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

pub const SCHEMA: &str = "oppenheim/1";
pub const CERT_SCHEMA: &str = "cert/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "oppenheim", version, about = "Small zeros of diagonal quadratic forms and circle-method numerics")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Starting precision in bits for interval checks
    #[arg(long, global = true, default_value_t = crate::solver::START_PRECISION)]
    pub precision: usize,
    /// Worker threads (also OPPENHEIM_THREADS)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized commands
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Schlickewei exponent, restrictions and coupling exponents for a signature
    Beta(BetaArgs),
    /// Exponent tables for a range of dimensions
    Tables(TablesArgs),
    /// Least isotropic vector of an integer form
    Smallzeros(SmallZerosArgs),
    /// Least solution of |Q[m]| < epsilon with a certificate
    Solve(SolveArgs),
    /// Dirichlet approximation of theta with denominator at most n
    Approx(ApproxArgs),
    /// Count approximants |theta x - y| < eta with 0 < |x| < X
    Dichotomy(DichotomyArgs),
    /// Weyl sums S_j(alpha) for each coefficient
    Weyl(WeylArgs),
    /// Kernel summary, decay check and samples of its Fourier transform
    Kernel(KernelArgs),
    /// Second moment of r(n) and fourth moments of squares
    Moments(MomentsArgs),
    /// Smoothed counting identity on the box P < |q_j|^(1/2) m_j < 2dP
    Identity(IdentityArgs),
    /// Re-check a solution certificate
    Verify(VerifyArgs),
    /// Run verification suites from a JSON config
    Campaign(CampaignArgs),
}

#[derive(Args, Debug)]
pub struct BetaArgs {
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    /// Coefficients; the signature is taken from them and the theorem bound is added
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub cd: f64,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, default_value_t = 8)]
    pub d_min: usize,
    #[arg(long, default_value_t = 12)]
    pub d_max: usize,
}

#[derive(Args, Debug)]
pub struct SmallZerosArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// JSON file holding a list of coefficient lists
    #[arg(long)]
    pub batch: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u128,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, default_value_t = crate::solver::DEFAULT_BUDGET)]
    pub budget: f64,
    #[arg(long, default_value = "auto")]
    pub method: String,
    #[arg(long, default_value_t = 1.0)]
    pub cd: f64,
    #[arg(long, default_value_t = crate::solver::DEFAULT_DENOMINATOR)]
    pub denominator: u64,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct DichotomyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long)]
    pub eta: f64,
    #[arg(long)]
    pub x_max: f64,
    /// Include the list of pairs
    #[arg(long)]
    pub pairs: bool,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    #[arg(long)]
    pub p: f64,
    #[arg(long, conflicts_with = "alpha_grid")]
    pub alpha: Option<f64>,
    /// lo:hi:n, n equally spaced points
    #[arg(long)]
    pub alpha_grid: Option<String>,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 1000.0)]
    pub alpha_max: f64,
    /// Number of samples of the transform on [0, alpha_max]
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
    /// Also run the grid checks on psi
    #[arg(long)]
    pub checks: bool,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub lo: Option<i64>,
    #[arg(long)]
    pub hi: Option<i64>,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Also report the four-range split of the integral
    #[arg(long)]
    pub decompose: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate JSON file
    #[arg(long)]
    pub cert: PathBuf,
    /// Override the form stored in the certificate
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
}

#[derive(Args, Debug)]
pub struct CampaignArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (also OPPENHEIM_OUT_DIR)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of a command: a JSON document plus an optional flat table.
pub struct Output {
    pub doc: Value,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pub code: i32,
}

impl Output {
    fn new(doc: Value) -> Self {
        Output { doc, table: None, code: EXIT_OK }
    }

    fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Json => report::to_json_string(&self.doc),
            Format::Csv => match &self.table {
                Some((h, rows)) => {
                    let h: Vec<&str> = h.iter().map(|s| s.as_str()).collect();
                    report::csv(&h, rows)
                }
                None => {
                    let mut rows = vec![];
                    flatten("", &self.doc, &mut rows);
                    report::csv(&["key", "value"], &rows.into_iter().map(|(k, v)| vec![k, v]).collect::<Vec<_>>())
                }
            },
            Format::Text => {
                let mut rows = vec![];
                flatten("", &self.doc, &mut rows);
                rows.into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(o) => o.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn doc<T: serde::Serialize>(kind: &str, payload: &T) -> Result<Value> {
    report::document(SCHEMA, kind, payload)
}

fn cmd_beta(a: &BetaArgs) -> Result<Output> {
    let (r, s, bound) = match &a.coeffs {
        Some(c) => {
            let f = DiagonalForm::parse(c)?;
            let sig = f.signature();
            let b = theorem_bound(&f, a.cd)?;
            (sig.r, sig.s, Some(b))
        }
        None => match (a.r, a.s) {
            (Some(r), Some(s)) => (r, s, None),
            _ => return Err(Error::Invalid("give --r and --s, or --coeffs".into())),
        },
    };
    let d = r + s;
    let mut restricted = vec![];
    for k in 1..=3usize {
        if d < k + 5 {
            continue;
        }
        let sigs = restricted_signatures(r, s, k)?;
        restricted.push(json!({
            "k": k,
            "signatures": sigs,
            "two_beta_k": two_beta_k_worst(r, s, k).ok().map(|x| ratio_to_string(&x)),
            "p": p_exponent(k, r, s).ok().map(|x| ratio_to_string(&x)),
        }));
    }
    let payload = json!({
        "r": r,
        "s": s,
        "d": d,
        "beta": ratio_to_string(&beta(r, s)?),
        "two_beta": ratio_to_string(&two_beta(r, s)?),
        "beta_lower_bound": ratio_to_string(&beta_lower_bound(d)?),
        "restricted": restricted,
        "bound": bound,
    });
    Ok(Output::new(doc("beta", &payload)?))
}

fn sig_str(r: usize, s: usize) -> String {
    format!("({r},{s})")
}

fn cmd_tables(a: &TablesArgs) -> Result<Output> {
    if a.d_min > a.d_max {
        return Err(Error::Invalid("d-min exceeds d-max".into()));
    }
    let tables: Vec<_> = (a.d_min..=a.d_max).map(exponent_table).collect::<Result<_>>()?;
    let opt = |x: &Option<num_rational::Rational64>| x.map(|v| ratio_to_string(&v)).unwrap_or_default();
    let mut rows = vec![];
    for t in &tables {
        for row in &t.rows {
            let restricted = row
                .restricted
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let s: Vec<String> = v.iter().map(|x| sig_str(x.r, x.s)).collect();
                    format!("k{}:{}", k + 1, s.join(" "))
                })
                .collect::<Vec<_>>()
                .join("; ");
            rows.push(vec![
                t.d.to_string(),
                sig_str(row.r, row.s),
                ratio_to_string(&row.two_beta),
                restricted,
                opt(&row.two_beta_k[2]),
                opt(&row.two_beta_k[1]),
                opt(&row.two_beta_k[0]),
                opt(&row.p[2]),
                opt(&row.p[1]),
                opt(&row.p[0]),
            ]);
        }
    }
    Ok(Output::new(doc("tables", &json!({ "tables": tables }))?).with_table(
        &["d", "signature", "two_beta", "restricted", "two_beta_3", "two_beta_2", "two_beta_1", "p_3", "p_2", "p_1"],
        rows,
    ))
}

fn smallzero_entry(f: &IntegerForm, budget: u128) -> Result<(Value, bool)> {
    let t = std::time::Instant::now();
    let (w, stats) = min_isotropic_with_stats(f, budget)?;
    let sig = f.signature();
    let bound_base = if f.d() >= 5 {
        let b = beta(sig.r, sig.s)?;
        let e = (2.0 * (*b.numer() as f64) / (*b.denom() as f64) + 1.0) / f.d() as f64;
        use num_traits::ToPrimitive;
        Some(f.abs_det().to_f64().unwrap_or(f64::INFINITY).powf(e))
    } else {
        None
    };
    let found = w.is_some();
    let norm = w.as_ref().map(|w: &IsotropicWitness| w.weighted_norm);
    let ratio = match (norm, bound_base) {
        (Some(n), Some(b)) => Some(n as f64 / b),
        _ => None,
    };
    Ok((
        json!({
            "coeffs": f.coeffs(),
            "witness": w,
            "norm": norm.map(|n| n.to_string()),
            "bound_base": bound_base,
            "ratio": ratio,
            "stats": stats,
            "elapsed_ms": t.elapsed().as_millis() as u64,
        }),
        found,
    ))
}

fn int_form(s: &str) -> Result<IntegerForm> {
    DiagonalForm::parse(s)?
        .to_integer_form()
        .ok_or_else(|| Error::Invalid(format!("`{s}` is not an integer form")))
}

fn cmd_smallzeros(a: &SmallZerosArgs) -> Result<Output> {
    match (&a.coeffs, &a.batch) {
        (Some(c), None) => {
            let (v, found) = smallzero_entry(&int_form(c)?, a.budget)?;
            let mut out = Output::new(doc("smallzeros", &v)?);
            if !found {
                out.code = EXIT_EMPTY;
            }
            Ok(out)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let list: Vec<Value> = serde_json::from_str(&text)?;
            let mut items = vec![];
            let mut all = true;
            for item in &list {
                let f = DiagonalForm::new(crate::forms::coeffs_from_json(item)?)?
                    .to_integer_form()
                    .ok_or_else(|| Error::Invalid(format!("{item} is not an integer form")))?;
                let (v, found) = smallzero_entry(&f, a.budget)?;
                all &= found;
                items.push(v);
            }
            let mut out = Output::new(doc("smallzeros", &json!({ "results": items }))?);
            if !all {
                out.code = EXIT_EMPTY;
            }
            Ok(out)
        }
        _ => Err(Error::Invalid("give exactly one of --coeffs and --batch".into())),
    }
}

pub fn certificate_document(c: &SolutionCertificate) -> Result<Value> {
    report::document(CERT_SCHEMA, "certificate", c)
}

fn cmd_solve(a: &SolveArgs, precision: usize) -> Result<Output> {
    let f = DiagonalForm::parse(&a.coeffs)?;
    let eps = parse_epsilon(&a.epsilon)?;
    let opts = SolveOptions {
        budget: a.budget,
        strategy: a.method.parse::<Strategy>()?,
        denominator: a.denominator,
        c_d: a.cd,
        precision,
    };
    match solve(&f, &eps, &opts) {
        Ok(c) => Ok(Output::new(certificate_document(&c)?)),
        Err(Error::CertifiedEmpty { norm_bound }) => {
            let mut out = Output::new(report::document(
                CERT_SCHEMA,
                "certified_empty",
                &json!({"form": f, "epsilon": a.epsilon, "norm_bound": norm_bound}),
            )?);
            out.code = EXIT_EMPTY;
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

fn cmd_approx(a: &ApproxArgs) -> Result<Output> {
    let p = dirichlet_pair(a.theta, a.n)?;
    let payload = json!({"theta": a.theta, "n": a.n, "pair": p});
    Ok(Output::new(doc("approx", &payload)?))
}

fn cmd_dichotomy(a: &DichotomyArgs) -> Result<Output> {
    let mut r = count_approximants(a.theta, a.eta, a.x_max)?;
    let rows: Vec<Vec<String>> = r.pairs.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect();
    if !a.pairs {
        r.pairs.clear();
    }
    let mut v = serde_json::to_value(&r)?;
    if !a.pairs {
        v.as_object_mut().map(|o| o.remove("pairs"));
    }
    v["linear_bound"] = json!(24.0 * a.eta * a.x_max);
    Ok(Output::new(doc("dichotomy", &v)?).with_table(&["x", "y"], rows))
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Parse(format!("alpha grid `{s}` (expected lo:hi:n)"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn cmd_weyl(a: &WeylArgs) -> Result<Output> {
    let f = DiagonalForm::parse(&a.coeffs)?;
    let alphas = match (&a.alpha, &a.alpha_grid) {
        (Some(x), None) => vec![*x],
        (None, Some(g)) => parse_grid(g)?,
        _ => return Err(Error::Invalid("give --alpha or --alpha-grid".into())),
    };
    if !(a.p > 0.0) {
        return Err(Error::Domain("P must be positive".into()));
    }
    let d = f.d();
    let mut points = vec![];
    let mut rows = vec![];
    for &al in &alphas {
        let s: Vec<_> = f.approx().iter().map(|&q| weyl_sum(q, al, a.p, d)).collect();
        let prod: num_complex::Complex64 = s.iter().product();
        for (j, z) in s.iter().enumerate() {
            rows.push(vec![fmt_f64(al), j.to_string(), fmt_f64(z.re), fmt_f64(z.im), fmt_f64(z.norm())]);
        }
        points.push(json!({
            "alpha": al,
            "s": s.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "product": [prod.re, prod.im],
        }));
    }
    Ok(Output::new(doc("weyl", &json!({"form": f, "p": a.p, "points": points}))?)
        .with_table(&["alpha", "j", "re", "im", "abs"], rows))
}

fn cmd_kernel(a: &KernelArgs) -> Result<Output> {
    let k = default_kernel();
    if !(a.alpha_max > 1.0) || a.grid < 2 {
        return Err(Error::Invalid("need alpha-max > 1 and grid >= 2".into()));
    }
    let (decay_max, argmax) = k.decay_ratio_max(1.0, a.alpha_max, 2000);
    let mut rows = vec![];
    let mut samples = vec![];
    for i in 0..a.grid {
        let al = a.alpha_max * i as f64 / (a.grid - 1) as f64;
        let h = k.hat(al);
        let env = k.envelope(al);
        rows.push(vec![fmt_f64(al), fmt_f64(h), fmt_f64(env)]);
        samples.push(json!({"alpha": al, "hat": h, "envelope": env}));
    }
    let checks = if a.checks { Some(kernel_checks(a.alpha_max)?) } else { None };
    let failed = checks.as_ref().is_some_and(|c| !c.passed());
    let payload = json!({
        "kernel": k.summary(),
        "decay_max": decay_max,
        "decay_argmax": argmax,
        "samples": samples,
        "checks": checks,
    });
    let mut out = Output::new(doc("kernel", &payload)?).with_table(&["alpha", "hat", "envelope"], rows);
    if failed {
        out.code = EXIT_FAILURE;
    }
    Ok(out)
}

fn cmd_moments(a: &MomentsArgs) -> Result<Output> {
    let m = r2_moment(a.n)?;
    let n = a.n as f64;
    let mut payload = json!({
        "n": a.n,
        "r2_moment": m.to_string(),
        "ratio": m as f64 / (n * n.ln()),
        "ratio_constant": crate::analysis::moments::R2_RATIO_CONSTANT,
    });
    match (a.lo, a.hi) {
        (Some(lo), Some(hi)) => {
            let c = fourth_moment_count(lo, hi)?;
            let i = fourth_moment_integral(lo, hi)?;
            payload["fourth"] = json!({"lo": lo, "hi": hi, "count": c.to_string(), "integral": i});
        }
        (None, None) => {}
        _ => return Err(Error::Invalid("give both --lo and --hi".into())),
    }
    Ok(Output::new(doc("moments", &payload)?))
}

fn cmd_identity(a: &IdentityArgs) -> Result<Output> {
    let f = DiagonalForm::parse(&a.coeffs)?;
    let k = default_kernel();
    let r = smoothed_count_identity(&f, a.p, k, a.tol)?;
    let dec = if a.decompose { Some(integral_decomposition(&f, a.p, k, a.tol)?) } else { None };
    Ok(Output::new(doc("identity", &json!({"form": f, "p": a.p, "result": r, "decomposition": dec}))?))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Output> {
    let text = std::fs::read_to_string(&a.cert)?;
    let cert: SolutionCertificate = serde_json::from_str(&text)?;
    let form = match &a.coeffs {
        Some(c) => DiagonalForm::parse(c)?,
        None => cert.form.clone(),
    };
    let eps = parse_epsilon(a.epsilon.as_deref().unwrap_or(&cert.epsilon))?;
    let v = verify_certificate(&cert, &form, &eps)?;
    let mut out = Output::new(doc("verification", &v)?);
    if !v.valid {
        out.code = EXIT_FAILURE;
    }
    Ok(out)
}

fn cmd_campaign(a: &CampaignArgs, seed: Option<u64>, fmt: Format) -> Result<Output> {
    let mut cfg = CampaignConfig::load(&a.config)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(o) = a.out.clone().or_else(|| std::env::var_os("OPPENHEIM_OUT_DIR").map(PathBuf::from)) {
        cfg.output_dir = Some(o);
    }
    let _ = fmt;
    let r = run_campaign(&cfg)?;
    let rows = r.suites.iter().map(|s| vec![s.name.clone(), s.passed.to_string()]).collect();
    let mut out = Output::new(report::document("campaign/1", "campaign", &r)?).with_table(&["suite", "passed"], rows);
    if !r.passed {
        out.code = EXIT_FAILURE;
    }
    Ok(out)
}

fn configure_threads(n: Option<usize>) {
    let n = n.or_else(|| std::env::var("OPPENHEIM_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the command line `args` (program name first), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    configure_threads(cli.threads);
    let res = match &cli.command {
        Command::Beta(a) => cmd_beta(a),
        Command::Tables(a) => cmd_tables(a),
        Command::Smallzeros(a) => cmd_smallzeros(a),
        Command::Solve(a) => cmd_solve(a, cli.precision),
        Command::Approx(a) => cmd_approx(a),
        Command::Dichotomy(a) => cmd_dichotomy(a),
        Command::Weyl(a) => cmd_weyl(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Identity(a) => cmd_identity(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Campaign(a) => cmd_campaign(a, cli.seed, cli.format),
    };
    match res {
        Ok(o) => {
            let _ = out.write_all(o.render(cli.format).as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CertifiedEmpty { .. } => EXIT_EMPTY,
                Error::Io(_) | Error::Quadrature(_) | Error::Indeterminate(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            }
        }
    }
}
