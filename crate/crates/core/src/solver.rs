//! Small solutions of |Q[m]| < ε for real diagonal forms, with certificates.
//!
//! Strategy A enumerates ellipsoid shells Σ|q_i|m_i² ≤ C for doubling C and
//! returns the least-norm solution. Strategy B rounds q_i/ε to integers over a
//! common denominator, finds an isotropic vector of the integer form and
//! checks it against the real form.

use std::cmp::Ordering;
use std::time::Instant;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{theorem_bound, BoundParameters};
use crate::forms::{DiagonalForm, IntegerForm};
use crate::precision::{Hp, PRECISION_CAP};
use crate::rational::min_isotropic;

pub const START_PRECISION: usize = 128;
pub const DEFAULT_DENOMINATOR: u64 = 1_000_000;
pub const DEFAULT_BUDGET: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ShellEnumeration,
    RationalReduction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Auto,
    Shell,
    Rational,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "shell" => Ok(Strategy::Shell),
            "rational" => Ok(Strategy::Rational),
            _ => Err(Error::Parse(format!("method `{s}` (expected auto, shell or rational)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub shells: u32,
    pub nodes: u64,
    /// f64 candidates that the interval check rejected or left open
    pub rejected: u64,
    pub indeterminate: u64,
    /// largest norm whose shell was fully scanned
    pub scanned_norm: f64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionCertificate {
    pub form: DiagonalForm,
    #[serde(with = "crate::report::vec_i64_str")]
    pub m: Vec<i64>,
    /// Q[m] to about 30 significant digits
    pub q_value: String,
    pub q_value_f64: f64,
    pub weighted_norm: f64,
    pub epsilon: String,
    pub c_d: f64,
    pub bound: Option<BoundParameters>,
    pub within_theorem_bound: bool,
    pub method: Method,
    pub search_stats: SolveStats,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// largest weighted norm Σ|q_i|m_i² searched, in the units of the input form
    pub budget: f64,
    pub strategy: Strategy,
    pub denominator: u64,
    pub c_d: f64,
    /// starting bits for the interval check
    pub precision: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::Auto,
            denominator: DEFAULT_DENOMINATOR,
            c_d: 1.0,
            precision: START_PRECISION,
        }
    }
}

/// Outcome of an interval comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    True,
    False,
    Indeterminate,
}

/// Decides `|Q[m]| < 1` for a form already divided by ε, escalating the
/// working precision from `start` bits up to the cap. Returns the decision
/// and the precision that settled it.
pub fn certify_below_one(form: &DiagonalForm, m: &[i64], start: usize) -> (Decision, usize) {
    if let Some(v) = form.evaluate_exact(m) {
        let one = BigRational::from_integer(1.into());
        let d = if v.abs() < one { Decision::True } else { Decision::False };
        return (d, 0);
    }
    let norm_f = form.weighted_norm_f64(m);
    let mut bits = start.max(64);
    loop {
        let mut hp = Hp::new(bits);
        let v = evaluate_hp(form, m, &mut hp);
        let one = hp.f64(1.0);
        let margin = hp.sub(&one, &v.abs());
        let margin = hp.to_f64(&margin);
        let err = error_bound(norm_f, form.d(), bits);
        if margin > 2.0 * err {
            return (Decision::True, bits);
        }
        if margin < -2.0 * err {
            return (Decision::False, bits);
        }
        if bits >= PRECISION_CAP {
            return (Decision::Indeterminate, bits);
        }
        bits = (bits * 2).min(PRECISION_CAP);
    }
}

fn error_bound(norm: f64, d: usize, bits: usize) -> f64 {
    (norm * 1.01 + 1.0) * (d as f64 + 8.0) * 2f64.powi(-(bits as i32 - 8))
}

fn evaluate_hp(form: &DiagonalForm, m: &[i64], hp: &mut Hp) -> BigFloat {
    let mut acc = hp.f64(0.0);
    for (c, &x) in form.coeffs().iter().zip(m) {
        let cv = c.to_hp(hp);
        let x2 = hp.i128((x as i128) * (x as i128));
        acc = hp.add(&acc, &hp.mul(&cv, &x2));
    }
    acc
}

fn q_value_string(form: &DiagonalForm, m: &[i64]) -> (String, f64) {
    if let Some(v) = form.evaluate_exact(m) {
        let s = if v.is_integer() { v.numer().to_string() } else { v.to_string() };
        return (s, v.to_f64().unwrap_or(f64::NAN));
    }
    let mut hp = Hp::new(256);
    let v = evaluate_hp(form, m, &mut hp);
    if v.is_zero() {
        return ("0".into(), 0.0);
    }
    let f = hp.to_f64(&v);
    (format_sig(&hp.format(&v), 30), f)
}

/// Trims an astro-float decimal string to `digits` significant digits.
fn format_sig(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mut out = String::new();
    let mut seen = 0;
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if seen >= digits {
                continue;
            }
            if ch != '0' || seen > 0 {
                seen += 1;
            }
        }
        out.push(ch);
    }
    format!("{out}{}", exp.replace("e+", "e"))
}

/// Compares weighted norms, treating values equal to 200 bits as ties.
fn cmp_norm(form: &DiagonalForm, a: &(f64, Vec<i64>), b: &(f64, Vec<i64>)) -> Ordering {
    let scale = a.0.abs().max(b.0.abs()).max(1.0);
    if (a.0 - b.0).abs() > 1e-9 * scale {
        return a.0.total_cmp(&b.0);
    }
    if let (Some(x), Some(y)) = (form.weighted_norm_exact(&a.1), form.weighted_norm_exact(&b.1)) {
        return x.cmp(&y);
    }
    let mut hp = Hp::new(256);
    let abs_form = |m: &[i64], hp: &mut Hp| {
        let mut acc = hp.f64(0.0);
        for (c, &x) in form.coeffs().iter().zip(m) {
            let cv = c.abs().to_hp(hp);
            let x2 = hp.i128((x as i128) * (x as i128));
            acc = hp.add(&acc, &hp.mul(&cv, &x2));
        }
        acc
    };
    let x = abs_form(&a.1, &mut hp);
    let y = abs_form(&b.1, &mut hp);
    let diff = hp.sub(&x, &y);
    let tiny = (Hp::exponent(&diff)) < Hp::exponent(&x) - 200;
    if diff.is_zero() || tiny {
        Ordering::Equal
    } else if diff.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Smaller norm first, then the lexicographically larger vector.
fn better(form: &DiagonalForm, a: &(f64, Vec<i64>), b: &(f64, Vec<i64>)) -> bool {
    match cmp_norm(form, a, b) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.1 > b.1,
    }
}

struct RealLayout {
    order: Vec<usize>,
    coef: Vec<f64>,
    pos_after: Vec<bool>,
    neg_after: Vec<bool>,
}

impl RealLayout {
    fn new(q: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..q.len()).collect();
        order.sort_by(|&i, &j| q[j].abs().total_cmp(&q[i].abs()).then(i.cmp(&j)));
        let coef: Vec<f64> = order.iter().map(|&i| q[i]).collect();
        let n = coef.len();
        let (mut pos_after, mut neg_after) = (vec![false; n + 1], vec![false; n + 1]);
        for j in (0..n).rev() {
            pos_after[j] = pos_after[j + 1] || coef[j] > 0.0;
            neg_after[j] = neg_after[j + 1] || coef[j] < 0.0;
        }
        RealLayout { order, coef, pos_after, neg_after }
    }

    fn unsort(&self, m: &[i64]) -> Vec<i64> {
        let mut out = vec![0; m.len()];
        for (k, &i) in self.order.iter().enumerate() {
            out[i] = m[k];
        }
        out
    }
}

const SLACK: f64 = 1e-9;

struct Search<'a> {
    lay: &'a RealLayout,
    form: &'a DiagonalForm,
    cap: f64,
    best: Option<(f64, Vec<i64>)>,
    nodes: u64,
    rejected: u64,
    indeterminate: u64,
    prec: usize,
}

impl Search<'_> {
    fn bound(&self) -> f64 {
        self.best.as_ref().map_or(self.cap, |b| b.0.min(self.cap)) * (1.0 + SLACK)
    }

    fn hit(&mut self, m: &[i64], norm: f64) {
        let real = self.lay.unsort(m);
        match certify_below_one(self.form, &real, self.prec).0 {
            Decision::True => {
                let cand = (norm, real);
                if self.best.as_ref().is_none_or(|b| better(self.form, &cand, b)) {
                    self.best = Some(cand);
                }
            }
            Decision::False => self.rejected += 1,
            Decision::Indeterminate => self.indeterminate += 1,
        }
    }

    fn dfs(&mut self, j: usize, m: &mut Vec<i64>, v: f64, norm: f64) {
        self.nodes += 1;
        let lay = self.lay;
        let n = lay.coef.len();
        let rem = self.bound() - norm;
        if rem < 0.0 {
            return;
        }
        let tol = 1.0 + SLACK * (1.0 + norm);
        if v >= tol && !(lay.neg_after[j] && v - tol < rem) {
            return;
        }
        if v <= -tol && !(lay.pos_after[j] && -v - tol < rem) {
            return;
        }
        let c = lay.coef[j];
        let a = c.abs();
        if j + 1 == n {
            // |v + c x²| < 1 puts x² between (−1 − v)/c and (1 − v)/c
            let (lo, hi) = ((-tol - v) / c, (tol - v) / c);
            let (lo, hi) = (lo.min(hi).max(0.0), lo.max(hi).min(rem / a));
            if hi < lo {
                return;
            }
            let from = (lo.sqrt().floor() as i64 - 1).max(0);
            let to = hi.sqrt().ceil() as i64 + 1;
            for x in from..=to {
                let x2 = (x as f64) * (x as f64);
                let val = v + c * x2;
                let nm = norm + a * x2;
                if val.abs() < tol && nm <= self.bound() {
                    m[j] = x;
                    if m.iter().any(|&y| y != 0) {
                        self.hit(m, nm);
                    }
                }
            }
            m[j] = 0;
            return;
        }
        let top = (rem / a).sqrt().floor() as i64;
        for x in 0..=top {
            let x2 = (x as f64) * (x as f64);
            if norm + a * x2 > self.bound() {
                break;
            }
            m[j] = x;
            self.dfs(j + 1, m, v + c * x2, norm + a * x2);
        }
        m[j] = 0;
    }
}

struct PassResult {
    best: Option<(f64, Vec<i64>)>,
    nodes: u64,
    rejected: u64,
    indeterminate: u64,
}

/// Least-norm solution of |Q[m]| < 1 with norm ≤ cap (Q already divided by ε).
fn shell_pass(form: &DiagonalForm, lay: &RealLayout, cap: f64, prec: usize) -> PassResult {
    let n = lay.coef.len();
    let a0 = lay.coef[0].abs();
    let top = (cap * (1.0 + SLACK) / a0).sqrt().floor() as i64;
    let parts: Vec<PassResult> = (0..=top)
        .into_par_iter()
        .map(|x| {
            let mut s = Search { lay, form, cap, best: None, nodes: 0, rejected: 0, indeterminate: 0, prec };
            let mut m = vec![0i64; n];
            m[0] = x;
            let x2 = (x as f64) * (x as f64);
            if n == 1 {
                return PassResult { best: None, nodes: 1, rejected: 0, indeterminate: 0 };
            }
            s.dfs(1, &mut m, lay.coef[0] * x2, a0 * x2);
            PassResult { best: s.best, nodes: s.nodes, rejected: s.rejected, indeterminate: s.indeterminate }
        })
        .collect();
    let mut out = PassResult { best: None, nodes: 0, rejected: 0, indeterminate: 0 };
    for p in parts {
        out.nodes += p.nodes;
        out.rejected += p.rejected;
        out.indeterminate += p.indeterminate;
        if let Some(c) = p.best {
            if c.0 <= cap * (1.0 + SLACK) && out.best.as_ref().is_none_or(|b| better(form, &c, b)) {
                out.best = Some(c);
            }
        }
    }
    out
}

/// Strategy A on the ε-normalized form: returns (m, stats) or a certified-empty error.
fn solve_shell(norm_form: &DiagonalForm, budget: f64, prec: usize, stats: &mut SolveStats) -> Result<Vec<i64>> {
    let q = norm_form.approx();
    let lay = RealLayout::new(q);
    let (q0, _, _) = norm_form.extremes();
    let mut cap = (2.0 * q0).max(1.0);
    loop {
        cap = cap.min(budget);
        let r = shell_pass(norm_form, &lay, cap, prec);
        stats.shells += 1;
        stats.nodes += r.nodes;
        stats.rejected += r.rejected;
        stats.indeterminate += r.indeterminate;
        if let Some((_, m)) = r.best {
            return Ok(m);
        }
        stats.scanned_norm = cap;
        if cap >= budget {
            return Err(Error::CertifiedEmpty { norm_bound: format!("{budget:e}") });
        }
        cap *= 2.0;
    }
}

/// Strategy B: q_i/ε rounded to n_i/D, an isotropic vector of (n_i), then an
/// interval check against the real form.
fn solve_rational(norm_form: &DiagonalForm, budget: f64, denominator: u64, prec: usize, stats: &mut SolveStats) -> Result<Option<Vec<i64>>> {
    let d = BigRational::from_integer(BigInt::from(denominator));
    let mut ints = Vec::with_capacity(norm_form.d());
    for c in norm_form.coeffs() {
        let scaled = match c.as_rational() {
            Some(r) => r * &d,
            None => BigRational::from_f64(c.to_f64()).ok_or(Error::Overflow)? * &d,
        };
        let n = scaled.round().to_integer().to_i64().ok_or(Error::Overflow)?;
        if n == 0 {
            return Ok(None);
        }
        ints.push(n);
    }
    let int_form = IntegerForm::new(ints)?;
    if !int_form.is_indefinite() {
        return Ok(None);
    }
    let int_budget = (budget * denominator as f64 * 1.01).ceil().min(crate::rational::MAX_BUDGET as f64) as u128;
    let w = match min_isotropic(&int_form, int_budget.max(1)) {
        Ok(w) => w,
        Err(Error::Overflow) => return Ok(None),
        Err(e) => return Err(e),
    };
    stats.shells += 1;
    let Some(w) = w else { return Ok(None) };
    match certify_below_one(norm_form, &w.m, prec).0 {
        Decision::True => Ok(Some(w.m)),
        Decision::False => {
            stats.rejected += 1;
            Ok(None)
        }
        Decision::Indeterminate => {
            stats.indeterminate += 1;
            Ok(None)
        }
    }
}

fn epsilon_string(e: &BigRational) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        e.to_string()
    }
}

/// Parses ε from a decimal, fraction or exponent string.
pub fn parse_epsilon(s: &str) -> Result<BigRational> {
    let v = crate::forms::parse_number(s).ok_or_else(|| Error::Parse(s.to_string()))?;
    if !v.is_positive() {
        return Err(Error::Domain(format!("epsilon must be positive, got {s}")));
    }
    Ok(v)
}

/// Builds the certificate fields shared by both strategies.
fn certificate(
    form: &DiagonalForm,
    norm_form: &DiagonalForm,
    epsilon: &BigRational,
    m: Vec<i64>,
    method: Method,
    c_d: f64,
    stats: SolveStats,
) -> SolutionCertificate {
    let (q_value, q_value_f64) = q_value_string(form, &m);
    let weighted_norm = form.weighted_norm_f64(&m);
    let bound = if form.d() >= 5 { theorem_bound(norm_form, c_d).ok() } else { None };
    let eps_f = epsilon.to_f64().unwrap_or(f64::NAN);
    let within = bound.as_ref().is_some_and(|b| b.admits(weighted_norm / eps_f));
    SolutionCertificate {
        form: form.clone(),
        m,
        q_value,
        q_value_f64,
        weighted_norm,
        epsilon: epsilon_string(epsilon),
        c_d,
        bound,
        within_theorem_bound: within,
        method,
        search_stats: stats,
    }
}

/// Least-norm m ≠ 0 with |Q[m]| < ε within the budget.
pub fn solve(form: &DiagonalForm, epsilon: &BigRational, opts: &SolveOptions) -> Result<SolutionCertificate> {
    let sig = form.signature();
    if !form.is_indefinite() {
        return Err(Error::Definite { r: sig.r, s: sig.s });
    }
    if !(opts.budget > 0.0) {
        return Err(Error::Domain("budget must be positive".into()));
    }
    let t = Instant::now();
    let norm_form = form.normalize_epsilon(epsilon)?;
    let eps_f = epsilon.to_f64().unwrap_or(f64::NAN);
    let budget = opts.budget / eps_f;
    let prec = opts.precision.max(64);
    let mut stats = SolveStats::default();
    let finish = |m: Vec<i64>, method: Method, mut stats: SolveStats| {
        stats.elapsed_ms = t.elapsed().as_millis() as u64;
        stats.scanned_norm *= eps_f;
        Ok(certificate(form, &norm_form, epsilon, m, method, opts.c_d, stats))
    };
    if opts.strategy == Strategy::Rational {
        if let Some(m) = solve_rational(&norm_form, budget, opts.denominator, prec, &mut stats)? {
            return finish(m, Method::RationalReduction, stats);
        }
    }
    match solve_shell(&norm_form, budget, prec, &mut stats) {
        Ok(m) => finish(m, Method::ShellEnumeration, stats),
        Err(Error::CertifiedEmpty { .. }) if opts.strategy == Strategy::Auto => {
            match solve_rational(&norm_form, budget, opts.denominator, prec, &mut stats)? {
                Some(m) => finish(m, Method::RationalReduction, stats),
                None => Err(Error::CertifiedEmpty { norm_bound: format!("{:e}", opts.budget) }),
            }
        }
        Err(Error::CertifiedEmpty { .. }) => Err(Error::CertifiedEmpty { norm_bound: format!("{:e}", opts.budget) }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub decision: Decision,
    pub precision_bits: usize,
    pub issues: Vec<String>,
}

/// Re-checks a certificate: m ≠ 0, |Q[m]| < ε by interval evaluation,
/// the recorded norm, and the theorem-bound flag.
pub fn verify_certificate(cert: &SolutionCertificate, form: &DiagonalForm, epsilon: &BigRational) -> Result<Verification> {
    let mut issues = Vec::new();
    if cert.m.len() != form.d() {
        issues.push(format!("m has {} components, form has {}", cert.m.len(), form.d()));
        return Ok(Verification { valid: false, decision: Decision::False, precision_bits: 0, issues });
    }
    if cert.m.iter().all(|&x| x == 0) {
        issues.push("m is the zero vector".into());
    }
    let norm_form = form.normalize_epsilon(epsilon)?;
    let (decision, bits) = certify_below_one(&norm_form, &cert.m, 2 * START_PRECISION);
    match decision {
        Decision::True => {}
        Decision::False => issues.push("value drift: |Q[m]| >= epsilon".into()),
        Decision::Indeterminate => issues.push(format!("|Q[m]| < epsilon undecided at {PRECISION_CAP} bits")),
    }
    let norm = form.weighted_norm_f64(&cert.m);
    if (norm - cert.weighted_norm).abs() > 1e-12 * norm.max(1.0) {
        issues.push(format!("norm mismatch: recorded {} recomputed {norm}", cert.weighted_norm));
    }
    let eps_f = epsilon.to_f64().unwrap_or(f64::NAN);
    let expected = if form.d() >= 5 {
        theorem_bound(&norm_form, cert.c_d).ok().is_some_and(|b| b.admits(norm / eps_f))
    } else {
        false
    };
    if expected != cert.within_theorem_bound {
        issues.push(format!("bound misflag: recorded {} expected {expected}", cert.within_theorem_bound));
    }
    Ok(Verification { valid: issues.is_empty(), decision, precision_bits: bits, issues })
}
