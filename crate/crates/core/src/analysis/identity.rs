//! The smoothed counting identity ½Σ_box ψ(Q[m]) = Re ∫₀^∞ ∏S_j(α) ψ̂(α) dα.
//!
//! Every Q[m] in the box lies in [−B, B], so the integrand is a finite sum of
//! e(αQ[m])ψ̂(α) and the trapezoid rule with step h = 1/(B+1) is exact on the
//! whole line up to truncation at α = A.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernel::KernelSpec;
use super::quadrature::oscillatory_integral;
use super::weyl::{frac_phase, weyl_range, weyl_sum};
use super::{u_default, KahanC};
use crate::error::{Error, Result};
use crate::forms::DiagonalForm;

pub const BOX_LIMIT: u128 = 100_000_000;
const REANCHOR: u64 = 1024;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdentityResult {
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
    pub box_points: u64,
    /// lattice points with |Q[m]| < 1/2, the support of ψ
    pub support_points: u64,
    pub step: f64,
    pub alpha_max: f64,
    pub samples: u64,
    pub tail_bound: f64,
    pub quad_tolerance: f64,
}

/// Per-coordinate ranges of the box `P < |q_j|^{1/2} m_j < 2dP`.
pub fn box_ranges(q: &[f64], p: f64) -> Vec<(i64, i64)> {
    q.iter().map(|&x| weyl_range(x, p, q.len())).collect()
}

fn box_size(r: &[(i64, i64)]) -> u128 {
    r.iter().map(|&(lo, hi)| if hi >= lo { (hi - lo + 1) as u128 } else { 0 }).product()
}

/// Largest |Q| in the box, separately over the positive and negative parts.
fn q_extent(q: &[f64], r: &[(i64, i64)]) -> f64 {
    let (mut pos, mut neg) = (0.0, 0.0);
    for (&x, &(_, hi)) in q.iter().zip(r) {
        let v = x.abs() * (hi as f64) * (hi as f64);
        if x > 0.0 {
            pos += v;
        } else {
            neg += v;
        }
    }
    f64::max(pos, neg)
}

/// (½Σ ψ(Q[m]), support count) by enumerating all coordinates but the last
/// and solving for the last one inside |Q| < 1/2.
fn box_sum(q: &[f64], r: &[(i64, i64)], kernel: &KernelSpec) -> (f64, u64) {
    let d = q.len();
    // put the widest range last
    let last = (0..d).max_by_key(|&j| r[j].1 - r[j].0).unwrap_or(0);
    let order: Vec<usize> = (0..d).filter(|&j| j != last).chain([last]).collect();
    let qs: Vec<f64> = order.iter().map(|&j| q[j]).collect();
    let rs: Vec<(i64, i64)> = order.iter().map(|&j| r[j]).collect();
    let (qd, (lo_d, hi_d)) = (qs[d - 1], rs[d - 1]);
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    let mut count = 0u64;
    let mut m: Vec<i64> = rs[..d - 1].iter().map(|x| x.0).collect();
    loop {
        let s: f64 = (0..d - 1).map(|j| qs[j] * (m[j] * m[j]) as f64).sum();
        // m_d² must lie strictly between (−1/2 − s)/q_d and (1/2 − s)/q_d
        let (a, b) = ((-0.5 - s) / qd, (0.5 - s) / qd);
        let (a, b) = (a.min(b), a.max(b));
        if b > 0.0 {
            let from = (a.max(0.0).sqrt().floor() as i64 - 1).max(lo_d);
            let to = (b.sqrt().ceil() as i64 + 1).min(hi_d);
            for md in from..=to {
                let v = s + qd * (md * md) as f64;
                if v.abs() < 0.5 {
                    let psi = *cache.entry(v.to_bits()).or_insert_with(|| kernel.psi(v));
                    let y = 0.5 * psi - comp;
                    let t = acc + y;
                    comp = (t - acc) - y;
                    acc = t;
                    count += 1;
                }
            }
        }
        // odometer
        let mut j = 0;
        loop {
            if j == d - 1 {
                return (acc, count);
            }
            if m[j] < rs[j].1 {
                m[j] += 1;
                break;
            }
            m[j] = rs[j].0;
            j += 1;
        }
    }
}

/// Phase-recurrence evaluator of F(nh) = ∏_j S_j(nh) for n = 0, 1, 2, ...
struct ProductWalker {
    q: Vec<f64>,
    ms: Vec<Vec<f64>>,
    z: Vec<Vec<Complex64>>,
    w: Vec<Vec<Complex64>>,
    h: f64,
    n: u64,
}

impl ProductWalker {
    fn new(q: &[f64], r: &[(i64, i64)], h: f64) -> Self {
        let ms: Vec<Vec<f64>> = r.iter().map(|&(lo, hi)| (lo..=hi).map(|m| (m * m) as f64).collect()).collect();
        let unit = |t: f64| {
            let (s, c) = (TAU * t).sin_cos();
            Complex64::new(c, s)
        };
        let w = q.iter().zip(&ms).map(|(&x, v)| v.iter().map(|&m2| unit(frac_phase(h, x, m2))).collect()).collect();
        let z = ms.iter().map(|v| vec![Complex64::new(1.0, 0.0); v.len()]).collect();
        ProductWalker { q: q.to_vec(), ms, z, w, h, n: 0 }
    }

    fn current(&self) -> Complex64 {
        self.z.iter().map(|v| v.iter().sum::<Complex64>()).product()
    }

    fn advance(&mut self) {
        self.n += 1;
        if self.n % REANCHOR == 0 {
            let alpha = self.n as f64 * self.h;
            for ((zj, mj), &x) in self.z.iter_mut().zip(&self.ms).zip(&self.q) {
                for (z, &m2) in zj.iter_mut().zip(mj) {
                    let (s, c) = (TAU * frac_phase(alpha, x, m2)).sin_cos();
                    *z = Complex64::new(c, s);
                }
            }
        } else {
            for (zj, wj) in self.z.iter_mut().zip(&self.w) {
                for (z, w) in zj.iter_mut().zip(wj) {
                    *z *= w;
                }
            }
        }
    }
}

fn validate(form: &DiagonalForm, p: f64) -> Result<(Vec<f64>, Vec<(i64, i64)>, u128)> {
    if form.d() < 2 {
        return Err(Error::Domain("identity needs d >= 2".into()));
    }
    if !(p > 0.0) {
        return Err(Error::Domain("P must be positive".into()));
    }
    let q = form.approx().to_vec();
    let r = box_ranges(&q, p);
    let n = box_size(&r);
    if n > BOX_LIMIT {
        return Err(Error::TooLarge { points: n, limit: BOX_LIMIT });
    }
    Ok((q, r, n))
}

/// Smallest A (on a 2% geometric grid) with box·(∫_A^∞|ψ̂| + h·|ψ̂|(A)) below `tol`.
fn cutoff(kernel: &KernelSpec, box_points: f64, h: f64, tol: f64) -> Result<(f64, f64)> {
    let mut a = 1.0;
    loop {
        let bound = box_points * (kernel.hat_tail_bound(a) + h * kernel.hat_majorant(a).0);
        if bound < tol {
            return Ok((a, bound));
        }
        a *= 1.02;
        if a > 1e6 {
            return Err(Error::Quadrature("kernel tail does not reach the tolerance".into()));
        }
    }
}

/// Returns ½Σ_box ψ(Q[m]) and Re ∫₀^A ∏S_j ψ̂ with A set by `quad_tolerance`.
pub fn smoothed_count_identity(
    form: &DiagonalForm,
    p: f64,
    kernel: &KernelSpec,
    quad_tolerance: f64,
) -> Result<IdentityResult> {
    let (q, r, n) = validate(form, p)?;
    if n == 0 {
        return Ok(IdentityResult {
            lhs: 0.0,
            rhs: 0.0,
            difference: 0.0,
            box_points: 0,
            support_points: 0,
            step: 0.0,
            alpha_max: 0.0,
            samples: 0,
            tail_bound: 0.0,
            quad_tolerance,
        });
    }
    let (lhs, support) = box_sum(&q, &r, kernel);
    let h = 1.0 / (q_extent(&q, &r) + 1.0);
    let (a_max, tail_bound) = cutoff(kernel, n as f64, h, quad_tolerance)?;
    let steps = (a_max / h).ceil() as u64;
    let mut walker = ProductWalker::new(&q, &r, h);
    let mut acc = KahanC::default();
    acc.add(0.5 * walker.current().re, 0.0);
    for k in 1..=steps {
        walker.advance();
        let g = kernel.hat(k as f64 * h);
        if g != 0.0 {
            acc.add(walker.current().re * g, 0.0);
        }
    }
    let rhs = h * acc.value().re;
    Ok(IdentityResult {
        lhs,
        rhs,
        difference: (lhs - rhs).abs(),
        box_points: n as u64,
        support_points: support,
        step: h,
        alpha_max: a_max,
        samples: steps + 1,
        tail_bound,
        quad_tolerance,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RangeContribution {
    pub lo: f64,
    /// `None` for the unbounded last range
    pub hi: Option<f64>,
    /// Re ∫ ∏S_j ψ̂ over the range
    pub re: f64,
    /// ∫ |∏S_j| over the range (an upper bound for the last one)
    pub abs: f64,
    pub abs_is_bound: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IntegralDecomposition {
    /// 0, (8dP)^{-1}q^{-1/2}, (8dP)^{-1}q₀^{-1/2}, u(P)
    pub range_boundaries: [f64; 4],
    pub contributions: Vec<RangeContribution>,
    /// |Q|^{-1/2} Re ∫ ∏I(±α) ψ̂ over the first range
    pub m1: f64,
    /// first range minus m1
    pub r1: f64,
    /// ∫|∏S_j| over the second range
    pub r2: f64,
    pub m2: f64,
    /// last range, obtained as the identity total minus the first three
    pub r3: f64,
    pub total: f64,
}

/// Composite Simpson on [lo, hi] with at least `per_unit` points per unit length.
fn simpson(lo: f64, hi: f64, per_unit: f64, mut f: impl FnMut(f64) -> (f64, f64)) -> (f64, f64) {
    if hi <= lo {
        return (0.0, 0.0);
    }
    let mut n = (((hi - lo) * per_unit).ceil() as u64).max(2);
    n += n % 2;
    let h = (hi - lo) / n as f64;
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..=n {
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let (x, y) = f(lo + h * i as f64);
        a += w * x;
        b += w * y;
    }
    (a * h / 3.0, b * h / 3.0)
}

/// Splits Re ∫₀^∞ ∏S_j ψ̂ at the three interior cut points and reports each part.
pub fn integral_decomposition(
    form: &DiagonalForm,
    p: f64,
    kernel: &KernelSpec,
    quad_tolerance: f64,
) -> Result<IntegralDecomposition> {
    let (q, r, n) = validate(form, p)?;
    let d = q.len();
    let (q0, qmax, _) = form.extremes();
    let c1 = 1.0 / (8.0 * d as f64 * p * qmax.sqrt());
    let c2 = 1.0 / (8.0 * d as f64 * p * q0.sqrt());
    let up = u_default(p).max(c2);
    let per_unit = 16.0 * (q_extent(&q, &r) + 1.0);
    let f = |a: f64| {
        let z: Complex64 = q.iter().map(|&x| weyl_sum(x, a, p, d)).product();
        let g = kernel.hat(a);
        ((z * g).re, z.norm())
    };
    let (re1, abs1) = simpson(0.0, c1, per_unit, f);
    let (re2, abs2) = simpson(c1, c2, per_unit, f);
    let (re3, abs3) = simpson(c2, up, per_unit, f);
    let det_sqrt = q.iter().map(|x| x.abs().sqrt()).product::<f64>();
    let mut err = None;
    let (m1, _) = simpson(0.0, c1, per_unit, |a| {
        let mut z = Complex64::new(1.0, 0.0);
        for &x in &q {
            match oscillatory_integral(x.signum() * a, p, d) {
                Ok(i) => z *= i,
                Err(e) => err = Some(e),
            }
        }
        ((z * kernel.hat(a)).re / det_sqrt, 0.0)
    });
    if let Some(e) = err {
        return Err(e);
    }
    let total = smoothed_count_identity(form, p, kernel, quad_tolerance)?.rhs;
    let tail_abs = n as f64 * kernel.hat_tail_bound(up);
    let r3 = total - re1 - re2 - re3;
    Ok(IntegralDecomposition {
        range_boundaries: [0.0, c1, c2, up],
        contributions: vec![
            RangeContribution { lo: 0.0, hi: Some(c1), re: re1, abs: abs1, abs_is_bound: false },
            RangeContribution { lo: c1, hi: Some(c2), re: re2, abs: abs2, abs_is_bound: false },
            RangeContribution { lo: c2, hi: Some(up), re: re3, abs: abs3, abs_is_bound: false },
            RangeContribution { lo: up, hi: None, re: r3, abs: tail_abs, abs_is_bound: true },
        ],
        m1,
        r1: re1 - m1,
        r2: abs2,
        m2: re3,
        r3,
        total,
    })
}
