//! Ingham's kernel: ψ̂(α) = ∏_k sinc(π a_k α) with a_k ∝ 1/(k·u(k+2−e)).
//!
//! With Σ a_k = 1 the density ψ lives on [−1/2, 1/2]. ψ̂ is the primary
//! object; ψ itself is recovered from samples of ψ̂ by a cosine series or an
//! FFT on a grid.

use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use rustfft::{num_complex::Complex64, FftPlanner};
use serde::{Deserialize, Serialize};

use super::u_default;
use crate::error::{Error, Result};

/// Explicit terms of (a_k); beyond this the sequence enters only through tail sums.
pub const K_MAX: usize = 1 << 18;
pub const DEFAULT_TOLERANCE: f64 = 0.05;
/// Calibrated bound for |ψ̂(α)|·exp(α/u(α)) on [1, 10³] (observed maximum ≈ 1.2151 at α = 1).
pub const DECAY_CONSTANT: f64 = 1.22;
/// Spacing of the ψ̂ samples behind pointwise ψ; 1/Δ must exceed the support width.
const PSI_SPACING: f64 = 0.25;
const PSI_HAT_FLOOR: f64 = 1e-20;

pub type UFunc = fn(f64) -> f64;

pub struct KernelSpec {
    /// a_1, a_2, ... a_{K_MAX}.
    pub a_seq: Vec<f64>,
    pub c: f64,
    pub truncation_tolerance: f64,
    pub u_name: String,
    u_func: UFunc,
    /// Σ a_k estimate (explicit part plus quadrature tail).
    pub total: f64,
    s2: Vec<f64>,
    s4: Vec<f64>,
    s6: Vec<f64>,
    tail_a2: f64,
    samples: OnceLock<Vec<f64>>,
}

impl std::fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KernelSpec")
            .field("c", &self.c)
            .field("u", &self.u_name)
            .field("truncation_tolerance", &self.truncation_tolerance)
            .field("total", &self.total)
            .finish()
    }
}

/// Summary of a kernel, for reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct KernelSummary {
    pub u: String,
    pub c: f64,
    pub a_head: Vec<f64>,
    pub a_sum: f64,
    pub truncation_tolerance: f64,
    pub decay_constant: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PsiGrid {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl PsiGrid {
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + self.dx * i as f64
    }

    /// Riemann sum of ψ over the grid.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Largest |ψ(x)| over grid points with |x| ≥ r.
    pub fn max_abs_outside(&self, r: f64) -> f64 {
        (0..self.values.len())
            .filter(|&i| self.x(i).abs() >= r)
            .map(|i| self.values[i].abs())
            .fold(0.0, f64::max)
    }

    /// ψ at the grid point nearest 0.
    pub fn at_zero(&self) -> f64 {
        self.values[self.zero_index()]
    }

    fn zero_index(&self) -> usize {
        (-self.x0 / self.dx).round() as usize
    }

    /// Largest grid δ with ψ > 1/4 at every grid point of [−δ, δ].
    pub fn delta(&self) -> f64 {
        let z = self.zero_index();
        if self.values[z] <= 0.25 {
            return 0.0;
        }
        let mut i = 0;
        while z + i + 1 < self.values.len()
            && z >= i + 1
            && self.values[z + i + 1] > 0.25
            && self.values[z - i - 1] > 0.25
        {
            i += 1;
        }
        self.dx * i as f64
    }
}

/// Suffix sums Σ_{j ≥ k} a_j^p for k = 1..=K_MAX (index k−1), plus a trailing 0.
fn suffix(a: &[f64], p: i32) -> Vec<f64> {
    let mut s = vec![0.0; a.len() + 1];
    for k in (0..a.len()).rev() {
        s[k] = s[k + 1] + a[k].powi(p);
    }
    s
}

/// ∫_{t0}^∞ g(t) dt for a positive, eventually power-law decaying g.
fn tail_integral(g: impl Fn(f64) -> f64, t0: f64) -> f64 {
    const T1: f64 = 700.0;
    let n = 20_000usize;
    let h = (T1 - t0) / n as f64;
    // composite Simpson
    let mut s = g(t0) + g(T1);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * g(t0 + h * i as f64);
    }
    let body = s * h / 3.0;
    let (f1, f2) = (g(T1 / 2.0), g(T1));
    let p = (f1 / f2).ln() / 2f64.ln();
    let rest = if p > 1.0 { f2 * T1 / (p - 1.0) } else { f64::INFINITY };
    body + rest
}

/// Checks ∫_1^∞ dα/(α u(α)) < ∞ numerically: in t = ln α the contributions of
/// [256, 512] must be at most 3/4 of those of [128, 256].
pub fn check_condition(u: UFunc) -> Result<()> {
    let mut prev = u(1.0);
    if !(prev > 0.0) {
        return Err(Error::KernelCondition("u(1) must be positive".into()));
    }
    for i in 1..=400 {
        let x = 10f64.powf(i as f64 * 0.05);
        let v = u(x);
        if !(v >= prev) || !v.is_finite() {
            return Err(Error::KernelCondition(format!("u is not positive and increasing near {x:e}")));
        }
        prev = v;
    }
    let seg = |a: f64, b: f64| {
        let n = 2000;
        let h = (b - a) / n as f64;
        (0..n).map(|i| 1.0 / u((a + h * (i as f64 + 0.5)).exp())).sum::<f64>() * h
    };
    let (i1, i2) = (seg(128.0, 256.0), seg(256.0, 512.0));
    if !(i2 <= 0.75 * i1) {
        return Err(Error::KernelCondition(format!(
            "∫dα/(α u(α)) does not converge: dyadic increments {i1:e}, {i2:e}"
        )));
    }
    Ok(())
}

/// Builds the kernel for growth function `u`, truncating products once
/// |π a_k α| < `tolerance`.
pub fn ingham_kernel(u: UFunc, u_name: &str, tolerance: f64) -> Result<KernelSpec> {
    if !(tolerance > 0.0 && tolerance <= 0.5) {
        return Err(Error::Domain(format!("truncation tolerance {tolerance} not in (0, 1/2]")));
    }
    check_condition(u)?;
    let w = |k: f64| 1.0 / (k * u(k + 2.0 - E));
    let raw: Vec<f64> = (1..=K_MAX).map(|k| w(k as f64)).collect();
    if raw.windows(2).any(|p| !(p[1] < p[0])) {
        return Err(Error::KernelCondition("a_k is not strictly decreasing".into()));
    }
    let head: f64 = raw.iter().rev().sum();
    // Σ_{k > K} w(k) ≈ ∫_{K+1/2}^∞ w(x) dx, in t = ln x
    let t0 = (K_MAX as f64 + 0.5).ln();
    let tail = tail_integral(|t| t.exp() * w(t.exp()), t0);
    let z = head + tail;
    let c = 1.0 / z;
    let a_seq: Vec<f64> = raw.iter().map(|x| x * c).collect();
    let k = K_MAX as f64;
    let tail_a2 = c * c * w(k) * w(k) * k;
    Ok(KernelSpec {
        s2: suffix(&a_seq, 2),
        s4: suffix(&a_seq, 4),
        s6: suffix(&a_seq, 6),
        total: (head + tail) * c,
        a_seq,
        c,
        truncation_tolerance: tolerance,
        u_name: u_name.to_string(),
        u_func: u,
        tail_a2,
        samples: OnceLock::new(),
    })
}

/// The default kernel, u(α) = log(α+e)², built once.
pub fn default_kernel() -> &'static KernelSpec {
    static K: OnceLock<KernelSpec> = OnceLock::new();
    K.get_or_init(|| ingham_kernel(u_default, "log(alpha+e)^2", DEFAULT_TOLERANCE).expect("default kernel"))
}

#[inline]
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

impl KernelSpec {
    pub fn u(&self, alpha: f64) -> f64 {
        (self.u_func)(alpha)
    }

    /// ψ̂(α).
    pub fn hat(&self, alpha: f64) -> f64 {
        self.hat_with_bound(alpha).0
    }

    /// ψ̂(α) together with a bound on the error from the truncated log-series.
    pub fn hat_with_bound(&self, alpha: f64) -> (f64, f64) {
        let x = PI * alpha.abs();
        if x == 0.0 {
            return (1.0, 0.0);
        }
        let tol = self.truncation_tolerance;
        // first index whose factor argument drops below tol
        let k0 = self.a_seq.partition_point(|&a| a * x >= tol);
        let mut prod = 1.0;
        for &a in &self.a_seq[..k0] {
            prod *= sinc(a * x);
            if prod.abs() < 1e-300 {
                return (0.0, 1e-300);
            }
        }
        if k0 == self.a_seq.len() {
            // argument still large at K_MAX: the remaining factors are all ≤ 1
            return (prod, prod.abs());
        }
        let (x2, x4, x6) = (x * x, x.powi(4), x.powi(6));
        let s2 = self.s2[k0] + self.tail_a2;
        let log_tail = -(x2 * s2 / 6.0 + x4 * self.s4[k0] / 180.0 + x6 * self.s6[k0] / 2835.0);
        let v = prod * log_tail.exp();
        // next series term is y⁸/37800 per factor, bounded via y⁶·Σy²
        let rem = (tol * tol).powi(3) * x2 * s2 / 37800.0;
        (v, v.abs() * rem * 1.01)
    }

    /// ∏_k min(1, 1/(π a_k α)), a majorant of |ψ̂(α)| that is nonincreasing in α,
    /// with the number of factors below 1.
    pub fn hat_majorant(&self, alpha: f64) -> (f64, usize) {
        let x = PI * alpha.abs();
        let n = self.a_seq.partition_point(|&a| a * x > 1.0);
        let mut b = 1.0;
        for &a in &self.a_seq[..n] {
            b /= a * x;
            if b < 1e-300 {
                return (0.0, n);
            }
        }
        (b, n)
    }

    /// Bound on ∫_A^∞ |ψ̂(α)| dα from the majorant: each of its n factors decays like A/α.
    pub fn hat_tail_bound(&self, a: f64) -> f64 {
        let (b, n) = self.hat_majorant(a);
        if n < 2 {
            f64::INFINITY
        } else {
            b * a / (n - 1) as f64
        }
    }

    /// exp(−α/u(α)).
    pub fn envelope(&self, alpha: f64) -> f64 {
        let a = alpha.abs();
        (-a / self.u(a)).exp()
    }

    /// max of |ψ̂(α)|/envelope(α) over a log grid on [lo, hi].
    pub fn decay_ratio_max(&self, lo: f64, hi: f64, points: usize) -> (f64, f64) {
        let mut best = (0.0, lo);
        for i in 0..points {
            let t = i as f64 / (points - 1) as f64;
            let al = lo * (hi / lo).powf(t);
            let r = self.hat(al).abs() / self.envelope(al);
            if r > best.0 {
                best = (r, al);
            }
        }
        best
    }

    /// Smallest multiple of the sample spacing beyond which |ψ̂| stays below 1e−20,
    /// judged by the decay envelope with the calibrated constant.
    pub fn hat_cutoff(&self, floor: f64) -> f64 {
        let mut a = 1.0;
        while DECAY_CONSTANT * self.envelope(a) > floor {
            a *= 1.05;
        }
        a
    }

    fn psi_samples(&self) -> &[f64] {
        self.samples.get_or_init(|| {
            let mut v = Vec::new();
            let mut n = 0usize;
            // ψ̂ is far below the envelope; stop once a long run is negligible
            let mut quiet = 0;
            loop {
                let h = self.hat(n as f64 * PSI_SPACING);
                v.push(h);
                quiet = if h.abs() < PSI_HAT_FLOOR { quiet + 1 } else { 0 };
                if quiet > 64 || n > 1 << 20 {
                    break;
                }
                n += 1;
            }
            v
        })
    }

    /// ψ(x); zero outside [−1/2, 1/2].
    pub fn psi(&self, x: f64) -> f64 {
        if x.abs() >= 0.5 * self.total {
            return 0.0;
        }
        let s = self.psi_samples();
        let mut acc = 0.0;
        for (n, &h) in s.iter().enumerate().skip(1).rev() {
            acc += h * (2.0 * PI * n as f64 * PSI_SPACING * x).cos();
        }
        PSI_SPACING * (s[0] + 2.0 * acc)
    }

    /// ψ on `n` points of [−half_width, half_width) by an inverse FFT of ψ̂ samples.
    pub fn psi_grid(&self, n: usize, half_width: f64) -> Result<PsiGrid> {
        if n < 16 || !n.is_power_of_two() || half_width <= 0.5 {
            return Err(Error::Domain("grid needs a power-of-two size ≥ 16 and half-width > 1/2".into()));
        }
        let span = 2.0 * half_width;
        let dalpha = 1.0 / span;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        let half = n / 2;
        let mut zero_run = 0;
        for j in 0..half {
            let h = self.hat(j as f64 * dalpha);
            let h = if j % 2 == 1 { -h } else { h };
            buf[j] = Complex64::new(h, 0.0);
            if j > 0 {
                buf[n - j] = Complex64::new(h, 0.0);
            }
            zero_run = if h == 0.0 { zero_run + 1 } else { 0 };
            if zero_run > 256 {
                break;
            }
        }
        // x_i = −W + i·dx gives the factor e(−n·(−W)/span) = (−1)^n
        let fft = FftPlanner::new().plan_fft_forward(n);
        fft.process(&mut buf);
        Ok(PsiGrid {
            x0: -half_width,
            dx: span / n as f64,
            values: buf.iter().map(|z| z.re * dalpha).collect(),
        })
    }

    pub fn summary(&self) -> KernelSummary {
        KernelSummary {
            u: self.u_name.clone(),
            c: self.c,
            a_head: self.a_seq[..8].to_vec(),
            a_sum: self.total,
            truncation_tolerance: self.truncation_tolerance,
            decay_constant: DECAY_CONSTANT,
        }
    }
}
