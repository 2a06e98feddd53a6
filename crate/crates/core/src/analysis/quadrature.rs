//! I(α) = ∫_P^{2dP} e(αξ²) dξ by Gauss–Legendre panels.
//!
//! Panels are uniform in ξ², so the phase αξ² moves by at most 1/2 (an
//! angle of π) across each one.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use twofloat::TwoFloat;

use super::KahanC;
use crate::error::{Error, Result};

pub const GL_POINTS: usize = 16;
pub const MAX_PANELS: f64 = 5.0e7;

fn nodes() -> &'static [(f64, f64)] {
    static N: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    N.get_or_init(|| {
        let rule = GaussLegendre::new(NonZeroUsize::new(GL_POINTS).unwrap());
        rule.iter().map(|(x, w)| (*x, *w)).collect()
    })
}

#[inline]
fn phase(alpha: f64, x: f64) -> Complex64 {
    let t = TwoFloat::new_mul(x, x) * alpha;
    let f = t.fract();
    let (s, c) = (TAU * (f.hi() + f.lo())).sin_cos();
    Complex64::new(c, s)
}

/// ∫_a^b e(αξ²) dξ for 0 ≤ a ≤ b.
pub fn oscillatory_integral_range(alpha: f64, a: f64, b: f64) -> Result<Complex64> {
    if !(a >= 0.0 && b >= a && alpha.is_finite()) {
        return Err(Error::Domain(format!("need 0 <= a <= b and finite alpha, got a={a} b={b} alpha={alpha}")));
    }
    if alpha == 0.0 {
        return Ok(Complex64::new(b - a, 0.0));
    }
    let span = alpha.abs() * (b * b - a * a);
    let panels = (2.0 * span).ceil().max(1.0);
    if panels > MAX_PANELS {
        return Err(Error::Quadrature(format!("{panels} panels exceed the cap {MAX_PANELS}")));
    }
    let n = panels as u64;
    let (a2, b2) = (a * a, b * b);
    let du = (b2 - a2) / panels;
    let gl = nodes();
    let mut acc = KahanC::default();
    let mut x0 = a;
    for k in 1..=n {
        let x1 = if k == n { b } else { (a2 + du * k as f64).sqrt() };
        let (h, mid) = (0.5 * (x1 - x0), 0.5 * (x1 + x0));
        for &(t, w) in gl {
            let z = phase(alpha, mid + h * t) * (w * h);
            acc.add(z.re, z.im);
        }
        x0 = x1;
    }
    Ok(acc.value())
}

/// I(α) = ∫_P^{2dP} e(αξ²) dξ.
pub fn oscillatory_integral(alpha: f64, p: f64, d: usize) -> Result<Complex64> {
    if p <= 0.0 {
        return Err(Error::Domain("P must be positive".into()));
    }
    oscillatory_integral_range(alpha, p, 2.0 * d as f64 * p)
}

/// Envelope `min((2d−1)P, c/(P|α|))`.
pub fn integral_envelope(alpha: f64, p: f64, d: usize) -> f64 {
    let c = INTEGRAL_ENVELOPE_C;
    let trivial = (2 * d - 1) as f64 * p;
    if alpha == 0.0 {
        trivial
    } else {
        trivial.min(c / (p * alpha.abs()))
    }
}

/// The constant c in |I(α)| ≤ c/(P|α|): 4/λ with λ = 4π|α|P the least phase derivative.
pub const INTEGRAL_ENVELOPE_C: f64 = 1.0 / std::f64::consts::PI;
