//! Peak profiles: Weyl sums, Dirichlet approximants and dyadic classes at α.

use serde::{Deserialize, Serialize};

use super::u_default;
use super::weyl::weyl_sum;
use crate::dirichlet::{dirichlet_pair, ApproximationPair};
use crate::error::{Error, Result};
use crate::forms::DiagonalForm;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PeakProfile {
    pub alpha: f64,
    /// S_j(α) as (re, im)
    pub s_values: Vec<(f64, f64)>,
    pub dirichlet: Vec<ApproximationPair>,
    /// dyadic T_j with T_j/2 < |q_j|^{1/2}|S_j|/P ≤ T_j; `None` when S_j = 0
    pub t_class: Vec<Option<f64>>,
    /// dyadic U_j with U_j/2 < y_j ≤ U_j
    pub u_class: Vec<u64>,
    pub in_j: bool,
    /// membership with threshold P(u(P)²q)^{−𝗂(i)}; `None` for d < 5
    pub in_f: Option<bool>,
    /// membership with threshold P(u(P)q)^{−𝗂(i)}
    pub in_f_alt: Option<bool>,
    pub x_nonzero: bool,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Diagnostics {
    /// indices j with T_j ≥ 4d
    pub t_upper: Vec<usize>,
    /// indices j with T_j ≤ (u(P)²q)^{−𝗂(j)}
    pub t_lower: Vec<usize>,
    /// U_j T_j² / (log P)² per coordinate
    pub u_ratio: Vec<Option<f64>>,
}

/// 𝗂(i) = 1/min(i, d−4) for 1-based i.
pub fn cyr_i(i: usize, d: usize) -> Option<f64> {
    let m = i.min(d.checked_sub(4)?);
    (m > 0).then(|| 1.0 / m as f64)
}

/// Smallest power of two T (possibly fractional) with T/2 < v ≤ T.
pub fn dyadic_class(v: f64) -> Option<f64> {
    if !(v > 0.0 && v.is_finite()) {
        return None;
    }
    let mut t = 2f64.powi(v.log2().ceil() as i32);
    while t < v {
        t *= 2.0;
    }
    while t / 2.0 >= v {
        t /= 2.0;
    }
    Some(t)
}

fn dyadic_u(y: u64) -> u64 {
    y.next_power_of_two()
}

/// N_j = max(1, floor(8dP|q_j|^{-1/2})).
pub fn dirichlet_bound(q: f64, p: f64, d: usize) -> u64 {
    ((8.0 * d as f64 * p / q.abs().sqrt()).floor() as u64).max(1)
}

fn in_f_with(values: &[f64], p: f64, base: f64, d: usize) -> Option<bool> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut ok = true;
    for (i, v) in sorted.iter().enumerate() {
        let e = cyr_i(i + 1, d)?;
        ok &= *v > p * base.powf(-e);
    }
    Some(ok)
}

/// Profiles for each α in `alphas`, which must be positive.
pub fn peak_profile(form: &DiagonalForm, p: f64, alphas: &[f64]) -> Result<Vec<PeakProfile>> {
    if !(p > 1.0) {
        return Err(Error::Domain("peak_profile needs P > 1".into()));
    }
    let q = form.approx();
    let d = q.len();
    let (q0, qmax, _) = form.extremes();
    let up = u_default(p);
    let j_lo = 1.0 / (8.0 * d as f64 * p * q0.sqrt());
    let lp2 = p.ln().powi(2);
    let mut out = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        let s: Vec<_> = q.iter().map(|&x| weyl_sum(x, alpha, p, d)).collect();
        let pairs = q
            .iter()
            .map(|&x| dirichlet_pair(x * alpha, dirichlet_bound(x, p, d)))
            .collect::<Result<Vec<_>>>()?;
        let scaled: Vec<f64> = q.iter().zip(&s).map(|(x, z)| x.abs().sqrt() * z.norm()).collect();
        let t_class: Vec<Option<f64>> = scaled.iter().map(|v| dyadic_class(v / p)).collect();
        let u_class: Vec<u64> = pairs.iter().map(|a| dyadic_u(a.y as u64)).collect();
        let in_j = j_lo < alpha && alpha < up;
        let x_nonzero = pairs.iter().all(|a| a.x != 0);
        if in_j && !x_nonzero {
            return Err(Error::Invalid(format!("zero Dirichlet numerator inside J at alpha={alpha}")));
        }
        let in_f = in_f_with(&scaled, p, up * up * qmax, d).map(|f| f && in_j);
        let in_f_alt = in_f_with(&scaled, p, up * qmax, d).map(|f| f && in_j);
        let mut diag = Diagnostics::default();
        for (j, t) in t_class.iter().enumerate() {
            if let Some(t) = t {
                if *t >= 4.0 * d as f64 {
                    diag.t_upper.push(j);
                }
                if let Some(e) = cyr_i(j + 1, d) {
                    if *t <= (up * up * qmax).powf(-e) {
                        diag.t_lower.push(j);
                    }
                }
            }
            diag.u_ratio.push(t.map(|t| u_class[j] as f64 * t * t / lp2));
        }
        out.push(PeakProfile {
            alpha,
            s_values: s.iter().map(|z| (z.re, z.im)).collect(),
            dirichlet: pairs,
            t_class,
            u_class,
            in_j,
            in_f,
            in_f_alt,
            x_nonzero,
            diagnostics: diag,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_bounds() {
        assert_eq!(dyadic_class(1.0), Some(1.0));
        assert_eq!(dyadic_class(1.5), Some(2.0));
        assert_eq!(dyadic_class(0.3), Some(0.5));
        assert_eq!(dyadic_u(5), 8);
        assert_eq!(dyadic_u(4), 4);
    }

    #[test]
    fn profile_at_quarter() {
        let f = DiagonalForm::from_ints(&[1, 1, 1, 1, -1]).unwrap();
        let p = peak_profile(&f, 100.0, &[0.25, 1e-6]).unwrap();
        assert!(p[0].in_j && p[0].x_nonzero);
        assert!(!p[1].in_j);
        for (v, t) in p[0].s_values.iter().zip(&p[0].t_class) {
            let s = (v.0 * v.0 + v.1 * v.1).sqrt() / 100.0;
            let t = t.unwrap();
            assert!(t / 2.0 < s && s <= t);
        }
        assert_eq!(p, peak_profile(&f, 100.0, &[0.25, 1e-6]).unwrap());
    }
}
