//! Exact search for small zeros of integral diagonal forms.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use crate::exponents::d0_lower_bound;
use crate::error::{Error, Result};
use crate::exponents::beta;
use crate::forms::IntegerForm;

/// Largest norm budget accepted; keeps all partial sums inside `i128`.
pub const MAX_BUDGET: u128 = 1 << 96;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicWitness {
    pub m: Vec<i64>,
    #[serde(with = "crate::report::int_str")]
    pub weighted_norm: i128,
    #[serde(with = "crate::report::int_str")]
    pub form_value: i128,
    pub content_reduced: bool,
}

impl IsotropicWitness {
    fn new(form: &IntegerForm, m: Vec<i64>) -> Result<Self> {
        let form_value = form.evaluate(&m)?;
        let weighted_norm = form.weighted_norm(&m)?;
        let g = m.iter().fold(0i64, |g, &x| g.gcd(&x));
        Ok(IsotropicWitness {
            m,
            weighted_norm,
            form_value,
            content_reduced: g == 1,
        })
    }

    /// Re-checks the witness against a form in exact arithmetic.
    pub fn validate(&self, form: &IntegerForm) -> bool {
        self.m.len() == form.d()
            && self.m.iter().any(|&x| x != 0)
            && form.evaluate(&self.m) == Ok(0)
            && form.weighted_norm(&self.m) == Ok(self.weighted_norm)
            && self.form_value == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceWitness {
    pub basis: Vec<Vec<i64>>,
    pub dim: usize,
}

impl SubspaceWitness {
    /// Independence plus vanishing on the basis and all pairwise polarizations.
    pub fn validate(&self, form: &IntegerForm) -> bool {
        if self.basis.len() != self.dim || self.dim == 0 {
            return false;
        }
        for (i, u) in self.basis.iter().enumerate() {
            if u.len() != form.d() || form.evaluate(u) != Ok(0) || u.iter().all(|&x| x == 0) {
                return false;
            }
            for v in &self.basis[i + 1..] {
                if polarization(form, u, v) != Some(0) || !independent(u, v) {
                    return false;
                }
            }
        }
        self.dim <= 2
    }
}

/// `sum f_i u_i v_i`.
pub fn polarization(form: &IntegerForm, u: &[i64], v: &[i64]) -> Option<i128> {
    let mut acc: i128 = 0;
    for ((&f, &a), &b) in form.coeffs().iter().zip(u).zip(v) {
        acc = acc.checked_add((f as i128).checked_mul((a as i128) * (b as i128))?)?;
    }
    Some(acc)
}

fn independent(u: &[i64], v: &[i64]) -> bool {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if (u[i] as i128) * (v[j] as i128) != (u[j] as i128) * (v[i] as i128) {
                return true;
            }
        }
    }
    false
}

/// Orders candidates: smaller norm first, then lexicographically larger.
fn better(a: &(i128, Vec<i64>), b: &(i128, Vec<i64>)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 > b.1)
}

struct Layout {
    order: Vec<usize>,
    abs: Vec<i128>,
    coef: Vec<i128>,
    pos_after: Vec<bool>,
    neg_after: Vec<bool>,
}

impl Layout {
    fn new(form: &IntegerForm) -> Self {
        let f = form.coeffs();
        let mut order: Vec<usize> = (0..f.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(f[i].unsigned_abs()), i));
        let coef: Vec<i128> = order.iter().map(|&i| f[i] as i128).collect();
        let abs = coef.iter().map(|c| c.abs()).collect();
        let n = coef.len();
        let mut pos_after = vec![false; n + 1];
        let mut neg_after = vec![false; n + 1];
        for j in (0..n).rev() {
            pos_after[j] = pos_after[j + 1] || coef[j] > 0;
            neg_after[j] = neg_after[j + 1] || coef[j] < 0;
        }
        Layout {
            order,
            abs,
            coef,
            pos_after,
            neg_after,
        }
    }

    fn feasible(&self, j: usize, value: i128, rem: i128) -> bool {
        if value < 0 {
            self.pos_after[j] && -value <= rem
        } else if value > 0 {
            self.neg_after[j] && value <= rem
        } else {
            true
        }
    }

    fn unsort(&self, m: &[i64]) -> Vec<i64> {
        let mut out = vec![0; m.len()];
        for (k, &i) in self.order.iter().enumerate() {
            out[i] = m[k];
        }
        out
    }
}

/// Visits every nonnegative `m` (in sorted coordinates) with
/// `sum |f| m^2 <= cap()` and `sum f m^2 = 0`, calling `hit` on each.
/// `cap` is re-read on every node so callers can shrink it.
fn dfs<C: Fn() -> i128, H: FnMut(&[i64], i128)>(
    lay: &Layout,
    j: usize,
    m: &mut Vec<i64>,
    value: i128,
    norm: i128,
    cap: &C,
    hit: &mut H,
    nodes: &mut u64,
) {
    *nodes += 1;
    let n = lay.coef.len();
    let rem = cap() - norm;
    if rem < 0 || !lay.feasible(j, value, rem) {
        return;
    }
    if j + 1 == n {
        // last coordinate: f m^2 = -value
        let c = lay.coef[j];
        if (-value) % c != 0 {
            return;
        }
        let sq = -value / c;
        if sq < 0 {
            return;
        }
        let x = (sq as u128).sqrt();
        if x * x != sq as u128 {
            return;
        }
        let add = lay.abs[j] * sq;
        if add > rem {
            return;
        }
        m[j] = x as i64;
        if m.iter().any(|&v| v != 0) {
            hit(m, norm + add);
        }
        m[j] = 0;
        return;
    }
    let a = lay.abs[j];
    let top = ((rem / a) as u128).sqrt() as i64;
    for x in 0..=top {
        let x2 = (x as i128) * (x as i128);
        let add = a * x2;
        if norm + add > cap() {
            break;
        }
        m[j] = x;
        dfs(lay, j + 1, m, value + lay.coef[j] * x2, norm + add, cap, hit, nodes);
    }
    m[j] = 0;
}

/// Starting points for parallel work: admissible prefixes of length
/// `min(2, d - 1)`.
fn prefixes(lay: &Layout, cap: i128) -> Vec<(Vec<i64>, i128, i128)> {
    let n = lay.coef.len();
    let depth = (n - 1).min(2);
    let mut out = vec![(vec![], 0i128, 0i128)];
    for j in 0..depth {
        let mut next = Vec::new();
        for (p, v, nm) in out {
            let top = (((cap - nm) / lay.abs[j]) as u128).sqrt() as i64;
            for x in 0..=top {
                let x2 = (x as i128) * (x as i128);
                let mut q = p.clone();
                q.push(x);
                next.push((q, v + lay.coef[j] * x2, nm + lay.abs[j] * x2));
            }
        }
        out = next;
    }
    out
}

/// Minimal witness with norm at most `cap`, searching the whole ellipsoid.
fn min_within(lay: &Layout, cap: i128) -> (Option<(i128, Vec<i64>)>, u64) {
    let n = lay.coef.len();
    let results: Vec<(Option<(i128, Vec<i64>)>, u64)> = prefixes(lay, cap)
        .into_par_iter()
        .map(|(p, v, nm)| {
            let mut m = vec![0i64; n];
            m[..p.len()].copy_from_slice(&p);
            let best: std::cell::RefCell<Option<(i128, Vec<i64>)>> = std::cell::RefCell::new(None);
            let bound = || best.borrow().as_ref().map_or(cap, |b| b.0.min(cap));
            let mut nodes = 0u64;
            let mut hit = |mm: &[i64], norm: i128| {
                let cand = (norm, lay.unsort(mm));
                let mut b = best.borrow_mut();
                if b.as_ref().is_none_or(|cur| better(&cand, cur)) {
                    *b = Some(cand);
                }
            };
            dfs(lay, p.len(), &mut m, v, nm, &bound, &mut hit, &mut nodes);
            (best.into_inner(), nodes)
        })
        .collect();
    let mut best: Option<(i128, Vec<i64>)> = None;
    let mut nodes = 0;
    for (r, k) in results {
        nodes += k;
        if let Some(c) = r {
            if best.as_ref().is_none_or(|b| better(&c, b)) {
                best = Some(c);
            }
        }
    }
    (best, nodes)
}

/// Statistics from a search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub passes: u32,
    pub nodes: u64,
    #[serde(with = "crate::report::int_str")]
    pub final_cap: i128,
}

/// Nonzero isotropic vector of least weighted norm `sum |f_i| m_i^2` among
/// those with norm at most `norm_budget`. Ties go to the lexicographically
/// largest vector with first nonzero entry positive.
pub fn min_isotropic(form: &IntegerForm, norm_budget: u128) -> Result<Option<IsotropicWitness>> {
    Ok(min_isotropic_with_stats(form, norm_budget)?.0)
}

pub fn min_isotropic_with_stats(
    form: &IntegerForm,
    norm_budget: u128,
) -> Result<(Option<IsotropicWitness>, SearchStats)> {
    let sig = form.signature();
    if !form.is_indefinite() {
        return Err(Error::Definite { r: sig.r, s: sig.s });
    }
    if norm_budget == 0 {
        return Err(Error::Domain("norm budget must be at least 1".into()));
    }
    if norm_budget > MAX_BUDGET {
        return Err(Error::Overflow);
    }
    let lay = Layout::new(form);
    let budget = norm_budget as i128;
    let mut stats = SearchStats::default();
    let mut cap: i128 = 2;
    loop {
        cap = cap.min(budget);
        let (best, nodes) = min_within(&lay, cap);
        stats.passes += 1;
        stats.nodes += nodes;
        stats.final_cap = cap;
        if let Some((_, m)) = best {
            return Ok((Some(IsotropicWitness::new(form, m)?), stats));
        }
        if cap >= budget {
            return Ok((None, stats));
        }
        cap *= 2;
    }
}

/// Every isotropic vector with norm at most `budget`, with first nonzero
/// coordinate positive, sorted by norm and then lexicographically descending.
pub fn isotropic_vectors(form: &IntegerForm, budget: u128) -> Result<Vec<(i128, Vec<i64>)>> {
    if budget > MAX_BUDGET {
        return Err(Error::Overflow);
    }
    let lay = Layout::new(form);
    let cap = budget as i128;
    let n = lay.coef.len();
    let mut found = Vec::new();
    let mut m = vec![0i64; n];
    let mut nodes = 0;
    dfs(
        &lay,
        0,
        &mut m,
        0,
        0,
        &|| cap,
        &mut |mm: &[i64], norm| found.push((norm, lay.unsort(mm))),
        &mut nodes,
    );
    let mut out = Vec::new();
    for (norm, v) in found {
        let nz: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        // the first nonzero coordinate keeps its sign
        for mask in 0u64..(1u64 << (nz.len() - 1)) {
            let mut w = v.clone();
            for (b, &i) in nz[1..].iter().enumerate() {
                if mask >> b & 1 == 1 {
                    w[i] = -w[i];
                }
            }
            out.push((norm, w));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    Ok(out)
}

/// Looks for a totally isotropic plane spanned by two small vectors; falls
/// back to a single isotropic vector.
pub fn isotropic_plane_witness(form: &IntegerForm, budget: u128) -> Result<Option<SubspaceWitness>> {
    let sig = form.signature();
    if !form.is_indefinite() {
        return Err(Error::Definite { r: sig.r, s: sig.s });
    }
    if form.d() < 4 {
        return Err(Error::Domain(format!("plane search needs d >= 4, got {}", form.d())));
    }
    let vs = isotropic_vectors(form, budget)?;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (u, v) = (&vs[i].1, &vs[j].1);
            if independent(u, v) && polarization(form, u, v) == Some(0) {
                return Ok(Some(SubspaceWitness {
                    basis: vec![u.clone(), v.clone()],
                    dim: 2,
                }));
            }
        }
    }
    Ok(vs.into_iter().next().map(|(_, v)| SubspaceWitness {
        basis: vec![v],
        dim: 1,
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchlickeweiCheck {
    pub witness: IsotropicWitness,
    #[serde(with = "crate::report::int_str")]
    pub min_norm: i128,
    /// `|f_1 ... f_d|^((2 beta + 1)/d)`.
    pub bound_base: f64,
    pub ratio: f64,
    pub exponent: f64,
    pub stats: SearchStats,
}

/// Default multiplier for the initial budget of [`verify_schlickewei`].
pub const DEFAULT_BUDGET_FACTOR: f64 = 64.0;

/// Hard cap on budget escalation in [`verify_schlickewei`].
pub const DEFAULT_HARD_CAP: u128 = 1 << 40;

/// Finds the minimal zero and compares it with `|det|^((2 beta + 1)/d)`.
pub fn verify_schlickewei(form: &IntegerForm, c: f64, hard_cap: u128) -> Result<SchlickeweiCheck> {
    let sig = form.signature();
    if !form.is_indefinite() {
        return Err(Error::Definite { r: sig.r, s: sig.s });
    }
    let d = form.d();
    if d < 5 {
        return Err(Error::Domain(format!("d = {d} < 5")));
    }
    let b = beta(sig.r, sig.s)?;
    let exponent = (2.0 * (*b.numer() as f64) / (*b.denom() as f64) + 1.0) / d as f64;
    let det = form.abs_det().to_f64().unwrap_or(f64::INFINITY);
    let bound_base = det.powf(exponent);
    let mut budget = ((c * bound_base).ceil() as u128).max(1);
    let mut stats = SearchStats::default();
    loop {
        let (w, s) = min_isotropic_with_stats(form, budget.min(hard_cap))?;
        stats.passes += s.passes;
        stats.nodes += s.nodes;
        stats.final_cap = s.final_cap;
        if let Some(w) = w {
            let min_norm = w.weighted_norm;
            return Ok(SchlickeweiCheck {
                ratio: min_norm as f64 / bound_base,
                witness: w,
                min_norm,
                bound_base,
                exponent,
                stats,
            });
        }
        if budget >= hard_cap {
            return Err(Error::BudgetExhausted { budget: hard_cap });
        }
        budget *= 2;
    }
}

/// `|f_1 ... f_d|` as an exact integer, for reporting.
pub fn abs_det(form: &IntegerForm) -> BigInt {
    form.abs_det()
}
