//! Signature exponents and the bound parameters of the small-value theorem.
//!
//! Everything signature-related is exact rational arithmetic over `i64`;
//! the bound parameters involve `exp`/`log` of large quantities and are
//! computed with 192-bit floats.

use num_rational::Rational64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::DiagonalForm;
use crate::precision::Hp;

/// Working precision for bound parameters (about 57 decimal digits).
pub const BOUND_PRECISION: usize = 192;

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn orient(r: usize, s: usize) -> (i64, i64) {
    if r >= s {
        (r as i64, s as i64)
    } else {
        (s as i64, r as i64)
    }
}

/// `2 beta(r, s)`.
pub fn two_beta(r: usize, s: usize) -> Result<Rational64> {
    if r == 0 || s == 0 {
        return Err(Error::Domain(format!("signature ({r},{s}) is definite")));
    }
    if r + s < 5 {
        return Err(Error::Domain(format!("signature ({r},{s}) has r+s < 5")));
    }
    let (r, s) = orient(r, s);
    Ok(if r >= s + 3 {
        rat(r, s)
    } else if r == s + 1 || r == s + 2 {
        rat(s + 2, s - 1)
    } else {
        rat(s + 1, s - 2)
    })
}

/// The exponent `beta(r, s)` controlling the size of the smallest zero.
pub fn beta(r: usize, s: usize) -> Result<Rational64> {
    Ok(two_beta(r, s)? / 2)
}

/// Lower bound for `beta` over all signatures of dimension `d`.
pub fn beta_lower_bound(d: usize) -> Result<Rational64> {
    if d < 5 {
        return Err(Error::Domain(format!("d = {d} < 5")));
    }
    let d = d as i64;
    Ok(if d % 2 == 1 {
        rat(d + 3, 2 * (d - 3))
    } else {
        rat(d + 2, 2 * (d - 4))
    })
}

/// A signature obtained by deleting `k` coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Restricted {
    pub r: usize,
    pub s: usize,
    pub indefinite: bool,
}

/// All `(r - a, s - (k - a))`, `0 <= a <= k`, with nonnegative components.
pub fn restricted_signatures(r: usize, s: usize, k: usize) -> Result<Vec<Restricted>> {
    if k > 3 {
        return Err(Error::Domain(format!("k = {k} outside 0..=3")));
    }
    if r + s < k + 5 {
        return Err(Error::Domain(format!(
            "signature ({r},{s}) leaves fewer than 5 variables after removing {k}"
        )));
    }
    Ok((0..=k)
        .filter(|&a| a <= r && k - a <= s)
        .map(|a| {
            let (rr, ss) = (r - a, s - (k - a));
            Restricted {
                r: rr,
                s: ss,
                indefinite: rr >= 1 && ss >= 1,
            }
        })
        .collect())
}

/// `2 beta_k`: the largest `2 beta` over indefinite restrictions with at
/// least five variables.
pub fn two_beta_k_worst(r: usize, s: usize, k: usize) -> Result<Rational64> {
    restricted_signatures(r, s, k)?
        .into_iter()
        .filter(|x| x.indefinite && x.r + x.s >= 5)
        .map(|x| two_beta(x.r, x.s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .ok_or_else(|| Error::Domain(format!("no admissible restriction of ({r},{s}) with k = {k}")))
}

pub fn beta_k_worst(r: usize, s: usize, k: usize) -> Result<Rational64> {
    Ok(two_beta_k_worst(r, s, k)? / 2)
}

/// Smallest dimension for which `p_exponent(k, ..)` is defined.
pub fn p_min_dimension(k: usize) -> usize {
    if k == 3 {
        8
    } else {
        7
    }
}

/// The coupling exponent `p_k(d)` for the signature `(r, s)`.
pub fn p_exponent(k: usize, r: usize, s: usize) -> Result<Rational64> {
    if !(1..=3).contains(&k) {
        return Err(Error::Domain(format!("k = {k} outside 1..=3")));
    }
    let d = r + s;
    if d < p_min_dimension(k) {
        return Err(Error::Domain(format!("p_{k} needs d >= {}, got {d}", p_min_dimension(k))));
    }
    let b = beta(r, s)?;
    let bk = beta_k_worst(r, s, k)?;
    let one = Rational64::one();
    let t = rat(2, 1) / (one + b * 2);
    let two = rat(2, 1);
    Ok(match k {
        3 => t * (rat(7, 3) + (bk * 6).recip()) - (two + (bk * 3).recip()),
        2 => t * (rat(3, 1) + (bk * 2).recip()) - (two + bk.recip()),
        _ => t * (rat(5, 1) + rat(3, 2) / bk) - (two + rat(3, 1) / bk),
    })
}

/// `d_0` lower bound: dimension of a rational subspace on which a form of
/// signature `(r, s, t)` must vanish.
pub fn d0_lower_bound(r: usize, s: usize, t: usize) -> Result<usize> {
    if r + s < 5 {
        return Err(Error::Domain(format!("signature ({r},{s}) has r+s < 5")));
    }
    let (r, s) = if r >= s { (r, s) } else { (s, r) };
    Ok(if r >= s + 3 {
        s + t
    } else if r == s + 1 || r == s + 2 {
        s + t - 1
    } else {
        s + t - 2
    })
}

/// One row of the exponent table for a signature `(r, s)` with `r >= s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentRow {
    pub r: usize,
    pub s: usize,
    #[serde(with = "ratio_str")]
    pub two_beta: Rational64,
    /// Index `k - 1` holds data for `k` removed variables.
    pub restricted: [Vec<Restricted>; 3],
    #[serde(with = "ratio_opt_str")]
    pub two_beta_k: [Option<Rational64>; 3],
    #[serde(with = "ratio_opt_str")]
    pub p: [Option<Rational64>; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentTable {
    pub d: usize,
    pub rows: Vec<ExponentRow>,
}

/// Every indefinite signature of dimension `d` oriented so that `r >= s`.
pub fn exponent_table(d: usize) -> Result<ExponentTable> {
    if d < 5 {
        return Err(Error::Domain(format!("d = {d} < 5")));
    }
    let rows = (1..=d / 2)
        .map(|s| {
            let r = d - s;
            let restricted = [1, 2, 3].map(|k| restricted_signatures(r, s, k).unwrap_or_default());
            let two_beta_k = [1, 2, 3].map(|k| two_beta_k_worst(r, s, k).ok());
            let p = [1, 2, 3].map(|k| p_exponent(k, r, s).ok());
            Ok(ExponentRow {
                r,
                s,
                two_beta: two_beta(r, s)?,
                restricted,
                two_beta_k,
                p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentTable { d, rows })
}

pub fn exponent_tables(d_min: usize, d_max: usize) -> Result<Vec<ExponentTable>> {
    (d_min..=d_max).into_par_iter().map(exponent_table).collect()
}

/// Bound parameters derived from a form and the constant `C_d`.
///
/// Values too large for `f64` are kept as decimal strings; their natural
/// logarithms are given as `f64` for convenience.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParameters {
    pub d: usize,
    pub c_d: f64,
    #[serde(with = "ratio_str")]
    pub beta: Rational64,
    pub q: String,
    pub h: String,
    pub p: String,
    pub shell_radius: String,
    pub theorem_rhs: String,
    pub llcurly_exponent: f64,
    pub ln_h: f64,
    pub ln_p: f64,
    pub ln_shell_radius: f64,
    pub ln_theorem_rhs: f64,
    pub below_exp_e: bool,
}

impl BoundParameters {
    /// Whether a weighted norm lies below the theorem's right-hand side.
    pub fn admits(&self, weighted_norm: f64) -> bool {
        weighted_norm > 0.0 && weighted_norm.ln() <= self.ln_theorem_rhs
    }
}

pub fn theorem_bound(form: &DiagonalForm, c_d: f64) -> Result<BoundParameters> {
    if !(c_d > 0.0 && c_d.is_finite()) {
        return Err(Error::Domain(format!("C_d must be positive, got {c_d}")));
    }
    let sig = form.signature();
    let b = beta(sig.r, sig.s)?;
    let d = form.d();
    let mut hp = Hp::new(BOUND_PRECISION);

    let idx = form
        .approx()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .expect("nonempty form");
    let q = form.coeffs()[idx].abs().to_hp(&mut hp);
    let ln_q = hp.ln(&q);

    let frac = |hp: &mut Hp, r: Rational64| {
        let n = hp.i128(*r.numer() as i128);
        let m = hp.i128(*r.denom() as i128);
        hp.div(&n, &m)
    };
    let half_plus_beta = frac(&mut hp, b + rat(1, 2));
    let one_plus_two_beta = frac(&mut hp, b * 2 + 1);
    let ln_cd = {
        let c = hp.f64(c_d);
        hp.ln(&c)
    };
    let ln_h = hp.add(&ln_cd, &hp.mul(&half_plus_beta, &ln_q));
    let lnln_h = if gt0(&ln_h) {
        hp.ln(&ln_h)
    } else {
        hp.f64(0.0)
    };
    if !gt0(&lnln_h) {
        return Err(Error::Domain(format!(
            "log log H <= 0 (H <= e) for q = {} and C_d = {c_d}",
            form.coeffs()[idx].abs()
        )));
    }
    let d2 = hp.i128((d * d) as i128);
    let one = hp.f64(1.0);
    let ten_d2 = hp.mul(&hp.f64(10.0), &d2);
    let p_exp = hp.add(&one, &hp.div(&ten_d2, &lnln_h));
    let ln_p = hp.mul(&p_exp, &ln_h);
    let four_d3 = hp.i128(4 * (d as i128).pow(3));
    let ln_4d3 = hp.ln(&four_d3);
    let ln_shell = hp.add(&ln_4d3, &hp.mul(&hp.f64(2.0), &ln_p));

    let ln_b = hp.mul(&one_plus_two_beta, &ln_q);
    let lnln_b = if gt0(&ln_b) {
        hp.ln(&ln_b)
    } else {
        hp.f64(0.0)
    };
    if !gt0(&lnln_b) {
        return Err(Error::Domain("log log q^(1+2 beta) <= 0".into()));
    }
    let twenty_d2 = hp.mul(&hp.f64(20.0), &d2);
    let ll_exp = hp.add(&one, &hp.div(&twenty_d2, &lnln_b));
    let ln_rhs = hp.mul(&ll_exp, &ln_b);

    let mut show = |x: &astro_float::BigFloat| {
        let v = hp.exp(x);
        hp.format(&v)
    };
    let h = show(&ln_h);
    let p = show(&ln_p);
    let shell_radius = show(&ln_shell);
    let theorem_rhs = show(&ln_rhs);
    let q_str = hp.format(&q);
    Ok(BoundParameters {
        d,
        c_d,
        beta: b,
        q: q_str,
        h,
        p,
        shell_radius,
        theorem_rhs,
        llcurly_exponent: hp.to_f64(&ll_exp),
        ln_h: hp.to_f64(&ln_h),
        ln_p: hp.to_f64(&ln_p),
        ln_shell_radius: hp.to_f64(&ln_shell),
        ln_theorem_rhs: hp.to_f64(&ln_rhs),
        below_exp_e: form.below_exp_e(),
    })
}

fn gt0(x: &astro_float::BigFloat) -> bool {
    !x.is_zero() && x.is_positive()
}

pub fn ratio_to_string(r: &Rational64) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ratio_from_str(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational64::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational64::from_integer(s.trim().parse().ok()?)),
    }
}

pub(crate) mod ratio_str {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::ratio_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        super::ratio_from_str(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s}")))
    }
}

pub(crate) mod ratio_opt_str {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &[Option<Rational64>; 3], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Option<String>> = r.iter().map(|x| x.as_ref().map(super::ratio_to_string)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Option<Rational64>; 3], D::Error> {
        let v: Vec<Option<String>> = Vec::deserialize(d)?;
        if v.len() != 3 {
            return Err(D::Error::custom("expected three entries"));
        }
        let mut out = [None; 3];
        for (o, s) in out.iter_mut().zip(v) {
            *o = match s {
                Some(s) => Some(super::ratio_from_str(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s}")))?),
                None => None,
            };
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_examples() {
        assert_eq!(beta(4, 1).unwrap(), rat(2, 1));
        assert_eq!(beta(1, 4).unwrap(), rat(2, 1));
        assert_eq!(beta(3, 2).unwrap(), rat(2, 1));
        for d in (6..40).step_by(2) {
            assert_eq!(two_beta(d / 2, d / 2).unwrap(), rat(d as i64 + 2, d as i64 - 4));
        }
        assert!(beta(2, 2).is_err());
        assert!(beta(5, 0).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(beta_lower_bound(5).unwrap(), rat(2, 1));
        assert_eq!(beta_lower_bound(6).unwrap(), rat(2, 1));
        assert_eq!(beta_lower_bound(7).unwrap(), rat(5, 4));
        assert!(beta_lower_bound(4).is_err());
    }

    #[test]
    fn restricted_examples() {
        let d = 12;
        let h = d / 2;
        let got: Vec<(usize, usize)> = restricted_signatures(h, h, 3)
            .unwrap()
            .iter()
            .map(|x| (x.r, x.s))
            .collect();
        assert_eq!(got, vec![(h, h - 3), (h - 1, h - 2), (h - 2, h - 1), (h - 3, h)]);
        let r0 = restricted_signatures(4, 3, 0).unwrap();
        assert_eq!(r0, vec![Restricted { r: 4, s: 3, indefinite: true }]);
        let d = 11;
        let got: Vec<(usize, usize)> = restricted_signatures((d + 1) / 2, (d - 1) / 2, 1)
            .unwrap()
            .iter()
            .map(|x| (x.r, x.s))
            .collect();
        assert_eq!(got, vec![((d + 1) / 2, (d - 3) / 2), ((d - 1) / 2, (d - 1) / 2)]);
        assert!(restricted_signatures(4, 4, 4).is_err());
    }

    #[test]
    fn beta_k_examples() {
        for d in (10..40i64).step_by(2) {
            let h = (d / 2) as usize;
            assert_eq!(two_beta_k_worst(h, h, 3).unwrap(), rat(d, d - 6));
            for l in 3..(d / 2 - 3) {
                let (r, s) = (((d + 2 * l) / 2) as usize, ((d - 2 * l) / 2) as usize);
                assert_eq!(two_beta_k_worst(r, s, 2).unwrap(), rat(d + 2 * l, d - 2 * l - 4));
            }
        }
        for d in (9..41i64).step_by(2) {
            let (r, s) = (((d + 3) / 2) as usize, ((d - 3) / 2) as usize);
            assert_eq!(two_beta_k_worst(r, s, 1).unwrap(), rat(d + 3, d - 5));
        }
    }

    #[test]
    fn p_exponent_examples() {
        for d in (9..61i64).step_by(2) {
            let (r, s) = (((d + 3) / 2) as usize, ((d - 3) / 2) as usize);
            assert_eq!(p_exponent(1, r, s).unwrap(), Rational64::zero());
            // with 2 beta_1 = (d+1)/(d-5) the same formula gives the value quoted
            // for the (d+1)/2 row
            let b = beta(r, s).unwrap();
            let bk = rat(d + 1, 2 * (d - 5));
            let t = rat(2, 1) / (b * 2 + 1);
            let v = t * (rat(5, 1) + rat(3, 2) / bk) - (rat(2, 1) + rat(3, 1) / bk);
            assert_eq!(v, rat(-6 * (d - 5), d * (d + 1)));
        }
        for d in (8..61i64).step_by(2) {
            let h = (d / 2) as usize;
            assert!(p_exponent(2, h, h).unwrap() <= rat(-6 * (d - 2), d * (d - 1)));
        }
        assert!(p_exponent(3, 4, 3).is_err());
        assert!(p_exponent(0, 5, 5).is_err());
    }

    #[test]
    fn d0_examples() {
        assert_eq!(d0_lower_bound(4, 1, 0).unwrap(), 1);
        assert_eq!(d0_lower_bound(3, 2, 0).unwrap(), 1);
        assert_eq!(d0_lower_bound(3, 3, 0).unwrap(), 1);
        assert_eq!(d0_lower_bound(2, 3, 1).unwrap(), 2);
        assert!(d0_lower_bound(2, 2, 0).is_err());
    }

    #[test]
    fn bound_parameters_at_exp_e() {
        // reference values from a 60-digit evaluation of the same formulas
        let f = DiagonalForm::parse("e^e,e^e,e^e,e^e,-e^e").unwrap();
        let b = theorem_bound(&f, 1.0).unwrap();
        assert_eq!(b.beta, rat(2, 1));
        assert!((b.ln_h - 2.5 * std::f64::consts::E).abs() < 1e-13);
        assert!(b.h.starts_with("8.9399892360149246422815698024896793377"), "{}", b.h);
        assert!((b.ln_p - 893.365844753025627620070045).abs() < 1e-10);
        assert!(b.p.starts_with("9.635110441469925734952305243294291569"), "{}", b.p);
        assert!((b.ln_shell_radius - 1792.94629760447344698277683).abs() < 1e-10);
        assert!((b.llcurly_exponent - 192.612146668627498408589521).abs() < 1e-11);
        assert!((b.ln_theorem_rhs - 2617.87049114909277412959067).abs() < 1e-9);
        assert!(!b.below_exp_e);
        assert!(b.admits(1e300));
    }

    #[test]
    fn bound_parameters_grow_with_q() {
        let mut last = None::<BoundParameters>;
        for q in ["16", "20", "100", "1e4"] {
            let f = DiagonalForm::parse(&format!("{q},1,1,1,-1")).unwrap();
            let b = theorem_bound(&f, 1.0).unwrap();
            if let Some(l) = &last {
                assert!(b.ln_h > l.ln_h && b.ln_p > l.ln_p && b.ln_theorem_rhs > l.ln_theorem_rhs);
            }
            last = Some(b);
        }
    }

    #[test]
    fn bound_parameters_domain() {
        // H = q^(5/2) <= e when q <= e^(2/5)
        let f = DiagonalForm::parse("1.4,1,1,1,-1").unwrap();
        assert!(theorem_bound(&f, 1.0).is_err());
        let f = DiagonalForm::parse("20,1,1,1,-1").unwrap();
        assert!(theorem_bound(&f, 0.0).is_err());
        assert!(theorem_bound(&f, 1e-9).is_err());
    }

    #[test]
    fn table_serializes() {
        let t = exponent_table(9).unwrap();
        assert_eq!(t.rows.len(), 4);
        let s = serde_json::to_string(&t).unwrap();
        let back: ExponentTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
