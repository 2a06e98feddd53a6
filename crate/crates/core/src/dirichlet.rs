//! Dirichlet approximation, approximant counting, and coupling of
//! approximation pairs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `X` accepted by [`count_approximants`].
pub const MAX_ENUMERATION: f64 = 1e8;

/// Coprime `(x, y)` with `0 < y <= N` and `|theta - x/y| < 1/(y N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationPair {
    #[serde(with = "crate::report::int_str")]
    pub x: i128,
    #[serde(with = "crate::report::int_str")]
    pub y: i128,
    /// `theta - x/y`, rounded once from the exact value.
    pub rho: f64,
    pub bound_n: u64,
}

fn exact(theta: f64) -> Result<BigRational> {
    BigRational::from_f64(theta).ok_or_else(|| Error::Invalid(format!("theta = {theta} is not finite")))
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

/// Best approximation with denominator at most `n`: the last continued
/// fraction convergent of `theta` whose denominator does not exceed `n`.
pub fn dirichlet_pair(theta: f64, n: u64) -> Result<ApproximationPair> {
    dirichlet_pair_exact(&exact(theta)?, n)
}

/// Same as [`dirichlet_pair`] for an exact rational `theta`.
pub fn dirichlet_pair_exact(theta: &BigRational, n: u64) -> Result<ApproximationPair> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let cap = BigInt::from(n);
    // convergents h/k via the standard recurrence
    let (mut h0, mut k0) = (BigInt::zero(), BigInt::one());
    let (mut h1, mut k1) = (BigInt::one(), BigInt::zero());
    let mut num = theta.numer().clone();
    let mut den = theta.denom().clone();
    loop {
        let a = num.div_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > cap {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let r = &num - &a * &den;
        if r.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, r);
    }
    let rho = theta - BigRational::new(h1.clone(), k1.clone());
    Ok(ApproximationPair {
        x: to_i128(&h1)?,
        y: to_i128(&k1)?,
        rho: rho.to_f64().unwrap_or(f64::NAN),
        bound_n: n,
    })
}

/// Exact check of the pair invariants against `theta`.
pub fn check_pair(theta: &BigRational, p: &ApproximationPair) -> bool {
    if p.y <= 0 || p.y > p.bound_n as i128 || p.x.gcd(&p.y) != 1 {
        return false;
    }
    let y = BigInt::from(p.y);
    let resid = theta - BigRational::new(BigInt::from(p.x), y.clone());
    // |theta - x/y| * y * N < 1
    (resid.abs() * BigRational::from_integer(y * BigInt::from(p.bound_n))) < BigRational::one()
}

pub fn check_pair_f64(theta: f64, p: &ApproximationPair) -> bool {
    exact(theta).map(|t| check_pair(&t, p)).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximantCount {
    pub count: u64,
    pub all_same_ratio: bool,
    /// `count < 24 eta X`.
    pub below_linear_bound: bool,
    pub dichotomy_holds: bool,
    pub pairs: Vec<(i64, i64)>,
}

/// Decides `|theta x - y| < eta` exactly, using a fused multiply-add fast
/// path and exact rationals near the boundary.
fn within(theta: f64, x: i64, y: i64, eta: f64) -> bool {
    let r = theta.mul_add(x as f64, -(y as f64));
    let slack = 8.0 * f64::EPSILON * (theta.abs() * (x as f64).abs() + (y as f64).abs() + eta);
    if (r.abs() - eta).abs() > slack && (x as f64).abs() < 9e15 && (y as f64).abs() < 9e15 {
        return r.abs() < eta;
    }
    let t = BigRational::from_f64(theta).expect("finite");
    let e = BigRational::from_f64(eta).expect("finite");
    let v = t * BigRational::from_integer(BigInt::from(x)) - BigRational::from_integer(BigInt::from(y));
    v.abs() < e
}

/// All integer pairs `(x, y)` with `0 < |x| < X` and `|theta x - y| < eta`,
/// plus the two-way dichotomy: few pairs, or all on one line through 0.
pub fn count_approximants(theta: f64, eta: f64, x_max: f64) -> Result<ApproximantCount> {
    if !(eta > 0.0 && eta.is_finite()) || !(x_max > 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!("need eta > 0, X > 0, finite theta; got {eta}, {x_max}, {theta}")));
    }
    if x_max > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            points: x_max as u128,
            limit: MAX_ENUMERATION as u128,
        });
    }
    if (theta.abs() * x_max + eta) > 4e15 {
        return Err(Error::Domain("theta * X too large for exact enumeration".into()));
    }
    // 0 < |x| < X
    let top = if x_max.fract() == 0.0 { x_max as i64 - 1 } else { x_max.floor() as i64 };
    let chunk = 1 << 14;
    let starts: Vec<i64> = (1..=top.max(0)).step_by(chunk).collect();
    let mut pairs: Vec<(i64, i64)> = starts
        .into_par_iter()
        .flat_map_iter(|s| {
            let e = (s + chunk as i64 - 1).min(top);
            let mut out = Vec::new();
            for ax in s..=e {
                for x in [-ax, ax] {
                    let t = theta * x as f64;
                    let lo = (t - eta).floor() as i64 - 1;
                    let hi = (t + eta).ceil() as i64 + 1;
                    for y in lo..=hi {
                        if within(theta, x, y, eta) {
                            out.push((x, y));
                        }
                    }
                }
            }
            out
        })
        .collect();
    pairs.sort_unstable();
    let count = pairs.len() as u64;
    let all_same_ratio = match pairs.first() {
        None => true,
        Some(&(x0, y0)) => pairs
            .iter()
            .all(|&(x, y)| (y as i128) * (x0 as i128) == (y0 as i128) * (x as i128)),
    };
    let below_linear_bound = (count as f64) < 24.0 * eta * x_max;
    Ok(ApproximantCount {
        count,
        all_same_ratio,
        below_linear_bound,
        dichotomy_holds: below_linear_bound || all_same_ratio,
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingFactorization {
    #[serde(with = "crate::report::int_str")]
    pub x: i128,
    #[serde(with = "crate::report::int_str")]
    pub y: i128,
    /// `(x_i', y_i')` with `x_i = x x_i'` and `y_i = y y_i'`.
    pub primed_pairs: Vec<(String, String)>,
    /// Dividend `L = prod |A_i B_i|`.
    pub l: String,
    /// `A_i / B_i = (x_i y_ref) / (y_i x_ref)` in lowest terms, `B_i > 0`.
    pub ratios: Vec<(String, String)>,
    pub reconstructed: bool,
    pub failure: Option<String>,
}

/// Factors pairs through a common `(x, y)` relative to `pairs[ref_index]`.
///
/// With `A_i/B_i` as above, `x = |x_ref| / gcd(x_ref, prod B)` and
/// `y = y_ref / gcd(y_ref, prod A)`. For coprime pairs every `x_i` is a
/// multiple of `x` and every `y_i` of `y`, with cofactors dividing `L`;
/// this is re-verified and a failure is reported in the result, not as an
/// error.
pub fn coupling_factorize(pairs: &[(i128, i128)], ref_index: usize) -> Result<CouplingFactorization> {
    if pairs.is_empty() {
        return Err(Error::Invalid("empty pair list".into()));
    }
    if ref_index >= pairs.len() {
        return Err(Error::Invalid(format!("reference index {ref_index} out of range")));
    }
    if let Some(i) = pairs.iter().position(|p| p.0 == 0) {
        return Err(Error::Domain(format!("x_{i} = 0")));
    }
    if let Some(i) = pairs.iter().position(|p| p.1 == 0) {
        return Err(Error::Domain(format!("y_{i} = 0")));
    }
    let big = |v: i128| BigInt::from(v);
    let (xr, yr) = (big(pairs[ref_index].0), big(pairs[ref_index].1));
    let mut ratios = Vec::with_capacity(pairs.len());
    let mut prod_a = BigInt::one();
    let mut prod_b = BigInt::one();
    let mut l = BigInt::one();
    for &(xi, yi) in pairs {
        let q = BigRational::new(big(xi) * &yr, big(yi) * &xr);
        let (a, b) = (q.numer().clone(), q.denom().clone());
        prod_a *= a.abs();
        prod_b *= &b;
        l *= a.abs() * &b;
        ratios.push((a, b));
    }
    let x = xr.abs() / xr.gcd(&prod_b);
    let y = yr.abs() / yr.gcd(&prod_a);
    let mut primed = Vec::with_capacity(pairs.len());
    let mut failure = None;
    for (i, &(xi, yi)) in pairs.iter().enumerate() {
        let (xi, yi) = (big(xi), big(yi));
        if !(&xi % &x).is_zero() || !(&yi % &y).is_zero() {
            failure.get_or_insert_with(|| format!("pair {i} is not a multiple of (x, y) = ({x}, {y})"));
            primed.push((String::new(), String::new()));
            continue;
        }
        let (xp, yp) = (&xi / &x, &yi / &y);
        if !(&l % xp.abs()).is_zero() || !(&l % yp.abs()).is_zero() {
            failure.get_or_insert_with(|| format!("cofactors of pair {i} do not divide L = {l}"));
        }
        primed.push((xp.to_string(), yp.to_string()));
    }
    if x.gcd(&y) != BigInt::one() {
        failure.get_or_insert_with(|| format!("gcd(x, y) = {} != 1", x.gcd(&y)));
    }
    Ok(CouplingFactorization {
        x: to_i128(&x)?,
        y: to_i128(&y)?,
        primed_pairs: primed,
        l: l.to_string(),
        ratios: ratios.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        reconstructed: failure.is_none(),
        failure,
    })
}

/// Coupling across several values of `alpha`: every sample must reconstruct
/// and the ratios `A_i/B_i` must not depend on the sample.
pub fn coupled_across(samples: &[Vec<(i128, i128)>], ref_index: usize) -> Result<bool> {
    let mut first: Option<Vec<(String, String)>> = None;
    for s in samples {
        let f = coupling_factorize(s, ref_index)?;
        if !f.reconstructed {
            return Ok(false);
        }
        match &first {
            None => first = Some(f.ratios),
            Some(r) if *r != f.ratios => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_number;

    #[test]
    fn dirichlet_examples() {
        let p = dirichlet_pair(0.5, 10).unwrap();
        assert_eq!((p.x, p.y, p.rho), (1, 2, 0.0));
        let p = dirichlet_pair(std::f64::consts::PI, 10).unwrap();
        assert_eq!((p.x, p.y), (22, 7));
        assert!((p.rho.abs() - 0.00126).abs() < 1e-5 && p.rho.abs() < 1.0 / 70.0);
        let p = dirichlet_pair(0.3, 3).unwrap();
        assert_eq!((p.x, p.y), (1, 3));
        let exact = dirichlet_pair_exact(&parse_number("0.3").unwrap(), 3).unwrap();
        assert_eq!((exact.x, exact.y), (1, 3));
        assert!((exact.rho + 1.0 / 30.0).abs() < 1e-15);
        let p = dirichlet_pair(-2.75, 100).unwrap();
        assert_eq!((p.x, p.y, p.rho), (-11, 4, 0.0));
        assert!(dirichlet_pair(f64::NAN, 3).is_err());
        assert!(dirichlet_pair(0.1, 0).is_err());
    }

    #[test]
    fn pairs_satisfy_contract() {
        for (t, n) in [(0.123456789, 1000u64), (1e-9, 5), (123.456, 77), (-0.999, 1)] {
            let p = dirichlet_pair(t, n).unwrap();
            assert!(check_pair_f64(t, &p), "{t} {n} {p:?}");
        }
    }

    #[test]
    fn count_examples() {
        let c = count_approximants(0.5, 0.1, 10.0).unwrap();
        assert!(c.all_same_ratio && c.dichotomy_holds);
        assert!(c.pairs.iter().all(|&(x, y)| x % 2 == 0 && 2 * y == x));
        assert_eq!(c.count, 8);
        let c = count_approximants(2f64.sqrt(), 0.01, 50.0).unwrap();
        assert!(c.dichotomy_holds);
        let brute = (-49i64..=49)
            .filter(|&x| x != 0)
            .flat_map(|x| (-80i64..=80).map(move |y| (x, y)))
            .filter(|&(x, y)| (2f64.sqrt() * x as f64 - y as f64).abs() < 0.01)
            .count();
        assert_eq!(c.count as usize, brute);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let c = count_approximants(phi, 0.3, 20.0).unwrap();
        assert!(c.count < 144 && c.below_linear_bound);
        assert!(count_approximants(0.5, 0.0, 10.0).is_err());
        assert!(count_approximants(0.5, 0.1, 1e9).is_err());
    }

    #[test]
    fn coupling_examples() {
        let c = coupling_factorize(&[(3, 2), (3, 2), (3, 2)], 0).unwrap();
        assert_eq!((c.x, c.y, c.l.as_str()), (3, 2, "1"));
        assert!(c.reconstructed);
        assert!(c.primed_pairs.iter().all(|p| p.0 == "1" && p.1 == "1"));

        let c = coupling_factorize(&[(6, 1), (3, 2)], 0).unwrap();
        assert_eq!(c.ratios[1], ("1".to_string(), "4".to_string()));
        assert_eq!((c.x, c.y, c.l.as_str()), (3, 1, "4"));
        assert_eq!(c.primed_pairs, vec![("2".into(), "1".into()), ("1".into(), "2".into())]);
        assert!(c.reconstructed);

        let c = coupling_factorize(&[(4, 3), (8, 3)], 1).unwrap();
        assert_eq!(c.ratios[0], ("1".to_string(), "2".to_string()));
        assert_eq!((c.x, c.y, c.l.as_str()), (4, 3, "2"));
        assert!(c.reconstructed);

        // pairs that are not in lowest terms need not factor
        let c = coupling_factorize(&[(2, 4), (3, 5)], 1).unwrap();
        assert!(!c.reconstructed && c.failure.is_some());

        assert!(coupling_factorize(&[], 0).is_err());
        assert!(coupling_factorize(&[(0, 1), (1, 1)], 1).is_err());
    }

    #[test]
    fn coupling_across_samples() {
        let a = vec![(3, 2), (6, 1)];
        let b = vec![(9, 4), (9, 2)];
        assert!(!coupled_across(&[a.clone(), b], 0).unwrap());
        let c = vec![(5, 7), (10, 7)];
        assert!(coupled_across(&[c.clone(), c], 0).unwrap());
        assert!(coupled_across(&[a], 0).unwrap());
    }
}
