//! Diagonal quadratic forms `Q[m] = q_1 m_1^2 + ... + q_d m_d^2`.
//!
//! Coefficients are kept symbolically as `factor * base` where `factor` is an
//! exact rational and `base` is one of a few closed-form reals. Rational
//! forms therefore stay exact, and irrational ones can be evaluated to any
//! precision on demand.

use std::fmt;
use std::str::FromStr;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::Hp;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    One,
    /// Square root of a positive rational that is not a rational square.
    Sqrt(BigRational),
    Pi,
    E,
    /// `e^e`, the threshold on `|q_i|` in the small-value theorem.
    ExpE,
}

/// A real coefficient `factor * base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Coeff {
    pub factor: BigRational,
    pub base: Base,
}

impl Coeff {
    pub fn rational(q: BigRational) -> Self {
        Coeff {
            factor: q,
            base: Base::One,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact value of a finite f64 (every f64 is a dyadic rational).
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_f64(x)
            .map(Self::rational)
            .ok_or_else(|| Error::Parse(x.to_string()))
    }

    pub fn sqrt_of(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::Domain(format!("sqrt of non-positive {r}")));
        }
        match rational_sqrt(&r) {
            Some(q) => Ok(Self::rational(q)),
            None => {
                // pull square factors of the numerator and denominator out
                // so equal radicands compare equal
                let (fo, ri) = square_free_part(r.numer());
                let (go, rd) = square_free_part(r.denom());
                let factor = BigRational::new(fo, go.clone() * &rd);
                let radicand = BigRational::from_integer(ri * rd);
                Ok(Coeff {
                    factor,
                    base: Base::Sqrt(radicand),
                })
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.base == Base::One
    }

    pub fn is_zero(&self) -> bool {
        self.factor.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.factor.is_positive()
    }

    pub fn neg(&self) -> Self {
        Coeff {
            factor: -self.factor.clone(),
            base: self.base.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        Coeff {
            factor: self.factor.abs(),
            base: self.base.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Coeff {
            factor: &self.factor * c,
            base: self.base.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.factor)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = ratio_to_f64(&self.factor);
        match &self.base {
            Base::One => f,
            Base::Sqrt(r) => f * ratio_to_f64(r).sqrt(),
            Base::Pi => f * std::f64::consts::PI,
            Base::E => f * std::f64::consts::E,
            Base::ExpE => f * std::f64::consts::E.exp(),
        }
    }

    /// Value at the working precision of `hp`. The relative error is a few
    /// units in the last place of that precision.
    pub fn to_hp(&self, hp: &mut Hp) -> BigFloat {
        let f = hp.rational(&self.factor);
        let b = match &self.base {
            Base::One => return f,
            Base::Sqrt(r) => {
                let x = hp.rational(r);
                hp.sqrt(&x)
            }
            Base::Pi => hp.pi(),
            Base::E => hp.e(),
            Base::ExpE => {
                let e = hp.e();
                hp.exp(&e)
            }
        };
        hp.mul(&f, &b)
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// `n = a^2 * b` with `b` square-free (trial division, small inputs only).
fn square_free_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let mut rest = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= rest && p < BigInt::from(1_000_000) {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            a *= &p;
        }
        if e % 2 == 1 {
            b *= &p;
        }
        p += 1;
    }
    b *= rest;
    (a, b)
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match &self.base {
            Base::One => return write!(f, "{}", self.factor),
            Base::Sqrt(r) => format!("sqrt({r})"),
            Base::Pi => "pi".to_string(),
            Base::E => "e".to_string(),
            Base::ExpE => "e^e".to_string(),
        };
        if self.factor.is_one() {
            write!(f, "{base}")
        } else if (-self.factor.clone()).is_one() {
            write!(f, "-{base}")
        } else {
            write!(f, "{}*{base}", self.factor)
        }
    }
}

impl From<Coeff> for String {
    fn from(c: Coeff) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Coeff {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Parses `p/q`, decimals (`-1.25`, `3e-2`), `sqrt(x)`, `pi`, `e`, `e^e`, and
/// products `c*base` with a rational or decimal `c`.
impl FromStr for Coeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, &t[..]),
        };
        let (factor_str, base_str) = match body.rfind('*') {
            Some(i) => (Some(&body[..i]), &body[i + 1..]),
            None => (None, body),
        };
        let mut c = match parse_base(base_str)? {
            Some(c) => c,
            None if factor_str.is_none() => Coeff::rational(parse_number(base_str).ok_or_else(err)?),
            None => return Err(err()),
        };
        if let Some(fs) = factor_str {
            let f = parse_number(fs).ok_or_else(err)?;
            c = c.scale(&f);
        }
        Ok(if neg { c.neg() } else { c })
    }
}

fn parse_base(s: &str) -> Result<Option<Coeff>> {
    let one = BigRational::one();
    let c = match s {
        "pi" | "π" => Coeff {
            factor: one,
            base: Base::Pi,
        },
        "e" => Coeff {
            factor: one,
            base: Base::E,
        },
        "e^e" | "exp(e)" => Coeff {
            factor: one,
            base: Base::ExpE,
        },
        _ => {
            let inner = s
                .strip_prefix("sqrt(")
                .or_else(|| s.strip_prefix("√("))
                .and_then(|r| r.strip_suffix(')'));
            match inner {
                Some(x) => {
                    let r = parse_number(x).ok_or_else(|| Error::Parse(s.to_string()))?;
                    Coeff::sqrt_of(r)?
                }
                None => return Ok(None),
            }
        }
    };
    Ok(Some(c))
}

/// Exact parse of an integer, `p/q`, or decimal with optional exponent.
pub fn parse_number(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_number(p)?;
        let q = parse_number(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(p / q);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{ip}{fp}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let v = if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if neg { -v } else { v })
}

/// Parses a comma- or whitespace-separated coefficient list.
pub fn parse_coeff_list(s: &str) -> Result<Vec<Coeff>> {
    s.split(|c: char| c == ',' || c == ';')
        .flat_map(|p| p.split_whitespace())
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

/// Parses a JSON array whose entries are numbers or coefficient strings.
pub fn coeffs_from_json(v: &serde_json::Value) -> Result<Vec<Coeff>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?;
    arr.iter()
        .map(|x| match x {
            serde_json::Value::Number(n) => n.to_string().parse(),
            serde_json::Value::String(s) => s.parse(),
            other => Err(Error::Parse(other.to_string())),
        })
        .collect()
}

/// Signature `(r, s, t)`: positive, negative and zero coefficient counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl Signature {
    pub fn d(&self) -> usize {
        self.r + self.s + self.t
    }

    pub fn is_indefinite(&self) -> bool {
        self.r >= 1 && self.s >= 1
    }
}

/// A nonsingular real diagonal form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Coeff>", into = "Vec<Coeff>")]
pub struct DiagonalForm {
    coeffs: Vec<Coeff>,
    approx: Vec<f64>,
    r: usize,
    s: usize,
}

impl TryFrom<Vec<Coeff>> for DiagonalForm {
    type Error = Error;
    fn try_from(c: Vec<Coeff>) -> Result<Self> {
        DiagonalForm::new(c)
    }
}

impl From<DiagonalForm> for Vec<Coeff> {
    fn from(f: DiagonalForm) -> Self {
        f.coeffs
    }
}

impl DiagonalForm {
    pub fn new(coeffs: Vec<Coeff>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        if let Some(i) = coeffs.iter().position(Coeff::is_zero) {
            return Err(Error::ZeroCoefficient(i));
        }
        let approx: Vec<f64> = coeffs.iter().map(Coeff::to_f64).collect();
        let r = coeffs.iter().filter(|c| c.is_positive()).count();
        let s = coeffs.len() - r;
        Ok(DiagonalForm {
            coeffs,
            approx,
            r,
            s,
        })
    }

    pub fn from_ints(f: &[i64]) -> Result<Self> {
        Self::new(f.iter().map(|&x| Coeff::int(x)).collect())
    }

    pub fn from_f64s(f: &[f64]) -> Result<Self> {
        Self::new(f.iter().map(|&x| Coeff::from_f64(x)).collect::<Result<_>>()?)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_coeff_list(s)?)
    }

    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn approx(&self) -> &[f64] {
        &self.approx
    }

    pub fn signature(&self) -> Signature {
        Signature {
            r: self.r,
            s: self.s,
            t: 0,
        }
    }

    pub fn is_indefinite(&self) -> bool {
        self.r >= 1 && self.s >= 1
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_rational)
    }

    /// Integer coefficients when every coefficient is an integer.
    pub fn to_integer_form(&self) -> Option<IntegerForm> {
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                let q = c.as_rational()?;
                if q.is_integer() {
                    q.numer().to_i64()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<i64>>>()?;
        IntegerForm::new(ints).ok()
    }

    /// Clears denominators of a rational form: returns `(L, f)` with
    /// `L * Q = f` and `f` integral.
    pub fn clear_denominators(&self) -> Option<(BigInt, Vec<BigInt>)> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.as_rational()?.denom());
        }
        let f = self
            .coeffs
            .iter()
            .map(|c| (&c.factor * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        Some((l, f))
    }

    /// Coefficients `q_j / epsilon`; `|Q'[m]| < 1` iff `|Q[m]| < epsilon`.
    pub fn normalize_epsilon(&self, epsilon: &BigRational) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
        }
        let inv = epsilon.recip();
        Self::new(self.coeffs.iter().map(|c| c.scale(&inv)).collect())
    }

    /// Negates all coefficients if needed so that `r >= s`.
    pub fn canonical_orientation(&self) -> Result<(Self, bool)> {
        if !self.is_indefinite() {
            return Err(Error::Definite {
                r: self.r,
                s: self.s,
            });
        }
        if self.r >= self.s {
            Ok((self.clone(), false))
        } else {
            let f = Self::new(self.coeffs.iter().map(Coeff::neg).collect())?;
            Ok((f, true))
        }
    }

    /// `(q0, q, |det Q|)`: smallest and largest `|q_i|` and `prod |q_i|`.
    pub fn extremes(&self) -> (f64, f64, f64) {
        let abs = self.approx.iter().map(|x| x.abs());
        let q0 = abs.clone().fold(f64::INFINITY, f64::min);
        let q = abs.clone().fold(0.0, f64::max);
        let det = abs.product();
        (q0, q, det)
    }

    pub fn evaluate_f64(&self, m: &[i64]) -> f64 {
        self.approx
            .iter()
            .zip(m)
            .map(|(q, &x)| q * (x as f64) * (x as f64))
            .sum()
    }

    /// Exact value for rational forms.
    pub fn evaluate_exact(&self, m: &[i64]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (c, &x) in self.coeffs.iter().zip(m) {
            let x2 = BigInt::from(x) * BigInt::from(x);
            acc += c.as_rational()? * BigRational::from_integer(x2);
        }
        Some(acc)
    }

    pub fn weighted_norm_f64(&self, m: &[i64]) -> f64 {
        self.approx
            .iter()
            .zip(m)
            .map(|(q, &x)| q.abs() * (x as f64) * (x as f64))
            .sum()
    }

    pub fn weighted_norm_exact(&self, m: &[i64]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (c, &x) in self.coeffs.iter().zip(m) {
            let x2 = BigInt::from(x) * BigInt::from(x);
            acc += c.as_rational()?.abs() * BigRational::from_integer(x2);
        }
        Some(acc)
    }

    /// True when some `|q_i| < e^e`; the small-value theorem assumes otherwise.
    pub fn below_exp_e(&self) -> bool {
        let t = std::f64::consts::E.exp();
        self.approx.iter().any(|q| q.abs() < t)
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A nonsingular diagonal form with integer coefficients `f_1..f_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntegerForm {
    coeffs: Vec<i64>,
    r: usize,
    s: usize,
}

impl TryFrom<Vec<i64>> for IntegerForm {
    type Error = Error;
    fn try_from(c: Vec<i64>) -> Result<Self> {
        IntegerForm::new(c)
    }
}

impl From<IntegerForm> for Vec<i64> {
    fn from(f: IntegerForm) -> Self {
        f.coeffs
    }
}

impl IntegerForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        if let Some(i) = coeffs.iter().position(|&c| c == 0) {
            return Err(Error::ZeroCoefficient(i));
        }
        let r = coeffs.iter().filter(|&&c| c > 0).count();
        let s = coeffs.len() - r;
        Ok(IntegerForm { coeffs, r, s })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            r: self.r,
            s: self.s,
            t: 0,
        }
    }

    pub fn is_indefinite(&self) -> bool {
        self.r >= 1 && self.s >= 1
    }

    pub fn evaluate(&self, m: &[i64]) -> Result<i128> {
        let mut acc: i128 = 0;
        for (&f, &x) in self.coeffs.iter().zip(m) {
            let t = (f as i128)
                .checked_mul((x as i128) * (x as i128))
                .ok_or(Error::Overflow)?;
            acc = acc.checked_add(t).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn weighted_norm(&self, m: &[i64]) -> Result<i128> {
        let mut acc: i128 = 0;
        for (&f, &x) in self.coeffs.iter().zip(m) {
            let t = (f.unsigned_abs() as i128)
                .checked_mul((x as i128) * (x as i128))
                .ok_or(Error::Overflow)?;
            acc = acc.checked_add(t).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// `|f_1 ... f_d|`, exactly.
    pub fn abs_det(&self) -> BigInt {
        self.coeffs.iter().map(|&c| BigInt::from(c.unsigned_abs())).product()
    }

    pub fn to_diagonal(&self) -> DiagonalForm {
        DiagonalForm::from_ints(&self.coeffs).expect("nonzero coefficients")
    }
}

impl fmt::Display for IntegerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_number(s).unwrap()
    }

    #[test]
    fn normalize_epsilon_examples() {
        let f = DiagonalForm::parse("2,-3").unwrap();
        assert_eq!(f.normalize_epsilon(&q("1")).unwrap(), f);
        assert_eq!(
            f.normalize_epsilon(&q("0.5")).unwrap(),
            DiagonalForm::parse("4,-6").unwrap()
        );
        let g = DiagonalForm::parse("1,1,1,1,-sqrt(2)").unwrap();
        let h = g.normalize_epsilon(&q("0.1")).unwrap();
        assert_eq!(h, DiagonalForm::parse("10,10,10,10,-10*sqrt(2)").unwrap());
        assert_eq!(h.signature(), g.signature());
        assert!(f.normalize_epsilon(&q("0")).is_err());
        assert!(f.normalize_epsilon(&q("-1")).is_err());
    }

    #[test]
    fn orientation_examples() {
        let (f, flipped) = DiagonalForm::parse("1,-1,-1,-1,-1")
            .unwrap()
            .canonical_orientation()
            .unwrap();
        assert!(flipped);
        assert_eq!(f, DiagonalForm::parse("-1,1,1,1,1").unwrap());
        let g = DiagonalForm::parse("1,1,1,-1,-1").unwrap();
        assert_eq!(g.canonical_orientation().unwrap(), (g.clone(), false));
        let (h, fl) = DiagonalForm::parse("2,-3,-5,-7,-11,1")
            .unwrap()
            .canonical_orientation()
            .unwrap();
        assert!(fl);
        assert_eq!((h.signature().r, h.signature().s), (4, 2));
        assert!(matches!(
            DiagonalForm::parse("1,2,3").unwrap().canonical_orientation(),
            Err(Error::Definite { .. })
        ));
    }

    #[test]
    fn extremes_examples() {
        assert_eq!(DiagonalForm::parse("1,1,1,1,-1").unwrap().extremes(), (1.0, 1.0, 1.0));
        assert_eq!(
            DiagonalForm::parse("2,3,-5,7,-7").unwrap().extremes(),
            (2.0, 7.0, 1470.0)
        );
        let (q0, qq, det) = DiagonalForm::parse("e^e,-e^e,e^e,e^e,-e^e").unwrap().extremes();
        let ee = std::f64::consts::E.exp();
        assert!((q0 - ee).abs() < 1e-12 && (qq - ee).abs() < 1e-12);
        assert!((det / (5.0 * std::f64::consts::E).exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coefficient_parsing() {
        for s in ["3", "-7/2", "0.125", "2.5e-3", "sqrt(2)", "-3*sqrt(8)", "pi", "-e", "e^e", "1/3*pi"] {
            let c: Coeff = s.parse().unwrap();
            let back: Coeff = c.to_string().parse().unwrap();
            assert_eq!(c, back, "{s}");
        }
        let c: Coeff = "sqrt(8)".parse().unwrap();
        assert_eq!(c, "2*sqrt(2)".parse().unwrap());
        let c: Coeff = "sqrt(9/4)".parse().unwrap();
        assert_eq!(c, Coeff::rational(q("3/2")));
        assert!("sqrt(-1)".parse::<Coeff>().is_err());
        assert!("abc".parse::<Coeff>().is_err());
        assert!(DiagonalForm::parse("1,0,-1").is_err());
    }

    #[test]
    fn json_coefficients() {
        let v: serde_json::Value = serde_json::from_str(r#"[1, -0.1, "sqrt(3)"]"#).unwrap();
        let c = coeffs_from_json(&v).unwrap();
        assert_eq!(c[1], Coeff::rational(q("-1/10")));
        let f = DiagonalForm::new(c).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: DiagonalForm = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn integer_form_arithmetic() {
        let f = IntegerForm::new(vec![2, 3, -5, 7, -7]).unwrap();
        assert_eq!(f.evaluate(&[1, 1, 1, 0, 0]).unwrap(), 0);
        assert_eq!(f.weighted_norm(&[1, 1, 1, 0, 0]).unwrap(), 10);
        assert_eq!(f.abs_det(), BigInt::from(1470));
        let g = IntegerForm::new(vec![i64::MAX, 1]).unwrap();
        assert_eq!(g.evaluate(&[i64::MAX, 0]), Err(Error::Overflow));
    }
}
