//! Multi-precision helpers built on `astro-float`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Highest working precision the certification routines escalate to.
pub const PRECISION_CAP: usize = 512;

/// A working precision together with the constant cache astro-float needs.
pub struct Hp {
    pub bits: usize,
    cc: Consts,
}

impl std::fmt::Debug for Hp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hp").field("bits", &self.bits).finish()
    }
}

impl Hp {
    pub fn new(bits: usize) -> Self {
        Hp {
            bits: bits.max(64),
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn int(&mut self, n: &BigInt) -> BigFloat {
        self.parse(&n.to_string())
    }

    pub fn i128(&mut self, n: i128) -> BigFloat {
        if n.unsigned_abs() < (1u128 << 63) {
            BigFloat::from_i64(n as i64, self.bits)
        } else {
            self.parse(&n.to_string())
        }
    }

    pub fn f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn rational(&mut self, q: &BigRational) -> BigFloat {
        let n = self.int(q.numer());
        let d = self.int(q.denom());
        n.div(&d, self.bits, RM)
    }

    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.bits, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    pub fn e(&mut self) -> BigFloat {
        self.cc.e(self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.cc)
    }

    pub fn pow(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.pow(b, self.bits, RM, &mut self.cc)
    }

    /// Decimal rendering with the full working precision.
    pub fn format(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }

    /// Nearest f64; saturates to ±inf outside the f64 range.
    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let s = self.format(a);
        parse_astro_decimal(&s)
    }

    /// `|a|` is bounded by `2^e` where `e` is the binary exponent.
    pub fn exponent(a: &BigFloat) -> i64 {
        a.exponent().map(|e| e as i64).unwrap_or(i64::MIN)
    }
}

/// astro-float prints `1.5e+3`-style strings; Rust's parser accepts most of
/// them but not a leading `+` in the exponent on every platform.
fn parse_astro_decimal(s: &str) -> f64 {
    let t = s.replace("e+", "e");
    t.parse::<f64>().unwrap_or(f64::NAN)
}
