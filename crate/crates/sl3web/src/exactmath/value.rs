//! The two value rings: `a + b·√3/π` for Green's function values and
//! `c·√3 + d·π` for the integrals `I_m`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `a + b·(√3/π)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExactValue {
    #[serde(with = "rational_text")]
    pub a: Rational,
    #[serde(with = "rational_text")]
    pub b: Rational,
}

/// `c_sqrt3·√3 + c_pi·π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntegralValue {
    #[serde(with = "rational_text")]
    pub c_sqrt3: Rational,
    #[serde(with = "rational_text")]
    pub c_pi: Rational,
}

impl ExactValue {
    pub fn new(a: Rational, b: Rational) -> Self {
        ExactValue { a, b }
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64)) -> Self {
        ExactValue { a: rat(a.0, a.1), b: rat(b.0, b.1) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ExactValue { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap()
    }

    /// Decimal rendering with `digits` significant-ish digits after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        decimal(&[(&self.a, &unit), (&self.b, &sqrt3_over_pi)], digits)
    }
}

impl IntegralValue {
    pub fn new(c_sqrt3: Rational, c_pi: Rational) -> Self {
        IntegralValue { c_sqrt3, c_pi }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        IntegralValue { c_sqrt3: &self.c_sqrt3 * k, c_pi: &self.c_pi * k }
    }

    /// `(3/π)·self`, the only place the two rings meet.
    pub fn times_three_over_pi(&self) -> ExactValue {
        let three = rat(3, 1);
        ExactValue { a: &self.c_pi * &three, b: &self.c_sqrt3 * &three }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap()
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        decimal(&[(&self.c_sqrt3, &sqrt3), (&self.c_pi, &pi_scaled)], digits)
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, o: ExactValue) -> ExactValue {
        ExactValue { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<'a> Add<&'a ExactValue> for ExactValue {
    type Output = ExactValue;
    fn add(self, o: &ExactValue) -> ExactValue {
        ExactValue { a: self.a + &o.a, b: self.b + &o.b }
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, o: ExactValue) -> ExactValue {
        ExactValue { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<'a> Sub<&'a ExactValue> for ExactValue {
    type Output = ExactValue;
    fn sub(self, o: &ExactValue) -> ExactValue {
        ExactValue { a: self.a - &o.a, b: self.b - &o.b }
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue { a: -self.a, b: -self.b }
    }
}

impl<'a> Mul<&'a Rational> for ExactValue {
    type Output = ExactValue;
    fn mul(self, k: &Rational) -> ExactValue {
        ExactValue { a: self.a * k, b: self.b * k }
    }
}

impl Add for IntegralValue {
    type Output = IntegralValue;
    fn add(self, o: IntegralValue) -> IntegralValue {
        IntegralValue { c_sqrt3: self.c_sqrt3 + o.c_sqrt3, c_pi: self.c_pi + o.c_pi }
    }
}

impl<'a> Add<&'a IntegralValue> for IntegralValue {
    type Output = IntegralValue;
    fn add(self, o: &IntegralValue) -> IntegralValue {
        IntegralValue { c_sqrt3: self.c_sqrt3 + &o.c_sqrt3, c_pi: self.c_pi + &o.c_pi }
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes `c * unit` followed by a signed rational constant, e.g.
/// `243/40 * sqrt(3)/pi - 3`.
fn fmt_pair(f: &mut fmt::Formatter<'_>, c: &Rational, unit: &str, k: &Rational) -> fmt::Result {
    match (c.is_zero(), k.is_zero()) {
        (true, _) => write!(f, "{}", fmt_rat(k)),
        (false, true) => write!(f, "{} * {unit}", fmt_rat(c)),
        (false, false) => {
            let sign = if k.is_negative() { '-' } else { '+' };
            write!(f, "{} * {unit} {sign} {}", fmt_rat(c), fmt_rat(&k.abs()))
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pair(f, &self.b, "sqrt(3)/pi", &self.a)
    }
}

impl fmt::Display for IntegralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c_sqrt3.is_zero(), self.c_pi.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{} * sqrt(3)", fmt_rat(&self.c_sqrt3)),
            (true, false) => write!(f, "{} * pi", fmt_rat(&self.c_pi)),
            (false, false) => {
                let sign = if self.c_pi.is_negative() { '-' } else { '+' };
                write!(f, "{} * sqrt(3) {sign} {} * pi", fmt_rat(&self.c_sqrt3), fmt_rat(&self.c_pi.abs()))
            }
        }
    }
}

mod rational_text {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// fixed-point constants

/// `π·10^p` truncated, by Machin's formula with guard digits.
fn pi_scaled(p: u32) -> BigInt {
    let guard = 10;
    let one = BigInt::from(10).pow(p + guard);
    let atan_inv = |k: u32| {
        let k = BigInt::from(k);
        let k2 = &k * &k;
        let mut term = &one / &k;
        let mut sum = term.clone();
        let mut n = 1u32;
        while !term.is_zero() {
            term = term / &k2;
            let t = &term / BigInt::from(2 * n + 1);
            if n % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            n += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    pi / BigInt::from(10).pow(guard)
}

fn cached(cell: &Mutex<Option<(u32, BigInt)>>, p: u32, make: impl Fn(u32) -> BigInt) -> BigInt {
    let mut guard = cell.lock().unwrap();
    if let Some((have, v)) = guard.as_ref() {
        if *have >= p {
            return v / BigInt::from(10).pow(have - p);
        }
    }
    let p2 = p.max(64) * 2;
    let v = make(p2);
    let out = &v / BigInt::from(10).pow(p2 - p);
    *guard = Some((p2, v));
    out
}

/// `√3·10^p` truncated.
fn sqrt3(p: u32) -> BigInt {
    static CELL: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);
    cached(&CELL, p, |p| (BigInt::from(3) * BigInt::from(10).pow(2 * p)).sqrt())
}

/// `(√3/π)·10^p` truncated.
pub(crate) fn sqrt3_over_pi(p: u32) -> BigInt {
    static CELL: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);
    cached(&CELL, p, |p| {
        let g = 10;
        sqrt3(p + g) * BigInt::from(10).pow(p + g) / pi_scaled(p + g) / BigInt::from(10).pow(g)
    })
}

fn digits_of(r: &Rational) -> u32 {
    let n = r.numer().abs();
    let d = r.denom();
    let q = n / d;
    q.to_string().len() as u32
}

fn unit(p: u32) -> BigInt {
    BigInt::from(10).pow(p)
}

type Konst<'a> = &'a dyn Fn(u32) -> BigInt;

/// Decimal text of `Σ c·K` where each constant is given as `K·10^p`.
fn decimal(terms: &[(&Rational, Konst<'_>)], digits: u32) -> String {
    let p = digits + terms.iter().map(|(c, _)| digits_of(c)).max().unwrap_or(0) + 12;
    // floor division keeps each truncation error below one unit of 10^-p
    let total: BigInt = terms.iter().map(|(c, k)| (c.numer() * k(p)).div_floor(c.denom())).sum();
    let negative = total.sign() == Sign::Minus;
    let mag = total.abs();
    let step = BigInt::from(10).pow(p - digits);
    let rounded: BigInt = (&mag + &step / 2u32) / &step;
    let text = rounded.to_string();
    let d = digits as usize;
    let text = if text.len() <= d { format!("{}{}", "0".repeat(d + 1 - text.len()), text) } else { text };
    let (int, frac) = text.split_at(text.len() - d);
    let body = if d == 0 { int.to_string() } else { format!("{int}.{frac}") };
    if negative && !rounded.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(pi_scaled(30).to_string(), "3141592653589793238462643383279");
        assert_eq!(sqrt3(20).to_string(), "173205080756887729352");
        assert_eq!(sqrt3_over_pi(20).to_string(), "55132889542179204951");
    }

    #[test]
    fn display() {
        assert_eq!(ExactValue::from_ints((0, 1), (-9, 4)).to_string(), "-9/4 * sqrt(3)/pi");
        assert_eq!(ExactValue::from_ints((-3, 1), (243, 40)).to_string(), "243/40 * sqrt(3)/pi - 3");
        assert_eq!(ExactValue::from_ints((-1, 1), (0, 1)).to_string(), "-1");
        assert_eq!(ExactValue::zero().to_string(), "0");
        assert_eq!(IntegralValue::new(rat(0, 1), rat(2, 3)).to_string(), "2/3 * pi");
        assert_eq!(IntegralValue::new(rat(1, 1), rat(4, 3)).to_string(), "1 * sqrt(3) + 4/3 * pi");
    }

    #[test]
    fn decimals() {
        let h = ExactValue::from_ints((-3, 1), (243, 40));
        assert_eq!(h.to_decimal(10), "0.3493230397");
        assert!((h.to_f64() - (243.0 * 3f64.sqrt() / (40.0 * std::f64::consts::PI) - 3.0)).abs() < 1e-15);
        assert_eq!(ExactValue::from_ints((-1, 1), (0, 1)).to_decimal(3), "-1.000");
        let i = IntegralValue::new(rat(1, 1), rat(4, 3));
        assert!((i.to_f64() - (3f64.sqrt() + 4.0 * std::f64::consts::PI / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn serde_text() {
        let v = ExactValue::from_ints((-3, 1), (243, 40));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"a":"-3","b":"243/40"}"#);
        assert_eq!(serde_json::from_str::<ExactValue>(&s).unwrap(), v);
    }
}
