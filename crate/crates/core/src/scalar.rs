use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Rational = BigRational;

/// Coefficient field. `Rational` gives exact answers, `f64` is the fast path
/// and is always paired with a tolerance policy.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Signed
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Square root when it exists in the field: perfect squares for rationals,
    /// any non-negative value for floats.
    fn sqrt_exact(&self) -> Option<Self>;
    fn to_json(&self) -> serde_json::Value;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(n.into(), d.into()))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = isqrt_exact(self.numer())?;
        let d = isqrt_exact(self.denom())?;
        Some(Rational::new(n, d))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

fn isqrt_exact(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    if &r * &r == *v {
        Some(r)
    } else {
        None
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }

    fn to_json(&self) -> serde_json::Value {
        // shortest round-trip representation, at most 17 significant digits
        match serde_json::Number::from_f64(*self) {
            Some(n) => serde_json::Value::Number(n),
            None => serde_json::Value::String(format!("{self}")),
        }
    }
}

/// Small integer constant in any scalar field.
pub fn k<T: Scalar>(v: i64) -> T {
    T::from_i64(v)
}

pub fn sq<T: Scalar>(x: &T) -> T {
    x.clone() * x
}

/// Parses `"17"`, `"-3/4"`, `"0.125"` or `"1.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("0{int}{frac}")).map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_f64(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Zero tests used by every module. Exact scalars are compared exactly; floats
/// are compared against `tau_rel` after the caller has brought the quantity to
/// unit weighted scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub mode: Mode,
    pub tau_rel: f64,
}

pub const DEFAULT_TAU: f64 = 1e-9;

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self::exact()
    }
}

impl TolerancePolicy {
    pub fn exact() -> Self {
        TolerancePolicy { mode: Mode::Exact, tau_rel: 0.0 }
    }

    pub fn float(tau_rel: f64) -> Self {
        TolerancePolicy { mode: Mode::Float, tau_rel }
    }

    /// Float policy whose tolerance can be overridden by `CYCLIDE_TOL`.
    pub fn float_from_env() -> Self {
        let tau = std::env::var("CYCLIDE_TOL")
            .ok()
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t >= 0.0)
            .unwrap_or(DEFAULT_TAU);
        Self::float(tau)
    }

    fn exact_for<T: Scalar>(&self) -> bool {
        T::EXACT || self.mode == Mode::Exact
    }

    pub fn is_zero<T: Scalar>(&self, x: &T) -> bool {
        self.is_zero_scaled(x, 1.0)
    }

    /// Zero test for a quantity whose natural magnitude is `scale`.
    pub fn is_zero_scaled<T: Scalar>(&self, x: &T, scale: f64) -> bool {
        if self.exact_for::<T>() {
            x.is_zero()
        } else {
            x.to_f64().abs() <= self.tau_rel * scale.max(f64::MIN_POSITIVE)
        }
    }

    pub fn sign<T: Scalar>(&self, x: &T) -> Ordering {
        self.sign_scaled(x, 1.0)
    }

    pub fn sign_scaled<T: Scalar>(&self, x: &T, scale: f64) -> Ordering {
        if self.is_zero_scaled(x, scale) {
            Ordering::Equal
        } else if x.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn cmp<T: Scalar>(&self, a: &T, b: &T) -> Ordering {
        self.sign(&(a.clone() - b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("-3/4").unwrap(), Rational::new((-3).into(), 4.into()));
        assert_eq!(parse_rational("0.125").unwrap(), Rational::new(1.into(), 8.into()));
        assert_eq!(parse_rational("1.5e-3").unwrap(), Rational::new(3.into(), 2000.into()));
        assert_eq!(parse_rational("2E2").unwrap(), Rational::from_integer(200.into()));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rational::from_ratio(9, 4).sqrt_exact(), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::from_ratio(2, 1).sqrt_exact(), None);
        assert_eq!(Rational::from_ratio(-4, 1).sqrt_exact(), None);
        assert_eq!(4.0f64.sqrt_exact(), Some(2.0));
    }

    #[test]
    fn tolerance_signs() {
        let p = TolerancePolicy::float(1e-9);
        assert_eq!(p.sign(&1e-12), Ordering::Equal);
        assert_eq!(p.sign(&-1e-6), Ordering::Less);
        let e = TolerancePolicy::exact();
        assert_eq!(e.sign(&1e-300), Ordering::Greater);
    }
}
