use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::LatticeError;

/// The weight α ∈ (0, 1], kept as an exact rational.
///
/// Decimal input such as `0.05` is read exactly (as 1/20), not through a
/// binary float.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    exact: Rational,
}

impl Alpha {
    pub fn new(exact: Rational) -> Result<Self, LatticeError> {
        if exact <= 0 || exact > 1 {
            return Err(LatticeError::AlphaRange(exact.to_string()));
        }
        Ok(Self { exact })
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self, LatticeError> {
        if den == 0 {
            return Err(LatticeError::AlphaParse(format!("{num}/{den}")));
        }
        Self::new(Rational::from((num, den)))
    }

    /// Exact conversion of a binary double.
    pub fn from_f64(value: f64) -> Result<Self, LatticeError> {
        let exact = Rational::from_f64(value).ok_or_else(|| LatticeError::AlphaRange(value.to_string()))?;
        Self::new(exact)
    }

    pub fn one() -> Self {
        Self { exact: Rational::from(1) }
    }

    pub fn exact(&self) -> &Rational {
        &self.exact
    }

    pub fn to_f64(&self) -> f64 {
        self.exact.to_f64()
    }

    pub fn is_one(&self) -> bool {
        self.exact == 1
    }
}

impl fmt::Display for Alpha {
    /// Always `p/q`, also for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.exact.numer(), self.exact.denom())
    }
}

impl FromStr for Alpha {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || LatticeError::AlphaParse(s.to_string());
        let exact = if t.contains('/') {
            t.parse::<Rational>().map_err(|_| bad())?
        } else {
            parse_decimal(t).ok_or_else(bad)?
        };
        Self::new(exact)
    }
}

/// Exact value of a decimal literal like `0.05`, `1`, `2.5e-3`.
fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    let (negative, int_digits) = match int_part.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
    };
    let digits = format!("{int_digits}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = Rational::from(Integer::from_str(&digits).ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten_pow = Rational::from(Integer::from(10).pow(shift.unsigned_abs()));
    if shift >= 0 {
        value *= ten_pow;
    } else {
        value /= ten_pow;
    }
    if negative {
        value = -value;
    }
    Some(value)
}
