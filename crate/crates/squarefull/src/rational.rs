//! Exact positive rationals parsed from decimal strings.
//!
//! Interval lengths like H = 63.095734 enter every boundary comparison, so
//! they are kept as reduced fractions p/q with q dividing 10^6 and all
//! membership tests clear denominators instead of rounding.

use crate::error::{Error, Result};

/// Maximum number of digits accepted after the decimal point.
pub const MAX_FRACTION_DIGITS: usize = 6;

/// A positive rational p/q in lowest terms, q | 10^6 before reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    /// Build from an already-reduced pair. Errors on zero numerator or
    /// denominator.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Parse(format!("rational {num}/{den} must be positive")));
        }
        let g = gcd(num, den);
        Ok(Self { num: num / g, den: den / g })
    }

    /// Parse a decimal string such as "10", "0.5" or "63.095734".
    ///
    /// At most [`MAX_FRACTION_DIGITS`] fractional digits are accepted so the
    /// denominator always divides 10^6.
    pub fn from_decimal(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |m: &str| Error::Parse(format!("{m}: {s:?}"));
        if s.is_empty() {
            return Err(bad("empty decimal"));
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("no digits"));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad("not a plain non-negative decimal"));
        }
        if frac_part.len() > MAX_FRACTION_DIGITS {
            return Err(bad("more than 6 fractional digits"));
        }
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad("integer part overflows"))?
        };
        let den = 10u64.pow(frac_part.len() as u32);
        let frac_val: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad("fraction overflows"))?
        };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(|| bad("value overflows"))?;
        Self::new(num, den)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_decimal(s)
    }
}
