//! Squarefree sieving, squarefull enumeration and counting, and the
//! Bateman–Grosswald two-term approximation.
//!
//! A squarefull (powerful) number factors uniquely as n = a^2 b^3 with b
//! squarefree, so everything here reduces to iterating squarefree b and
//! exact integer square-root ranges for a. No membership decision ever
//! touches floating point.

use crate::analytic::ZetaConstants;
use crate::error::{Error, Result};
use crate::int::{ceil_sqrt, icbrt, isqrt};
use crate::rational::Rational;

/// Flag-bit budget for [`build_sieve`]: 1 GiB of flags (B up to ~8.6e9).
pub const MEMORY_BUDGET_BITS: u64 = 1 << 33;

/// Squarefree flags for 1..=limit, packed 64 per word.
///
/// Immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTable {
    limit: u64,
    words: Vec<u64>,
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// True iff no prime square divides n. Panics if n is 0 or beyond the
    /// sieve limit; range checks belong to the callers, which know the
    /// required coverage up front.
    #[inline]
    pub fn is_squarefree(&self, n: u64) -> bool {
        assert!(n >= 1 && n <= self.limit, "sieve lookup {n} out of 1..={}", self.limit);
        let bit = n - 1;
        self.words[(bit >> 6) as usize] >> (bit & 63) & 1 == 1
    }

    /// Packed little-endian words, bit (n-1) set iff n is squarefree.
    /// Bits at positions >= limit are zero.
    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    /// Rebuild from the packed representation (used by the cache loader).
    /// Validates the word count and the zeroed tail bits.
    pub fn from_words(limit: u64, words: Vec<u64>) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Domain("sieve limit must be >= 1".into()));
        }
        let want = ((limit + 63) / 64) as usize;
        if words.len() != want {
            return Err(Error::Domain(format!(
                "sieve payload has {} words, limit {} needs {}",
                words.len(),
                limit,
                want
            )));
        }
        let tail_bits = (limit % 64) as u32;
        if tail_bits != 0 && words[want - 1] >> tail_bits != 0 {
            return Err(Error::Domain("sieve payload has nonzero tail bits".into()));
        }
        Ok(Self { limit, words })
    }

    fn require(&self, needed: u64) -> Result<()> {
        if self.limit < needed {
            return Err(Error::SieveTooSmall { needed, have: self.limit });
        }
        Ok(())
    }
}

/// Sieve squarefree flags up to `limit`.
///
/// Marks multiples of d^2 for every d >= 2; the total work is
/// sum_d limit/d^2 < 0.65 * limit, so this stays linear without a prime
/// pre-pass.
pub fn build_sieve(limit: u64) -> Result<SieveTable> {
    if limit == 0 {
        return Err(Error::Domain("sieve limit must be >= 1".into()));
    }
    if limit > MEMORY_BUDGET_BITS {
        return Err(Error::Capacity { limit, budget: MEMORY_BUDGET_BITS });
    }
    let nwords = ((limit + 63) / 64) as usize;
    let mut words = vec![!0u64; nwords];
    // clear tail bits beyond limit so the packed form is canonical
    let tail_bits = (limit % 64) as u32;
    if tail_bits != 0 {
        words[nwords - 1] = (1u64 << tail_bits) - 1;
    }
    let mut d: u64 = 2;
    while d * d <= limit {
        let step = d * d;
        let mut m = step;
        while m <= limit {
            let bit = m - 1;
            words[(bit >> 6) as usize] &= !(1u64 << (bit & 63));
            m += step;
        }
        d += 1;
    }
    Ok(SieveTable { limit, words })
}

/// A squarefull number with its unique factorization n = a^2 b^3,
/// b squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SquarefullRep {
    pub value: u64,
    pub a: u64,
    pub b: u64,
}

/// All squarefull n in [lo, hi], sorted ascending, each with its (a, b).
///
/// Iterates squarefree b <= hi^(1/3); for each b the a-range is the exact
/// integer interval [ceil(sqrt(lo/b^3)), floor(sqrt(hi/b^3))].
pub fn enumerate_squarefull(lo: u64, hi: u64, sieve: &SieveTable) -> Result<Vec<SquarefullRep>> {
    if lo == 0 || lo > hi {
        return Err(Error::Domain(format!("bad range [{lo}, {hi}]")));
    }
    let b_top = icbrt(hi as u128) as u64;
    sieve.require(b_top)?;
    let mut out = enumerate_shard(lo, hi, 1, b_top, sieve);
    out.sort_unstable_by_key(|r| r.value);
    Ok(out)
}

/// The b in [b_lo, b_hi] slice of [`enumerate_squarefull`], unsorted.
/// Exact integers make the union over shards independent of the split.
fn enumerate_shard(lo: u64, hi: u64, b_lo: u64, b_hi: u64, sieve: &SieveTable) -> Vec<SquarefullRep> {
    let mut out = Vec::new();
    for b in b_lo..=b_hi {
        if !sieve.is_squarefree(b) {
            continue;
        }
        let b3 = (b as u128).pow(3);
        if b3 > hi as u128 {
            break;
        }
        let a_hi = isqrt(hi as u128 / b3) as u64;
        if a_hi == 0 {
            continue;
        }
        // smallest a with a^2 b^3 >= lo
        let v = (lo as u128 + b3 - 1) / b3;
        let a_lo = (ceil_sqrt(v) as u64).max(1);
        for a in a_lo..=a_hi {
            let value = (a as u128 * a as u128 * b3) as u64;
            debug_assert!(value >= lo && value <= hi);
            out.push(SquarefullRep { value, a, b });
        }
    }
    out
}

/// Q(x): the number of squarefull n <= x.
pub fn count_squarefull(x: u64, sieve: &SieveTable) -> Result<u64> {
    if x == 0 {
        return Err(Error::Domain("x must be >= 1".into()));
    }
    let b_top = icbrt(x as u128) as u64;
    sieve.require(b_top)?;
    let mut total: u64 = 0;
    for b in 1..=b_top {
        if sieve.is_squarefree(b) {
            let b3 = (b as u128).pow(3);
            total += isqrt(x as u128 / b3) as u64;
        }
    }
    Ok(total)
}

/// The two-term Bateman–Grosswald approximation to Q(x).
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BGApprox {
    pub x: f64,
    /// zeta(3/2)/zeta(3) * x^(1/2)
    pub main: f64,
    /// zeta(2/3)/zeta(2) * x^(1/3); negative for all x > 1.
    pub second: f64,
    pub total: f64,
}

pub fn bateman_grosswald(x: f64, zc: &ZetaConstants) -> Result<BGApprox> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("bateman_grosswald needs x > 1, got {x}")));
    }
    let main = zc.c_lead * x.sqrt();
    let second = zc.z23 / zc.z2 * x.cbrt();
    Ok(BGApprox { x, main, second, total: main + second })
}

/// floor((sqrt(x) + H)^2) for integer x and rational H = p/q.
///
/// With t = floor(2 p q sqrt(x)) computed by an exact integer square root,
/// floor(2H sqrt(x) + H^2) = floor((t + p^2) / q^2), so the returned top is
/// exact: m <= (sqrt(x) + H)^2 iff m <= interval_top(x, H) for integers m.
pub fn interval_top(x: u64, h: &Rational) -> Result<u64> {
    let p = h.num() as u128;
    let q = h.den() as u128;
    let four_ppqqx = (4 * p * p)
        .checked_mul(q * q)
        .and_then(|v| v.checked_mul(x as u128))
        .ok_or(Error::Overflow("interval_top"))?;
    let t = isqrt(four_ppqqx);
    let add = (t + p * p) / (q * q);
    let top = (x as u128)
        .checked_add(add)
        .ok_or(Error::Overflow("interval_top"))?;
    u64::try_from(top).map_err(|_| Error::Overflow("interval_top"))
}

/// #{squarefull m : x < m <= (sqrt(x) + H)^2}, exact.
pub fn short_interval_count(x: u64, h: &Rational, sieve: &SieveTable) -> Result<u64> {
    if h.value() < 1.0 {
        return Err(Error::Domain(format!("H must be >= 1, got {h}")));
    }
    let top = interval_top(x, h)?;
    Ok(count_squarefull(top, sieve)? - count_squarefull(x, sieve)?)
}

/// Exact membership test: is m inside the short interval at x?
/// Equivalent to x < m <= (sqrt(x) + H)^2, decided in integer arithmetic.
pub fn in_short_interval(x: u64, m: u64, h: &Rational) -> Result<bool> {
    Ok(m > x && m <= interval_top(x, h)?)
}
