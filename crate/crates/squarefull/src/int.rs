//! Exact integer root helpers on 128-bit values.
//!
//! All boundary decisions in the sieve and counting code go through these,
//! never through floating point.

/// Largest integer r with r*r <= n.
#[inline]
pub fn isqrt(n: u128) -> u128 {
    n.isqrt()
}

/// Largest integer r with r*r*r <= n.
pub fn icbrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    // f64 seed, then correct. The seed is within +-2 of the true root for
    // all n < 2^128 because cbrt is correctly rounded to ~52 bits.
    let mut r = (n as f64).cbrt() as u128;
    r = r.saturating_sub(2);
    while (r + 1).checked_pow(3).map_or(false, |c| c <= n) {
        r += 1;
    }
    r
}

/// Largest integer r with r^5 <= n.
pub fn ififthrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).powf(0.2) as u128;
    r = r.saturating_sub(2);
    while (r + 1).checked_pow(5).map_or(false, |c| c <= n) {
        r += 1;
    }
    r
}

/// Smallest integer a with a*a >= v.
#[inline]
pub fn ceil_sqrt(v: u128) -> u128 {
    let r = isqrt(v);
    if r * r == v {
        r
    } else {
        r + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn icbrt_small() {
        assert_eq!(icbrt(0), 0);
        assert_eq!(icbrt(1), 1);
        assert_eq!(icbrt(7), 1);
        assert_eq!(icbrt(8), 2);
        assert_eq!(icbrt(26), 2);
        assert_eq!(icbrt(27), 3);
        assert_eq!(icbrt(1_000_000_000_000), 10_000);
    }

    #[test]
    fn ceil_sqrt_small() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(4), 2);
        assert_eq!(ceil_sqrt(5), 3);
    }

    proptest! {
        #[test]
        fn icbrt_is_exact(n in 0u128..=u64::MAX as u128 * 4) {
            let r = icbrt(n);
            prop_assert!(r * r * r <= n);
            prop_assert!((r + 1).checked_pow(3).map_or(true, |c| c > n));
        }

        #[test]
        fn ififthrt_is_exact(n in 0u128..=u64::MAX as u128 * 4) {
            let r = ififthrt(n);
            prop_assert!(r.pow(5) <= n);
            prop_assert!((r + 1).checked_pow(5).map_or(true, |c| c > n));
        }
    }
}
