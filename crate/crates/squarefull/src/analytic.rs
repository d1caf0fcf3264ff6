//! Real-argument Riemann zeta via Euler-Maclaurin, the sinc kernel S(x),
//! the sawtooth psi and its Fourier expansion, and the limiting constant of
//! the short-interval variance.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::sum::NeumaierSum;

/// Bernoulli numbers B_2, B_4, ..., B_12.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];
/// B_14, used only to bound the first omitted correction term.
const B14: f64 = 7.0 / 6.0;

/// Euler-Maclaurin evaluation of zeta(s) at a fixed depth M with Bernoulli
/// corrections through B_12:
///
///   sum_{n<=M} n^-s + M^(1-s)/(s-1) + M^-s/2
///     + sum_j B_2j/(2j)! (s)(s+1)...(s+2j-2) M^(-s-2j+1).
///
/// Valid by analytic continuation for s > -1, s != 1. The caller picks M;
/// [`zeta_real`] chooses it from a tolerance.
pub fn euler_maclaurin_zeta(s: f64, m: u32) -> f64 {
    let m_f = m as f64;
    let mut sum = NeumaierSum::new();
    for n in 1..=m {
        sum.add((n as f64).powf(-s));
    }
    sum.add(m_f.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * m_f.powf(-s));
    let mut poch = s;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let two_j = 2 * (j as u32 + 1);
        let fact: f64 = (1..=two_j).map(|i| i as f64).product();
        sum.add(b / fact * poch * m_f.powf(-s - two_j as f64 + 1.0));
        // extend the rising product (s)(s+1)... by the next two factors
        poch *= (s + two_j as f64 - 1.0) * (s + two_j as f64);
    }
    sum.value()
}

/// Magnitude of the first omitted correction (the B_14 term); the true
/// remainder of the real-argument expansion is below it.
fn em_remainder_bound(s: f64, m: u32) -> f64 {
    let mut poch = s;
    for i in 1..=12 {
        poch *= s + i as f64;
    }
    let fact: f64 = (1..=14).map(|i| i as f64).product();
    (B14 / fact * poch * (m as f64).powf(-s - 13.0)).abs()
}

/// zeta(s) for real s >= 1/2, s != 1, with truncation below `tol`.
pub fn zeta_real(s: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::Domain(format!("zeta tolerance {tol} outside (0, 1e-6]")));
    }
    if (s - 1.0).abs() < 1e-14 {
        return Err(Error::ZetaPole);
    }
    if s < 0.5 {
        return Err(Error::Domain(format!("zeta_real restricted to s >= 1/2, got {s}")));
    }
    let mut m = 8;
    while em_remainder_bound(s, m) >= tol {
        m *= 2;
        if m > 1 << 24 {
            return Err(Error::Budget("Euler-Maclaurin depth exceeded 2^24".into()));
        }
    }
    Ok(euler_maclaurin_zeta(s, m))
}

/// S(x) = sin(pi x) / (pi x), S(0) = 1.
#[inline]
pub fn sinc(x: f64) -> f64 {
    let t = PI * x;
    if t.abs() < 1e-8 {
        // series: 1 - t^2/6, below 1 ulp for |t| < 1e-8
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// Partial Poisson check sum_{|n| <= N} S(n theta)^2; converges to 1/theta.
pub fn sinc_sum_identity_check(theta: f64, n: u64) -> Result<f64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::Domain(format!("theta {theta} outside (0, 1]")));
    }
    let mut sum = NeumaierSum::new();
    sum.add(1.0);
    for k in 1..=n {
        let s = sinc(k as f64 * theta);
        sum.add(2.0 * s * s);
    }
    Ok(sum.value())
}

/// Sawtooth psi(u) = u - [u] - 1/2, in [-1/2, 1/2).
#[inline]
pub fn psi(u: f64) -> f64 {
    u - u.floor() - 0.5
}

/// Truncated Fourier expansion of psi:
/// -(1/(2 pi i)) sum_{0<|n|<=N} e(nu)/n = -sum_{n<=N} sin(2 pi n u)/(pi n).
pub fn psi_fourier_partial(u: f64, n: u64) -> f64 {
    let mut sum = NeumaierSum::new();
    for k in 1..=n {
        sum.add(-(2.0 * PI * k as f64 * u).sin() / (PI * k as f64));
    }
    sum.value()
}

/// Split point between adaptive quadrature and the analytic tail of
/// [`sinc_integral`]. Integer, so sin(2 pi Y0) vanishes in the tail
/// expansion.
const SINC_SPLIT: f64 = 50.0;

/// Oscillatory tail integral C(alpha) = int_Y0^inf cos(2 pi y) y^-alpha dy
/// by repeated integration by parts; returns (value, remainder bound).
fn cos_tail(alpha: f64, depth: u32) -> (f64, f64) {
    let y0 = SINC_SPLIT;
    if depth == 0 {
        // |C(alpha)| <= int_Y0^inf y^-alpha dy
        return (0.0, y0.powf(1.0 - alpha) / (alpha - 1.0));
    }
    let (inner, inner_bound) = cos_tail(alpha + 2.0, depth - 1);
    let two_pi = 2.0 * PI;
    let boundary = -(two_pi * y0).sin() / two_pi * y0.powf(-alpha)
        + alpha / two_pi * (two_pi * y0).cos() / two_pi * y0.powf(-alpha - 1.0);
    let scale = alpha * (alpha + 1.0) / (two_pi * two_pi);
    (boundary - scale * inner, scale * inner_bound)
}

/// int_0^inf S(y)^2 y^(1/3) dy to absolute tolerance `tol`.
///
/// [0, 1] is integrated after the substitution y = t^3, which removes the
/// y^(1/3) cusp; [1, Y0] directly; and on [Y0, inf) the identity
/// sin^2 = 1/2 - cos(2 pi y)/2 gives a closed-form power term plus an
/// oscillatory remainder handled by integration by parts.
pub fn sinc_integral(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(Error::Domain(format!("tolerance {tol} outside (0, 1e-4]")));
    }
    let budget = 1 << 26;
    // y in [0,1] via y = t^3: integrand 3 sin^2(pi t^3) / (pi^2 t^3)
    let core1 = adaptive_simpson(
        |t| {
            if t <= 0.0 {
                0.0
            } else {
                let s = (PI * t * t * t).sin();
                3.0 * s * s / (PI * PI * t * t * t)
            }
        },
        0.0,
        1.0,
        0.25 * tol,
        budget,
    )?;
    let core2 = adaptive_simpson(
        |y| {
            let s = (PI * y).sin();
            s * s / (PI * PI * y.powf(5.0 / 3.0))
        },
        1.0,
        SINC_SPLIT,
        0.25 * tol,
        budget,
    )?;
    // tail: (1/(2 pi^2)) int (1 - cos 2 pi y) y^(-5/3) dy
    let power_term = 3.0 / (4.0 * PI * PI) * SINC_SPLIT.powf(-2.0 / 3.0);
    let (cos_term, bound) = cos_tail(5.0 / 3.0, 4);
    if bound / (2.0 * PI * PI) > 0.25 * tol {
        return Err(Error::QuadratureBudget(format!(
            "tail remainder bound {bound:e} exceeds budgeted tolerance"
        )));
    }
    Ok(core1 + core2 + power_term - cos_term / (2.0 * PI * PI))
}

/// Lanczos approximation (g = 7, 9 terms), accurate to ~1e-13 for x > 0.
fn lanczos_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // reflection
        return PI / ((PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut a = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + 7.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a
}

/// Closed form of [`sinc_integral`]: (3/(8 pi^2)) (2 pi)^(2/3) Gamma(1/3),
/// the independent cross-check for the quadrature route.
pub fn sinc_integral_closed_form() -> f64 {
    3.0 / (8.0 * PI * PI) * (2.0 * PI).powf(2.0 / 3.0) * lanczos_gamma(1.0 / 3.0)
}

/// Scale factor linking the diagonal sum to zeta(4/3)/zeta(2) times the
/// sinc integral: the Dirichlet series sum_b mu^2(b) b^(-3(1+s)/2) has a
/// simple pole at s = -1/3 with residue 2/3 in s, and the 2 H^2 prefactor
/// doubles it.
pub const DIAGONAL_RESIDUE_SCALE: f64 = 4.0 / 3.0;

/// The zeta values and derived constants used across the crate.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ZetaConstants {
    /// zeta(3/2)
    pub z32: f64,
    /// zeta(3)
    pub z3: f64,
    /// zeta(2/3), negative
    pub z23: f64,
    /// zeta(2)
    pub z2: f64,
    /// zeta(4/3)
    pub z43: f64,
    /// zeta(3/2)/zeta(3), the leading density of squarefull numbers
    pub c_lead: f64,
    /// Limiting constant of the diagonal sum divided by H^(2/3):
    /// (4/3) zeta(4/3)/zeta(2) int_0^inf S(y)^2 y^(1/3) dy.
    pub c_conj: f64,
}

impl ZetaConstants {
    /// Evaluate all constants with truncation tolerance `tol` per zeta value.
    pub fn compute(tol: f64) -> Result<Self> {
        let z32 = zeta_real(1.5, tol)?;
        let z3 = zeta_real(3.0, tol)?;
        let z23 = zeta_real(2.0 / 3.0, tol)?;
        let z2 = zeta_real(2.0, tol)?;
        let z43 = zeta_real(4.0 / 3.0, tol)?;
        let integral = sinc_integral(1e-11)?;
        let zc = Self {
            z32,
            z3,
            z23,
            z2,
            z43,
            c_lead: z32 / z3,
            c_conj: DIAGONAL_RESIDUE_SCALE * z43 / z2 * integral,
        };
        zc.validate()?;
        Ok(zc)
    }

    /// Default-precision constants (truncation 1e-12 per zeta value).
    pub fn default_precision() -> Result<Self> {
        Self::compute(1e-12)
    }

    /// Internal consistency: zeta(2) against pi^2/6 to 12 significant
    /// digits, sign pattern, and re-derivability of c_conj.
    pub fn validate(&self) -> Result<()> {
        let pi2_6 = PI * PI / 6.0;
        if ((self.z2 - pi2_6) / pi2_6).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "zeta(2) = {} disagrees with pi^2/6 = {pi2_6}",
                self.z2
            )));
        }
        if !(self.z23 < 0.0 && self.z43 > 0.0 && self.z32 > 0.0 && self.z3 > 0.0) {
            return Err(Error::Domain("zeta sign pattern violated".into()));
        }
        let rederived = DIAGONAL_RESIDUE_SCALE * self.z43 / self.z2 * sinc_integral(1e-9)?;
        if ((self.c_conj - rederived) / rederived).abs() > 1e-7 {
            return Err(Error::Domain(format!(
                "c_conj = {} not re-derivable (got {rederived})",
                self.c_conj
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let v = zeta_real(2.0, 1e-12).unwrap();
        assert!((v - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_three_halves_matches_direct_sum_bracket() {
        // independent oracle: partial sum to N plus the integral tail bracket
        // [2/sqrt(N+1), 2/sqrt(N)]
        let n = 10_000_000u64;
        let mut partial = NeumaierSum::new();
        for k in 1..=n {
            partial.add((k as f64).powf(-1.5));
        }
        let lo = partial.value() + 2.0 / ((n + 1) as f64).sqrt();
        let hi = partial.value() + 2.0 / (n as f64).sqrt();
        let v = zeta_real(1.5, 1e-12).unwrap();
        assert!(v >= lo - 1e-9 && v <= hi + 1e-9, "{v} not in [{lo}, {hi}]");
        assert!((v - 2.612375).abs() < 1e-6);
    }

    #[test]
    fn zeta_two_thirds_depth_agreement() {
        let a = euler_maclaurin_zeta(2.0 / 3.0, 64);
        let b = euler_maclaurin_zeta(2.0 / 3.0, 128);
        assert!((a - b).abs() < 1e-10, "depths disagree: {a} vs {b}");
        let v = zeta_real(2.0 / 3.0, 1e-12).unwrap();
        assert!((v - -2.44758073).abs() < 1e-7, "{v}");
    }

    #[test]
    fn zeta_depth_agreement_across_grid() {
        for s in [2.0 / 3.0, 4.0 / 3.0, 1.5, 2.0, 3.0] {
            let tol = 1e-10;
            let v1 = zeta_real(s, tol).unwrap();
            // force a deeper evaluation
            let v2 = euler_maclaurin_zeta(s, 4096);
            assert!((v1 - v2).abs() < 2.0 * tol, "s={s}: {v1} vs {v2}");
        }
    }

    #[test]
    fn zeta_error_paths() {
        assert!(matches!(zeta_real(1.0, 1e-8), Err(Error::ZetaPole)));
        assert!(matches!(zeta_real(0.4, 1e-8), Err(Error::Domain(_))));
        assert!(matches!(zeta_real(2.0, 1e-3), Err(Error::Domain(_))));
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(1.0).abs() < 1e-15);
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-15);
        for x in [0.1, 0.7, 3.3, 10.0] {
            assert!(sinc(x).abs() <= (1.0f64).min(1.0 / (PI * x)) + 1e-15);
        }
    }

    #[test]
    fn sinc_sum_identity_examples() {
        // theta = 1: only n = 0 survives
        let v = sinc_sum_identity_check(1.0, 10_000).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
        // theta = 1/2 -> 2, theta = 0.9 -> 1/0.9
        let v = sinc_sum_identity_check(0.5, 1_000_000).unwrap();
        assert!((v - 2.0).abs() < 1e-5, "{v}");
        let v = sinc_sum_identity_check(0.9, 1_000_000).unwrap();
        assert!((v - 1.0 / 0.9).abs() < 1e-5, "{v}");
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(0.5), 0.0);
        assert_eq!(psi(7.25), -0.25);
        assert_eq!(psi(3.0), -0.5);
        for u in [-2.3, -0.4, 0.1, 5.9] {
            let v = psi(u);
            assert!((-0.5..0.5).contains(&v), "psi({u}) = {v}");
            assert!((psi(u + 1.0) - v).abs() < 1e-12);
        }
    }

    #[test]
    fn psi_fourier_examples() {
        for n in [5, 50, 500] {
            assert!(psi_fourier_partial(0.5, n).abs() < 1e-12);
        }
        let v = psi_fourier_partial(0.25, 10_000);
        assert!((v - -0.25).abs() < 1e-3, "{v}");
        // near-integer u: error stays below the trivial bound 1
        let v = psi_fourier_partial(1e-6, 100);
        assert!((v - psi(1e-6)).abs() <= 1.0);
    }

    /// Documented constant for the Fourier truncation error
    /// |psi_N(u) - psi(u)| <= C min(1, 1/(N ||u||)); measured max is ~0.50.
    const PSI_FOURIER_C: f64 = 0.75;

    #[test]
    fn psi_fourier_error_envelope() {
        let grid = 10_000;
        for n in [10u64, 100, 1000] {
            let mut worst: f64 = 0.0;
            for i in 0..grid {
                let u = (i as f64 + 0.5) / grid as f64;
                let err = (psi_fourier_partial(u, n) - psi(u)).abs();
                let dist = (u - u.round()).abs();
                let bound = (1.0f64).min(1.0 / (n as f64 * dist));
                worst = worst.max(err / bound);
            }
            assert!(worst <= PSI_FOURIER_C, "N={n}: worst ratio {worst}");
        }
    }

    #[test]
    fn sinc_integral_against_closed_form() {
        let got = sinc_integral(1e-10).unwrap();
        let want = sinc_integral_closed_form();
        assert!((got - want).abs() < 1e-8, "quad {got} vs closed {want}");
        assert!((want - 0.34658853).abs() < 1e-7);
    }

    #[test]
    fn sinc_integral_tail_power_bound() {
        // the 1/2-term tail is exactly 3/(4 pi^2) Y0^(-2/3)
        let y0: f64 = SINC_SPLIT;
        let t = 3.0 / (4.0 * PI * PI) * y0.powf(-2.0 / 3.0);
        assert!(t < 1e-2 && t > 0.0);
    }

    #[test]
    fn lanczos_gamma_values() {
        assert!((lanczos_gamma(1.0) - 1.0).abs() < 1e-13);
        assert!((lanczos_gamma(5.0) - 24.0).abs() < 1e-10);
        assert!((lanczos_gamma(0.5) - PI.sqrt()).abs() < 1e-13);
        assert!((lanczos_gamma(1.0 / 3.0) - 2.678938534707748).abs() < 1e-12);
    }

    #[test]
    fn constants_compute_and_validate() {
        let zc = ZetaConstants::default_precision().unwrap();
        assert!((zc.c_lead - 2.17325431).abs() < 1e-8);
        assert!((zc.z3 - 1.20205690).abs() < 1e-8);
        assert!((zc.z43 - 3.60093775).abs() < 1e-8);
        assert!(zc.z23 < 0.0);
        assert!(zc.c_conj > 1.0 && zc.c_conj < 1.02, "c_conj = {}", zc.c_conj);
    }
}
