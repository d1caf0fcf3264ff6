//! Smooth weight construction: the k-fold step/box convolutions u_k and the
//! minorant/majorant pair sigma-/sigma+ for the indicator of [X, 2X], with
//! numerical checks of their support, derivative scaling, and the decay of
//! the oscillatory integrals they damp.
//!
//! u_k is the unit step convolved k times with the box of width L and mass
//! one. Its closed form, obtained by inverting the Laplace transform
//! (1 - e^(-Ls))^k / (L^k s^(k+1)), is
//!
//!   u_k(x) = (1/(k! L^k)) sum_{i=0}^{k} (-1)^i C(k,i) u(x - iL) (x - iL)^k,
//!
//! which rises from 0 at x = 0 to the plateau u_k ≡ 1 on [kL, inf).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Largest smoothing order the alternating closed form supports before
/// binomial cancellation destroys the result in f64.
pub const MAX_SMOOTHING_ORDER: u32 = 40;

/// Which side of the indicator the weight sandwiches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WeightSign {
    /// Minorant: supported on [X, 2X], equal to 1 on [X + kL, 2X - kL].
    Minus,
    /// Majorant: supported on [X - kL, 2X + kL], equal to 1 on [X, 2X].
    Plus,
}

/// Parameters (k, X, L, sign) of a smooth weight.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SmoothWeightSpec {
    pub k: u32,
    pub x: f64,
    pub l: f64,
    pub sign: WeightSign,
}

impl SmoothWeightSpec {
    pub fn new(k: u32, x: f64, l: f64, sign: WeightSign) -> Result<Self> {
        if k < 2 || k > MAX_SMOOTHING_ORDER {
            return Err(Error::Domain(format!(
                "smoothing order k = {k} outside 2..={MAX_SMOOTHING_ORDER}"
            )));
        }
        if !(x > 0.0) {
            return Err(Error::Domain(format!("X must be positive, got {x}")));
        }
        if !(l > 0.0 && l < x / (2.0 * k as f64)) {
            return Err(Error::Domain(format!("L = {l} outside (0, X/(2k)) for X = {x}, k = {k}")));
        }
        Ok(Self { k, x, l, sign })
    }

    /// Support of the weight as a closed interval.
    pub fn support(&self) -> (f64, f64) {
        let kl = self.k as f64 * self.l;
        match self.sign {
            WeightSign::Minus => (self.x, 2.0 * self.x),
            WeightSign::Plus => (self.x - kl, 2.0 * self.x + kl),
        }
    }
}

/// Exact binomial coefficient as f64 (k <= 40 keeps it under 2^53).
fn binomial(n: u32, k: u32) -> f64 {
    let mut c: u128 = 1;
    for i in 0..k.min(n - k) {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c as f64
}

/// The k-fold convolution u_k evaluated by the alternating closed form.
///
/// Returns an instability error when cancellation pushes the result outside
/// [-1e-6, 1 + 1e-6]; the output is never clamped.
pub fn u_k(x: f64, k: u32, l: f64) -> Result<f64> {
    if k == 0 || k > MAX_SMOOTHING_ORDER {
        return Err(Error::Domain(format!("order k = {k} outside 1..={MAX_SMOOTHING_ORDER}")));
    }
    if !(l > 0.0) {
        return Err(Error::Domain(format!("L must be positive, got {l}")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    // dimensionless form: sum_i (-1)^i C(k,i) (x/L - i)^k / k!
    let t = x / l;
    let k_fact: f64 = (1..=k).map(|i| i as f64).product();
    let mut sum = NeumaierSum::new();
    for i in 0..=k {
        let s = t - i as f64;
        if s <= 0.0 {
            break;
        }
        let term = binomial(k, i) * s.powi(k as i32) / k_fact;
        sum.add(if i % 2 == 0 { term } else { -term });
    }
    let v = sum.value();
    if !(-1e-6..=1.0 + 1e-6).contains(&v) {
        return Err(Error::Instability(format!(
            "u_{k}({x}) = {v} outside [0, 1] tolerance band"
        )));
    }
    Ok(v)
}

/// The smooth weight sigma+-_{k,X,L} at x.
///
/// Implemented as a product of two one-sided ramps,
///   sigma-(x) = u_k(x - X) u_k(2X - x),
///   sigma+(x) = u_k(x - X + kL) u_k(2X + kL - x),
/// which realizes the stated support, plateau, and sandwich properties
/// (the two transition zones never overlap because L < X/(2k)).
pub fn sigma(x: f64, spec: &SmoothWeightSpec) -> Result<f64> {
    let kl = spec.k as f64 * spec.l;
    let (rise_arg, fall_arg) = match spec.sign {
        WeightSign::Minus => (x - spec.x, 2.0 * spec.x - x),
        WeightSign::Plus => (x - spec.x + kl, 2.0 * spec.x + kl - x),
    };
    Ok(u_k(rise_arg, spec.k, spec.l)? * u_k(fall_arg, spec.k, spec.l)?)
}

/// Finite-difference step, as a fraction of L, for the derivative scan.
const FD_STEP_FRACTION: f64 = 1.0 / 64.0;

/// Max over a uniform grid of |d^i sigma / dx^i| * L^i, the scale-free
/// derivative bound. i = 0 returns the plain sup of sigma.
pub fn derivative_bound_check(spec: &SmoothWeightSpec, i: u32, grid: u32) -> Result<f64> {
    if i >= spec.k {
        return Err(Error::Domain(format!(
            "derivative order {i} not below smoothing order {}",
            spec.k
        )));
    }
    if grid < 2 {
        return Err(Error::Domain("grid must have at least 2 points".into()));
    }
    let (lo, hi) = spec.support();
    let margin = spec.l;
    let (lo, hi) = (lo - margin, hi + margin);
    let h = spec.l * FD_STEP_FRACTION;
    let mut worst: f64 = 0.0;
    for g in 0..grid {
        let x = lo + (hi - lo) * g as f64 / (grid - 1) as f64;
        // central difference of order i
        let mut acc = NeumaierSum::new();
        for j in 0..=i {
            let offset = (i as f64 / 2.0 - j as f64) * h;
            let w = binomial(i, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
            acc.add(w * sigma(x + offset, spec)?);
        }
        let deriv = acc.value() / h.powi(i as i32);
        worst = worst.max(deriv.abs() * spec.l.powi(i as i32));
    }
    Ok(worst)
}

/// Nodes and weights of 8-point Gauss-Legendre on [-1, 1].
const GL8_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// |int sigma(x) e(delta sqrt(x)) dx| by oscillation-aware quadrature.
///
/// The substitution t = sqrt(x) makes the phase linear; panels are capped
/// at a quarter period so 8-point Gauss-Legendre resolves each one.
pub fn oscillatory_decay_check(spec: &SmoothWeightSpec, delta: f64) -> Result<f64> {
    if delta < 0.0 {
        return Err(Error::Domain(format!("delta must be >= 0, got {delta}")));
    }
    let (lo, hi) = spec.support();
    let t_lo = lo.max(0.0).sqrt();
    let t_hi = hi.sqrt();
    let span = t_hi - t_lo;
    let quarter_period = if delta > 0.0 { 0.25 / delta } else { f64::INFINITY };
    let panel = (span / 64.0).min(quarter_period);
    let n_panels = (span / panel).ceil() as usize;
    if n_panels > 1 << 22 {
        return Err(Error::QuadratureBudget(format!(
            "{n_panels} oscillation panels exceed the budget"
        )));
    }
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let width = span / n_panels as f64;
    for p in 0..n_panels {
        let a = t_lo + p as f64 * width;
        let mid = a + 0.5 * width;
        for (node, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
            let t = mid + 0.5 * width * node;
            let amp = sigma(t * t, spec)? * 2.0 * t;
            let phase = 2.0 * PI * delta * t;
            re.add(w * 0.5 * width * amp * phase.cos());
            im.add(w * 0.5 * width * amp * phase.sin());
        }
    }
    Ok(re.value().hypot(im.value()))
}
