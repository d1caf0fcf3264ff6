//! Exact evaluation of the short-interval variance
//!
//!   (1/X) int_X^{2X} | N(x) - c H |^2 dx,
//!   N(x) = #{squarefull m : x < m <= (sqrt(x) + H)^2},  c = zeta(3/2)/zeta(3),
//!
//! by an event sweep: N is a step function of x whose breakpoints are the
//! entry position (sqrt(m) - H)^2 and the exit position m of each squarefull
//! m, so the integral is a finite sum of segment_length * (N - cH)^2 terms,
//! accumulated in one fixed sorted order. A seeded Monte Carlo estimate
//! cross-checks the sweep, and the same segments give the exact measure of
//! the exceptional set {x : |N(x) - cH| > threshold}.

use crate::analytic::ZetaConstants;
use crate::error::{Error, Result};
use crate::int::icbrt;
use crate::rational::Rational;
use crate::rng::uniform_f64;
use crate::sieve::{count_squarefull, interval_top, SieveTable, SquarefullRep};
use crate::sum::NeumaierSum;

/// Hard cap on the number of sweep events held in memory.
pub const EVENT_BUDGET: u64 = 1 << 28;

/// Interval family parameters: x ranges over [X, 2X] and each interval is
/// (x, (sqrt(x) + H)^2], so it always contains exactly H more square-root
/// mass than its left end.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct IntervalParams {
    pub x: u64,
    pub h: Rational,
    /// zeta(3/2)/zeta(3), the centering density.
    pub c_lead: f64,
}

impl IntervalParams {
    pub fn new(x: u64, h: Rational, c_lead: f64) -> Result<Self> {
        if x == 0 || x > 1 << 52 {
            return Err(Error::Domain(format!("X = {x} outside 1..=2^52")));
        }
        let hv = h.value();
        if !(1.0 <= hv && hv * hv <= x as f64) {
            return Err(Error::Domain(format!("H = {h} outside [1, sqrt(X)] for X = {x}")));
        }
        Ok(Self { x, h, c_lead })
    }

    /// The centered count c_lead * H subtracted inside the integrand.
    pub fn center(&self) -> f64 {
        self.c_lead * self.h.value()
    }
}

/// One breakpoint of the interval-count step function.
#[derive(Debug, Clone, Copy)]
pub struct SweepEvent {
    /// Breakpoint location; entries at (sqrt(m) - H)^2, exits at m.
    pub position: f64,
    /// +1 when the generating m enters the window's intervals, -1 on exit.
    pub delta: i32,
    /// The squarefull m generating the event.
    pub source: u64,
}

impl SweepEvent {
    /// Total order: position, then entries before exits, then source.
    fn sort_key(&self) -> (f64, i32, u64) {
        (self.position, -self.delta, self.source)
    }
}

/// Everything the sweep produces in one pass.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct VarianceReport {
    pub x: u64,
    pub h: Rational,
    /// The exact sweep integral divided by X.
    pub exact: f64,
    pub mc_estimate: f64,
    pub mc_stderr: f64,
    /// Number of constant segments in the sweep.
    pub segments: u64,
    /// c_conj * H^(2/3).
    pub prediction: f64,
    pub ratio: f64,
    /// Fraction of [X, 2X] where |N - cH| exceeds the requested threshold;
    /// zero when no threshold was requested.
    pub exceptional_measure: f64,
}

/// Entry and exit breakpoints [(sqrt(m) - H)^2, m) of a squarefull m:
/// x counts m in its short interval iff entry <= x < exit.
pub fn membership_interval(m: u64, h: &Rational) -> Result<(f64, f64)> {
    let hv = h.value();
    let mf = m as f64;
    let s = mf.sqrt();
    if s <= hv {
        return Err(Error::Domain(format!("sqrt({m}) <= H = {h}")));
    }
    let entry = mf - 2.0 * hv * s + hv * hv;
    Ok((entry, mf))
}

/// Initial count plus the sorted event list for the window [X, 2X].
///
/// Event generation is sharded over b-ranges; the global sort by
/// (position, kind, source) makes the list independent of the shard count.
fn build_events(p: &IntervalParams, sieve: &SieveTable, threads: usize) -> Result<(u64, Vec<SweepEvent>)> {
    let x = p.x;
    let top_x = interval_top(x, &p.h)?;
    let top_2x = interval_top(2 * x, &p.h)?;
    let b_top = icbrt(top_2x as u128) as u64;
    if sieve.limit() < b_top {
        return Err(Error::SieveTooSmall { needed: b_top, have: sieve.limit() });
    }
    let n0 = count_squarefull(top_x, sieve)? - count_squarefull(x, sieve)?;
    let window = count_squarefull(top_2x, sieve)? - count_squarefull(x, sieve)?;
    if 2 * window > EVENT_BUDGET {
        return Err(Error::Budget(format!(
            "{window} squarefull numbers in the window need more than {EVENT_BUDGET} events"
        )));
    }

    let hv = p.h.value();
    let x0 = x as f64;
    let x1 = 2.0 * x as f64;
    let make_events = |reps: &[SquarefullRep], out: &mut Vec<SweepEvent>| {
        for r in reps {
            let m = r.value;
            if m > top_x {
                // not in the initial count: its entry breakpoint lies in (X, 2X]
                let mf = m as f64;
                let entry = (mf - 2.0 * hv * mf.sqrt() + hv * hv).clamp(x0, x1);
                out.push(SweepEvent { position: entry, delta: 1, source: m });
            }
            if m < 2 * x {
                out.push(SweepEvent { position: m as f64, delta: -1, source: m });
            }
        }
    };

    let threads = threads.max(1);
    let mut events: Vec<SweepEvent> = Vec::with_capacity(2 * window as usize);
    if threads == 1 {
        let reps = crate::sieve::enumerate_shard_for_sweep(x + 1, top_2x, 1, b_top, sieve);
        make_events(&reps, &mut events);
    } else {
        const CHUNK: u64 = 512;
        let n_chunks = (b_top + CHUNK - 1) / CHUNK;
        let next = std::sync::atomic::AtomicU64::new(0);
        let collected = std::sync::Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..threads.min(n_chunks as usize) {
                scope.spawn(|| {
                    let mut local: Vec<SweepEvent> = Vec::new();
                    loop {
                        let c = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if c >= n_chunks {
                            break;
                        }
                        let b_lo = c * CHUNK + 1;
                        let b_hi = ((c + 1) * CHUNK).min(b_top);
                        let reps =
                            crate::sieve::enumerate_shard_for_sweep(x + 1, top_2x, b_lo, b_hi, sieve);
                        make_events(&reps, &mut local);
                    }
                    collected.lock().unwrap().push(local);
                });
            }
        });
        for part in collected.into_inner().unwrap() {
            events.extend(part);
        }
    }
    events.sort_unstable_by(|a, b| {
        let (pa, da, sa) = a.sort_key();
        let (pb, db, sb) = b.sort_key();
        pa.total_cmp(&pb).then(da.cmp(&db)).then(sa.cmp(&sb))
    });
    Ok((n0, events))
}

/// Sequential sweep over sorted events. Returns the raw integral of
/// (N - center)^2 over [x0, x1], the raw measure where |N - center| exceeds
/// the threshold, the closing count, and the segment count.
fn sweep_segments(
    x0: f64,
    x1: f64,
    n0: u64,
    events: &[SweepEvent],
    center: f64,
    threshold: Option<f64>,
) -> (f64, f64, i64, u64) {
    let mut integral = NeumaierSum::new();
    let mut exceptional = NeumaierSum::new();
    let mut cursor = x0;
    let mut count = n0 as i64;
    let mut advance = |to: f64, count: i64| {
        let seg = to - cursor;
        debug_assert!(seg >= 0.0);
        let dev = count as f64 - center;
        integral.add(seg * dev * dev);
        if let Some(t) = threshold {
            if dev.abs() > t {
                exceptional.add(seg);
            }
        }
        cursor = to;
    };
    for e in events {
        advance(e.position, count);
        count += e.delta as i64;
        debug_assert!(count >= 0, "interval count went negative at {}", e.position);
    }
    advance(x1, count);
    (integral.value(), exceptional.value(), count, events.len() as u64 + 1)
}

/// Exact variance report (Monte Carlo fields zero, no exceptional measure).
pub fn variance_exact(
    p: &IntervalParams,
    zc: &ZetaConstants,
    sieve: &SieveTable,
    threads: usize,
) -> Result<VarianceReport> {
    variance_exact_with_threshold(p, zc, None, sieve, threads)
}

/// Exact variance report; when a threshold is supplied the same sweep also
/// fills the exceptional-set fraction.
pub fn variance_exact_with_threshold(
    p: &IntervalParams,
    zc: &ZetaConstants,
    threshold: Option<f64>,
    sieve: &SieveTable,
    threads: usize,
) -> Result<VarianceReport> {
    let (n0, events) = build_events(p, sieve, threads)?;
    let x0 = p.x as f64;
    let x1 = 2.0 * p.x as f64;
    let (integral, exceptional, _, segments) =
        sweep_segments(x0, x1, n0, &events, p.center(), threshold);
    let exact = integral / p.x as f64;
    let prediction = zc.c_conj * p.h.value().powf(2.0 / 3.0);
    Ok(VarianceReport {
        x: p.x,
        h: p.h,
        exact,
        mc_estimate: 0.0,
        mc_stderr: 0.0,
        segments,
        prediction,
        ratio: exact / prediction,
        exceptional_measure: exceptional / p.x as f64,
    })
}

/// Exact Lebesgue measure of {x in [X, 2X] : |N(x) - cH| > threshold},
/// divided by X.
pub fn exceptional_measure(
    p: &IntervalParams,
    threshold: f64,
    sieve: &SieveTable,
    threads: usize,
) -> Result<f64> {
    if threshold < 0.0 {
        return Err(Error::Domain(format!("threshold must be >= 0, got {threshold}")));
    }
    let (n0, events) = build_events(p, sieve, threads)?;
    let (_, exceptional, _, _) = sweep_segments(
        p.x as f64,
        2.0 * p.x as f64,
        n0,
        &events,
        p.center(),
        Some(threshold),
    );
    Ok(exceptional / p.x as f64)
}

/// Sorted squarefull values covering every interval with x in [X, 2X],
/// i.e. the window (X, (sqrt(2X) + H)^2]. This is the list
/// [`variance_mc`] binary-searches.
pub fn mc_value_window(p: &IntervalParams, sieve: &SieveTable) -> Result<Vec<u64>> {
    let top_2x = interval_top(2 * p.x, &p.h)?;
    Ok(crate::sieve::enumerate_squarefull(p.x + 1, top_2x, sieve)?
        .into_iter()
        .map(|r| r.value)
        .collect())
}

/// Seeded Monte Carlo estimate of the variance: draws x uniformly on
/// [X, 2X], evaluates N(x) by two binary searches, and returns the sample
/// mean and standard error of (N - cH)^2.
pub fn variance_mc(
    p: &IntervalParams,
    samples: u64,
    seed: u64,
    sorted_values: &[u64],
) -> Result<(f64, f64)> {
    if samples < 100 {
        return Err(Error::Domain(format!("need at least 100 samples, got {samples}")));
    }
    debug_assert!(sorted_values.windows(2).all(|w| w[0] < w[1]));
    let x0 = p.x as f64;
    let hv = p.h.value();
    let center = p.center();
    let mut values = Vec::with_capacity(samples as usize);
    for i in 0..samples {
        let x = x0 * (1.0 + uniform_f64(seed, i));
        let top = {
            let s = x.sqrt() + hv;
            s * s
        };
        let above = sorted_values.partition_point(|&m| (m as f64) <= x);
        let upto = sorted_values.partition_point(|&m| (m as f64) <= top);
        let dev = (upto - above) as f64 - center;
        values.push(dev * dev);
    }
    let mean = values.iter().copied().collect::<NeumaierSum>().value() / samples as f64;
    let mut varsum = NeumaierSum::new();
    for v in &values {
        varsum.add((v - mean) * (v - mean));
    }
    let stderr = (varsum.value() / (samples as f64 * (samples as f64 - 1.0))).sqrt();
    Ok((mean, stderr))
}
