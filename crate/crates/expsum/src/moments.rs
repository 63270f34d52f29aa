//! Mean values of |S|^{2p} over rectangles in the (alpha, gamma) frequency
//! plane, where S is the quartic-phase exponential sum over an integer range.
//!
//! Three evaluation routes with very different trust profiles:
//!
//! * [`moment_exact`] — when alpha covers a full period, orthogonality kills
//!   every tuple pair whose square sums differ, and the integral collapses to
//!   an exact finite sum over the phase spectrum. This is the reference path.
//! * [`moment_kernel_expansion`] — for sub-rectangles, the same expansion
//!   with both the alpha and gamma integrals in closed form per key pair.
//!   Exact up to floating kernel evaluation, quadratic in spectrum size.
//! * [`moment_quadrature`] — a direct midpoint rule on the oscillatory
//!   integrand, sharing no code or idea with the spectrum routes; it serves
//!   as the independent cross-check and also accepts arbitrary coefficients.
//!
//! The module also houses the window integrals used by the growth
//! experiments ([`integral_i`], [`integral_r`], [`low_alpha_moment`]) and the
//! log-log fitting helpers ([`fit_exponent`], [`exponent_recurrence`]).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::phase::{reduced_scaled, unit_phase, Compensated, CompensatedComplex};
use crate::sums::{
    build_spectrum_with_budget, CoefficientSequence, IntRange, SpectrumEntry,
    DEFAULT_TUPLE_BUDGET,
};

/// Default cap on `alpha cells x gamma cells x range length` for the
/// midpoint rule. Roughly ten seconds of single-threaded work.
pub const DEFAULT_QUAD_WORK_BUDGET: u128 = 6_000_000_000;

/// Default cap on spectrum key pairs visited by the kernel expansion.
pub const DEFAULT_KERNEL_PAIR_BUDGET: u128 = 200_000_000;

/// Cap on precomputed phase-table entries (`range length x (alpha cells +
/// gamma cells)`), keeping quadrature memory within a couple hundred MB.
const MAX_TABLE_ENTRIES: u128 = 12_500_000;

/// How a moment value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentMethod {
    /// Full-period alpha integral collapsed by orthogonality.
    ExactOrthogonality,
    /// Closed-form alpha and gamma kernels summed over spectrum key pairs.
    KernelExpansion,
    /// Midpoint rule on the oscillatory integrand.
    Quadrature,
}

/// A moment value with provenance and a self-reported error estimate.
///
/// For [`MomentMethod::ExactOrthogonality`] the estimate is the imaginary
/// residue of the complex accumulation (an internal consistency signal; the
/// true value is real). For quadrature it is the difference against a grid
/// twice as coarse.
#[derive(Clone, Copy, Debug)]
pub struct MomentResult {
    pub value: f64,
    pub method: MomentMethod,
    pub error_estimate: f64,
}

/// The rectangle `[a0,a1] x [g0,g1]` in the frequency plane, the tuple
/// exponent `p` (the integrand is |S|^{2p}), the summation range, and
/// optional coefficients (all-ones when absent).
#[derive(Clone, Debug)]
pub struct MomentQuery {
    pub p: u32,
    pub range: IntRange,
    pub alpha: (f64, f64),
    pub gamma: (f64, f64),
    pub coeffs: Option<CoefficientSequence>,
}

impl MomentQuery {
    pub fn new(p: u32, range: IntRange, alpha: (f64, f64), gamma: (f64, f64)) -> Self {
        MomentQuery {
            p,
            range,
            alpha,
            gamma,
            coeffs: None,
        }
    }

    /// Query with alpha covering the full period `[0,1]`.
    pub fn full_alpha(p: u32, range: IntRange, gamma: (f64, f64)) -> Self {
        MomentQuery::new(p, range, (0.0, 1.0), gamma)
    }

    pub fn with_coeffs(mut self, coeffs: CoefficientSequence) -> Self {
        self.coeffs = Some(coeffs);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(1..=5).contains(&self.p) {
            return Err(Error::param("tuple exponent p must lie in 1..=5"));
        }
        if self.range.is_empty() {
            return Err(Error::param("moment over an empty range"));
        }
        let (a0, a1) = self.alpha;
        if !a0.is_finite() || !a1.is_finite() || !(0.0..=1.0).contains(&a0) || a1 > 1.0 || a0 > a1
        {
            return Err(Error::param(
                "alpha interval must satisfy 0 <= a0 <= a1 <= 1",
            ));
        }
        let (g0, g1) = self.gamma;
        if !g0.is_finite() || !g1.is_finite() || g0 > g1 {
            return Err(Error::param("gamma interval must satisfy g0 <= g1"));
        }
        if let Some(c) = &self.coeffs {
            if c.range() != self.range {
                return Err(Error::param(
                    "coefficient sequence range must match the query range",
                ));
            }
        }
        Ok(())
    }

    fn require_unit_coefficients(&self, route: &str) -> Result<()> {
        match &self.coeffs {
            Some(c) if !c.is_all_ones() => Err(Error::param(format!(
                "{route} requires all-ones coefficients; use moment_quadrature for general ones"
            ))),
            _ => Ok(()),
        }
    }

    fn is_zero_measure(&self) -> bool {
        self.alpha.0 == self.alpha.1 || self.gamma.0 == self.gamma.1
    }
}

/// `z / (2 pi i d)`, the common factor of both closed-form kernels.
fn over_two_pi_i(z: Complex64, d: f64) -> Complex64 {
    Complex64::new(z.im, -z.re) / (TAU * d)
}

/// Closed form of `integral of e(gamma * d) d gamma` over `[lambda0, lambda1]`
/// for an integer frequency `d`: the interval width when `d = 0`, otherwise
/// `(e(lambda1 d) - e(lambda0 d)) / (2 pi i d)`.
///
/// The endpoint phases are reduced exactly, so the kernel stays accurate for
/// frequencies far beyond 2^53.
pub fn gamma_kernel(lambda0: f64, lambda1: f64, d: i128) -> Complex64 {
    debug_assert!(lambda0 <= lambda1);
    if d == 0 {
        return Complex64::new(lambda1 - lambda0, 0.0);
    }
    let num = unit_phase(reduced_scaled(lambda1, d)) - unit_phase(reduced_scaled(lambda0, d));
    over_two_pi_i(num, d as f64)
}

/// Per-entry unit phases `e(c * component)` at the two interval endpoints.
/// The kernel for a key pair then needs only products of these, no further
/// trigonometric evaluation.
fn endpoint_phases(
    entries: &[SpectrumEntry],
    c0: f64,
    c1: f64,
    component: impl Fn(&SpectrumEntry) -> i128,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let p0 = entries
        .iter()
        .map(|e| unit_phase(reduced_scaled(c0, component(e))))
        .collect();
    let p1 = entries
        .iter()
        .map(|e| unit_phase(reduced_scaled(c1, component(e))))
        .collect();
    (p0, p1)
}

/// Moment with alpha integrated exactly over the full period `[0,1]`.
///
/// Expanding |S|^{2p} over ordered pairs of p-tuples and integrating alpha
/// over a unit interval annihilates every pair whose square sums differ
/// (integer frequencies), so the value collapses to a finite sum over
/// square-sum classes of the phase spectrum, with the gamma integral in
/// closed form. No discretization anywhere; the only inexactness is floating
/// kernel evaluation.
///
/// Requires `alpha == (0.0, 1.0)` and all-ones coefficients. The class loop
/// is quadratic in class size — fine at desk scale, and the tuple budget
/// bounds the spectrum it can see.
pub fn moment_exact(q: &MomentQuery) -> Result<MomentResult> {
    moment_exact_with_budget(q, DEFAULT_TUPLE_BUDGET)
}

/// [`moment_exact`] with an explicit spectrum tuple budget.
pub fn moment_exact_with_budget(q: &MomentQuery, tuple_budget: u128) -> Result<MomentResult> {
    q.validate()?;
    q.require_unit_coefficients("moment_exact")?;
    if q.alpha != (0.0, 1.0) {
        return Err(Error::param(
            "moment_exact requires the alpha interval to be exactly [0,1]; \
             use moment_kernel_expansion for sub-intervals",
        ));
    }
    let spectrum = build_spectrum_with_budget(q.range, q.p, tuple_budget)?;
    let entries = spectrum.entries();
    let (g0, g1) = q.gamma;
    let width = g1 - g0;
    let (v0, v1) = endpoint_phases(entries, g0, g1, |e| e.key.quartic_sum);

    let mut acc = CompensatedComplex::new();
    let mut class = 0;
    while class < entries.len() {
        let s2 = entries[class].key.square_sum;
        let mut end = class;
        while end < entries.len() && entries[end].key.square_sum == s2 {
            end += 1;
        }
        for a in class..end {
            let ma = entries[a].multiplicity as f64;
            for b in class..end {
                let w = ma * entries[b].multiplicity as f64;
                let d4 = entries[a].key.quartic_sum - entries[b].key.quartic_sum;
                if d4 == 0 {
                    acc.add(Complex64::new(w * width, 0.0));
                } else {
                    let num = v1[a] * v1[b].conj() - v0[a] * v0[b].conj();
                    acc.add(over_two_pi_i(num, d4 as f64) * w);
                }
            }
        }
        class = end;
    }
    let total = acc.value();
    Ok(MomentResult {
        value: total.re.max(0.0),
        method: MomentMethod::ExactOrthogonality,
        error_estimate: total.im.abs(),
    })
}

/// Moment over an arbitrary sub-rectangle of the frequency plane, with both
/// the alpha and gamma integrals in closed form per spectrum key pair.
///
/// Visits every unordered key pair once (conjugate symmetry supplies the
/// mirror term), so the cost is quadratic in the number of distinct keys.
/// With alpha = `[0,1]` the alpha kernel vanishes identically off the
/// diagonal classes and this reproduces [`moment_exact`]. Requires all-ones
/// coefficients.
pub fn moment_kernel_expansion(q: &MomentQuery) -> Result<MomentResult> {
    moment_kernel_expansion_with_budget(q, DEFAULT_TUPLE_BUDGET, DEFAULT_KERNEL_PAIR_BUDGET)
}

/// [`moment_kernel_expansion`] with explicit tuple and key-pair budgets.
pub fn moment_kernel_expansion_with_budget(
    q: &MomentQuery,
    tuple_budget: u128,
    pair_budget: u128,
) -> Result<MomentResult> {
    q.validate()?;
    q.require_unit_coefficients("moment_kernel_expansion")?;
    let spectrum = build_spectrum_with_budget(q.range, q.p, tuple_budget)?;
    let entries = spectrum.entries();
    let k = entries.len() as u128;
    let pairs = k * (k + 1) / 2;
    if pairs > pair_budget {
        return Err(Error::Budget {
            what: "spectrum key pairs in the kernel expansion",
            required: pairs,
            budget: pair_budget,
        });
    }
    let (a0, a1) = q.alpha;
    let (g0, g1) = q.gamma;
    let wa = a1 - a0;
    let wg = g1 - g0;
    let (u0, u1) = endpoint_phases(entries, a0, a1, |e| e.key.square_sum);
    let (v0, v1) = endpoint_phases(entries, g0, g1, |e| e.key.quartic_sum);

    let mut acc = Compensated::new();
    let mut magnitude = Compensated::new();
    for a in 0..entries.len() {
        let ma = entries[a].multiplicity as f64;
        let diagonal = ma * ma * wa * wg;
        acc.add(diagonal);
        magnitude.add(diagonal.abs());
        for b in (a + 1)..entries.len() {
            let w = ma * entries[b].multiplicity as f64;
            let d2 = entries[a].key.square_sum - entries[b].key.square_sum;
            let d4 = entries[a].key.quartic_sum - entries[b].key.quartic_sum;
            let ka = if d2 == 0 {
                Complex64::new(wa, 0.0)
            } else {
                over_two_pi_i(u1[a] * u1[b].conj() - u0[a] * u0[b].conj(), d2 as f64)
            };
            let kg = if d4 == 0 {
                Complex64::new(wg, 0.0)
            } else {
                over_two_pi_i(v1[a] * v1[b].conj() - v0[a] * v0[b].conj(), d4 as f64)
            };
            let term = ka * kg * w;
            acc.add(2.0 * term.re);
            magnitude.add(2.0 * (term.re.abs() + term.im.abs()));
        }
    }
    Ok(MomentResult {
        value: acc.value().max(0.0),
        method: MomentMethod::KernelExpansion,
        // Least-count rounding estimate: the sum is exact up to roundoff on
        // each kernel product, so scale the visited magnitude by epsilon.
        error_estimate: 8.0 * f64::EPSILON * magnitude.value(),
    })
}

/// Midpoint-rule value of one grid. Phase tables are exact per cell (no
/// recurrences), rows are evaluated in parallel and reduced in index order,
/// so the result is independent of thread count.
fn midpoint_value(
    ns: &[i64],
    coeffs: Option<&[Complex64]>,
    p: u32,
    a0: f64,
    wa: f64,
    na: usize,
    g0: f64,
    wg: f64,
    ng: usize,
) -> f64 {
    let len = ns.len();
    let ha = wa / na as f64;
    let hg = wg / ng as f64;
    let n2: Vec<i128> = ns.iter().map(|&n| (n as i128) * (n as i128)).collect();
    let n4: Vec<i128> = n2.iter().map(|&s| s * s).collect();

    let mut a_tab = vec![Complex64::new(0.0, 0.0); na * len];
    for i in 0..na {
        let alpha = a0 + (i as f64 + 0.5) * ha;
        let row = &mut a_tab[i * len..(i + 1) * len];
        for (j, slot) in row.iter_mut().enumerate() {
            let mut v = unit_phase(reduced_scaled(alpha, n2[j]));
            if let Some(c) = coeffs {
                v *= c[j];
            }
            *slot = v;
        }
    }
    let mut g_tab = vec![Complex64::new(0.0, 0.0); ng * len];
    for l in 0..ng {
        let gamma = g0 + (l as f64 + 0.5) * hg;
        let row = &mut g_tab[l * len..(l + 1) * len];
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = unit_phase(reduced_scaled(gamma, n4[j]));
        }
    }

    let rows: Vec<f64> = (0..na)
        .into_par_iter()
        .map(|i| {
            let arow = &a_tab[i * len..(i + 1) * len];
            let mut row = Compensated::new();
            for l in 0..ng {
                let grow = &g_tab[l * len..(l + 1) * len];
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..len {
                    s += arow[j] * grow[j];
                }
                row.add(s.norm_sqr().powi(p as i32));
            }
            row.value()
        })
        .collect();
    let mut total = Compensated::new();
    for r in rows {
        total.add(r);
    }
    total.value() * ha * hg
}

/// Midpoint-rule moment over the query rectangle, the discretized
/// cross-check for the spectrum routes. Supports arbitrary coefficients and
/// any sub-rectangle.
///
/// Step sizes resolve the integrand's oscillation: the phase advance per
/// step is at most `safety` radians for the fastest mode (`2p max|n|^2` in
/// alpha, `2p max|n|^4` in gamma). The error estimate is the difference
/// against a grid twice as coarse in both directions.
pub fn moment_quadrature(q: &MomentQuery, safety: f64) -> Result<MomentResult> {
    moment_quadrature_with_budget(q, safety, DEFAULT_QUAD_WORK_BUDGET)
}

/// [`moment_quadrature`] with an explicit work budget
/// (`alpha cells x gamma cells x range length`).
pub fn moment_quadrature_with_budget(
    q: &MomentQuery,
    safety: f64,
    work_budget: u128,
) -> Result<MomentResult> {
    q.validate()?;
    if !safety.is_finite() || safety <= 0.0 || safety > 1.0 {
        return Err(Error::param(
            "quadrature safety factor must lie in (0, 1]",
        ));
    }
    if q.is_zero_measure() {
        return Ok(MomentResult {
            value: 0.0,
            method: MomentMethod::Quadrature,
            error_estimate: 0.0,
        });
    }
    let (a0, a1) = q.alpha;
    let (g0, g1) = q.gamma;
    let wa = a1 - a0;
    let wg = g1 - g0;
    let len = q.range.len() as f64;
    let m = q.range.max_abs() as f64;
    let two_p = 2.0 * q.p as f64;
    let na_f = if m == 0.0 {
        1.0
    } else {
        (wa * TAU * m * m * two_p / safety).ceil().max(1.0)
    };
    let ng_f = if m == 0.0 {
        1.0
    } else {
        (wg * TAU * m.powi(4) * two_p / safety).ceil().max(1.0)
    };
    let work = na_f * ng_f * len;
    if work > work_budget as f64 {
        return Err(Error::Budget {
            what: "quadrature work (alpha cells x gamma cells x range length)",
            required: work as u128,
            budget: work_budget,
        });
    }
    let na = na_f as usize;
    let ng = ng_f as usize;
    let table = q.range.len() as u128 * (na as u128 + ng as u128);
    if table > MAX_TABLE_ENTRIES {
        return Err(Error::Budget {
            what: "quadrature phase-table entries",
            required: table,
            budget: MAX_TABLE_ENTRIES,
        });
    }
    let ns: Vec<i64> = q.range.iter().collect();
    let coeffs: Option<Vec<Complex64>> = match &q.coeffs {
        Some(c) if !c.is_all_ones() => Some(ns.iter().map(|&n| c.get(n)).collect()),
        _ => None,
    };
    let fine = midpoint_value(&ns, coeffs.as_deref(), q.p, a0, wa, na, g0, wg, ng);
    let coarse = midpoint_value(
        &ns,
        coeffs.as_deref(),
        q.p,
        a0,
        wa,
        na.div_ceil(2),
        g0,
        wg,
        ng.div_ceil(2),
    );
    Ok(MomentResult {
        value: fine,
        method: MomentMethod::Quadrature,
        error_estimate: (fine - coarse).abs(),
    })
}

/// The window integral `I(N)`: full alpha period, symmetric gamma window
/// `[-N^-3, N^-3]`, summation range `(N, 2N]`, evaluated exactly.
pub fn integral_i(n: i64, p: u32) -> Result<MomentResult> {
    integral_i_with_budget(n, p, DEFAULT_TUPLE_BUDGET)
}

/// [`integral_i`] with an explicit spectrum tuple budget.
pub fn integral_i_with_budget(n: i64, p: u32, tuple_budget: u128) -> Result<MomentResult> {
    let w = (n.max(1) as f64).powi(3).recip();
    let q = MomentQuery::full_alpha(p, IntRange::dyadic(n)?, (-w, w));
    moment_exact_with_budget(&q, tuple_budget)
}

/// An alpha-band moment together with the comparison ratio produced by
/// [`integral_r`].
#[derive(Clone, Copy, Debug)]
pub struct BandRatio {
    /// The band moment over `[delta, 2 delta] x [-N^-3, N^-3]`.
    pub moment: MomentResult,
    /// `moment / (delta (ln N)^{2p} (I(n_low) + I(n_high)))`.
    pub ratio: f64,
    /// `I(n_low)` with `n_low = round(2 delta N)`.
    pub window_low: MomentResult,
    /// `I(n_high)` with `n_high = round(4 delta N)`.
    pub window_high: MomentResult,
    pub n_low: i64,
    pub n_high: i64,
}

/// The band integral `R(delta, N)`: the moment over the alpha band
/// `[delta, 2 delta]` and gamma window `[-N^-3, N^-3]`, plus its ratio
/// against `delta (ln N)^{2p} (I(round(2 delta N)) + I(round(4 delta N)))`,
/// the envelope the band is expected to respect.
///
/// `delta` must lie in `[N^-1/2, 1/4]` (which forces `N >= 16`). The band
/// moment is evaluated by the kernel expansion — a quadrature honoring the
/// step rule would need ~10^10 cells already at `N = 16`.
pub fn integral_r(delta: f64, n: i64, p: u32) -> Result<BandRatio> {
    integral_r_with_budget(delta, n, p, DEFAULT_TUPLE_BUDGET, DEFAULT_KERNEL_PAIR_BUDGET)
}

/// [`integral_r`] with explicit tuple and key-pair budgets.
pub fn integral_r_with_budget(
    delta: f64,
    n: i64,
    p: u32,
    tuple_budget: u128,
    pair_budget: u128,
) -> Result<BandRatio> {
    if n < 1 {
        return Err(Error::param("band integral requires N >= 1"));
    }
    let lo = (n as f64).sqrt().recip();
    if !delta.is_finite() || delta < lo || delta > 0.25 {
        return Err(Error::param(format!(
            "band width delta = {delta} outside [N^-1/2, 1/4] = [{lo}, 0.25]"
        )));
    }
    let w = (n as f64).powi(3).recip();
    let q = MomentQuery::new(p, IntRange::dyadic(n)?, (delta, 2.0 * delta), (-w, w));
    let moment = moment_kernel_expansion_with_budget(&q, tuple_budget, pair_budget)?;
    let n_low = ((2.0 * delta * n as f64).round() as i64).max(1);
    let n_high = ((4.0 * delta * n as f64).round() as i64).max(1);
    let window_low = integral_i_with_budget(n_low, p, tuple_budget)?;
    let window_high = integral_i_with_budget(n_high, p, tuple_budget)?;
    let envelope =
        delta * (n as f64).ln().powi(2 * p as i32) * (window_low.value + window_high.value);
    Ok(BandRatio {
        moment,
        ratio: moment.value / envelope,
        window_low,
        window_high,
        n_low,
        n_high,
    })
}

/// Moment over the low-alpha strip `[0, N^-1/2] x [-N^-3, N^-3]`, evaluated
/// by the kernel expansion. The desk-scale expectation is that it stays
/// within a fixed multiple of `(ln N)^{2p}`.
pub fn low_alpha_moment(n: i64, p: u32) -> Result<MomentResult> {
    low_alpha_moment_with_budget(n, p, DEFAULT_TUPLE_BUDGET, DEFAULT_KERNEL_PAIR_BUDGET)
}

/// [`low_alpha_moment`] with explicit tuple and key-pair budgets.
pub fn low_alpha_moment_with_budget(
    n: i64,
    p: u32,
    tuple_budget: u128,
    pair_budget: u128,
) -> Result<MomentResult> {
    if n < 2 {
        return Err(Error::param("low-alpha strip requires N >= 2"));
    }
    let w = (n as f64).powi(3).recip();
    let q = MomentQuery::new(
        p,
        IntRange::dyadic(n)?,
        (0.0, (n as f64).sqrt().recip()),
        (-w, w),
    );
    moment_kernel_expansion_with_budget(&q, tuple_budget, pair_budget)
}

/// Iterates the exponent map `beta <- beta / (1 + beta)` n times. Equals the
/// closed form `beta0 / (1 + n beta0)`.
pub fn exponent_recurrence(beta0: f64, n: u32) -> Result<f64> {
    if !beta0.is_finite() || beta0 < 0.0 {
        return Err(Error::param("exponent recurrence requires beta0 >= 0"));
    }
    let mut beta = beta0;
    for _ in 0..n {
        beta /= 1.0 + beta;
    }
    Ok(beta)
}

/// Ordinary least squares on log-log data.
#[derive(Clone, Copy, Debug)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

/// Fits `value ~ C * scale^slope` by least squares on `(ln scale, ln value)`.
/// Requires at least two samples, all positive, with at least two distinct
/// scales.
pub fn fit_exponent(samples: &[(f64, f64)]) -> Result<FitResult> {
    if samples.len() < 2 {
        return Err(Error::param("exponent fit requires at least two samples"));
    }
    for &(scale, value) in samples {
        if !scale.is_finite() || !value.is_finite() || scale <= 0.0 || value <= 0.0 {
            return Err(Error::param(format!(
                "exponent fit requires positive finite samples, got ({scale}, {value})"
            )));
        }
    }
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(s, v)| (s.ln(), v.ln())).collect();
    let count = logs.len() as f64;
    let mean_x = logs.iter().map(|&(x, _)| x).sum::<f64>() / count;
    let mean_y = logs.iter().map(|&(_, y)| y).sum::<f64>() / count;
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mean_x) * (x - mean_x)).sum();
    if sxx == 0.0 {
        return Err(Error::param(
            "exponent fit requires at least two distinct scales",
        ));
    }
    let sxy: f64 = logs
        .iter()
        .map(|&(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = (logs
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>()
        / count)
        .sqrt();
    Ok(FitResult {
        slope,
        intercept,
        residual,
    })
}
