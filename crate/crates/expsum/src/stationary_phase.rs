//! Stationary-phase ("B") transform for the smooth phase g(x) = alpha x^2 +
//! gamma x^4 on a block [N, AN]: derivative inversion, the Legendre-type
//! transform g*(y) = g(z(y)) - y z(y), its explicit low-order expansion, and
//! the residual between the direct exponential sum and its transformed form.
//!
//! The quartic term is a small perturbation by construction: the domain
//! condition |gamma| <= alpha / (96 N^2) keeps the curvature g'' inside
//! [1.5 alpha, 2.5 alpha] on [N, 2N], so g' is strictly increasing and the
//! transform is well defined.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::{frac_center, quartic_phase, unit_phase, CompensatedComplex};

/// A valid transform domain: the phase g(x) = alpha x^2 + gamma x^4 over the
/// block (N, AN], constructed only when the curvature condition holds.
#[derive(Clone, Copy, Debug)]
pub struct SmoothPhase {
    alpha: f64,
    gamma: f64,
    n: i64,
    multiplier: f64,
}

/// True iff the curvature condition holds: `0 < alpha <= 1/2`,
/// `|gamma| <= alpha / (96 N^2)`, and `N >= 1`.
pub fn validate_domain(alpha: f64, gamma: f64, n: i64) -> bool {
    n >= 1
        && alpha.is_finite()
        && gamma.is_finite()
        && alpha > 0.0
        && alpha <= 0.5
        && gamma.abs() <= alpha / (96.0 * (n as f64) * (n as f64))
}

impl SmoothPhase {
    /// Standard block end multiplier A = 2.
    pub fn new(alpha: f64, gamma: f64, n: i64) -> Result<Self> {
        SmoothPhase::with_multiplier(alpha, gamma, n, 2.0)
    }

    /// Custom block end `AN` with `1 < A <= 2` (larger A would let the
    /// quartic term cancel the curvature).
    pub fn with_multiplier(alpha: f64, gamma: f64, n: i64, multiplier: f64) -> Result<Self> {
        if !validate_domain(alpha, gamma, n) {
            return Err(Error::param(format!(
                "phase domain rejected: need 0 < alpha <= 1/2 and \
                 |gamma| <= alpha/(96 N^2), got alpha={alpha}, gamma={gamma}, N={n}"
            )));
        }
        if !multiplier.is_finite() || multiplier <= 1.0 || multiplier > 2.0 {
            return Err(Error::param("block multiplier must lie in (1, 2]"));
        }
        Ok(SmoothPhase {
            alpha,
            gamma,
            n,
            multiplier,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn multiplier(&self) -> f64 {
        self.multiplier
    }

    /// Largest integer in the block, floor(A N).
    pub fn upper(&self) -> i64 {
        (self.multiplier * self.n as f64).floor() as i64
    }

    /// Exact minimum of the curvature g'' over [N, AN]; positive by
    /// construction.
    pub fn lambda2(&self) -> f64 {
        let end = if self.gamma >= 0.0 {
            self.n as f64
        } else {
            self.multiplier * self.n as f64
        };
        self.curvature(end)
    }

    /// g(x) = alpha x^2 + gamma x^4.
    pub fn value(&self, x: f64) -> f64 {
        let x2 = x * x;
        (self.alpha + self.gamma * x2) * x2
    }

    /// g'(x) = 2 alpha x + 4 gamma x^3.
    pub fn derivative(&self, x: f64) -> f64 {
        (2.0 * self.alpha + 4.0 * self.gamma * x * x) * x
    }

    /// g''(x) = 2 alpha + 12 gamma x^2.
    pub fn curvature(&self, x: f64) -> f64 {
        2.0 * self.alpha + 12.0 * self.gamma * x * x
    }
}

/// Inverts the derivative: returns z in [N, AN] with |g'(z) - y| <=
/// 1e-12 (1 + |y|).
///
/// Safeguarded Newton from z0 = y / (2 alpha): every iterate must stay
/// inside the current sign-change bracket, otherwise the step is replaced by
/// a bisection, so termination is unconditional. Convergence is fast because
/// the curvature is pinned within a factor 5/3 across the block.
pub fn invert_derivative(phase: &SmoothPhase, y: f64) -> Result<f64> {
    let mut lo = phase.n as f64;
    let mut hi = phase.multiplier * phase.n as f64;
    let slack = 1e-9 * (1.0 + y.abs());
    if !y.is_finite() || y < phase.derivative(lo) - slack || y > phase.derivative(hi) + slack {
        return Err(Error::param(format!(
            "target {y} outside the derivative image [{}, {}]",
            phase.derivative(lo),
            phase.derivative(hi)
        )));
    }
    let y = y.clamp(phase.derivative(lo), phase.derivative(hi));
    let tol = 1e-13 * (1.0 + y.abs());
    let mut z = (y / (2.0 * phase.alpha)).clamp(lo, hi);
    for _ in 0..50 {
        let f = phase.derivative(z) - y;
        if f.abs() <= tol {
            return Ok(z);
        }
        if f > 0.0 {
            hi = z;
        } else {
            lo = z;
        }
        let next = z - f / phase.curvature(z);
        z = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    let f = phase.derivative(z) - y;
    if f.abs() <= 1e-12 * (1.0 + y.abs()) {
        Ok(z)
    } else {
        Err(Error::Internal(format!(
            "derivative inversion stalled at residual {f} for target {y}"
        )))
    }
}

/// The transform g*(y) = g(z(y)) - y z(y).
pub fn transform_value(phase: &SmoothPhase, y: f64) -> Result<f64> {
    let z = invert_derivative(phase, y)?;
    Ok(phase.value(z) - y * z)
}

/// Explicit low-order expansion of the transform:
/// `-y^2/(4 alpha) + gamma y^4/(16 alpha^4) - gamma^2 y^6/(16 alpha^7)`.
/// The neglected tail is cubic in gamma.
pub fn expansion_value(alpha: f64, gamma: f64, y: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha == 0.0 {
        return Err(Error::param("expansion requires alpha != 0"));
    }
    let y2 = y * y;
    let a4 = alpha.powi(4);
    let a7 = alpha.powi(7);
    Ok(-y2 / (4.0 * alpha) + gamma * y2 * y2 / (16.0 * a4)
        - gamma * gamma * y2 * y2 * y2 / (16.0 * a7))
}

/// Largest gap between the transform and its expansion over an even y-grid
/// spanning the derivative image. Used to verify the gamma^3 scaling of the
/// expansion remainder.
pub fn expansion_residual(phase: &SmoothPhase, grid_points: usize) -> Result<f64> {
    if grid_points < 2 {
        return Err(Error::param("residual grid needs at least two points"));
    }
    let y_lo = phase.derivative(phase.n as f64);
    let y_hi = phase.derivative(phase.multiplier * phase.n as f64);
    let step = (y_hi - y_lo) / (grid_points - 1) as f64;
    let mut worst = 0.0f64;
    for i in 0..grid_points {
        let y = y_lo + step * i as f64;
        let gap = (transform_value(phase, y)? - expansion_value(phase.alpha, phase.gamma, y)?)
            .abs();
        worst = worst.max(gap);
    }
    Ok(worst)
}

/// Weight applied to each transformed term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `1 / sqrt(g''(z))` — the classical stationary-phase weight, the
    /// default.
    SqrtCurvature,
    /// `1 / g''(z)` — a non-standard variant kept computable for comparison.
    Curvature,
}

/// Direct block sum, its stationary-phase transform, and their distance.
#[derive(Clone, Copy, Debug)]
pub struct BTransformResult {
    /// `sum of e(g(n))` over `N < n <= AN`.
    pub direct: Complex64,
    /// `e(1/8) * sum over integer frequencies nu in g'([N, AN]) of
    /// e(g*(nu)) / weight(nu)`.
    pub transformed: Complex64,
    /// `|direct - transformed|`.
    pub residual: f64,
}

/// Inner frequency sum over an explicit nu-window (exposed within the crate
/// so tests can probe endpoint sensitivity).
fn transformed_sum(
    phase: &SmoothPhase,
    nu_lo: i64,
    nu_hi: i64,
    normalization: Normalization,
) -> Result<Complex64> {
    let mut acc = CompensatedComplex::new();
    for nu in nu_lo..=nu_hi {
        let y = nu as f64;
        let z = invert_derivative(phase, y)?;
        let curvature = phase.curvature(z);
        let weight = match normalization {
            Normalization::SqrtCurvature => curvature.sqrt().recip(),
            Normalization::Curvature => curvature.recip(),
        };
        let transform = phase.value(z) - y * z;
        acc.add(unit_phase(frac_center(transform)) * weight);
    }
    // The eighth-root-of-unity factor that the transform attaches in front.
    Ok(acc.value() * unit_phase(0.125))
}

/// Evaluates both sides of the stationary-phase transform with the default
/// square-root weight and reports their distance.
pub fn b_transform_residual(phase: &SmoothPhase) -> Result<BTransformResult> {
    b_transform_residual_with(phase, Normalization::SqrtCurvature)
}

/// [`b_transform_residual`] with an explicit weight choice.
pub fn b_transform_residual_with(
    phase: &SmoothPhase,
    normalization: Normalization,
) -> Result<BTransformResult> {
    let mut direct_acc = CompensatedComplex::new();
    for n in (phase.n + 1)..=phase.upper() {
        direct_acc.add(unit_phase(quartic_phase(phase.alpha, phase.gamma, n)));
    }
    let direct = direct_acc.value();

    let nu_lo = phase.derivative(phase.n as f64).ceil() as i64;
    let nu_hi = phase
        .derivative(phase.multiplier * phase.n as f64)
        .floor() as i64;
    let transformed = if nu_lo > nu_hi {
        Complex64::new(0.0, 0.0)
    } else {
        transformed_sum(phase, nu_lo, nu_hi, normalization)?
    };
    Ok(BTransformResult {
        direct,
        transformed,
        residual: (direct - transformed).norm(),
    })
}
