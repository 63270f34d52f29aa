//! Scalar numerics shared across the crate: unit-modulus phases, compensated
//! summation, and error-free reduction of `coefficient * integer` modulo 1.
//!
//! Everything downstream (sums, moment kernels, Weyl sums) reduces phases to
//! a single period before calling `sin`/`cos`. The reduction here is exact in
//! the following sense: for a double `c` and an integer `k` with `|k| < 2^106`,
//! the product `c * k` is decomposed with error-free transformations, whole
//! periods are dropped from each component exactly, and only the final few
//! additions of numbers bounded by 1 round. The reduced phase therefore
//! carries an absolute error of a few ulps of 1 (~1e-16) even when `c * k`
//! is far beyond the 53-bit significand.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// e(x) = exp(2&pi;i x). The caller is expected to pass a reduced argument
/// (|x| of order 1); the function itself does not reduce.
#[inline]
pub fn unit_phase(x: f64) -> Complex64 {
    let (s, c) = (TAU * x).sin_cos();
    Complex64::new(c, s)
}

/// x minus its nearest integer (ties to even), always in [-1/2, 1/2].
///
/// The subtraction is exact for every finite double: either `round(x) == x`
/// (large magnitudes), or the two operands are close enough that Sterbenz's
/// lemma applies.
#[inline]
pub fn frac_center(x: f64) -> f64 {
    x - x.round_ties_even()
}

/// Double-double value `hi + lo` produced by error-free transformations.
#[derive(Clone, Copy, Debug)]
struct TwoFloat {
    hi: f64,
    lo: f64,
}

/// Error-free product: returns (hi, lo) with hi + lo == a * b exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> TwoFloat {
    let hi = a * b;
    TwoFloat {
        hi,
        lo: f64::mul_add(a, b, -hi),
    }
}

/// Split an i128 into two doubles whose sum reproduces it exactly.
/// Requires |k| < 2^106 so that the remainder fits a 53-bit significand.
#[inline]
fn split_i128(k: i128) -> (f64, f64) {
    debug_assert!(k.unsigned_abs() < (1u128 << 106), "integer too wide for exact split");
    let hi = k as f64; // round-to-nearest; integer-valued whenever |k| >= 2^52
    let rem = k - hi as i128;
    (hi, rem as f64)
}

/// Fractional part (ties-to-even convention) of `c * k` for exact integer `k`.
///
/// Accurate to a few ulps of 1 for |k| < 2^106; this is the workhorse behind
/// quartic phases `alpha n^2 + gamma n^4` and the moment kernels e(lambda d).
pub fn reduced_scaled(c: f64, k: i128) -> f64 {
    let (k_hi, k_lo) = split_i128(k);
    let p1 = two_prod(c, k_hi);
    let p2 = two_prod(c, k_lo);
    // Each component sheds its whole periods exactly; the remaining additions
    // involve magnitudes <= 1/2 and round once each.
    let r = (frac_center(p1.hi) + frac_center(p1.lo)) + (frac_center(p2.hi) + frac_center(p2.lo));
    frac_center(r)
}

/// Reduced phase of the quartic polynomial `alpha n^2 + gamma n^4`.
///
/// `n` is limited to |n| <= 3*10^9 by range constructors so that n^4 stays
/// inside i128.
#[inline]
pub fn quartic_phase(alpha: f64, gamma: f64, n: i64) -> f64 {
    let n2 = (n as i128) * (n as i128);
    let n4 = n2 * n2;
    frac_center(reduced_scaled(alpha, n2) + reduced_scaled(gamma, n4))
}

/// Neumaier-compensated accumulator for one real lane.
#[derive(Clone, Copy, Debug, Default)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Compensated accumulator for a complex lane.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplex {
    re: Compensated,
    im: Compensated,
}

impl CompensatedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
