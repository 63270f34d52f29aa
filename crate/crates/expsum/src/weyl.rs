//! Degree-k Weyl sums and the counting pipeline that bounds them: the
//! near-integer count B_{H,delta}(alpha) of multiples of alpha, explicit
//! rational-approximation bounds for it, continued-fraction approximants,
//! iterated symmetric differencing of polynomial phases, the bilinear
//! near-coincidence pair count, and a one-call report evaluating the whole
//! eighth-power bound chain on a concrete (k, N, alpha).
//!
//! Exactness policy: a rational alpha = a/q is never rounded — phases are
//! a n^k mod q by modular exponentiation, and near-integer distances are
//! min(r, q-r)/q, so results are meaningful for arbitrarily large k. A
//! decimal alpha uses the error-free phase reduction, valid while
//! N^k |alpha| stays below 2^106; beyond that the result carries a
//! precision warning.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::diophantine::Rational;
use crate::error::{Error, Result};
use crate::phase::{frac_center, reduced_scaled, unit_phase, CompensatedComplex};

/// Cap on direct term loops (sum terms, near-integer scans, residue tables).
pub const DEFAULT_TERM_BUDGET: u128 = 1_000_000_000;

/// Cap on ordered pairs visited by [`sieve_pair_count`].
pub const DEFAULT_SIEVE_PAIR_BUDGET: u128 = 100_000_000;

/// The frequency of a Weyl sum: either a float or an exact fraction.
#[derive(Clone, Copy, Debug)]
pub enum AlphaValue {
    /// Floating frequency, evaluated through error-free phase reduction.
    Decimal(f64),
    /// Exact fraction, evaluated through modular arithmetic.
    Rational(Rational),
}

impl AlphaValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            AlphaValue::Decimal(x) => *x,
            AlphaValue::Rational(r) => r.to_f64(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            AlphaValue::Decimal(x) if !x.is_finite() => {
                Err(Error::param("frequency must be finite"))
            }
            _ => Ok(()),
        }
    }
}

/// A degree-k Weyl sum request: `sum over 1 <= n <= N of e(alpha n^k)`.
#[derive(Clone, Copy, Debug)]
pub struct WeylQuery {
    pub k: u32,
    pub n: u64,
    pub alpha: AlphaValue,
}

impl WeylQuery {
    fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::param("Weyl sum degree k must be >= 2"));
        }
        if self.n < 2 {
            return Err(Error::param("Weyl sum length N must be >= 2"));
        }
        self.alpha.validate()
    }
}

/// A Weyl sum value plus a flag recording whether any phase left the range
/// where the reduction is error-free.
#[derive(Clone, Copy, Debug)]
pub struct WeylSumResult {
    pub value: Complex64,
    pub precision_warning: bool,
}

fn pow_mod(base: u128, exp: u32, modulus: u128) -> u128 {
    debug_assert!(modulus > 0 && modulus <= 1 << 63);
    let mut result = 1u128 % modulus;
    let mut base = base % modulus;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    result
}

/// How many integers in `[1, total]` are congruent to `c` mod `q`.
fn residue_multiplicity(total: u128, q: u128, c: u128) -> u128 {
    let cycles = total / q;
    let rem = total % q;
    cycles + u128::from(c >= 1 && c <= rem)
}

/// Evaluates the Weyl sum with the default term budget.
pub fn weyl_sum(q: &WeylQuery) -> Result<WeylSumResult> {
    weyl_sum_with_budget(q, DEFAULT_TERM_BUDGET)
}

/// [`weyl_sum`] with an explicit cap on loop length. Rational frequencies
/// cost `O(min(N, q))`; decimal frequencies cost `O(N)`.
pub fn weyl_sum_with_budget(query: &WeylQuery, budget: u128) -> Result<WeylSumResult> {
    query.validate()?;
    let n = query.n as u128;
    match query.alpha {
        AlphaValue::Rational(alpha) => {
            let q = alpha.denom() as u128;
            let a = alpha.numer().rem_euclid(alpha.denom()) as u128;
            let work = n.min(q);
            if work > budget {
                return Err(Error::Budget {
                    what: "Weyl sum terms (min of N and denominator)",
                    required: work,
                    budget,
                });
            }
            let mut acc = CompensatedComplex::new();
            if q <= n {
                // The phase depends on n mod q only: one pass over residues,
                // weighted by how often each residue occurs in [1, N].
                for c in 0..q {
                    let count = residue_multiplicity(n, q, c);
                    if count == 0 {
                        continue;
                    }
                    let r = a * pow_mod(c, query.k, q) % q;
                    acc.add(unit_phase(r as f64 / q as f64) * count as f64);
                }
            } else {
                for j in 1..=n {
                    let r = a * pow_mod(j % q, query.k, q) % q;
                    acc.add(unit_phase(r as f64 / q as f64));
                }
            }
            Ok(WeylSumResult {
                value: acc.value(),
                precision_warning: false,
            })
        }
        AlphaValue::Decimal(alpha) => {
            if n > budget {
                return Err(Error::Budget {
                    what: "Weyl sum terms",
                    required: n,
                    budget,
                });
            }
            let envelope = 2f64.powi(106);
            let mut warning =
                (query.n as f64).powi(query.k as i32) * alpha.abs() >= envelope;
            let mut acc = CompensatedComplex::new();
            for j in 1..=query.n {
                let phase = match (j as i128).checked_pow(query.k) {
                    Some(nk) if nk < (1i128 << 106) => reduced_scaled(alpha, nk),
                    _ => {
                        warning = true;
                        frac_center(alpha * (j as f64).powi(query.k as i32))
                    }
                };
                acc.add(unit_phase(phase));
            }
            Ok(WeylSumResult {
                value: acc.value(),
                precision_warning: warning,
            })
        }
    }
}

/// `B_{H,delta}(alpha)`: how many `h in [1, H]` put `alpha h` within `delta`
/// of an integer. Direct scan with error-free phase reduction.
pub fn near_integer_count(alpha: f64, h: u64, delta: f64) -> Result<u64> {
    if h < 1 {
        return Err(Error::param("near-integer count requires H >= 1"));
    }
    if !alpha.is_finite() || !delta.is_finite() || delta < 0.0 {
        return Err(Error::param("near-integer count requires finite alpha and delta >= 0"));
    }
    if h as u128 > DEFAULT_TERM_BUDGET {
        return Err(Error::Budget {
            what: "near-integer scan length",
            required: h as u128,
            budget: DEFAULT_TERM_BUDGET,
        });
    }
    let mut count = 0u64;
    for j in 1..=h {
        if reduced_scaled(alpha, j as i128).abs() <= delta {
            count += 1;
        }
    }
    Ok(count)
}

/// [`near_integer_count`] generalized to exact rational frequencies, for
/// which the scan collapses to one pass over residues mod q (so `H` may be
/// astronomically large).
pub fn near_integer_count_alpha(alpha: &AlphaValue, h: u128, delta: f64) -> Result<u128> {
    if h < 1 {
        return Err(Error::param("near-integer count requires H >= 1"));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::param("near-integer count requires delta >= 0"));
    }
    alpha.validate()?;
    match alpha {
        AlphaValue::Decimal(x) => {
            if h > DEFAULT_TERM_BUDGET {
                return Err(Error::Budget {
                    what: "near-integer scan length",
                    required: h,
                    budget: DEFAULT_TERM_BUDGET,
                });
            }
            let mut count = 0u128;
            for j in 1..=h {
                if reduced_scaled(*x, j as i128).abs() <= delta {
                    count += 1;
                }
            }
            Ok(count)
        }
        AlphaValue::Rational(r) => {
            let q = r.denom() as u128;
            if q > DEFAULT_TERM_BUDGET {
                return Err(Error::Budget {
                    what: "near-integer residue classes",
                    required: q,
                    budget: DEFAULT_TERM_BUDGET,
                });
            }
            let a = r.numer().rem_euclid(r.denom()) as u128;
            let mut count = 0u128;
            for c in 0..q {
                let m = residue_multiplicity(h, q, c);
                if m == 0 {
                    continue;
                }
                let rem = a * (c % q) % q;
                let dist = rem.min(q - rem) as f64 / q as f64;
                if dist <= delta {
                    count += m;
                }
            }
            Ok(count)
        }
    }
}

/// A continued-fraction approximation `alpha = a/q + theta` with
/// `gcd(a, q) = 1` and `|theta| <= q^-2`.
#[derive(Clone, Copy, Debug)]
pub struct RationalApprox {
    pub a: i128,
    pub q: i128,
    pub theta: f64,
}

/// The continued-fraction convergent of `alpha` with the largest
/// denominator `q <= q_cap`.
///
/// The expansion is run in exact arithmetic on the rational value the float
/// denotes, so the convergent sequence is reproducible and the invariants
/// `gcd(a,q) = 1`, `|theta| <= q^-2` hold unconditionally.
pub fn best_rational(alpha: f64, q_cap: u64) -> Result<RationalApprox> {
    if !alpha.is_finite() || alpha.abs() > 1e15 {
        return Err(Error::param(
            "rational approximation requires a finite alpha with |alpha| <= 1e15",
        ));
    }
    if q_cap < 1 {
        return Err(Error::param("denominator cap must be >= 1"));
    }
    let target = BigRational::from_float(alpha)
        .ok_or_else(|| Error::param("frequency is not a finite float"))?;
    let cap = BigInt::from(q_cap);
    let mut num = target.numer().clone();
    let mut den = target.denom().clone();
    // Convergent recurrences p_i = a_i p_{i-1} + p_{i-2} (same for q),
    // seeded with the conventional (p, q) pairs (0, 1) and (1, 0).
    let (mut p_prev, mut q_prev) = (BigInt::zero(), BigInt::one());
    let (mut p_last, mut q_last) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q): (Option<BigInt>, Option<BigInt>) = (None, None);
    loop {
        let a = num.div_floor(&den);
        let rem = &num - &a * &den;
        let p_cur = &a * &p_last + &p_prev;
        let q_cur = &a * &q_last + &q_prev;
        if q_cur > cap {
            break;
        }
        p = Some(p_cur.clone());
        q = Some(q_cur.clone());
        (p_prev, q_prev) = (p_last, q_last);
        (p_last, q_last) = (p_cur, q_cur);
        if rem.is_zero() {
            break;
        }
        num = den;
        den = rem;
    }
    let p = p.expect("first convergent has q = 1 <= cap");
    let q = q.expect("first convergent has q = 1 <= cap");
    let theta = (&target - BigRational::new(p.clone(), q.clone()))
        .to_f64()
        .unwrap_or(0.0);
    let (a, q) = (
        p.to_i128()
            .ok_or_else(|| Error::Internal("convergent numerator overflow".into()))?,
        q.to_i128()
            .ok_or_else(|| Error::Internal("convergent denominator overflow".into()))?,
    );
    Ok(RationalApprox { a, q, theta })
}

/// Explicit near-integer-count bounds from a rational approximation:
/// `4 (1 + q delta)(1 + H/q)` always, and `8 (1 + delta/(q |theta|))
/// (1 + q |theta| H)` additionally when `theta != 0`.
pub fn near_integer_bounds(r: &RationalApprox, h: u64, delta: f64) -> (f64, Option<f64>) {
    let q = r.q as f64;
    let h = h as f64;
    let first = 4.0 * (1.0 + q * delta) * (1.0 + h / q);
    let second = if r.theta != 0.0 {
        let t = r.theta.abs();
        Some(8.0 * (1.0 + delta / (q * t)) * (1.0 + q * t * h))
    } else {
        None
    };
    (first, second)
}

/// Coefficients (index = power of n) of the iterated symmetric difference
/// `D_{h_1} ... D_{h_r} (alpha n^k)`, where `D_h f(n) = f(n+h) - f(n-h)`.
/// Exact rational arithmetic; the result has degree `k - r`.
pub fn symmetric_differences(k: u32, h: &[i64], alpha: &BigRational) -> Result<Vec<BigRational>> {
    let r = h.len() as u32;
    if r < 1 || r >= k {
        return Err(Error::param(
            "symmetric differencing requires 1 <= len(h) < k",
        ));
    }
    if h.iter().any(|&v| v == 0) {
        return Err(Error::param("difference shifts must be nonzero"));
    }
    let mut coeffs = vec![BigRational::zero(); k as usize + 1];
    coeffs[k as usize] = alpha.clone();
    for &shift in h {
        let degree = coeffs.len() - 1;
        let mut next = vec![BigRational::zero(); degree];
        let big_shift = BigInt::from(shift);
        for (m, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (n+h)^m - (n-h)^m = 2 sum over j with m-j odd of C(m,j) h^{m-j} n^j.
            for j in (0..m).rev() {
                if (m - j) % 2 == 1 {
                    let weight = BigInt::from(2)
                        * num_integer::binomial(BigInt::from(m), BigInt::from(j))
                        * big_shift.pow((m - j) as u32);
                    next[j] += c * BigRational::from_integer(weight);
                }
            }
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// Inputs of the bilinear near-coincidence count: two coordinate lists of
/// equal length and the scale N fixing the closeness windows `N^-4`, `N^-2`.
#[derive(Clone, Debug)]
pub struct SievePairs {
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    pub n: u64,
}

/// Ordered pairs (diagonal included) whose coordinates are simultaneously
/// near-coincident mod 1: `||a_i - a_j|| <= N^-4` and `||b_i - b_j|| <= N^-2`.
pub fn sieve_pair_count(s: &SievePairs) -> Result<u64> {
    if s.a_values.len() != s.b_values.len() || s.a_values.is_empty() {
        return Err(Error::param(
            "pair count needs equally long, nonempty coordinate lists",
        ));
    }
    if s.n < 1 {
        return Err(Error::param("pair count requires N >= 1"));
    }
    let len = s.a_values.len();
    let pairs = (len as u128) * (len as u128);
    if pairs > DEFAULT_SIEVE_PAIR_BUDGET {
        return Err(Error::Budget {
            what: "near-coincidence pairs",
            required: pairs,
            budget: DEFAULT_SIEVE_PAIR_BUDGET,
        });
    }
    let ta = (s.n as f64).powi(4).recip();
    let tb = (s.n as f64).powi(2).recip();
    let mut count = 0u64;
    for i in 0..len {
        for j in 0..len {
            if frac_center(s.a_values[i] - s.a_values[j]).abs() <= ta
                && frac_center(s.b_values[i] - s.b_values[j]).abs() <= tb
            {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Every quantity of the eighth-power bound chain evaluated on one
/// (k, N, alpha): the sum modulus, the near-integer count at the canonical
/// window `H = 16 (k!/4!) N^{k-4}`, `delta = N^-4`, the resulting bound,
/// rational-approximation context, and regime flags.
#[derive(Clone, Copy, Debug)]
pub struct WeylBoundReport {
    pub k: u32,
    pub n: u64,
    pub epsilon: f64,
    /// `K = 2^k`.
    pub capital_k: f64,
    /// Canonical scan window `H = 16 (k!/4!) N^{k-4}`.
    pub h: u128,
    /// Canonical closeness window `delta = N^-4`.
    pub delta: f64,
    /// `B_{H,delta}(alpha)`.
    pub near_count: u128,
    /// `|S_k(alpha)|`.
    pub sum_modulus: f64,
    /// Exponent of the first bound term, `1 - 16/K`.
    pub exponent_main: f64,
    /// Exponent of the second bound term, `1 - 3/K + epsilon`.
    pub exponent_secondary: f64,
    /// `N^{1-16/K} + N^{1-3/K+eps} (B / (H N^-4))^{8/(5K)}`.
    pub bound: f64,
    /// `sum_modulus / bound`; the implied constant is unknown, so this is
    /// reported rather than asserted except where domination is structural.
    pub ratio: f64,
    /// The probabilistic benchmark `H^{1+eps} delta + H^eps`.
    pub probabilistic_envelope: f64,
    /// Best rational approximation with denominator up to `min(H, 10^15)`.
    pub approx: RationalApprox,
    /// Whether `N^4 <= q <= N^{k-4}`.
    pub q_window: bool,
    /// Whether `N^{-(k-4)} <= |theta| q <= N^-4`.
    pub theta_window: bool,
    pub precision_warning: bool,
}

/// Evaluates the full bound chain at the canonical window sizes.
/// Requires `k >= 8` (below that the secondary term's gain is vacuous)
/// and desk-scale `(k, N)` such that `H` fits in 128 bits.
pub fn weyl_bound_report(
    k: u32,
    n: u64,
    alpha: &AlphaValue,
    epsilon: f64,
) -> Result<WeylBoundReport> {
    if k < 8 {
        return Err(Error::param("bound report requires degree k >= 8"));
    }
    if k > 32 {
        return Err(Error::param("bound report supports k <= 32"));
    }
    if n < 2 {
        return Err(Error::param("bound report requires N >= 2"));
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::param("epsilon must be finite and >= 0"));
    }
    alpha.validate()?;
    let factorial_ratio: u128 = (5..=k as u128).product();
    let h = 16u128
        .checked_mul(factorial_ratio)
        .and_then(|v| (n as u128).checked_pow(k - 4).and_then(|p| v.checked_mul(p)))
        .ok_or_else(|| Error::param("window H = 16 (k!/4!) N^{k-4} exceeds 128 bits"))?;
    let delta = (n as f64).powi(4).recip();
    let near_count = near_integer_count_alpha(alpha, h, delta)?;
    let sum = weyl_sum(&WeylQuery { k, n, alpha: *alpha })?;
    let capital_k = 2f64.powi(k as i32);
    let nf = n as f64;
    let exponent_main = 1.0 - 16.0 / capital_k;
    let exponent_secondary = 1.0 - 3.0 / capital_k + epsilon;
    let normalized = near_count as f64 / (h as f64 * delta);
    let bound = nf.powf(exponent_main)
        + nf.powf(exponent_secondary) * normalized.powf(8.0 / (5.0 * capital_k));
    let hf = h as f64;
    let probabilistic_envelope = hf.powf(1.0 + epsilon) * delta + hf.powf(epsilon);
    let approx = best_rational(alpha.to_f64(), h.min(1_000_000_000_000_000) as u64)?;
    let qf = approx.q as f64;
    let theta_q = approx.theta.abs() * qf;
    let q_window = qf >= nf.powi(4) && qf <= nf.powi(k as i32 - 4);
    let theta_window = theta_q >= nf.powi(-(k as i32 - 4)) && theta_q <= nf.powi(-4);
    Ok(WeylBoundReport {
        k,
        n,
        epsilon,
        capital_k,
        h,
        delta,
        near_count,
        sum_modulus: sum.value.norm(),
        exponent_main,
        exponent_secondary,
        bound,
        ratio: sum.value.norm() / bound,
        probabilistic_envelope,
        approx,
        q_window,
        theta_window,
        precision_warning: sum.precision_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rational(a: i128, b: i128) -> AlphaValue {
        AlphaValue::Rational(Rational::new(a, b).unwrap())
    }

    #[test]
    fn zero_frequency_sums_to_the_length() {
        for alpha in [AlphaValue::Decimal(0.0), rational(0, 1)] {
            let s = weyl_sum(&WeylQuery { k: 5, n: 17, alpha }).unwrap();
            assert!((s.value - Complex64::new(17.0, 0.0)).norm() < 1e-12);
            assert!(!s.precision_warning);
        }
    }

    #[test]
    fn frozen_cancellation_examples() {
        // Squares at alpha = 1/2: phases alternate -1, +1, -1, +1.
        let s = weyl_sum(&WeylQuery { k: 2, n: 4, alpha: rational(1, 2) }).unwrap();
        assert!(s.value.norm() < 1e-12);
        // Cubes at alpha = 1/3 over n = 1..3: e(1/3) + e(2/3) + e(0) = 0.
        let s = weyl_sum(&WeylQuery { k: 3, n: 3, alpha: rational(1, 3) }).unwrap();
        assert!(s.value.norm() < 1e-12);
        // The decimal path agrees on the k = 2 case (0.5 is exact in binary).
        let s = weyl_sum(&WeylQuery { k: 2, n: 4, alpha: AlphaValue::Decimal(0.5) }).unwrap();
        assert!(s.value.norm() < 1e-12);
    }

    #[test]
    fn residue_class_path_matches_the_direct_modular_loop() {
        let (a, q) = (3i128, 7i128);
        let fast = weyl_sum(&WeylQuery { k: 4, n: 100, alpha: rational(a, q) }).unwrap();
        let mut oracle = Complex64::new(0.0, 0.0);
        for n in 1..=100u128 {
            let r = (3 * n.pow(4)) % 7;
            oracle += unit_phase(r as f64 / 7.0);
        }
        assert!((fast.value - oracle).norm() < 1e-10);
        // The decimal path sees a float rounded from 3/7; phases drift by
        // at most ~N^4 ulps, far under this tolerance.
        let decimal = weyl_sum(&WeylQuery {
            k: 4,
            n: 100,
            alpha: AlphaValue::Decimal(3.0 / 7.0),
        })
        .unwrap();
        assert!((fast.value - decimal.value).norm() < 1e-5);
    }

    #[test]
    fn sum_modulus_never_exceeds_length_and_shifting_by_one_is_invisible() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        for _ in 0..40 {
            let k = rng.gen_range(2u32..=9);
            let n = rng.gen_range(2u64..=300);
            let den = rng.gen_range(1i128..=50);
            let num = rng.gen_range(-50i128..=50);
            let s = weyl_sum(&WeylQuery { k, n, alpha: rational(num, den) }).unwrap();
            assert!(s.value.norm() <= n as f64 + 1e-9);
            let shifted = weyl_sum(&WeylQuery { k, n, alpha: rational(num + den, den) }).unwrap();
            assert!((s.value - shifted.value).norm() < 1e-9);

            // Dyadic frequency so that x + 1 is exactly representable and
            // the shifted phases reduce to the same fractional parts.
            let x = rng.gen_range(0u32..4096) as f64 / 4096.0;
            let s = weyl_sum(&WeylQuery { k, n, alpha: AlphaValue::Decimal(x) }).unwrap();
            assert!(s.value.norm() <= n as f64 + 1e-9);
            let shifted =
                weyl_sum(&WeylQuery { k, n, alpha: AlphaValue::Decimal(x + 1.0) }).unwrap();
            assert!((s.value - shifted.value).norm() < 1e-9);
        }
    }

    #[test]
    fn precision_warning_tracks_the_reduction_envelope() {
        let small = weyl_sum(&WeylQuery { k: 4, n: 100, alpha: AlphaValue::Decimal(0.7) })
            .unwrap();
        assert!(!small.precision_warning);
        // 50^20 ~ 9.5e33 exceeds 2^106 ~ 8.1e31.
        let big = weyl_sum(&WeylQuery { k: 20, n: 50, alpha: AlphaValue::Decimal(0.7) })
            .unwrap();
        assert!(big.precision_warning);
    }

    #[test]
    fn near_integer_count_examples() {
        assert_eq!(near_integer_count(0.0, 10, 0.0).unwrap(), 10);
        // Multiples of 1/3 within 0.1 of an integer: h = 3, 6, 9.
        assert_eq!(near_integer_count(1.0 / 3.0, 10, 0.1).unwrap(), 3);
    }

    #[test]
    fn near_integer_count_matches_the_exact_rational_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
        for _ in 0..50 {
            let q = rng.gen_range(2i128..=1000);
            let a = rng.gen_range(0i128..q);
            let h = rng.gen_range(1u64..=2000);
            // Threshold halfway between attainable distances: no boundary
            // ties for either representation.
            let j = rng.gen_range(0i128..=(q / 2));
            let delta = (j as f64 + 0.5) / q as f64;
            let float_count =
                near_integer_count(a as f64 / q as f64, h, delta).unwrap() as u128;
            let exact_count = near_integer_count_alpha(
                &AlphaValue::Rational(Rational::new(a, q).unwrap()),
                h as u128,
                delta,
            )
            .unwrap();
            assert_eq!(float_count, exact_count, "a={a} q={q} h={h} delta={delta}");
        }
    }

    #[test]
    fn rational_near_integer_path_matches_a_plain_scan() {
        let alpha = rational(5, 13);
        let fast = near_integer_count_alpha(&alpha, 1000, 0.07).unwrap();
        let mut slow = 0u128;
        for h in 1..=1000i128 {
            let r = (5 * h).rem_euclid(13);
            if (r.min(13 - r) as f64 / 13.0) <= 0.07 {
                slow += 1;
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn convergents_match_known_expansions() {
        let r = best_rational(0.3, 10).unwrap();
        assert_eq!((r.a, r.q), (3, 10));
        assert!(r.theta.abs() < 1e-15);

        let r = best_rational(0.5, 10).unwrap();
        assert_eq!((r.a, r.q), (1, 2));
        assert_eq!(r.theta, 0.0);

        let r = best_rational(std::f64::consts::SQRT_2 - 1.0, 12).unwrap();
        assert_eq!((r.a, r.q), (5, 12));
        assert!((r.theta - (-0.002453104293571595)).abs() < 1e-12);
        assert!(r.theta.abs() <= 1.0 / 144.0);
    }

    #[test]
    fn convergents_satisfy_their_invariants() {
        fn gcd(mut a: i128, mut b: i128) -> i128 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a.abs()
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
        for _ in 0..200 {
            let alpha: f64 = rng.gen();
            let cap = *[10u64, 100, 1_000_000].iter().nth(rng.gen_range(0..3)).unwrap();
            let r = best_rational(alpha, cap).unwrap();
            assert!(r.q >= 1 && r.q <= cap as i128);
            assert_eq!(gcd(r.a, r.q), 1);
            assert!(
                r.theta.abs() <= 1.0 / (r.q as f64 * r.q as f64) + 1e-18,
                "theta {} too large for q {}",
                r.theta,
                r.q
            );
            let rebuilt = r.a as f64 / r.q as f64 + r.theta;
            assert!((rebuilt - alpha).abs() <= 1e-12);
        }
    }

    #[test]
    fn explicit_bounds_match_hand_evaluation_and_hold() {
        // alpha = 1/3, H = 10, delta = 0.1: first bound 4 * 1.3 * (13/3).
        let r = best_rational(1.0 / 3.0, 10).unwrap();
        assert_eq!((r.a, r.q), (1, 3));
        let (b1, b2) = near_integer_bounds(&r, 10, 0.1);
        assert!((b1 - 4.0 * 1.3 * (1.0 + 10.0 / 3.0)).abs() < 1e-9);
        let b = near_integer_count(1.0 / 3.0, 10, 0.1).unwrap();
        assert!((b as f64) <= b1);
        // The float 1/3 is not exactly 1/3, so a tiny theta remains and the
        // second bound exists (and is enormous).
        assert!((b as f64) <= b2.unwrap());

        // An exactly representable frequency really has theta = 0.
        let r = best_rational(0.5, 10).unwrap();
        let (_, b2) = near_integer_bounds(&r, 10, 0.1);
        assert!(b2.is_none(), "theta = 0 admits no second bound");

        // Random frequencies: both bounds hold with their explicit constants.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
        for _ in 0..200 {
            let alpha: f64 = rng.gen();
            let h = rng.gen_range(1u64..=2000);
            let delta = rng.gen_range(0.0..=0.2);
            let b = near_integer_count(alpha, h, delta).unwrap() as f64;
            let r = best_rational(alpha, h).unwrap();
            let (b1, b2) = near_integer_bounds(&r, h, delta);
            assert!(b <= b1, "first bound violated: B={b} bound={b1}");
            if let Some(b2) = b2 {
                assert!(b <= b2, "second bound violated: B={b} bound={b2}");
            }
        }
    }

    #[test]
    fn symmetric_difference_of_a_square_is_linear() {
        let alpha = BigRational::from_integer(BigInt::from(1));
        let coeffs = symmetric_differences(2, &[3], &alpha).unwrap();
        // (n+3)^2 - (n-3)^2 = 12 n.
        assert_eq!(coeffs.len(), 2);
        assert!(coeffs[0].is_zero());
        assert_eq!(coeffs[1], BigRational::from_integer(BigInt::from(12)));
    }

    #[test]
    fn iterated_differences_have_the_predicted_degree_and_leading_term() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
        for _ in 0..40 {
            let k = rng.gen_range(5u32..=12);
            let r = rng.gen_range(1u32..=(k - 4));
            let h: Vec<i64> = (0..r)
                .map(|_| {
                    let v = rng.gen_range(1i64..=6);
                    if rng.gen() {
                        v
                    } else {
                        -v
                    }
                })
                .collect();
            let alpha = BigRational::new(
                BigInt::from(rng.gen_range(1i64..=9)),
                BigInt::from(rng.gen_range(1i64..=9)),
            );
            let coeffs = symmetric_differences(k, &h, &alpha).unwrap();
            assert_eq!(coeffs.len() as u32, k - r + 1, "degree must be k - r");
            // Leading coefficient: 2^r * k!/(k-r)! * product(h) * alpha.
            let mut expected = alpha.clone() * BigRational::from_integer(BigInt::from(2).pow(r));
            for v in &h {
                expected *= BigRational::from_integer(BigInt::from(*v));
            }
            for f in (k - r + 1)..=k {
                expected *= BigRational::from_integer(BigInt::from(f));
            }
            assert_eq!(coeffs[(k - r) as usize], expected);
            assert!(!coeffs[(k - r) as usize].is_zero());
        }
    }

    #[test]
    fn quartic_coefficient_identity_at_degree_eight() {
        let alpha = BigRational::from_integer(BigInt::from(1));
        let coeffs = symmetric_differences(8, &[1, 1, 1, 1], &alpha).unwrap();
        // 2^4 * 8!/4! = 16 * 1680 = 26880.
        assert_eq!(coeffs[4], BigRational::from_integer(BigInt::from(26880)));
    }

    #[test]
    fn difference_validation_rejects_bad_shapes() {
        let alpha = BigRational::from_integer(BigInt::from(1));
        assert!(symmetric_differences(2, &[1, 1], &alpha).is_err());
        assert!(symmetric_differences(4, &[1, 0], &alpha).is_err());
        assert!(symmetric_differences(3, &[], &alpha).is_err());
    }

    #[test]
    fn pair_count_handles_the_extreme_configurations() {
        let equal = SievePairs {
            a_values: vec![0.25; 7],
            b_values: vec![0.75; 7],
            n: 10,
        };
        assert_eq!(sieve_pair_count(&equal).unwrap(), 49);

        // Points spaced far beyond both windows: only the diagonal remains.
        let spread = SievePairs {
            a_values: (0..7).map(|i| i as f64 * 0.1).collect(),
            b_values: (0..7).map(|i| i as f64 * 0.1).collect(),
            n: 10,
        };
        assert_eq!(sieve_pair_count(&spread).unwrap(), 7);
    }

    #[test]
    fn pair_count_matches_an_independent_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000a);
        let n = 5u64;
        let a: Vec<f64> = (0..60).map(|_| rng.gen::<f64>() * 3.0 - 1.5).collect();
        let b: Vec<f64> = (0..60).map(|_| rng.gen::<f64>() * 3.0 - 1.5).collect();
        let fast = sieve_pair_count(&SievePairs {
            a_values: a.clone(),
            b_values: b.clone(),
            n,
        })
        .unwrap();
        let (ta, tb) = ((n as f64).powi(4).recip(), (n as f64).powi(2).recip());
        let mut slow = 0u64;
        for i in 0..a.len() {
            for j in 0..a.len() {
                let da = (a[i] - a[j]) - (a[i] - a[j]).round_ties_even();
                let db = (b[i] - b[j]) - (b[i] - b[j]).round_ties_even();
                if da.abs() <= ta && db.abs() <= tb {
                    slow += 1;
                }
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn bound_report_exposes_the_canonical_quantities() {
        let report = weyl_bound_report(8, 10, &rational(0, 1), 0.01).unwrap();
        assert_eq!(report.h, 268_800_000);
        assert_eq!(report.exponent_main, 1.0 - 16.0 / 256.0);
        assert!((report.exponent_main - 0.9375).abs() < 1e-15);
        assert!((report.exponent_secondary - (1.0 - 3.0 / 256.0 + 0.01)).abs() < 1e-15);
        assert_eq!(report.near_count, report.h, "alpha = 0 puts every h at distance 0");
        assert!(!report.q_window && !report.theta_window);

        // Zero frequency makes the sum maximal yet still below the bound.
        let report = weyl_bound_report(8, 100, &rational(0, 1), 0.01).unwrap();
        assert!((report.sum_modulus - 100.0).abs() < 1e-9);
        assert!(report.ratio <= 1.0, "structural domination failed: {}", report.ratio);
    }

    #[test]
    fn bound_report_rejects_small_degrees() {
        assert!(matches!(
            weyl_bound_report(7, 10, &rational(0, 1), 0.01),
            Err(Error::Parameter(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn gcd(mut a: i128, mut b: i128) -> i128 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a.abs()
        }

        proptest! {
            #[test]
            fn any_convergent_is_reduced_and_tight(
                alpha in -2.0f64..2.0,
                cap in 1u64..100_000,
            ) {
                let r = best_rational(alpha, cap).unwrap();
                prop_assert!(r.q >= 1 && r.q <= cap as i128);
                prop_assert_eq!(gcd(r.a, r.q), 1);
                prop_assert!(r.theta.abs() <= 1.0 / (r.q as f64 * r.q as f64) + 1e-18);
                prop_assert!((r.a as f64 / r.q as f64 + r.theta - alpha).abs() <= 1e-12);
            }

            #[test]
            fn any_sum_is_bounded_by_its_length(
                k in 2u32..8,
                n in 2u64..120,
                num in -30i128..30,
                den in 1i128..30,
            ) {
                let q = WeylQuery {
                    k,
                    n,
                    alpha: AlphaValue::Rational(Rational::new(num, den).unwrap()),
                };
                let s = weyl_sum(&q).unwrap();
                prop_assert!(s.value.norm() <= n as f64 + 1e-9);
            }

            #[test]
            fn any_near_integer_count_respects_its_explicit_bound(
                alpha in 0.0f64..1.0,
                h in 1u64..3_000,
                delta in 0.0f64..0.2,
            ) {
                let b = near_integer_count(alpha, h, delta).unwrap() as f64;
                let r = best_rational(alpha, h).unwrap();
                let (b1, b2) = near_integer_bounds(&r, h, delta);
                prop_assert!(b <= b1);
                if let Some(b2) = b2 {
                    prop_assert!(b <= b2);
                }
            }
        }
    }
}
