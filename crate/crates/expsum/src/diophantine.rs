//! Exact counting of near-diagonal pairs of p-tuples.
//!
//! The object counted here is the number of ordered pairs of p-tuples
//! `(n_1..n_p, m_1..m_p)` over a range whose power sums nearly agree:
//!
//! ```text
//! |sum n_i^2 - sum m_i^2| <= t2   and   |sum n_i^4 - sum m_i^4| <= t4
//! ```
//!
//! with exact rational thresholds `t2`, `t4`. Two independent routes are
//! provided: literal 2p-nested enumeration ([`count_bruteforce`]) and a
//! sliding-window walk over the phase spectrum ([`count_spectral`]); they must
//! agree exactly, and tests enforce that. A Fejér-weighted relaxation of the
//! same count ([`fejer_weighted_count`]) replaces the sharp box with the
//! product of triangle weights that upper- and lower-bound the box indicator.

use crate::error::{Error, Result};
use crate::phase::Compensated;
use crate::sums::{build_spectrum_with_budget, IntRange, PhaseSpectrum, DEFAULT_TUPLE_BUDGET};
use std::fmt;
use std::time::{Duration, Instant};

/// Default cap on the number of tuple *pairs* a brute-force count may visit.
pub const DEFAULT_PAIR_BUDGET: u128 = 100_000_000;

/// Exact rational threshold `num/den`, kept reduced with `den >= 1`.
///
/// Thresholds are compared against integer power-sum differences by cross
/// multiplication in 128-bit arithmetic, so no rounding ever enters a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    /// Reduced rational with positive denominator. `den` must be nonzero.
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::param("rational threshold with zero denominator"));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        Ok(Rational {
            num: sign * num / g,
            den: den.abs() / g,
        })
    }

    /// Integer threshold `n/1`.
    pub fn from_integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    /// Parses `"a/b"` or `"a"` (ASCII, optional sign on the numerator).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: i128 = num_s
            .parse()
            .map_err(|_| Error::param(format!("bad rational numerator in {s:?}")))?;
        let den: i128 = den_s
            .parse()
            .map_err(|_| Error::param(format!("bad rational denominator in {s:?}")))?;
        Rational::new(num, den)
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    /// Largest integer `<=` the rational.
    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact test `|v| <= self`. A negative threshold admits nothing.
    ///
    /// Cross-multiplies in u128; if `|v| * den` overflows u128 it certainly
    /// exceeds `num`, so the comparison stays exact without big integers.
    #[inline]
    pub fn admits_abs(&self, v: i128) -> bool {
        if self.num < 0 {
            return false;
        }
        match v.unsigned_abs().checked_mul(self.den as u128) {
            Some(lhs) => lhs <= self.num as u128,
            None => false,
        }
    }
}

impl fmt::Display for Rational {
    /// Writes `num` or `num/den`, matching the accepted input syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// A box-counting query: ordered pairs of p-tuples over `range` whose square
/// sums differ by at most `t2` and quartic sums by at most `t4`.
#[derive(Clone, Copy, Debug)]
pub struct BoxQuery {
    pub p: u32,
    pub range: IntRange,
    pub t2: Rational,
    pub t4: Rational,
}

/// Which route produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    BruteForce,
    Spectral,
}

/// An exact count plus provenance and wall-clock cost.
#[derive(Clone, Copy, Debug)]
pub struct CountResult {
    pub count: u128,
    pub method: CountMethod,
    pub elapsed: Duration,
}

fn validate_query(q: &BoxQuery) -> Result<()> {
    if q.p == 0 {
        return Err(Error::param("tuple length p must be >= 1"));
    }
    if q.range.is_empty() {
        return Err(Error::param("box count over an empty range"));
    }
    crate::sums::check_power_sum_width(q.range, q.p)
}

/// Counts by literal 2p-nested enumeration with exact rational comparisons.
///
/// This is the oracle route: O(len^(2p)) work, refused above `budget` pairs.
pub fn count_bruteforce(q: &BoxQuery) -> Result<CountResult> {
    count_bruteforce_with_budget(q, DEFAULT_PAIR_BUDGET)
}

/// [`count_bruteforce`] with an explicit pair budget.
pub fn count_bruteforce_with_budget(q: &BoxQuery, budget: u128) -> Result<CountResult> {
    validate_query(q)?;
    let start = Instant::now();
    let len = q.range.len() as u128;
    let pairs = len
        .checked_pow(2 * q.p)
        .ok_or_else(|| Error::param("pair count overflows u128"))?;
    if pairs > budget {
        return Err(Error::Budget {
            what: "enumerated tuple pairs",
            required: pairs,
            budget,
        });
    }

    // Materialize the power sums of every p-tuple by nested enumeration (an
    // explicit odometer), then run the remaining p nested loops as a double
    // scan over that list. Negative thresholds admit nothing.
    if q.t2.is_negative() || q.t4.is_negative() {
        return Ok(CountResult {
            count: 0,
            method: CountMethod::BruteForce,
            elapsed: start.elapsed(),
        });
    }

    let members: Vec<i64> = q.range.iter().collect();
    let mut sums: Vec<(i128, i128)> = Vec::with_capacity(members.len().pow(q.p.min(8)));
    let mut stack = vec![0usize; q.p as usize];
    'outer: loop {
        let mut s2: i128 = 0;
        let mut s4: i128 = 0;
        for &ix in &stack {
            let n = members[ix] as i128;
            let n2 = n * n;
            s2 += n2;
            s4 += n2 * n2;
        }
        sums.push((s2, s4));
        for d in (0..stack.len()).rev() {
            stack[d] += 1;
            if stack[d] < members.len() {
                continue 'outer;
            }
            stack[d] = 0;
        }
        break;
    }

    let mut count: u128 = 0;
    for &(a2, a4) in &sums {
        for &(b2, b4) in &sums {
            if q.t2.admits_abs(a2 - b2) && q.t4.admits_abs(a4 - b4) {
                count += 1;
            }
        }
    }

    Ok(CountResult {
        count,
        method: CountMethod::BruteForce,
        elapsed: start.elapsed(),
    })
}

/// Counts via the phase spectrum: a sliding window over square sums combined
/// with a Fenwick (binary indexed) range-sum index over quartic sums.
///
/// Complexity O(M log M) in the number M of distinct spectrum keys, after the
/// spectrum build. Agrees exactly with [`count_bruteforce`].
pub fn count_spectral(q: &BoxQuery) -> Result<CountResult> {
    count_spectral_with_budget(q, DEFAULT_TUPLE_BUDGET)
}

/// [`count_spectral`] with an explicit tuple budget for the spectrum build.
pub fn count_spectral_with_budget(q: &BoxQuery, budget: u128) -> Result<CountResult> {
    validate_query(q)?;
    let start = Instant::now();
    let spectrum = build_spectrum_with_budget(q.range, q.p, budget)?;
    let count = count_from_spectrum(&spectrum, q.t2, q.t4);
    Ok(CountResult {
        count,
        method: CountMethod::Spectral,
        elapsed: start.elapsed(),
    })
}

/// Window-count over an already-built spectrum (reusable across thresholds).
pub fn count_from_spectrum(spectrum: &PhaseSpectrum, t2: Rational, t4: Rational) -> u128 {
    if t2.is_negative() || t4.is_negative() {
        return 0;
    }
    // Integer differences make rational thresholds equivalent to their floors.
    let w2 = t2.floor();
    let w4 = t4.floor();

    let entries = spectrum.entries();
    if entries.is_empty() {
        return 0;
    }

    // Group contiguous runs of equal square_sum into classes.
    let mut classes: Vec<(i128, usize, usize)> = Vec::new(); // (s2, begin, end)
    let mut begin = 0usize;
    for i in 1..=entries.len() {
        if i == entries.len() || entries[i].key.square_sum != entries[begin].key.square_sum {
            classes.push((entries[begin].key.square_sum, begin, i));
            begin = i;
        }
    }

    // Coordinate-compress quartic sums for the Fenwick index.
    let mut quartics: Vec<i128> = entries.iter().map(|e| e.key.quartic_sum).collect();
    quartics.sort_unstable();
    quartics.dedup();
    let mut fenwick = Fenwick::new(quartics.len());

    let add_class = |fw: &mut Fenwick, c: &(i128, usize, usize), sign: i128| {
        for e in &entries[c.1..c.2] {
            let pos = quartics.binary_search(&e.key.quartic_sum).unwrap();
            fw.add(pos, sign * e.multiplicity as i128);
        }
    };

    let mut total: i128 = 0;
    let mut win_lo = 0usize; // first class inside the window
    let mut win_hi = 0usize; // one past the last class inside the window
    for ci in 0..classes.len() {
        let s2 = classes[ci].0;
        // Grow the window on the right: classes with s2' <= s2 + w2.
        while win_hi < classes.len() && classes[win_hi].0 <= s2.saturating_add(w2) {
            add_class(&mut fenwick, &classes[win_hi], 1);
            win_hi += 1;
        }
        // Shrink on the left: drop classes with s2' < s2 - w2.
        while win_lo < win_hi && classes[win_lo].0 < s2.saturating_sub(w2) {
            add_class(&mut fenwick, &classes[win_lo], -1);
            win_lo += 1;
        }
        // Every entry of this class queries its quartic window.
        for e in &entries[classes[ci].1..classes[ci].2] {
            let lo_val = e.key.quartic_sum.saturating_sub(w4);
            let hi_val = e.key.quartic_sum.saturating_add(w4);
            let lo_pos = quartics.partition_point(|&v| v < lo_val);
            let hi_pos = quartics.partition_point(|&v| v <= hi_val);
            if lo_pos < hi_pos {
                total += e.multiplicity as i128 * fenwick.range_sum(lo_pos, hi_pos);
            }
        }
    }
    debug_assert!(total >= 0);
    total as u128
}

/// Fenwick tree over i128 (supports removal via negative updates).
struct Fenwick {
    tree: Vec<i128>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize, delta: i128) {
        i += 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions `[0, i)`.
    fn prefix(&self, mut i: usize) -> i128 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Sum over positions `[lo, hi)`.
    fn range_sum(&self, lo: usize, hi: usize) -> i128 {
        self.prefix(hi) - self.prefix(lo)
    }
}

/// Fejér kernel `rho(y) = (sin(pi y) / (pi y))^2`, with `rho(0) = 1`.
pub fn fejer_kernel(y: f64) -> f64 {
    if y == 0.0 {
        return 1.0;
    }
    let t = std::f64::consts::PI * y;
    let s = t.sin() / t;
    s * s
}

/// Triangle weight `(1 - |t|)_+`, the Fourier transform of the Fejér kernel.
pub fn fejer_hat(t: f64) -> f64 {
    (1.0 - t.abs()).max(0.0)
}

/// Sharpest constant with which the Fejér kernel dominates the indicator of
/// `[-1/2, 1/2]`: `1_{[-1/2,1/2]}(y) <= (pi^2/4) rho(y)` with equality at the
/// endpoints.
pub const FEJER_SANDWICH_CONSTANT: f64 = std::f64::consts::PI * std::f64::consts::PI / 4.0;

/// Fejér-weighted pair count over the spectrum of `q.range`:
///
/// ```text
/// sum over ordered tuple pairs of  (1 - delta |d2|)_+ (1 - lambda |d4|)_+
/// ```
///
/// where `d2`, `d4` are the square/quartic sum differences. Weight zero pairs
/// are skipped via the same window walk as the sharp count, so the cost is
/// proportional to the surviving window. `delta = lambda = 0` weights every
/// pair by 1 and collapses to `len^(2p)`.
pub fn fejer_weighted_count(q: &BoxQuery, delta: f64, lambda: f64) -> Result<f64> {
    fejer_weighted_count_with_budget(q, delta, lambda, DEFAULT_TUPLE_BUDGET)
}

/// [`fejer_weighted_count`] with an explicit tuple budget.
pub fn fejer_weighted_count_with_budget(
    q: &BoxQuery,
    delta: f64,
    lambda: f64,
    budget: u128,
) -> Result<f64> {
    validate_query(q)?;
    if !(delta.is_finite() && lambda.is_finite()) || delta < 0.0 || lambda < 0.0 {
        return Err(Error::param("Fejér scale factors must be finite and >= 0"));
    }
    let spectrum = build_spectrum_with_budget(q.range, q.p, budget)?;
    Ok(fejer_from_spectrum(&spectrum, delta, lambda))
}

/// Weighted count over an already-built spectrum.
pub fn fejer_from_spectrum(spectrum: &PhaseSpectrum, delta: f64, lambda: f64) -> f64 {
    if delta == 0.0 && lambda == 0.0 {
        let t = spectrum.total_tuples() as f64;
        return t * t;
    }

    let entries = spectrum.entries();
    // Support of (1 - s|d|)_+ on integer differences: |d| <= floor(1/s)
    // (a difference exactly at 1/s carries weight zero and may be included
    // or skipped freely; we include it).
    let window = |s: f64| -> Option<i128> {
        if s == 0.0 {
            None // unbounded
        } else {
            Some((1.0 / s).floor() as i128)
        }
    };
    let w2 = window(delta);
    let w4 = window(lambda);

    let mut acc = Compensated::new();
    // Sliding window over entries sorted by (square_sum, quartic_sum): for
    // each entry a, partner entries b run from the first key with
    // square_sum >= a.square_sum - w2 until square_sum > a.square_sum + w2,
    // so every ordered pair is visited exactly once. The quartic axis is
    // filtered inside the window; quadratic in the window size, exact, and
    // cheap at the sizes used here.
    let mut lo = 0usize;
    for a in entries.iter() {
        if let Some(w2) = w2 {
            while entries[lo].key.square_sum < a.key.square_sum - w2 {
                lo += 1;
            }
        }
        for b in &entries[lo..] {
            let d2 = b.key.square_sum - a.key.square_sum;
            if let Some(w2) = w2 {
                if d2 > w2 {
                    break;
                }
            }
            let d4 = b.key.quartic_sum - a.key.quartic_sum;
            if let Some(w4) = w4 {
                if d4.abs() > w4 {
                    continue;
                }
            }
            let weight = fejer_hat(delta * d2 as f64) * fejer_hat(lambda * d4 as f64);
            if weight > 0.0 {
                acc.add(weight * (a.multiplicity as f64) * (b.multiplicity as f64));
            }
        }
    }
    acc.value()
}

/// Maximal product gap among near-diagonal pairs of 2-tuples.
///
/// Scans all ordered pairs of pairs `(n1, n2), (m1, m2)` over `(N, 2N]` with
/// `|square-sum difference| <= N` and `|quartic-sum difference| <= N^3`, and
/// returns `max |n1 n2 - m1 m2| / N`. Exhaustive, O(N^4), so N is capped.
pub fn product_gap_ratio(n: i64) -> Result<f64> {
    if n < 1 {
        return Err(Error::param("product gap scan needs N >= 1"));
    }
    if n > 64 {
        return Err(Error::param(
            "product gap scan is exhaustive in N^4; N is capped at 64",
        ));
    }
    let range = IntRange::dyadic(n)?;
    let t2 = n as i128;
    let t4 = (n as i128).pow(3);

    // (square sum, quartic sum, product) for every ordered pair.
    let mut tuples: Vec<(i128, i128, i128)> = Vec::new();
    for a in range.iter() {
        for b in range.iter() {
            let (a, b) = (a as i128, b as i128);
            let s2 = a * a + b * b;
            let s4 = a * a * a * a + b * b * b * b;
            tuples.push((s2, s4, a * b));
        }
    }
    tuples.sort_unstable();

    let mut max_gap: i128 = 0;
    let mut lo = 0usize;
    for (i, &(s2, s4, prod)) in tuples.iter().enumerate() {
        while tuples[lo].0 < s2 - t2 {
            lo += 1;
        }
        for &(u2, u4, uprod) in &tuples[lo..=i] {
            debug_assert!(s2 - u2 <= t2);
            if (s4 - u4).abs() <= t4 {
                max_gap = max_gap.max((prod - uprod).abs());
            }
        }
    }
    Ok(max_gap as f64 / n as f64)
}
