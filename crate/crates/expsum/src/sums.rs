//! Exponential sums with quadratic + quartic phase, and their exact spectra.
//!
//! The central objects are
//!
//! * `S(alpha, gamma) = sum_{lo < n <= hi} a_n e(alpha n^2 + gamma n^4)`,
//!   evaluated with compensated summation and error-free phase reduction, and
//! * the *phase spectrum* of a p-tuple family: the exact multiplicity table
//!   mapping `(sum of squares, sum of fourth powers)` to the number of
//!   p-tuples over the range realizing that pair.
//!
//! The spectrum is the bridge between analysis and counting: moments of |S|
//! over full periods and box-counting problems both reduce to walks over it.
//! Entries are stored sorted by `(square_sum, quartic_sum)` so that counting
//! code can run sliding-window scans over the first component.

use crate::error::{Error, Result};
use crate::phase::{quartic_phase, unit_phase, CompensatedComplex};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Largest admissible |endpoint| for ranges: keeps sums of a few fourth
/// powers inside i128 (3 * (2.5e9)^4 ~ 1.2e38 < i128::MAX).
pub const MAX_RANGE_MAGNITUDE: i64 = 2_500_000_000;

/// Default cap on the number of tuples a spectrum build may represent.
pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

/// Half-open integer interval `(lo, hi]`, i.e. the integers `lo < n <= hi`.
///
/// Both of the range shapes used by the experiments fit this one type: the
/// dyadic block `(N, 2N]` and the from-zero block `[0, N] = (-1, N]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntRange {
    lo: i64,
    hi: i64,
}

impl IntRange {
    /// The integers `lo < n <= hi`. Requires `hi >= lo` and endpoints within
    /// `MAX_RANGE_MAGNITUDE`.
    pub fn open_closed(lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::param(format!("empty-ordered range ({lo}, {hi}]")));
        }
        if lo.abs() > MAX_RANGE_MAGNITUDE || hi.abs() > MAX_RANGE_MAGNITUDE {
            return Err(Error::param(format!(
                "range endpoints ({lo}, {hi}] exceed +/-{MAX_RANGE_MAGNITUDE}"
            )));
        }
        Ok(IntRange { lo, hi })
    }

    /// The dyadic block `(N, 2N]` for `N >= 1`.
    pub fn dyadic(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::param(format!("dyadic block needs N >= 1, got {n}")));
        }
        let hi = n
            .checked_mul(2)
            .ok_or_else(|| Error::param("dyadic block overflows i64"))?;
        Self::open_closed(n, hi)
    }

    /// The from-zero block `[0, N]` for `N >= 0`.
    pub fn from_zero(n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::param(format!("from-zero block needs N >= 0, got {n}")));
        }
        Self::open_closed(-1, n)
    }

    /// Exclusive lower endpoint.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Inclusive upper endpoint.
    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Number of integers in the range.
    pub fn len(&self) -> u64 {
        (self.hi - self.lo) as u64
    }

    /// True when the range contains no integer.
    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    /// True when `lo < n <= hi`.
    pub fn contains(&self, n: i64) -> bool {
        self.lo < n && n <= self.hi
    }

    /// Iterator over the members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        (self.lo + 1)..=self.hi
    }

    /// Largest |n| over the range; governs quadrature step rules.
    pub fn max_abs(&self) -> i64 {
        (self.lo + 1).abs().max(self.hi.abs())
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

/// Frequency pair of the quartic exponential `e(alpha n^2 + gamma n^4)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuarticPhase {
    pub alpha: f64,
    pub gamma: f64,
}

impl QuarticPhase {
    /// Both coefficients must be finite.
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        if !alpha.is_finite() || !gamma.is_finite() {
            return Err(Error::param("phase coefficients must be finite"));
        }
        Ok(QuarticPhase { alpha, gamma })
    }

    /// Reduced fractional part of `alpha n^2 + gamma n^4`.
    #[inline]
    pub fn phase_at(&self, n: i64) -> f64 {
        quartic_phase(self.alpha, self.gamma, n)
    }

    /// `e(alpha n^2 + gamma n^4)`.
    #[inline]
    pub fn term(&self, n: i64) -> Complex64 {
        unit_phase(self.phase_at(n))
    }
}

/// Coefficient sequence `a_n` attached to a range, with `|a_n| <= 1`.
///
/// The all-ones sequence is the default throughout (it is what the counting
/// identities assume); explicit coefficients are for tapered experiments.
#[derive(Clone, Debug)]
pub struct CoefficientSequence {
    range: IntRange,
    /// `None` encodes the all-ones sequence without allocating.
    values: Option<Vec<Complex64>>,
}

/// Tolerance for the unit-modulus cap on coefficients; admits values that
/// are 1 up to rounding.
const COEFF_MODULUS_SLACK: f64 = 1e-12;

impl CoefficientSequence {
    /// The all-ones sequence on `range`.
    pub fn ones(range: IntRange) -> Self {
        CoefficientSequence { range, values: None }
    }

    /// Explicit coefficients listed in range order (`n = lo+1 ..= hi`).
    /// Fails unless exactly one value per point is supplied and every modulus
    /// is at most 1 (up to rounding slack).
    pub fn new(range: IntRange, values: Vec<Complex64>) -> Result<Self> {
        if values.len() as u64 != range.len() {
            return Err(Error::param(format!(
                "expected {} coefficients for {range}, got {}",
                range.len(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::param(format!("coefficient #{i} is not finite")));
            }
            if v.norm_sqr() > 1.0 + COEFF_MODULUS_SLACK {
                return Err(Error::param(format!(
                    "coefficient #{i} has modulus {} > 1",
                    v.norm()
                )));
            }
        }
        Ok(CoefficientSequence {
            range,
            values: Some(values),
        })
    }

    pub fn range(&self) -> IntRange {
        self.range
    }

    /// Coefficient at `n`; the caller must keep `n` inside the range.
    #[inline]
    pub fn get(&self, n: i64) -> Complex64 {
        debug_assert!(self.range.contains(n));
        match &self.values {
            None => Complex64::new(1.0, 0.0),
            Some(v) => v[(n - self.range.lo - 1) as usize],
        }
    }

    /// True when every coefficient equals 1 exactly.
    pub fn is_all_ones(&self) -> bool {
        match &self.values {
            None => true,
            Some(v) => v.iter().all(|c| c.re == 1.0 && c.im == 0.0),
        }
    }
}

/// `sum_{lo < n <= upper} a_n e(alpha n^2 + gamma n^4)` with compensated
/// accumulation. `upper` must satisfy `lo < upper <= hi`; passing `hi` gives
/// the full sum.
pub fn eval_sum(
    phase: &QuarticPhase,
    coeffs: &CoefficientSequence,
    upper: i64,
) -> Result<Complex64> {
    let range = coeffs.range();
    if !(range.lo() < upper && upper <= range.hi()) {
        return Err(Error::param(format!(
            "partial-sum end {upper} outside {range}"
        )));
    }
    let mut acc = CompensatedComplex::new();
    for n in (range.lo() + 1)..=upper {
        acc.add(coeffs.get(n) * phase.term(n));
    }
    Ok(acc.value())
}

/// Value and end-point of the maximal-modulus partial sum.
///
/// Scans `upper = lo+1 ..= hi` and returns the first prefix achieving the
/// maximum modulus (strictly-greater updates keep the earliest winner).
pub fn max_partial_sum(
    phase: &QuarticPhase,
    coeffs: &CoefficientSequence,
) -> Result<(Complex64, i64)> {
    let range = coeffs.range();
    if range.is_empty() {
        return Err(Error::param("cannot scan partial sums of an empty range"));
    }
    let mut acc = CompensatedComplex::new();
    let mut best = Complex64::new(0.0, 0.0);
    let mut best_norm = f64::NEG_INFINITY;
    let mut best_at = range.lo() + 1;
    for n in (range.lo() + 1)..=range.hi() {
        acc.add(coeffs.get(n) * phase.term(n));
        let v = acc.value();
        let norm = v.norm_sqr();
        if norm > best_norm {
            best_norm = norm;
            best = v;
            best_at = n;
        }
    }
    Ok((best, best_at))
}

/// Key of one spectrum entry: exact power sums of a p-tuple.
///
/// 128-bit integers are required, not a luxury: already for ranges reaching
/// past ~55,000 a sum of three fourth powers overflows i64.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectrumKey {
    /// `n_1^2 + ... + n_p^2`.
    pub square_sum: i128,
    /// `n_1^4 + ... + n_p^4`.
    pub quartic_sum: i128,
}

/// One spectrum row: a key and the exact number of p-tuples realizing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub key: SpectrumKey,
    pub multiplicity: u64,
}

/// Exact multiplicity table of `(square_sum, quartic_sum)` over p-tuples of a
/// range, sorted by key.
#[derive(Clone, Debug)]
pub struct PhaseSpectrum {
    p: u32,
    range: IntRange,
    entries: Vec<SpectrumEntry>,
}

impl PhaseSpectrum {
    /// Tuple length.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Base range of the tuples.
    pub fn range(&self) -> IntRange {
        self.range
    }

    /// Sorted entries.
    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// Number of distinct keys.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of tuples = sum of multiplicities = len(range)^p.
    pub fn total_tuples(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity as u128).sum()
    }
}

/// Rejects (range, p) combinations whose power sums could leave i128.
///
/// Sums of p fourth powers are bounded by `p * max|n|^4`; requiring that to
/// fit keeps every spectrum key and every key difference exact (the sums are
/// nonnegative, so differences never exceed the larger operand).
pub(crate) fn check_power_sum_width(range: IntRange, p: u32) -> Result<()> {
    let quartic = (range.max_abs() as u128).pow(4);
    match quartic.checked_mul(p as u128) {
        Some(total) if total <= i128::MAX as u128 => Ok(()),
        _ => Err(Error::param(format!(
            "sums of {p} fourth powers over {range} exceed 128-bit integers"
        ))),
    }
}

/// Builds the spectrum of p-tuples over `range` under the default budget.
pub fn build_spectrum(range: IntRange, p: u32) -> Result<PhaseSpectrum> {
    build_spectrum_with_budget(range, p, DEFAULT_TUPLE_BUDGET)
}

/// Builds the spectrum of p-tuples over `range`, refusing when the tuple
/// count `len(range)^p` exceeds `budget`.
///
/// The table is assembled by p-fold convolution of the single-point table
/// rather than tuple enumeration, so the work is proportional to the number
/// of *distinct* keys times the range length; the budget still uses the
/// semantic tuple count, which is what downstream pair-walks scale with.
pub fn build_spectrum_with_budget(range: IntRange, p: u32, budget: u128) -> Result<PhaseSpectrum> {
    if p == 0 {
        return Err(Error::param("tuple length p must be >= 1"));
    }
    if range.is_empty() {
        return Err(Error::param(format!("spectrum over empty range {range}")));
    }
    check_power_sum_width(range, p)?;
    let tuples = (range.len() as u128)
        .checked_pow(p)
        .ok_or_else(|| Error::param("tuple count overflows u128"))?;
    if tuples > budget {
        return Err(Error::Budget {
            what: "enumerated tuples",
            required: tuples,
            budget,
        });
    }

    // Single-point table. Distinct n give distinct (n^2, n^4) unless they are
    // +/- pairs, which the BTreeMap merges.
    let mut base: BTreeMap<(i128, i128), u64> = BTreeMap::new();
    for n in range.iter() {
        let n2 = (n as i128) * (n as i128);
        *base.entry((n2, n2 * n2)).or_insert(0) += 1;
    }

    let mut acc = base.clone();
    for _ in 1..p {
        let mut next: BTreeMap<(i128, i128), u64> = BTreeMap::new();
        for (&(s2, s4), &m) in &acc {
            for (&(t2, t4), &w) in &base {
                let mult = m
                    .checked_mul(w)
                    .ok_or_else(|| Error::Internal("multiplicity overflow".into()))?;
                let slot = next.entry((s2 + t2, s4 + t4)).or_insert(0);
                *slot = slot
                    .checked_add(mult)
                    .ok_or_else(|| Error::Internal("multiplicity overflow".into()))?;
            }
        }
        acc = next;
    }

    let entries: Vec<SpectrumEntry> = acc
        .into_iter()
        .map(|((square_sum, quartic_sum), multiplicity)| SpectrumEntry {
            key: SpectrumKey {
                square_sum,
                quartic_sum,
            },
            multiplicity,
        })
        .collect();

    Ok(PhaseSpectrum { p, range, entries })
}
