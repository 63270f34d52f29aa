//! Exact-arithmetic and numerical laboratory for exponential sums whose phase
//! combines a quadratic and a quartic term, `e(alpha n^2 + gamma n^4)`.
//!
//! The crate computes, at small exactly-checkable sizes, the quantities that
//! drive mean-value estimates for such sums:
//!
//! * [`sums`] — the sums themselves, their maximal partial sums, and the
//!   exact multiplicity spectrum of `(sum of squares, sum of fourth powers)`
//!   over p-tuples;
//! * [`diophantine`] — exact box counts of near-diagonal tuple pairs, both by
//!   brute-force enumeration and by spectral window scans, plus Fejér-weighted
//!   relaxations;
//! * [`moments`] — even moments of |S| over frequency boxes: exact
//!   orthogonality evaluation over full periods, kernel expansions over
//!   sub-boxes, and midpoint quadrature as an independent cross-check;
//! * [`stationary_phase`] — the van der Corput B-transform (stationary-phase
//!   dual sum) for the quartic-perturbed quadratic phase, with the closed-form
//!   expansion of the transformed phase;
//! * [`weyl`] — degree-k Weyl sums, rational approximation and near-integer
//!   counting, iterated symmetric differences in exact arithmetic, and the
//!   resulting large-degree bound reports;
//! * [`report`] — tidy CSV / JSON emission for the command-line runner.
//!
//! Everything numerical reduces phases to one period with error-free
//! transformations before touching `sin`/`cos` (see [`phase`]), and every
//! combinatorial count is exact in 128-bit or big-integer arithmetic.

pub mod diophantine;
pub mod error;
pub mod moments;
pub mod phase;
pub mod report;
pub mod stationary_phase;
pub mod sums;
pub mod weyl;

pub use error::{Error, Result};
