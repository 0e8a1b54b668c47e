//! Operation-count instrumentation and the analytic complexity formulas for
//! the sequential sliding-window algorithms.
//!
//! [`InstrumentedOp`] wraps any [`WindowOp`] and counts `combine` calls;
//! algorithms call `mark` once per emitted output, so the successive
//! differences of the recorded marks are the per-output increments.
//! [`count_two_stacks`] and [`count_dew`] are the exact closed forms those
//! instrumented totals must reproduce, and
//! [`predicted_increments_two_stacks`] / [`predicted_increments_dew`]
//! generate the exact per-output increment sequences.

use algebra_core::WindowOp;
use thiserror::Error;

// ---------------------------------------------------------------------------
// Instrumentation
// ---------------------------------------------------------------------------

/// Counts `combine` invocations of the wrapped operation and snapshots the
/// running total at every `mark` (one mark per emitted output).
pub struct InstrumentedOp<O> {
    pub inner: O,
    total: u64,
    marks: Vec<u64>,
}

impl<O> InstrumentedOp<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            total: 0,
            marks: Vec::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn marks(&self) -> &[u64] {
        &self.marks
    }

    /// Per-output increments: successive differences of the mark snapshots.
    pub fn increments(&self) -> Vec<u64> {
        let mut prev = 0;
        self.marks
            .iter()
            .map(|&m| {
                let d = m - prev;
                prev = m;
                d
            })
            .collect()
    }

    pub fn reset(&mut self) {
        self.total = 0;
        self.marks.clear();
    }
}

impl<T, O: WindowOp<T>> WindowOp<T> for InstrumentedOp<O> {
    fn combine(&mut self, a: &T, b: &T) -> T {
        self.total += 1;
        self.inner.combine(a, b)
    }
    fn mark(&mut self) {
        self.marks.push(self.total);
    }
}

/// Convenience: instrument a plain closure.
pub fn instrument<T, F: FnMut(&T, &T) -> T>(f: F) -> InstrumentedOp<algebra_core::FnOp<F>> {
    InstrumentedOp::new(algebra_core::FnOp(f))
}

// ---------------------------------------------------------------------------
// Variants
// ---------------------------------------------------------------------------

/// The five Two Stacks variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoStacksVariant {
    CombinedInsertEvict,
    InsertEvict,
    EvictInsert,
    Variant3,
    Variant4,
}

impl TwoStacksVariant {
    pub const ALL: [TwoStacksVariant; 5] = [
        TwoStacksVariant::CombinedInsertEvict,
        TwoStacksVariant::InsertEvict,
        TwoStacksVariant::EvictInsert,
        TwoStacksVariant::Variant3,
        TwoStacksVariant::Variant4,
    ];
}

/// The two DEW variants (differing starting pointer positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DewVariant {
    V1,
    V2,
}

impl DewVariant {
    pub const ALL: [DewVariant; 2] = [DewVariant::V1, DewVariant::V2];
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Boolean-to-integer coercion made explicit: no silent truthiness.
fn ind(b: bool) -> i64 {
    if b {
        1
    } else {
        0
    }
}

/// Exact operation count of the Two Stacks variant for window length `n`
/// over `N` items.
///
/// Trivial cases: 0 when `n == 1` or `N == 1` (Insert-Evict performs its
/// discarded operation even at `n == 1`, giving `N / 2`), and `N - 1` when
/// `N <= n`.
pub fn count_two_stacks(variant: TwoStacksVariant, n: u64, big_n: u64) -> u64 {
    use TwoStacksVariant::*;
    if n == 1 {
        return match variant {
            InsertEvict => big_n / 2,
            _ => 0,
        };
    }
    if big_n <= 1 {
        return 0;
    }
    if big_n <= n {
        return big_n - 1;
    }
    let n = n as i64;
    let big_n = big_n as i64;
    let value = match variant {
        CombinedInsertEvict => {
            let (k, r) = (big_n / (n + 1), big_n % (n + 1));
            k * (3 * n - 3) - n + 1 + ind(r > 0) * (2 * r - 1 - ind(r == n))
        }
        InsertEvict => {
            let (k, r) = (big_n / (n + 1), big_n % (n + 1));
            k * (3 * n - 2) - n + 1 + ind(r > 0) * (2 * r - 1 - ind(r == n))
        }
        EvictInsert => {
            let (k, r) = (big_n / n, big_n % n);
            k * (3 * n - 4) - 2 * n + 3 + ind(r > 0) * (n + 2 * r - 3)
        }
        Variant3 => {
            let (k, r) = (big_n / n, big_n % n);
            k * (3 * n - 4) - 2 * n + 3 + ind(r > 0) * (n + 2 * r - 4 + ind(r == 1))
        }
        Variant4 => {
            let (k, r) = ((big_n - 1) / (n - 1), (big_n - 1) % (n - 1));
            k * (3 * n - 5) - 2 * n + 4 + ind(r > 0) * (n + 2 * r - 3)
        }
    };
    u64::try_from(value).expect("closed form must be nonnegative")
}

/// Exact operation count of the DEW variant for window length `n` over `N`
/// items.
pub fn count_dew(variant: DewVariant, n: u64, big_n: u64) -> u64 {
    if n == 1 || big_n == 1 || big_n == 0 {
        return 0;
    }
    let half_up = n.div_ceil(2);
    if n == 2 || big_n <= half_up {
        return big_n - 1;
    }
    if big_n <= n {
        return match variant {
            DewVariant::V1 => 3 * big_n - n - 3,
            DewVariant::V2 => 3 * big_n - n - 2 - u64::from(big_n == n),
        };
    }
    let (k, r) = ((big_n / n) as i64, (big_n % n) as i64);
    let n = n as i64;
    let value = match variant {
        DewVariant::V1 => {
            k * (3 * n - 4) - n
                + 1
                + ind(r > 0) * (3 * r - 2 - ind(r > n / 2) - ind(r > (n + 1) / 2))
        }
        DewVariant::V2 => {
            k * (3 * n - 4) - n
                + 1
                + ind(r > 0) * (3 * r - 1 - ind(r > (n - 1) / 2) - ind(r > n / 2))
        }
    };
    u64::try_from(value).expect("closed form must be nonnegative")
}

// ---------------------------------------------------------------------------
// Predicted increment sequences
// ---------------------------------------------------------------------------

fn with_startup(n: u64, big_n: u64, startup_len: u64, steady: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut incr = Vec::with_capacity(big_n as usize);
    incr.push(0);
    let prefix = startup_len.min(big_n) as usize;
    while incr.len() < prefix {
        incr.push(1);
    }
    let _ = n;
    incr.extend(steady.take(big_n as usize - incr.len().min(big_n as usize)));
    incr.truncate(big_n as usize);
    incr
}

/// The exact per-output increment sequence of a Two Stacks variant:
/// startup `0, 1, …, 1` over the first `min(n, N)` outputs, then the
/// variant's periodic batch pattern.
pub fn predicted_increments_two_stacks(variant: TwoStacksVariant, n: u64, big_n: u64) -> Vec<u64> {
    use TwoStacksVariant::*;
    if big_n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return (1..=big_n)
            .map(|i| u64::from(variant == InsertEvict && i % 2 == 0))
            .collect();
    }
    let pattern: Vec<u64> = match variant {
        CombinedInsertEvict => [n - 1, 1]
            .into_iter()
            .chain(std::iter::repeat(2).take(n as usize - 2))
            .chain([1])
            .collect(),
        InsertEvict => [n, 1]
            .into_iter()
            .chain(std::iter::repeat(2).take(n as usize - 2))
            .chain([1])
            .collect(),
        EvictInsert => [n - 1]
            .into_iter()
            .chain(std::iter::repeat(2).take(n as usize - 2))
            .chain([1])
            .collect(),
        Variant3 => [n - 1, 1]
            .into_iter()
            .chain(std::iter::repeat(2).take(n as usize - 2))
            .collect(),
        Variant4 => [n - 1]
            .into_iter()
            .chain(std::iter::repeat(2).take(n as usize - 2))
            .collect(),
    };
    with_startup(n, big_n, n, pattern.iter().copied().cycle())
}

/// The exact per-output increment sequence of a DEW variant.
pub fn predicted_increments_dew(variant: DewVariant, n: u64, big_n: u64) -> Vec<u64> {
    if big_n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0; big_n as usize];
    }
    if n == 2 {
        let mut v = vec![1; big_n as usize];
        v[0] = 0;
        return v;
    }
    let m = n.div_ceil(2); // ceil(n/2)
    let (startup_len, period): (u64, Vec<u64>) = match (variant, n % 2 == 0) {
        (DewVariant::V1, true) => (
            n / 2,
            [1].into_iter()
                .chain(std::iter::repeat(3).take(n as usize / 2 - 1))
                .collect(),
        ),
        (DewVariant::V1, false) => (
            m,
            [2].into_iter()
                .chain(std::iter::repeat(3).take(m as usize - 2))
                .chain([1])
                .chain(std::iter::repeat(3).take(m as usize - 2))
                .chain([2])
                .collect(),
        ),
        (DewVariant::V2, true) => (
            n / 2,
            [2].into_iter()
                .chain(std::iter::repeat(3).take(n as usize / 2 - 2))
                .chain([2])
                .collect(),
        ),
        (DewVariant::V2, false) => (
            m - 1,
            [1].into_iter()
                .chain(std::iter::repeat(3).take(m as usize - 2))
                .chain([2])
                .chain([2])
                .chain(std::iter::repeat(3).take(m as usize - 2))
                .collect(),
        ),
    };
    with_startup(n, big_n, startup_len, period.iter().copied().cycle())
}

// ---------------------------------------------------------------------------
// Cumulative dominance
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DominanceError {
    #[error("increment traces have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// Cumulative dominance `a ≼ b`: every prefix sum of `a` is at most the
/// corresponding prefix sum of `b`.
pub fn cumulatively_dominates(a: &[u64], b: &[u64]) -> Result<bool, DominanceError> {
    if a.len() != b.len() {
        return Err(DominanceError::LengthMismatch(a.len(), b.len()));
    }
    let mut sa = 0u64;
    let mut sb = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}
