//! Sequential sliding-window aggregation.
//!
//! Every algorithm computes, for each input position `i`, the right-fold of
//! the operation over the last `min(i, n)` items with the newest item on the
//! left: `y_i = a_i * (a_{i-1} * (… * a_{i-n+1}))`, terms with index < 1
//! dropped. [`naive_window`] is the reference oracle; the others trade
//! preconditions (associativity, invertibility, selectivity) for fewer
//! operation calls. Batch functions call `mark` on the operation after every
//! emitted output so instrumented operations record per-output increments.

use algebra_core::WindowOp;
use std::collections::VecDeque;
use thiserror::Error;

pub use opcount::{DewVariant, TwoStacksVariant};

#[derive(Debug, Error, PartialEq)]
pub enum SequentialError {
    #[error("window is empty")]
    EmptyWindow,
    #[error("timestamps must be non-decreasing: {next} after {prev}")]
    NonMonotonicTimestamp { prev: f64, next: f64 },
}

// ---------------------------------------------------------------------------
// Aggregator contract
// ---------------------------------------------------------------------------

/// Streaming window contract: after any call sequence, `query` equals the
/// newest-on-left right-fold over exactly the values currently held.
pub trait WindowAggregator<T> {
    fn insert(&mut self, value: T);
    /// Removes the oldest item; erroring (never silent) on an empty window.
    fn evict(&mut self) -> Result<(), SequentialError>;
    fn query(&mut self) -> Result<T, SequentialError>;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Fixed-length steady-state step: evict the oldest (if any) and insert.
    fn combined_insert_evict(&mut self, value: T) -> Result<(), SequentialError> {
        if !self.is_empty() {
            self.evict()?;
        }
        self.insert(value);
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Naive oracle
// ---------------------------------------------------------------------------

/// Reference implementation: recomputes each window from scratch.
pub fn naive_window<T: Clone>(op: &mut impl WindowOp<T>, data: &[T], n: usize) -> Vec<T> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(data.len());
    for i in 0..data.len() {
        let start = (i + 1).saturating_sub(n);
        let mut acc = data[start].clone();
        for t in start + 1..=i {
            acc = op.combine(&data[t], &acc);
        }
        op.mark();
        out.push(acc);
    }
    out
}

// ---------------------------------------------------------------------------
// Subtract on evict
// ---------------------------------------------------------------------------

/// Evaluation order for the steady-state update of [`subtract_on_evict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalOrder {
    /// `y_i = a_i + (y_{i-1} - a_{i-n})` — the expiring item is removed
    /// before the new item is added.
    SubtractFirst,
    /// `y_i = (a_i + y_{i-1}) - a_{i-n}` — the new item is added first.
    AddFirst,
}

/// Sliding window via the group inverse: correct only when `subtract`
/// exactly undoes `add`; numeric drift and absorbed special values are the
/// documented failure modes.
pub fn subtract_on_evict<T: Clone>(
    add: &mut impl WindowOp<T>,
    subtract: &mut impl WindowOp<T>,
    data: &[T],
    n: usize,
) -> Vec<T> {
    subtract_on_evict_with_order(add, subtract, data, n, EvalOrder::SubtractFirst)
}

pub fn subtract_on_evict_with_order<T: Clone>(
    add: &mut impl WindowOp<T>,
    subtract: &mut impl WindowOp<T>,
    data: &[T],
    n: usize,
    order: EvalOrder,
) -> Vec<T> {
    assert!(n >= 1);
    let mut out: Vec<T> = Vec::with_capacity(data.len());
    for i in 0..data.len() {
        let y = if i == 0 {
            data[0].clone()
        } else if i < n {
            add.combine(&data[i], &out[i - 1])
        } else {
            match order {
                EvalOrder::SubtractFirst => {
                    let kept = subtract.combine(&out[i - 1], &data[i - n]);
                    add.combine(&data[i], &kept)
                }
                EvalOrder::AddFirst => {
                    let grown = add.combine(&data[i], &out[i - 1]);
                    subtract.combine(&grown, &data[i - n])
                }
            }
        };
        add.mark();
        out.push(y);
    }
    out
}

/// Sliding window as a difference of sequentially computed prefix
/// aggregates: `y_i = z_i - z_{i-n}`.
pub fn difference_of_prefix_sums<T: Clone>(
    add: &mut impl WindowOp<T>,
    subtract: &mut impl WindowOp<T>,
    data: &[T],
    n: usize,
) -> Vec<T> {
    assert!(n >= 1);
    let mut prefix: Vec<T> = Vec::with_capacity(data.len());
    for (i, x) in data.iter().enumerate() {
        let z = if i == 0 {
            x.clone()
        } else {
            add.combine(x, &prefix[i - 1])
        };
        prefix.push(z);
    }
    let mut out = Vec::with_capacity(data.len());
    for i in 0..data.len() {
        let y = if i < n {
            prefix[i].clone()
        } else {
            subtract.combine(&prefix[i], &prefix[i - n])
        };
        add.mark();
        out.push(y);
    }
    out
}

// ---------------------------------------------------------------------------
// Two Stacks (batch formulation)
// ---------------------------------------------------------------------------

/// Two Stacks in its batch formulation: moving sums computed in batches,
/// each batch building one suffix-aggregate chain and one running prefix
/// accumulator. The five variants differ in whether the chain starts at the
/// batch column or one earlier, whether the prefix serves the final column
/// alone, and whether an extra discarded operation is performed
/// (InsertEvict only). Requires an associative operation.
pub fn two_stacks<T: Clone>(
    op: &mut impl WindowOp<T>,
    variant: TwoStacksVariant,
    data: &[T],
    n: usize,
) -> Vec<T> {
    assert!(n >= 1);
    use TwoStacksVariant::*;
    let (suffix_includes_new, prefix_full) = match variant {
        CombinedInsertEvict | InsertEvict => (true, true),
        Variant3 => (true, false),
        EvictInsert => (false, true),
        Variant4 => (false, false),
    };
    let big_n = data.len();
    let mut out: Vec<T> = Vec::with_capacity(big_n);
    if n == 1 {
        for (i, x) in data.iter().enumerate() {
            // InsertEvict performs (and discards) its insert-side
            // combination even for unit windows.
            if variant == InsertEvict && i % 2 == 1 {
                let _ = op.combine(&data[i], &out[i - 1]);
            }
            op.mark();
            out.push(x.clone());
        }
        return out;
    }
    // Startup: the first min(n, N) windows grow one item at a time.
    for i in 0..big_n.min(n) {
        let y = if i == 0 {
            data[0].clone()
        } else {
            op.combine(&data[i], &out[i - 1])
        };
        op.mark();
        out.push(y);
    }
    let mut c = n;
    while c < big_n {
        if suffix_includes_new {
            // Suffix chain over a_c, a_{c-1}, …, a_{c-n+1}; built in full
            // even when the batch is truncated by the end of the data.
            let mut suffix: Vec<T> = Vec::with_capacity(n);
            suffix.push(data[c].clone());
            for t in 1..n {
                let s = op.combine(&suffix[t - 1], &data[c - t]);
                suffix.push(s);
            }
            if variant == InsertEvict {
                // The insert-side combination whose result the batch layout
                // immediately discards; counted, never used.
                let _ = op.combine(&data[c], &out[c - 1]);
            }
            op.mark();
            out.push(suffix[n - 1].clone());
            let jmax = if prefix_full { n } else { n - 1 };
            let mut prefix: Option<T> = None;
            for j in 1..=jmax {
                let idx = c + j;
                if idx >= big_n {
                    break;
                }
                prefix = Some(match prefix {
                    None => data[idx].clone(),
                    Some(p) => op.combine(&data[idx], &p),
                });
                let y = if j < n {
                    op.combine(prefix.as_ref().unwrap(), &suffix[n - 1 - j])
                } else {
                    prefix.clone().unwrap()
                };
                op.mark();
                out.push(y);
            }
            c += jmax + 1;
        } else {
            // Suffix chain over a_{c-1}, …, a_{c-n+1} only; the new item is
            // combined on top for the first column of the batch.
            let mut suffix: Vec<T> = Vec::with_capacity(n - 1);
            suffix.push(data[c - 1].clone());
            for t in 1..n - 1 {
                let s = op.combine(&suffix[t - 1], &data[c - 1 - t]);
                suffix.push(s);
            }
            let y = op.combine(&data[c], &suffix[n - 2]);
            op.mark();
            out.push(y);
            let jmax = if prefix_full { n - 1 } else { n - 2 };
            let mut prefix = data[c].clone();
            for j in 1..=jmax {
                let idx = c + j;
                if idx >= big_n {
                    break;
                }
                prefix = op.combine(&data[idx], &prefix);
                let y = if j <= n - 2 {
                    op.combine(&prefix, &suffix[n - 2 - j])
                } else {
                    prefix.clone()
                };
                op.mark();
                out.push(y);
            }
            c += jmax + 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// DEW (double-ended-aggregate window), circular basic version
// ---------------------------------------------------------------------------

struct DewBasic<T> {
    arr: Vec<Option<T>>,
    p: usize,
    q: usize,
}

impl<T: Clone> DewBasic<T> {
    fn new(n: usize, variant: DewVariant) -> Self {
        let q = match variant {
            DewVariant::V1 => 0,
            DewVariant::V2 => n - 1,
        };
        DewBasic { arr: vec![None; n], p: 0, q }
    }

    fn insert(&mut self, op: &mut impl WindowOp<T>, x: T) -> T {
        let n = self.arr.len();
        let (p, q) = (self.p, self.q);
        let p_last = (p + n - 1) % n;
        let q_last = (q + 1) % n;
        let p_next = (p + 1) % n;
        let q_next = (q + n - 1) % n;
        let dea = if p == q || (p == q_last && self.arr[p].is_none()) {
            x.clone()
        } else if p == q_last {
            op.combine(&x, self.arr[p].as_ref().unwrap())
        } else if self.arr[p].is_none() {
            op.combine(&x, self.arr[p_last].as_ref().unwrap())
        } else {
            let tail = op.combine(
                self.arr[p_last].as_ref().unwrap(),
                self.arr[p].as_ref().unwrap(),
            );
            op.combine(&x, &tail)
        };
        let agg = if q_next == p || self.arr[q_next].is_none() {
            dea.clone()
        } else {
            op.combine(&dea, self.arr[q_next].as_ref().unwrap())
        };
        self.arr[q] = Some(x);
        if p != q {
            self.arr[p] = Some(dea);
        }
        self.p = p_next;
        self.q = q_next;
        agg
    }
}

/// DEW with a ring of double-ended aggregates, explicit-emptiness-check
/// ("basic") version. Variant 1 starts both pointers on the same cell;
/// Variant 2 starts them at opposite ends. Requires an associative
/// operation.
pub fn dew<T: Clone>(
    op: &mut impl WindowOp<T>,
    variant: DewVariant,
    data: &[T],
    n: usize,
) -> Vec<T> {
    assert!(n >= 1);
    let mut state = DewBasic::new(n, variant);
    data.iter()
        .map(|x| {
            let y = state.insert(op, x.clone());
            op.mark();
            y
        })
        .collect()
}

// ---------------------------------------------------------------------------
// DEW, sentinel version (Variant 1)
// ---------------------------------------------------------------------------

#[derive(PartialEq)]
enum DewMode {
    One,
    Two,
    Start,
    Regular,
}

/// Sentinel DEW: identical outputs and operation counts to `dew` Variant 1,
/// but the steady-state fast path performs no emptiness or wraparound
/// checks — a single sentinel index comparison routes the rare boundary
/// cases. Indices are 1-based as in the ring layout; `p` runs past the ring
/// to `n + 1` before the sentinel resets it.
pub fn dew_sentinel<T: Clone>(op: &mut impl WindowOp<T>, data: &[T], n: usize) -> Vec<T> {
    assert!(n >= 1);
    let mut arr: Vec<Option<T>> = vec![None; n + 1]; // 1-based; cell 0 unused
    let mut p = 1usize;
    let mut q = 1usize;
    let mut sentinel = 0usize;
    let mut mode = match n {
        1 => DewMode::One,
        2 => DewMode::Two,
        _ => DewMode::Start,
    };
    let mut item = 0usize;
    let mut out = Vec::with_capacity(data.len());
    let half_up = n.div_ceil(2);
    for x in data {
        let x = x.clone();
        item += 1;
        let agg = match mode {
            DewMode::One => x.clone(),
            DewMode::Two => {
                let p_next = if p == 1 { 2 } else { 1 };
                let agg = if q == 0 {
                    op.combine(&x, arr[p_next].as_ref().unwrap())
                } else {
                    q = 0;
                    x.clone()
                };
                arr[p] = Some(x);
                sentinel = p_next;
                p = p_next;
                agg
            }
            DewMode::Start => {
                if item == 1 {
                    arr[1] = Some(x.clone());
                    p = 2;
                    q = n;
                    sentinel = 2;
                    x.clone()
                } else {
                    let dea = op.combine(&x, arr[p - 1].as_ref().unwrap());
                    arr[p] = Some(dea.clone());
                    arr[q] = Some(x);
                    sentinel = p + 1;
                    if item == half_up {
                        mode = DewMode::Regular;
                    }
                    p += 1;
                    q -= 1;
                    dea
                }
            }
            DewMode::Regular => {
                if p != sentinel {
                    // Fast path: no boundary can be hit here.
                    let tail =
                        op.combine(arr[p - 1].as_ref().unwrap(), arr[p].as_ref().unwrap());
                    let dea = op.combine(&x, &tail);
                    let agg = op.combine(&dea, arr[q - 1].as_ref().unwrap());
                    arr[p] = Some(dea);
                    arr[q] = Some(x);
                    p += 1;
                    q -= 1;
                    agg
                } else if p == n + 1 {
                    p = 1;
                    let q_next = n;
                    let agg = op.combine(&x, arr[q_next].as_ref().unwrap());
                    sentinel = n / 2 + 1;
                    arr[q] = Some(x);
                    p += 1;
                    q = q_next;
                    agg
                } else if q == p {
                    let q_next = q - 1;
                    let agg = op.combine(&x, arr[q_next].as_ref().unwrap());
                    sentinel = n + 1;
                    arr[q] = Some(x);
                    p += 1;
                    q = q_next;
                    agg
                } else if q == p - 1 {
                    let q_next = q - 1;
                    let dea = op.combine(&x, arr[p].as_ref().unwrap());
                    let agg = op.combine(&dea, arr[q_next].as_ref().unwrap());
                    arr[p] = Some(dea);
                    sentinel = n + 1;
                    arr[q] = Some(x);
                    p += 1;
                    q = q_next;
                    agg
                } else {
                    let q_next = q - 1;
                    let tail =
                        op.combine(arr[p - 1].as_ref().unwrap(), arr[p].as_ref().unwrap());
                    let agg = op.combine(&x, &tail);
                    arr[p] = Some(agg.clone());
                    sentinel = p + 1;
                    arr[q] = Some(x);
                    p += 1;
                    q = q_next;
                    agg
                }
            }
        };
        op.mark();
        out.push(agg);
    }
    out
}

// ---------------------------------------------------------------------------
// DABA Lite
// ---------------------------------------------------------------------------

/// Variable-length aggregator with worst-case constant work per step.
///
/// The window is a deque split into five regions, oldest to newest:
/// `F | L | R | A | B`, delimited by positions `l <= r <= a <= b`. `F` and
/// `A` hold suffix aggregates that already cover everything up to `b`, so
/// their front element answers a query directly; `L` holds suffix
/// aggregates reaching only to `r`, completed on demand with `mid_sum`
/// (the fixed total of `[r, b)`); `R` and `B` hold raw values, with
/// `back_sum` the running total of `B`.
///
/// Each insert or evict performs one unit of conversion work: either the
/// oldest `L` aggregate is completed into `F`, or `A` grows one position
/// to the left over `R`. When the conversion finishes the regions are
/// recut (a "flip"): the converted part becomes the new `L` and the raw
/// back becomes the new `R`. In fixed-length operation the phases settle
/// at half the window length, bounding the work per step by a small
/// constant: at most 6 operations per step and 4N in total over N steps.
pub struct DabaLite<T, O> {
    op: O,
    /// One slot per window element: an aggregate for `F`/`L`/`A`
    /// positions, the raw value for `R`/`B` positions.
    q: VecDeque<T>,
    /// Global index of `q[0]`; the region bounds below are global too.
    start: u64,
    l: u64,
    r: u64,
    a: u64,
    b: u64,
    /// Aggregate of `[r, b)`, frozen at the last flip.
    mid_sum: Option<T>,
    /// Running aggregate of `[b, end)`.
    back_sum: Option<T>,
}

/// Builds a [`DabaLite`] aggregator over an associative operation.
pub fn daba_lite<T: Clone, O: WindowOp<T>>(op: O) -> DabaLite<T, O> {
    DabaLite {
        op,
        q: VecDeque::new(),
        start: 0,
        l: 0,
        r: 0,
        a: 0,
        b: 0,
        mid_sum: None,
        back_sum: None,
    }
}

impl<T, O> DabaLite<T, O> {
    /// Borrow the underlying operation (e.g. to read instrumentation).
    pub fn op_ref(&self) -> &O {
        &self.op
    }
}

impl<T: Clone, O: WindowOp<T>> DabaLite<T, O> {
    fn end(&self) -> u64 {
        self.start + self.q.len() as u64
    }

    fn slot(&self, g: u64) -> usize {
        (g - self.start) as usize
    }

    /// Recut the regions: the fully converted front part becomes the new
    /// `L`, the raw back becomes the new `R` with its total as `mid_sum`.
    fn flip(&mut self) {
        self.l = self.start;
        self.r = self.b;
        self.a = self.end();
        self.b = self.end();
        self.mid_sum = self.back_sum.take();
    }

    /// Grow `A` one position to the left over `R` (one operation; free
    /// while `A` is still empty).
    fn extend_once(&mut self) {
        let target = self.slot(self.a - 1);
        if self.a < self.b {
            let agg = self.op.combine(&self.q[self.slot(self.a)], &self.q[target]);
            self.q[target] = agg;
        }
        self.a -= 1;
    }

    /// One unit of conversion work, completing the oldest `L` aggregate
    /// first so the front of the queue stays ahead of evictions.
    fn step(&mut self) {
        if self.l == self.b {
            self.flip();
        }
        if self.start == self.b {
            return; // nothing before the back region
        }
        if self.l < self.r {
            let idx = self.slot(self.l);
            if let Some(m) = self.mid_sum.as_ref() {
                let agg = self.op.combine(m, &self.q[idx]);
                self.q[idx] = agg;
            }
            self.l += 1;
        } else if self.a > self.r.max(self.start) {
            self.extend_once();
        } else if self.l < self.b {
            // Conversion complete: everything before `b` is front-ready.
            self.l = self.b;
            self.r = self.b;
            self.a = self.b;
        }
    }
}

impl<T: Clone, O: WindowOp<T>> WindowAggregator<T> for DabaLite<T, O> {
    fn insert(&mut self, value: T) {
        self.back_sum = Some(match self.back_sum.take() {
            None => value.clone(),
            Some(s) => self.op.combine(&value, &s),
        });
        self.q.push_back(value);
        self.step();
    }

    fn evict(&mut self) -> Result<(), SequentialError> {
        if self.q.is_empty() {
            return Err(SequentialError::EmptyWindow);
        }
        self.q.pop_front();
        self.start += 1;
        if self.l < self.start {
            self.l = self.start;
        }
        if self.start == self.b && self.l < self.b {
            // The front part drained before its conversion finished
            // (evict-heavy variable-length use); abandon the phase. The
            // remaining elements are all raw with `back_sum` their total,
            // so the flip in the next step recuts them cleanly.
            self.l = self.b;
            self.r = self.b;
            self.a = self.b;
        }
        self.step();
        Ok(())
    }

    fn query(&mut self) -> Result<T, SequentialError> {
        if self.q.is_empty() {
            return Err(SequentialError::EmptyWindow);
        }
        if self.start >= self.b {
            return Ok(self.back_sum.clone().expect("back region is nonempty"));
        }
        if self.start >= self.l.max(self.r) && self.start < self.a {
            // The front element is an unconverted raw value (only
            // reachable through evict-heavy variable-length use): finish
            // the suffix aggregates down to it.
            while self.a > self.start {
                self.extend_once();
            }
        }
        let front = &self.q[0];
        let alpha = if self.start >= self.l && self.start < self.r {
            match self.mid_sum.as_ref() {
                Some(m) => self.op.combine(m, front),
                None => front.clone(),
            }
        } else {
            front.clone()
        };
        Ok(match self.back_sum.as_ref() {
            Some(bs) => self.op.combine(bs, &alpha),
            None => alpha,
        })
    }

    fn len(&self) -> usize {
        self.q.len()
    }
}

// ---------------------------------------------------------------------------
// Slick Deque
// ---------------------------------------------------------------------------

/// Variable-length aggregator for selection operators with a transitive
/// relation: keeps only the items that can still become the window
/// aggregate, newest-dominated items removed on insertion.
pub struct SlickDeque<T, O> {
    op: O,
    deque: VecDeque<(T, u64)>,
    inserted: u64,
    evicted: u64,
    comparisons: u64,
}

/// Builds a [`SlickDeque`] aggregator. The operation must be a selection
/// operator (always returns one of its arguments) whose induced relation is
/// transitive; values must support equality comparison.
pub fn slick_deque<T: Clone + PartialEq, O: WindowOp<T>>(op: O) -> SlickDeque<T, O> {
    SlickDeque {
        op,
        deque: VecDeque::new(),
        inserted: 0,
        evicted: 0,
        comparisons: 0,
    }
}

impl<T, O> SlickDeque<T, O> {
    /// Equality comparisons performed by the removal predicate (counted
    /// separately from operation invocations).
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    /// Borrow the underlying operation (e.g. to read instrumentation).
    pub fn op_ref(&self) -> &O {
        &self.op
    }

    /// Values currently retained, oldest candidate first, with their
    /// 1-based item numbers.
    pub fn retained(&self) -> impl Iterator<Item = &(T, u64)> {
        self.deque.iter()
    }
}

impl<T: Clone + PartialEq, O: WindowOp<T>> WindowAggregator<T> for SlickDeque<T, O> {
    fn insert(&mut self, value: T) {
        while let Some((last, _)) = self.deque.back() {
            let chosen = self.op.combine(&value, last);
            self.comparisons += 1;
            if chosen == value {
                self.deque.pop_back();
            } else {
                break;
            }
        }
        self.inserted += 1;
        self.deque.push_back((value, self.inserted));
    }

    fn evict(&mut self) -> Result<(), SequentialError> {
        if self.inserted == self.evicted {
            return Err(SequentialError::EmptyWindow);
        }
        self.evicted += 1;
        if let Some((_, idx)) = self.deque.front() {
            if *idx == self.evicted {
                self.deque.pop_front();
            }
        }
        Ok(())
    }

    fn query(&mut self) -> Result<T, SequentialError> {
        self.deque
            .front()
            .map(|(v, _)| v.clone())
            .ok_or(SequentialError::EmptyWindow)
    }

    fn len(&self) -> usize {
        (self.inserted - self.evicted) as usize
    }
}

// ---------------------------------------------------------------------------
// Time-based windows
// ---------------------------------------------------------------------------

/// Streaming processor over any variable-length aggregator: after each
/// arrival at time `t`, the aggregate covers exactly the items with
/// timestamp `>= t - horizon`.
pub struct TimeBasedWindow<T, A> {
    agg: A,
    horizon: f64,
    times: VecDeque<f64>,
    _marker: std::marker::PhantomData<T>,
}

pub fn time_based_window<T, A: WindowAggregator<T>>(agg: A, horizon: f64) -> TimeBasedWindow<T, A> {
    assert!(horizon >= 0.0);
    TimeBasedWindow {
        agg,
        horizon,
        times: VecDeque::new(),
        _marker: std::marker::PhantomData,
    }
}

impl<T, A: WindowAggregator<T>> TimeBasedWindow<T, A> {
    pub fn insert(&mut self, timestamp: f64, value: T) -> Result<(), SequentialError> {
        if let Some(&last) = self.times.back() {
            if timestamp < last {
                return Err(SequentialError::NonMonotonicTimestamp {
                    prev: last,
                    next: timestamp,
                });
            }
        }
        self.agg.insert(value);
        self.times.push_back(timestamp);
        while let Some(&oldest) = self.times.front() {
            if oldest < timestamp - self.horizon {
                self.times.pop_front();
                self.agg.evict()?;
            } else {
                break;
            }
        }
        Ok(())
    }

    pub fn query(&mut self) -> Result<T, SequentialError> {
        self.agg.query()
    }

    pub fn len(&self) -> usize {
        self.agg.len()
    }
}
