//! Concrete operators, selection operators, and function-composition
//! representations, each packaged for use by the sequential and vector
//! window algorithms.
//!
//! Conventions: window folds put the newest element on the left, so every
//! `compose(f, g)` here takes `f` as the newer (outermost) factor. Numbers
//! are double-precision floats unless a representation is integer-exact.

use algebra_core::{op_fn, CompositionRep, FnOp, WindowOp};
use std::collections::BTreeSet;

// ---------------------------------------------------------------------------
// Plain associative operators
// ---------------------------------------------------------------------------

pub fn op_sum() -> impl WindowOp<f64> {
    op_fn(|a: &f64, b: &f64| a + b)
}

pub fn op_product() -> impl WindowOp<f64> {
    op_fn(|a: &f64, b: &f64| a * b)
}

pub fn op_concat() -> impl WindowOp<String> {
    op_fn(|a: &String, b: &String| format!("{a}{b}"))
}

pub fn op_union() -> impl WindowOp<BTreeSet<i64>> {
    op_fn(|a: &BTreeSet<i64>, b: &BTreeSet<i64>| a.union(b).copied().collect())
}

pub fn op_intersection() -> impl WindowOp<BTreeSet<i64>> {
    op_fn(|a: &BTreeSet<i64>, b: &BTreeSet<i64>| a.intersection(b).copied().collect())
}

/// Fill-forward: the left (newer) argument unless it is undefined.
pub fn op_coalesce() -> impl WindowOp<Option<f64>> {
    op_fn(|a: &Option<f64>, b: &Option<f64>| a.or(*b))
}

/// Selection operator from the total order ≤: `x * y = y if x <= y else x`.
pub fn op_max_total_order() -> impl WindowOp<f64> {
    op_fn(|x: &f64, y: &f64| if x <= y { *y } else { *x })
}

/// Selection operator from the total order ≥.
pub fn op_min_total_order() -> impl WindowOp<f64> {
    op_fn(|x: &f64, y: &f64| if x >= y { *y } else { *x })
}

// ---------------------------------------------------------------------------
// Argmax-style operators over (value, index) pairs
// ---------------------------------------------------------------------------

/// Tie-breaking policy for [`rep_argmax`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgmaxMode {
    /// Ties keep the earlier index.
    Earliest,
    /// Ties keep the later index.
    Latest,
}

/// Associative operator over `(value, index)` pairs tracking where the
/// maximum occurs. Requires a total order on the values; float equality
/// is exact since indices are discrete.
pub fn rep_argmax(mode: ArgmaxMode) -> impl WindowOp<(f64, u64)> {
    op_fn(move |p: &(f64, u64), q: &(f64, u64)| {
        if p.0 > q.0 {
            *p
        } else if q.0 > p.0 {
            *q
        } else {
            match mode {
                ArgmaxMode::Earliest => (p.0, p.1.min(q.1)),
                ArgmaxMode::Latest => (p.0, p.1.max(q.1)),
            }
        }
    })
}

/// Argmax keeping the full set of maximizing indices.
pub fn rep_argmax_set() -> impl WindowOp<(f64, BTreeSet<u64>)> {
    op_fn(|p: &(f64, BTreeSet<u64>), q: &(f64, BTreeSet<u64>)| {
        if p.0 > q.0 {
            p.clone()
        } else if q.0 > p.0 {
            q.clone()
        } else {
            (p.0, p.1.union(&q.1).copied().collect())
        }
    })
}

/// Associative operator over `(value, count)` pairs: the maximum together
/// with its multiplicity.
pub fn rep_max_count() -> impl WindowOp<(f64, u64)> {
    op_fn(|p: &(f64, u64), q: &(f64, u64)| {
        if p.0 > q.0 {
            *p
        } else if q.0 > p.0 {
            *q
        } else {
            (p.0, p.1 + q.1)
        }
    })
}

/// Lifts raw values to `(value, 1-based index)` pairs.
pub fn argmax_lift(data: &[f64]) -> Vec<(f64, u64)> {
    data.iter().enumerate().map(|(i, &v)| (v, i as u64 + 1)).collect()
}

// ---------------------------------------------------------------------------
// Linear recurrences and relatives
// ---------------------------------------------------------------------------

/// Coefficients of the affine map `x ↦ a + m x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRecParams {
    pub m: f64,
    pub a: f64,
}

impl LinearRecParams {
    pub const IDENTITY: LinearRecParams = LinearRecParams { m: 1.0, a: 0.0 };

    pub fn new(m: f64, a: f64) -> Self {
        Self { m, a }
    }
}

fn linrec_compose(f: &LinearRecParams, g: &LinearRecParams) -> LinearRecParams {
    // f is the newer (outermost) map: (m1 m2, a1 + m1 a2).
    LinearRecParams { m: f.m * g.m, a: f.a + f.m * g.a }
}

/// `x_i = a_i + m_i x_{i-1}` as a composition representation.
pub struct LinRec;

impl CompositionRep for LinRec {
    type Elem = LinearRecParams;
    type Lifted = LinearRecParams;
    type State = f64;

    fn lift(&self, a: &LinearRecParams) -> LinearRecParams {
        *a
    }
    fn compose(&self, f: &LinearRecParams, g: &LinearRecParams) -> LinearRecParams {
        linrec_compose(f, g)
    }
    fn apply(&self, f: &LinearRecParams, x: &f64) -> f64 {
        f.a + f.m * x
    }
}

/// Windowed sum that treats undefined inputs as zero.
pub struct SumMissing;

impl CompositionRep for SumMissing {
    type Elem = Option<f64>;
    type Lifted = f64;
    type State = f64;

    fn lift(&self, a: &Option<f64>) -> f64 {
        a.unwrap_or(0.0)
    }
    fn compose(&self, f: &f64, g: &f64) -> f64 {
        f + g
    }
    fn apply(&self, f: &f64, x: &f64) -> f64 {
        f + x
    }
}

/// Sum with scale changes and missing data: element `(m, a)` lifts to the
/// affine map with `a` coalesced to zero.
pub struct SumScaleMissing;

impl CompositionRep for SumScaleMissing {
    type Elem = (f64, Option<f64>);
    type Lifted = LinearRecParams;
    type State = f64;

    fn lift(&self, (m, a): &(f64, Option<f64>)) -> LinearRecParams {
        LinearRecParams { m: *m, a: a.unwrap_or(0.0) }
    }
    fn compose(&self, f: &LinearRecParams, g: &LinearRecParams) -> LinearRecParams {
        linrec_compose(f, g)
    }
    fn apply(&self, f: &LinearRecParams, x: &f64) -> f64 {
        f.a + f.m * x
    }
}

/// Type I exponentially weighted moving average:
/// `x_i = (1-c) a_i + c x_{i-1}`.
pub struct Ewma1 {
    pub c: f64,
}

impl CompositionRep for Ewma1 {
    type Elem = f64;
    type Lifted = LinearRecParams;
    type State = f64;

    fn lift(&self, a: &f64) -> LinearRecParams {
        LinearRecParams { m: self.c, a: (1.0 - self.c) * a }
    }
    fn compose(&self, f: &LinearRecParams, g: &LinearRecParams) -> LinearRecParams {
        linrec_compose(f, g)
    }
    fn apply(&self, f: &LinearRecParams, x: &f64) -> f64 {
        f.a + f.m * x
    }
}

/// Type II EWMA triple `(m, a, u)`: numerator and weight recurrences
/// advanced together; the average is the ratio of the state components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EwmaState {
    pub m: f64,
    pub a: f64,
    pub u: f64,
}

/// Type II EWMA: `lift(a) = (c, a, 1)`, state `(x, w)`, value `x / w`.
pub struct Ewma2 {
    pub c: f64,
}

impl CompositionRep for Ewma2 {
    type Elem = f64;
    type Lifted = EwmaState;
    type State = (f64, f64);

    fn lift(&self, a: &f64) -> EwmaState {
        EwmaState { m: self.c, a: *a, u: 1.0 }
    }
    fn compose(&self, f: &EwmaState, g: &EwmaState) -> EwmaState {
        EwmaState { m: f.m * g.m, a: f.a + f.m * g.a, u: f.u + f.m * g.u }
    }
    fn apply(&self, f: &EwmaState, (x, w): &(f64, f64)) -> (f64, f64) {
        (f.a + f.m * x, f.u + f.m * w)
    }
}

/// The Type II EWMA value carried by a state pair.
pub fn ewma2_value((x, w): &(f64, f64)) -> f64 {
    x / w
}

/// Exponentially weighted moving sum: window fold of `(c, a_i)` gives
/// `(c^n, a_i + c a_{i-1} + … + c^{n-1} a_{i-n+1})`.
pub struct Ewms {
    pub c: f64,
}

impl CompositionRep for Ewms {
    type Elem = f64;
    type Lifted = LinearRecParams;
    type State = f64;

    fn lift(&self, a: &f64) -> LinearRecParams {
        LinearRecParams { m: self.c, a: *a }
    }
    fn compose(&self, f: &LinearRecParams, g: &LinearRecParams) -> LinearRecParams {
        linrec_compose(f, g)
    }
    fn apply(&self, f: &LinearRecParams, x: &f64) -> f64 {
        f.a + f.m * x
    }
}

// ---------------------------------------------------------------------------
// Max-of-sums family
// ---------------------------------------------------------------------------

/// Coefficients of the map `x ↦ max(x + a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxSumState {
    pub a: f64,
    pub b: f64,
}

fn max_sum_compose(f: &MaxSumState, g: &MaxSumState) -> MaxSumState {
    // f newer (outermost): max(max(x + a2, b2) + a1, b1).
    MaxSumState { a: f.a + g.a, b: (g.b + f.a).max(f.b) }
}

/// Maximum suffix sum: `lift(a) = (a, a)`, recurrence
/// `x_i = max(x_{i-1} + a_i, a_i)`.
pub struct MaxOfSum;

impl CompositionRep for MaxOfSum {
    type Elem = f64;
    type Lifted = MaxSumState;
    type State = f64;

    fn lift(&self, a: &f64) -> MaxSumState {
        MaxSumState { a: *a, b: *a }
    }
    fn compose(&self, f: &MaxSumState, g: &MaxSumState) -> MaxSumState {
        max_sum_compose(f, g)
    }
    fn apply(&self, f: &MaxSumState, x: &f64) -> f64 {
        (x + f.a).max(f.b)
    }
}

/// CUSUM change detector: element `(z, ω)` lifts to
/// `x ↦ max(x + z - ω, 0)`.
pub struct Cusum;

impl CompositionRep for Cusum {
    type Elem = (f64, f64);
    type Lifted = MaxSumState;
    type State = f64;

    fn lift(&self, (z, omega): &(f64, f64)) -> MaxSumState {
        MaxSumState { a: z - omega, b: 0.0 }
    }
    fn compose(&self, f: &MaxSumState, g: &MaxSumState) -> MaxSumState {
        max_sum_compose(f, g)
    }
    fn apply(&self, f: &MaxSumState, x: &f64) -> f64 {
        (x + f.a).max(f.b)
    }
}

/// Coefficients of the two-component clamped map used for the maximum
/// contiguous subsequence sum:
/// `(z, x) ↦ (max(z + a, b), max(x, z + c, d))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KadaneState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Kadane-style nonnegative-clamped max subarray sum: fold the lifts and
/// apply to `(0, 0)`; the second state component is the answer.
pub struct MaxContiguousSubsequence;

impl CompositionRep for MaxContiguousSubsequence {
    type Elem = f64;
    type Lifted = KadaneState;
    type State = (f64, f64);

    fn lift(&self, a: &f64) -> KadaneState {
        KadaneState { a: *a, b: 0.0, c: *a, d: 0.0 }
    }
    fn compose(&self, f: &KadaneState, g: &KadaneState) -> KadaneState {
        KadaneState {
            a: f.a + g.a,
            b: (f.a + g.b).max(f.b),
            c: (f.c + g.a).max(g.c),
            d: (f.c + g.b).max(f.d).max(g.d),
        }
    }
    fn apply(&self, f: &KadaneState, (z, x): &(f64, f64)) -> (f64, f64) {
        ((z + f.a).max(f.b), x.max(z + f.c).max(f.d))
    }
}

/// The max contiguous subsequence sum encoded by a folded
/// [`KadaneState`] over a whole window (empty subsequence allowed).
pub fn kadane_value(rep: &MaxContiguousSubsequence, f: &KadaneState) -> f64 {
    rep.apply(f, &(0.0, 0.0)).1
}

// ---------------------------------------------------------------------------
// Segmented scans
// ---------------------------------------------------------------------------

/// Segmented scan over an arbitrary associative base operation: element
/// `(a, c)` restarts the scan when `c` is true. Lift is `(a, ¬c, a)`;
/// the lifted triple `(A, k, z)` encodes `x ↦ A * x if k else z`.
pub struct SegmentedScan<F> {
    pub op: F,
}

impl<F: Fn(&f64, &f64) -> f64> CompositionRep for SegmentedScan<F> {
    type Elem = (f64, bool);
    type Lifted = (f64, bool, f64);
    type State = f64;

    fn lift(&self, (a, c): &(f64, bool)) -> (f64, bool, f64) {
        (*a, !*c, *a)
    }
    fn compose(&self, f: &(f64, bool, f64), g: &(f64, bool, f64)) -> (f64, bool, f64) {
        (
            (self.op)(&f.0, &g.0),
            f.1 && g.1,
            if f.1 { (self.op)(&f.0, &g.2) } else { f.2 },
        )
    }
    fn apply(&self, f: &(f64, bool, f64), x: &f64) -> f64 {
        if f.1 {
            (self.op)(&f.0, x)
        } else {
            f.2
        }
    }
}

/// Additive segmented scan with the default reset semantics.
pub fn rep_segmented_scan() -> SegmentedScan<fn(&f64, &f64) -> f64> {
    SegmentedScan { op: |a, b| a + b }
}

/// Run statistics: length of the current run of positive values,
/// `x_i = x_{i-1} + 1 if a_i > 0 else 0` — an integer-exact segmented
/// scan instance with `lift(a) = (1, a > 0, 0)`.
pub struct RunStatistics;

impl CompositionRep for RunStatistics {
    type Elem = f64;
    type Lifted = (i64, bool, i64);
    type State = i64;

    fn lift(&self, a: &f64) -> (i64, bool, i64) {
        (1, *a > 0.0, 0)
    }
    fn compose(&self, f: &(i64, bool, i64), g: &(i64, bool, i64)) -> (i64, bool, i64) {
        (f.0 + g.0, f.1 && g.1, if f.1 { f.0 + g.2 } else { f.2 })
    }
    fn apply(&self, f: &(i64, bool, i64), x: &i64) -> i64 {
        if f.1 {
            f.0 + x
        } else {
            f.2
        }
    }
}

// ---------------------------------------------------------------------------
// Continued fractions
// ---------------------------------------------------------------------------

/// A 2×2 matrix of doubles, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    /// Largest column absolute sum.
    pub fn one_norm(&self) -> f64 {
        let m = &self.0;
        (m[0][0].abs() + m[1][0].abs()).max(m[0][1].abs() + m[1][1].abs())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|v| v * s)))
    }
}

/// Normalization applied after each continued-fraction matrix product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfracNorm {
    /// Plain matrix product (entries may overflow for long windows).
    None,
    /// `A * B = AB / ‖AB‖_Frob` — associative.
    Frobenius,
    /// `A * B = AB / ‖AB‖₁` — associative.
    OneNorm,
    /// `A * B = AB / ‖A‖₁` — not associative, but a valid companion
    /// operation: applied outputs are unchanged by the normalization.
    LeftNorm,
}

/// Continued fractions: `lift(a) = [[a,1],[1,0]]`; the window value is the
/// convergent `M₁₁ / M₂₁` (the `x = ∞` case; a full `apply` over finite
/// states is deliberately not provided).
pub struct ContinuedFraction {
    pub norm: CfracNorm,
}

impl CompositionRep for ContinuedFraction {
    type Elem = f64;
    type Lifted = Mat2;
    type State = f64;

    fn lift(&self, a: &f64) -> Mat2 {
        Mat2([[*a, 1.0], [1.0, 0.0]])
    }
    fn compose(&self, f: &Mat2, g: &Mat2) -> Mat2 {
        let prod = f.mul(g);
        match self.norm {
            CfracNorm::None => prod,
            CfracNorm::Frobenius => prod.scale(1.0 / prod.frobenius_norm()),
            CfracNorm::OneNorm => prod.scale(1.0 / prod.one_norm()),
            CfracNorm::LeftNorm => prod.scale(1.0 / f.one_norm()),
        }
    }
    fn apply(&self, f: &Mat2, _x: &f64) -> f64 {
        cfrac_value(f)
    }
    fn claims_associative(&self) -> bool {
        self.norm != CfracNorm::LeftNorm
    }
}

/// The convergent encoded by a folded continued-fraction matrix.
pub fn cfrac_value(m: &Mat2) -> f64 {
    m.0[0][0] / m.0[1][0]
}

// ---------------------------------------------------------------------------
// Representation constructors
// ---------------------------------------------------------------------------

pub fn rep_linear_recurrence() -> LinRec {
    LinRec
}
pub fn rep_sum_missing() -> SumMissing {
    SumMissing
}
pub fn rep_sum_scale_missing() -> SumScaleMissing {
    SumScaleMissing
}
pub fn rep_ewma_type1(c: f64) -> Ewma1 {
    Ewma1 { c }
}
pub fn rep_ewma_type2(c: f64) -> Ewma2 {
    Ewma2 { c }
}
pub fn rep_ewms(c: f64) -> Ewms {
    Ewms { c }
}
pub fn rep_max_of_sum() -> MaxOfSum {
    MaxOfSum
}
pub fn rep_max_contiguous_subsequence() -> MaxContiguousSubsequence {
    MaxContiguousSubsequence
}
pub fn rep_cusum() -> Cusum {
    Cusum
}
pub fn rep_run_statistics() -> RunStatistics {
    RunStatistics
}
pub fn rep_continued_fraction(norm: CfracNorm) -> ContinuedFraction {
    ContinuedFraction { norm }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// Stable names addressing every operator and representation (used by the
/// command-line tool).
pub const REGISTRY: &[&str] = &[
    "sum",
    "product",
    "concat",
    "union",
    "intersection",
    "coalesce",
    "max",
    "min",
    "argmax.earliest",
    "argmax.latest",
    "argmax.set",
    "maxcount",
    "linrec",
    "summissing",
    "sumscalemissing",
    "ewma1",
    "ewma2",
    "ewms",
    "maxofsum",
    "kadane",
    "cusum",
    "segscan",
    "runstats",
    "cfrac.none",
    "cfrac.frobenius",
    "cfrac.one_norm",
    "cfrac.left_norm",
];

/// A representation's compose as a [`WindowOp`] over its lifted domain,
/// for feeding representations to the sequential window algorithms
/// ("pretend the compose is associative, even when it is not").
pub fn compose_op<R: CompositionRep>(rep: &R) -> FnOp<impl FnMut(&R::Lifted, &R::Lifted) -> R::Lifted + '_> {
    op_fn(move |f: &R::Lifted, g: &R::Lifted| rep.compose(f, g))
}

/// The meta-algorithm for windowed recurrences: window the composed
/// functions with any associative-window algorithm, then apply each to the
/// shifted incoming state (`None` when the state index falls before the
/// data). Here the windowing is the naive fold; the sequential crate's
/// algorithms accept [`compose_op`] directly.
pub fn naive_windowed_recurrence<R: CompositionRep>(
    rep: &R,
    data: &[R::Elem],
    x: &[R::State],
    n: usize,
) -> Vec<R::State>
where
    R::State: Default,
{
    assert!(n >= 1);
    assert_eq!(data.len(), x.len());
    (0..data.len())
        .map(|i| {
            let lo = (i + 1).saturating_sub(n);
            let mut f = rep.lift(&data[lo]);
            for t in lo + 1..=i {
                f = rep.compose(&rep.lift(&data[t]), &f);
            }
            let state = if i >= n { x[i - n].clone() } else { R::State::default() };
            rep.apply(&f, &state)
        })
        .collect()
}
