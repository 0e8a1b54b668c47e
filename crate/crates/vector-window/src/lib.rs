//! Vector sliding-window *-products and windowed recurrences as powers in
//! the semidirect product `Z+ ⋉ A`.
//!
//! A whole data vector is treated as one payload `a`; the shift operators
//! `L_i` move it `i` places toward older positions. Raising `⟨1, a⟩` to the
//! `n`-th power under `⟨i,a⟩ * ⟨j,b⟩ = ⟨i+j, a * L_i(b)⟩` yields
//! `a * (L_1 a * (L_2 a * … ))`, whose component `j` is the length-`n`
//! window product ending at position `j` — independent of how the
//! exponentiation brackets its products. Any addition-chain method from the
//! exponentiation crate therefore computes all windows in `count(method, n)`
//! vector operations.

use algebra_core::{SemidirectElement, SemidirectOp, WindowOp};
use exponentiation::exponentiate;
pub use exponentiation::{ExpoError, Method};

// ---------------------------------------------------------------------------
// Core entry points
// ---------------------------------------------------------------------------

/// Window *-product of all positions at once: the payload of `⟨1,a⟩^n`.
///
/// `shift` must satisfy `shift(i, shift(j, a)) == shift(i+j, a)` and
/// distribute over `compose`; `compose` must be associative for direct
/// *-products (see [`window_apply`] for the semi-associative case).
pub fn window_compose<P: Clone>(
    compose: &mut impl WindowOp<P>,
    shift: impl Fn(usize, &P) -> P,
    a: &P,
    n: usize,
    method: Method,
    flip: bool,
) -> Result<P, ExpoError> {
    let mut op = SemidirectOp { compose, shift };
    let power = exponentiate(&mut op, &SemidirectElement::new(1, a.clone()), n as u64, method, flip)?;
    debug_assert_eq!(power.exponent, n);
    Ok(power.payload)
}

/// Windowed recurrence: `a • (L_1 a • (… • (L_{n-1} a • L_{X,n} x)…))` for
/// every position, computed as `apply(window_compose(lift(a), n), shiftx(n, x))`.
///
/// `compose` need not be associative; semi-associativity of the
/// `(lift, compose, apply)` triple suffices.
#[allow(clippy::too_many_arguments)]
pub fn window_apply<A, P: Clone, X>(
    compose: &mut impl WindowOp<P>,
    shift: impl Fn(usize, &P) -> P,
    lift: impl Fn(&A) -> P,
    apply: impl Fn(&P, &X) -> X,
    shiftx: impl Fn(usize, &X) -> X,
    a: &A,
    x: &X,
    n: usize,
    method: Method,
    flip: bool,
) -> Result<X, ExpoError> {
    let f = window_compose(compose, &shift, &lift(a), n, method, flip)?;
    Ok(apply(&f, &shiftx(n, x)))
}

/// Window *-products for several lengths from one shared computation.
///
/// Lengths that are `base * 2^j` multiples of the smallest length share the
/// base exponentiation and a single squaring chain (one vector operation
/// per doubling); other lengths fall back to independent exponentiations.
pub fn multi_window_compose<P: Clone>(
    compose: &mut impl WindowOp<P>,
    shift: impl Fn(usize, &P) -> P,
    a: &P,
    lengths: &[usize],
    method: Method,
    flip: bool,
) -> Result<Vec<P>, ExpoError> {
    assert!(!lengths.is_empty() && lengths.iter().all(|&n| n >= 1));
    let base = *lengths.iter().min().unwrap();
    let family_j = |n: usize| -> Option<u32> {
        if n % base == 0 && (n / base).is_power_of_two() {
            Some((n / base).trailing_zeros())
        } else {
            None
        }
    };
    let mut op = SemidirectOp { compose, shift };
    let one = SemidirectElement::new(1, a.clone());
    // Shared squaring chain over the power-of-two family.
    let max_j = lengths.iter().filter_map(|&n| family_j(n)).max().unwrap_or(0);
    let mut powers = vec![exponentiate(&mut op, &one, base as u64, method, flip)?];
    for j in 1..=max_j {
        let prev = powers[j as usize - 1].clone();
        powers.push(op.combine(&prev, &prev));
    }
    lengths
        .iter()
        .map(|&n| match family_j(n) {
            Some(j) => Ok(powers[j as usize].payload.clone()),
            None => Ok(exponentiate(&mut op, &one, n as u64, method, flip)?.payload),
        })
        .collect()
}

/// Prefix *-scan: a sliding window longer than the data aggregates every
/// prefix. Uses binary exponentiation with `n = 2^⌈log2 N⌉`, which on the
/// fixed-length scheme reproduces the Kogge–Stone pattern in
/// `⌈log2 N⌉` vector operations.
pub fn prefix_scan<P: Clone>(
    compose: &mut impl WindowOp<P>,
    shift: impl Fn(usize, &P) -> P,
    a: &P,
    big_n: usize,
) -> Result<P, ExpoError> {
    assert!(big_n >= 1);
    window_compose(compose, shift, a, big_n.next_power_of_two(), Method::Binary, false)
}

/// Length-`n` windows and a full prefix scan from one chain: raise `⟨1,a⟩`
/// to `n` with `method`, then square until the exponent reaches at least
/// `N`. Total semidirect operations ≤ `count(method, n) + ⌈log2(N/n)⌉`.
pub fn joint_prefix_and_window<P: Clone>(
    compose: &mut impl WindowOp<P>,
    shift: impl Fn(usize, &P) -> P,
    a: &P,
    n: usize,
    big_n: usize,
    method: Method,
) -> Result<(P, P), ExpoError> {
    assert!(n >= 1 && n <= big_n);
    let mut op = SemidirectOp { compose, shift };
    let window = exponentiate(&mut op, &SemidirectElement::new(1, a.clone()), n as u64, method, false)?;
    let mut prefix = window.clone();
    while prefix.exponent < big_n {
        prefix = op.combine(&prefix, &prefix);
    }
    Ok((window.payload, prefix.payload))
}

// ---------------------------------------------------------------------------
// Fixed-length scheme
// ---------------------------------------------------------------------------

/// One component of a fixed-length payload: either an element or the
/// adjoined identity used for left padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell<T> {
    Id,
    Val(T),
}

impl<T> Cell<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Cell::Id => None,
            Cell::Val(v) => Some(v),
        }
    }
}

/// Wraps a data vector as a fixed-length payload.
pub fn fixed_lift<T: Clone>(data: &[T]) -> Vec<Cell<T>> {
    data.iter().cloned().map(Cell::Val).collect()
}

/// `L_i`: component `j` becomes `a_{j-i}`, identity-padded on the left.
pub fn fixed_shift<T: Clone>(i: usize, a: &[Cell<T>]) -> Vec<Cell<T>> {
    let keep = a.len().saturating_sub(i);
    let mut out = Vec::with_capacity(a.len());
    out.resize_with(a.len() - keep, || Cell::Id);
    out.extend(a[..keep].iter().cloned());
    out
}

/// Unwraps a fully populated payload (every component a value).
pub fn fixed_values<T: Clone>(payload: &[Cell<T>]) -> Vec<T> {
    payload
        .iter()
        .map(|c| c.value().expect("payload component is identity-padded").clone())
        .collect()
}

/// Elementwise compose over fixed-length payloads, treating [`Cell::Id`]
/// as a two-sided identity.
pub struct FixedLenOp<O>(pub O);

impl<T: Clone, O: WindowOp<T>> WindowOp<Vec<Cell<T>>> for FixedLenOp<O> {
    fn combine(&mut self, u: &Vec<Cell<T>>, v: &Vec<Cell<T>>) -> Vec<Cell<T>> {
        assert_eq!(u.len(), v.len(), "fixed-length payloads must agree");
        u.iter()
            .zip(v)
            .map(|(cu, cv)| match (cu, cv) {
                (Cell::Id, c) => c.clone(),
                (c, Cell::Id) => c.clone(),
                (Cell::Val(x), Cell::Val(y)) => Cell::Val(self.0.combine(x, y)),
            })
            .collect()
    }
    fn mark(&mut self) {
        self.0.mark();
    }
}

// ---------------------------------------------------------------------------
// Variable-length scheme
// ---------------------------------------------------------------------------

/// `L_i`: keep the first `p - i` components (or none).
pub fn var_shift<T: Clone>(i: usize, u: &[T]) -> Vec<T> {
    u[..u.len().saturating_sub(i)].to_vec()
}

/// Tail-aligned compose over variable-length payloads: the last
/// `min(p, q)` components combine pairwise (first argument on the left),
/// the longer sequence's head passes through. No identity element is
/// needed, so semigroup-only operations work; both length orderings are
/// handled, which makes `flip = true` legal.
pub struct VarLenOp<O>(pub O);

impl<T: Clone, O: WindowOp<T>> WindowOp<Vec<T>> for VarLenOp<O> {
    fn combine(&mut self, u: &Vec<T>, v: &Vec<T>) -> Vec<T> {
        let (p, q) = (u.len(), v.len());
        let overlap = p.min(q);
        let mut out: Vec<T> = if p >= q {
            u[..p - q].to_vec()
        } else {
            v[..q - p].to_vec()
        };
        for t in 0..overlap {
            out.push(self.0.combine(&u[p - overlap + t], &v[q - overlap + t]));
        }
        out
    }
    fn mark(&mut self) {
        self.0.mark();
    }
}

// ---------------------------------------------------------------------------
// Linear-recurrence wrappers
// ---------------------------------------------------------------------------

fn linrec_cells(m: &[f64], a: &[f64]) -> Vec<Cell<(f64, f64)>> {
    assert_eq!(m.len(), a.len());
    m.iter().zip(a).map(|(&m, &a)| Cell::Val((m, a))).collect()
}

fn linrec_compose(f: &(f64, f64), g: &(f64, f64)) -> (f64, f64) {
    // f is the newer (outermost) factor: (m1 m2, a1 + m1 a2).
    (f.0 * g.0, f.1 + f.0 * g.1)
}

/// Windowed linear recurrence `y_i = a_i + m_i(a_{i-1} + m_{i-1}(…))` with
/// exactly `n` coefficient pairs applied to the incoming state `x_{i-n}`
/// (dropped for `i <= n`).
pub fn window_linear_recurrence(
    m: &[f64],
    a: &[f64],
    x: &[f64],
    n: usize,
    method: Method,
) -> Result<Vec<f64>, ExpoError> {
    assert!(n >= 1);
    assert_eq!(m.len(), a.len());
    assert_eq!(m.len(), x.len());
    let mut compose = FixedLenOp(algebra_core::op_fn(linrec_compose));
    let shift = |i: usize, p: &Vec<Cell<(f64, f64)>>| fixed_shift(i, p);
    let f = window_compose(&mut compose, shift, &linrec_cells(m, a), n, method, false)?;
    Ok(f.iter()
        .enumerate()
        .map(|(j, cell)| {
            let (fm, fa) = cell.value().expect("window covers every position");
            if j >= n {
                fa + fm * x[j - n]
            } else {
                *fa
            }
        })
        .collect())
}

/// Moving sums with scale changes: `y_i = a_i + m_i a_{i-1} + … +
/// (m_i ⋯ m_{i-n+2}) a_{i-n+1}` — `n` summands, obtained from the
/// recurrence wrapper with exponent `n - 1` and the data itself as state.
pub fn window_sum_with_scale_changes(
    m: &[f64],
    a: &[f64],
    n: usize,
    method: Method,
) -> Result<Vec<f64>, ExpoError> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(a.to_vec());
    }
    window_linear_recurrence(m, a, a, n - 1, method)
}
