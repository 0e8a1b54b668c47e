//! Exponentiation of a single element under an arbitrary binary operation:
//! plain binary (square-and-multiply), a two-lane parallel variant with an
//! explicit multiplication schedule, Brauer's 2^k-ary method, Thurber's
//! sliding-window method, and exhaustive search for optimal addition chains.
//!
//! Every routine takes a `flip` flag selecting the accumulation direction:
//! with `flip == false` the accumulator is the left argument
//! (`op(acc, new)`); with `flip == true` the arguments are swapped at every
//! combining site, so `exponentiate` with `flip == true` is by construction
//! identical to `exponentiate` over the opposite operation with
//! `flip == false`.

use algebra_core::WindowOp;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpoError {
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("window width k must be at least 1")]
    ZeroWidth,
    #[error("optimal chain search supports exponents up to {max}, got {n}")]
    ExponentTooLarge { n: u64, max: u64 },
    #[error("invalid addition chain: {0}")]
    InvalidChain(String),
    #[error("invalid multiplication schedule: {0}")]
    InvalidSchedule(String),
}

/// Chain-construction strategies. `k: None` means "choose the best width
/// for this exponent".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Binary,
    ParallelBinary,
    Brauer { k: Option<u32> },
    Thurber { k: Option<u32> },
    Optimal,
}

fn bitlen(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Accumulator-combining respecting the direction flag: the first argument
/// is the accumulated (older/larger) element.
fn cf<T>(op: &mut impl WindowOp<T>, flip: bool, acc: &T, new: &T) -> T {
    if flip {
        op.combine(new, acc)
    } else {
        op.combine(acc, new)
    }
}

// ---------------------------------------------------------------------------
// Binary
// ---------------------------------------------------------------------------

/// Square-and-multiply, scanning the exponent least-significant-bit first.
pub fn binary_exponentiate<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    n: u64,
    flip: bool,
) -> Result<T, ExpoError> {
    if n == 0 {
        return Err(ExpoError::ZeroExponent);
    }
    let mut z = x.clone();
    let mut q: Option<T> = None;
    let mut m = n;
    loop {
        if m & 1 == 1 {
            q = Some(match q {
                None => z.clone(),
                Some(q) => cf(op, flip, &q, &z),
            });
        }
        m >>= 1;
        if m == 0 {
            return Ok(q.expect("odd bit seen before exhaustion"));
        }
        z = op.combine(&z, &z);
    }
}

/// Exact multiplication count of the binary method:
/// `floor(log2 n) + popcount(n) - 1`.
pub fn binary_count(n: u64) -> u64 {
    assert!(n >= 1);
    (bitlen(n) as u64 - 1) + (n.count_ones() as u64 - 1)
}

// ---------------------------------------------------------------------------
// Parallel binary
// ---------------------------------------------------------------------------

/// A named intermediate value in a parallel schedule. `X` is the input;
/// `Q(v)` and `Z(v)` are successive versions of the accumulator and the
/// running square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    X,
    Q(u32),
    Z(u32),
}

/// One multiplication: `target = left * right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mult {
    pub target: Slot,
    pub left: Slot,
    pub right: Slot,
}

/// A schedule of multiplication steps; all multiplications within one step
/// are independent and may run in parallel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelSchedule {
    pub steps: Vec<Vec<Mult>>,
    pub result: Slot,
}

impl ParallelSchedule {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn total_mults(&self) -> u64 {
        self.steps.iter().map(|s| s.len() as u64).sum()
    }

    /// Checks that every operand is computed strictly before use, that no
    /// slot is assigned twice, and that the result slot computes exactly
    /// the exponent `n`.
    pub fn validate(&self, n: u64) -> Result<(), ExpoError> {
        let mut exp: HashMap<Slot, u64> = HashMap::new();
        exp.insert(Slot::X, 1);
        for step in &self.steps {
            let mut produced = Vec::new();
            for m in step {
                let l = *exp.get(&m.left).ok_or_else(|| {
                    ExpoError::InvalidSchedule(format!("{:?} uses unavailable {:?}", m.target, m.left))
                })?;
                let r = *exp.get(&m.right).ok_or_else(|| {
                    ExpoError::InvalidSchedule(format!("{:?} uses unavailable {:?}", m.target, m.right))
                })?;
                if exp.contains_key(&m.target) || produced.iter().any(|(t, _)| *t == m.target) {
                    return Err(ExpoError::InvalidSchedule(format!(
                        "{:?} assigned more than once",
                        m.target
                    )));
                }
                produced.push((m.target, l + r));
            }
            exp.extend(produced);
        }
        match exp.get(&self.result) {
            Some(&e) if e == n => Ok(()),
            Some(&e) => Err(ExpoError::InvalidSchedule(format!(
                "result computes exponent {e}, expected {n}"
            ))),
            None => Err(ExpoError::InvalidSchedule("result slot never computed".into())),
        }
    }
}

/// Binary exponentiation with the accumulator multiplication and the next
/// squaring issued in the same step whenever both are needed, giving depth
/// `ceil(log2 n)` for `n >= 2`. The copy initialising the accumulator is
/// free and does not appear in the schedule.
pub fn parallel_binary_schedule(n: u64, flip: bool) -> Result<ParallelSchedule, ExpoError> {
    if n == 0 {
        return Err(ExpoError::ZeroExponent);
    }
    let mut steps: Vec<Vec<Mult>> = Vec::new();
    let mut zslot = Slot::X;
    let mut zver = 0u32;
    let mut qslot: Option<Slot> = None;
    let mut qver = 0u32;
    let qmult = |t: Slot, q: Slot, z: Slot| {
        if flip {
            Mult { target: t, left: z, right: q }
        } else {
            Mult { target: t, left: q, right: z }
        }
    };
    let mut m = n;
    loop {
        let odd = m & 1 == 1;
        let next = m >> 1;
        match qslot {
            Some(q) if odd && next != 0 => {
                qver += 1;
                let nq = Slot::Q(qver);
                let nz = Slot::Z(zver + 1);
                steps.push(vec![qmult(nq, q, zslot), Mult { target: nz, left: zslot, right: zslot }]);
                qslot = Some(nq);
                zver += 1;
                zslot = nz;
            }
            Some(q) if odd => {
                qver += 1;
                let nq = Slot::Q(qver);
                steps.push(vec![qmult(nq, q, zslot)]);
                qslot = Some(nq);
                break;
            }
            _ => {
                if odd {
                    qslot = Some(zslot);
                }
                if next == 0 {
                    break;
                }
                let nz = Slot::Z(zver + 1);
                steps.push(vec![Mult { target: nz, left: zslot, right: zslot }]);
                zver += 1;
                zslot = nz;
            }
        }
        m = next;
    }
    Ok(ParallelSchedule {
        steps,
        result: qslot.expect("at least one odd bit"),
    })
}

/// Executes a multiplication schedule literally (multiplications within a
/// step evaluated against the values available before the step).
pub fn execute_schedule<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    schedule: &ParallelSchedule,
) -> Result<T, ExpoError> {
    let mut vals: HashMap<Slot, T> = HashMap::new();
    vals.insert(Slot::X, x.clone());
    for step in &schedule.steps {
        let mut produced = Vec::new();
        for m in step {
            let l = vals.get(&m.left).ok_or_else(|| {
                ExpoError::InvalidSchedule(format!("{:?} not available", m.left))
            })?;
            let r = vals.get(&m.right).ok_or_else(|| {
                ExpoError::InvalidSchedule(format!("{:?} not available", m.right))
            })?;
            let (l, r) = (l.clone(), r.clone());
            produced.push((m.target, op.combine(&l, &r)));
        }
        vals.extend(produced);
    }
    vals.remove(&schedule.result)
        .ok_or_else(|| ExpoError::InvalidSchedule("result slot never computed".into()))
}

pub fn parallel_binary_exponentiate<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    n: u64,
    flip: bool,
) -> Result<T, ExpoError> {
    let schedule = parallel_binary_schedule(n, flip)?;
    execute_schedule(op, x, &schedule)
}

// ---------------------------------------------------------------------------
// Brauer's 2^k-ary method
// ---------------------------------------------------------------------------

/// Digits of `n` in base `2^k`, least significant first. `n >= 1`.
pub fn digits_base_2k(n: u64, k: u32) -> Vec<u64> {
    assert!(n >= 1 && (1..=63).contains(&k));
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m & ((1u64 << k) - 1));
        m >>= k;
    }
    digits
}

/// An element tagged with the exponent it represents.
#[derive(Clone)]
struct Pow<T> {
    exp: u128,
    val: T,
}

/// Precomputed odd powers x, x^3, ..., x^(2*npre-1), plus x^2 when more
/// than one entry is needed. `pre[i]` holds x^(2i+1).
struct OddPowers<T> {
    pre: Vec<Pow<T>>,
    x_squared: Option<Pow<T>>,
}

impl<T: Clone> OddPowers<T> {
    /// Costs `npre` multiplications when `npre > 1`, zero otherwise.
    fn build(op: &mut impl WindowOp<T>, flip: bool, x: &T, npre: usize) -> Self {
        let mut pre = vec![Pow { exp: 1, val: x.clone() }];
        let mut x_squared = None;
        if npre > 1 {
            let x2 = Pow { exp: 2, val: op.combine(x, x) };
            for i in 1..npre {
                let prev = pre[i - 1].clone();
                pre.push(Pow { exp: prev.exp + 2, val: cf(op, flip, &prev.val, &x2.val) });
            }
            x_squared = Some(x2);
        }
        OddPowers { pre, x_squared }
    }

    fn odd(&self, value: u64) -> &Pow<T> {
        &self.pre[(value >> 1) as usize]
    }

    fn max_odd(&self) -> u64 {
        2 * self.pre.len() as u64 - 1
    }
}

fn square<T>(op: &mut impl WindowOp<T>, z: Pow<T>) -> Pow<T> {
    Pow { exp: z.exp * 2, val: op.combine(&z.val, &z.val) }
}

/// `j` squarings, but when the base is x itself and x^2 is already in the
/// precomputation table, the first squaring is a free table lookup.
fn repeated_square_no_duplicates<T: Clone>(
    op: &mut impl WindowOp<T>,
    powers: &OddPowers<T>,
    mut z: Pow<T>,
    mut j: u32,
) -> Pow<T> {
    if z.exp == 1 && j > 0 {
        if let Some(x2) = &powers.x_squared {
            z = x2.clone();
            j -= 1;
        }
    }
    for _ in 0..j {
        z = square(op, z);
    }
    z
}

/// Brauer's method: scan base-2^k digits most significant first, handling
/// each digit `b = c * 2^j` (c odd) by `k - j` squarings, one multiplication
/// with the precomputed x^c, and `j` more squarings. When the combined
/// exponent after a digit is itself a small odd number the whole prefix is
/// replaced by a free table lookup.
pub fn brauer_exponentiate<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    n: u64,
    k: u32,
    flip: bool,
) -> Result<T, ExpoError> {
    if n == 0 {
        return Err(ExpoError::ZeroExponent);
    }
    if k == 0 {
        return Err(ExpoError::ZeroWidth);
    }
    let digits = digits_base_2k(n, k);
    // Precompute only up to the largest odd digit part: digit d = c * 2^j
    // with c odd contributes c, not d.
    let max_b = digits.iter().map(|&d| d >> d.trailing_zeros().min(63)).max().unwrap();
    let npre = (((max_b + 1) >> 1) as usize).max(1);
    let powers = OddPowers::build(op, flip, x, npre);

    let mut iter = digits.iter().rev();
    let lead = *iter.next().unwrap();
    let j0 = lead.trailing_zeros();
    let c0 = lead >> j0;
    let mut z = repeated_square_no_duplicates(op, &powers, powers.odd(c0).clone(), j0);
    for &b in iter {
        if b == 0 {
            z = repeated_square_no_duplicates(op, &powers, z, k);
            continue;
        }
        let j = b.trailing_zeros();
        let c = b >> j;
        // Exponent the window would reach before the trailing squarings; if
        // it is itself a precomputed odd power, look it up for free.
        let w = z.exp << (k - j) | c as u128;
        if w <= powers.max_odd() as u128 {
            z = Pow { exp: w, val: powers.odd(w as u64).val.clone() };
        } else {
            z = repeated_square_no_duplicates(op, &powers, z, k - j);
            let pc = powers.odd(c).clone();
            z = Pow { exp: z.exp + pc.exp, val: cf(op, flip, &z.val, &pc.val) };
        }
        for _ in 0..j {
            z = square(op, z);
        }
    }
    debug_assert_eq!(z.exp, n as u128);
    Ok(z.val)
}

/// Exact multiplication count of Brauer's method: an analytic walk over the
/// digits mirroring `brauer_exponentiate` without touching values.
pub fn brauer_count(n: u64, k: u32) -> u64 {
    assert!(n >= 1 && k >= 1);
    let digits = digits_base_2k(n, k);
    let max_b = digits.iter().map(|&d| d >> d.trailing_zeros().min(63)).max().unwrap();
    let npre = ((max_b + 1) >> 1).max(1);
    let max_odd = 2 * npre - 1;
    let mut ops = if npre > 1 { npre } else { 0 };
    // Squarings with the free-x^2 shortcut applied.
    let rsnd = |exp: u128, j: u32| -> (u128, u64) {
        let dedup = npre > 1 && exp == 1 && j > 0;
        (exp << j, j as u64 - u64::from(dedup))
    };
    let mut iter = digits.iter().rev();
    let lead = *iter.next().unwrap();
    let (j0, c0) = (lead.trailing_zeros(), lead >> lead.trailing_zeros());
    let (mut exp, c) = rsnd(c0 as u128, j0);
    ops += c;
    for &b in iter {
        if b == 0 {
            let (e, c) = rsnd(exp, k);
            exp = e;
            ops += c;
            continue;
        }
        let j = b.trailing_zeros();
        let c = b >> j;
        let w = exp << (k - j) | c as u128;
        if w <= max_odd as u128 {
            exp = w;
        } else {
            let (e, cost) = rsnd(exp, k - j);
            exp = e + c as u128;
            ops += cost + 1;
        }
        exp <<= j;
        ops += j as u64;
    }
    debug_assert_eq!(exp, n as u128);
    ops
}

/// Smallest digit width minimizing the Brauer multiplication count.
pub fn brauer_best_k(n: u64) -> u32 {
    assert!(n >= 1);
    (1..=bitlen(n).max(1))
        .min_by_key(|&k| brauer_count(n, k))
        .unwrap()
}

// ---------------------------------------------------------------------------
// Thurber's sliding-window method
// ---------------------------------------------------------------------------

/// One window of the binary expansion: `value` is the odd number covered by
/// `width` bits, followed by `gap` zero bits before the next window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub width: u32,
    pub value: u64,
    pub gap: u32,
}

/// Splits the binary expansion of `n` (most significant bit first) into
/// windows of at most `k` bits that start and end with a set bit,
/// separated by runs of zeros.
pub fn thurber_windows(n: u64, k: u32) -> Vec<Window> {
    assert!(n >= 1 && k >= 1);
    let mut windows = Vec::new();
    let mut i = bitlen(n) as i64 - 1;
    while i >= 0 {
        // `i` indexes a set bit: raise the window start until it also sits
        // on a set bit, keeping the width at most k.
        let mut start = (i - k as i64 + 1).max(0);
        while (n >> start) & 1 == 0 {
            start += 1;
        }
        let width = (i - start + 1) as u32;
        let value = (n >> start) & ((1u64 << width) - 1);
        let mut gap = 0u32;
        let mut j = start - 1;
        while j >= 0 && (n >> j) & 1 == 0 {
            gap += 1;
            j -= 1;
        }
        windows.push(Window { width, value, gap });
        i = j;
    }
    windows
}

/// Thurber's method: precompute the odd powers up to the largest window
/// value, then process windows most significant first with
/// `width + 1 + gap` multiplications each (the first window is free apart
/// from its gap squarings).
pub fn thurber_exponentiate<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    n: u64,
    k: u32,
    flip: bool,
) -> Result<T, ExpoError> {
    if n == 0 {
        return Err(ExpoError::ZeroExponent);
    }
    if k == 0 {
        return Err(ExpoError::ZeroWidth);
    }
    let windows = thurber_windows(n, k);
    let maxv = windows.iter().map(|w| w.value).max().unwrap();
    let npre = (((maxv + 1) >> 1) as usize).max(1);
    let powers = OddPowers::build(op, flip, x, npre);

    let first = windows[0];
    let mut z = repeated_square_no_duplicates(op, &powers, powers.odd(first.value).clone(), first.gap);
    for w in &windows[1..] {
        for _ in 0..w.width {
            z = square(op, z);
        }
        let pv = powers.odd(w.value).clone();
        z = Pow { exp: z.exp + pv.exp, val: cf(op, flip, &z.val, &pv.val) };
        for _ in 0..w.gap {
            z = square(op, z);
        }
    }
    debug_assert_eq!(z.exp, n as u128);
    Ok(z.val)
}

/// Exact multiplication count of Thurber's method.
pub fn thurber_count(n: u64, k: u32) -> u64 {
    assert!(n >= 1 && k >= 1);
    let windows = thurber_windows(n, k);
    let maxv = windows.iter().map(|w| w.value).max().unwrap();
    let npre = ((maxv + 1) >> 1).max(1);
    let mut ops = if npre > 1 { npre } else { 0 };
    let first = windows[0];
    let dedup = first.value == 1 && first.gap > 0 && npre > 1;
    ops += first.gap as u64 - u64::from(dedup);
    for w in &windows[1..] {
        ops += w.width as u64 + 1 + w.gap as u64;
    }
    ops
}

/// Smallest window width minimizing the Thurber multiplication count. The
/// search is capped using the known first-occurrence thresholds of each
/// width, which does not change the result.
pub fn thurber_best_k(n: u64) -> u32 {
    assert!(n >= 1);
    let k_max = if n < 15 {
        1
    } else if n < 23 {
        2
    } else if n < 151 {
        3
    } else if n < 9_413_609 {
        4
    } else if n < 10_000_000_000 {
        5
    } else {
        bitlen(n)
    };
    (1..=k_max).min_by_key(|&k| thurber_count(n, k)).unwrap()
}

// ---------------------------------------------------------------------------
// Optimal chains
// ---------------------------------------------------------------------------

pub const OPTIMAL_SEARCH_MAX: u64 = 128;

/// Shortest addition chain for `n` by iterative-deepening search over
/// strictly increasing chains (sufficient for optimality: any chain can be
/// sorted and deduplicated). Returns the full chain starting at 1 and
/// ending at `n`.
pub fn optimal_chain_search(n: u64) -> Result<Vec<u64>, ExpoError> {
    if n == 0 {
        return Err(ExpoError::ZeroExponent);
    }
    if n > OPTIMAL_SEARCH_MAX {
        return Err(ExpoError::ExponentTooLarge { n, max: OPTIMAL_SEARCH_MAX });
    }
    fn dfs(chain: &mut Vec<u64>, n: u64, remaining: u32) -> bool {
        let last = *chain.last().unwrap();
        if last == n {
            return true;
        }
        if remaining == 0 || last << remaining < n {
            return false;
        }
        let mut cands: BTreeSet<u64> = BTreeSet::new();
        for &a in chain.iter() {
            for &b in chain.iter() {
                let s = a + b;
                if s > last && s <= n {
                    cands.insert(s);
                }
            }
        }
        for &c in cands.iter().rev() {
            chain.push(c);
            if dfs(chain, n, remaining - 1) {
                return true;
            }
            chain.pop();
        }
        false
    }
    for depth in 0.. {
        let mut chain = vec![1];
        if dfs(&mut chain, n, depth) {
            return Ok(chain);
        }
    }
    unreachable!()
}

/// Multiplication count of the optimal chain (its length minus one).
pub fn optimal_count(n: u64) -> Result<u64, ExpoError> {
    Ok(optimal_chain_search(n)?.len() as u64 - 1)
}

// ---------------------------------------------------------------------------
// Chains as data
// ---------------------------------------------------------------------------

/// Runs a method with a symbolic index-recording operation, returning the
/// multiplications as pairs of indices into the value list (index 0 is the
/// input; multiplication `i` produces index `i + 1`).
pub fn record_chain(method: Method, n: u64) -> Result<Vec<(usize, usize)>, ExpoError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    {
        let mut op = algebra_core::op_fn(|a: &usize, b: &usize| {
            pairs.push((*a, *b));
            pairs.len()
        });
        exponentiate(&mut op, &0usize, n, method, false)?;
    }
    Ok(pairs)
}

/// Replays a recorded chain against a concrete operation, returning every
/// intermediate value (`result.last()` is the final power).
pub fn execute_chain<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    chain: &[(usize, usize)],
) -> Result<Vec<T>, ExpoError> {
    let mut vals = vec![x.clone()];
    for &(i, j) in chain {
        if i >= vals.len() || j >= vals.len() {
            return Err(ExpoError::InvalidChain(format!(
                "pair ({i}, {j}) references an element not yet computed (have {})",
                vals.len()
            )));
        }
        let v = op.combine(&vals[i].clone(), &vals[j].clone());
        vals.push(v);
    }
    Ok(vals)
}

// ---------------------------------------------------------------------------
// Unified dispatch
// ---------------------------------------------------------------------------

pub fn exponentiate<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    n: u64,
    method: Method,
    flip: bool,
) -> Result<T, ExpoError> {
    match method {
        Method::Binary => binary_exponentiate(op, x, n, flip),
        Method::ParallelBinary => parallel_binary_exponentiate(op, x, n, flip),
        Method::Brauer { k } => brauer_exponentiate(op, x, n, k.unwrap_or_else(|| brauer_best_k(n)), flip),
        Method::Thurber { k } => {
            thurber_exponentiate(op, x, n, k.unwrap_or_else(|| thurber_best_k(n)), flip)
        }
        Method::Optimal => {
            if n == 0 {
                return Err(ExpoError::ZeroExponent);
            }
            let chain = optimal_chain_search(n)?;
            // Replay the chain, swapping arguments when flipped.
            let mut vals: Vec<T> = vec![x.clone()];
            let mut have: Vec<u64> = vec![1];
            for w in 1..chain.len() {
                let c = chain[w];
                let (i, j) = find_pair(&have, c)
                    .expect("search yields well-formed chains");
                let v = cf(op, flip, &vals[i].clone(), &vals[j].clone());
                vals.push(v);
                have.push(c);
            }
            Ok(vals.pop().unwrap())
        }
    }
}

fn find_pair(have: &[u64], target: u64) -> Option<(usize, usize)> {
    for i in 0..have.len() {
        for j in i..have.len() {
            if have[i] + have[j] == target {
                return Some((i, j));
            }
        }
    }
    None
}

/// Exact multiplication count of a method for exponent `n`.
pub fn count(method: Method, n: u64) -> Result<u64, ExpoError> {
    if n == 0 {
        return Err(ExpoError::ZeroExponent);
    }
    Ok(match method {
        Method::Binary | Method::ParallelBinary => binary_count(n),
        Method::Brauer { k } => brauer_count(n, k.unwrap_or_else(|| brauer_best_k(n))),
        Method::Thurber { k } => thurber_count(n, k.unwrap_or_else(|| thurber_best_k(n))),
        Method::Optimal => optimal_count(n)?,
    })
}

/// Computes x^(base * 2^j) for each requested `j` by exponentiating to
/// `base` once and squaring up to the largest `j`, sharing all work across
/// the family.
pub fn multi_exponentiate_power2_family<T: Clone>(
    op: &mut impl WindowOp<T>,
    x: &T,
    base: u64,
    squarings: &[u32],
    method: Method,
    flip: bool,
) -> Result<Vec<T>, ExpoError> {
    let z0 = exponentiate(op, x, base, method, flip)?;
    let max_j = squarings.iter().copied().max().unwrap_or(0);
    let mut powers = vec![z0];
    for j in 1..=max_j {
        let prev = powers[j as usize - 1].clone();
        powers.push(op.combine(&prev, &prev));
    }
    Ok(squarings.iter().map(|&j| powers[j as usize].clone()).collect())
}
