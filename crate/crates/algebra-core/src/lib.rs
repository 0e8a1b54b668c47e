//! Algebraic contracts shared by the sliding-window crates.
//!
//! The central abstraction is [`WindowOp`], a binary operation that window
//! algorithms invoke through `combine` and instrument through `mark` (called
//! once per emitted output).  On top of it this crate provides:
//!
//! * selection operators and their bijection with reflexive relations on a
//!   finite carrier ([`FiniteRelation`], [`OpTable`]),
//! * exhaustive finite checkers (associativity, relation properties, the
//!   left-action composition closure),
//! * the semidirect product `Z+ ⋉ A` used by the vector algorithms
//!   ([`SemidirectElement`], [`SemidirectOp`]),
//! * the `(lift, compose, apply)` triple for representing function
//!   composition ([`CompositionRep`]).

use thiserror::Error;

// ---------------------------------------------------------------------------
// Binary operations
// ---------------------------------------------------------------------------

/// A binary operation as consumed by window algorithms.
///
/// `combine` takes `&mut self` so instrumented wrappers can count calls.
/// `mark` is a no-op hook invoked by algorithms after each emitted output;
/// counting wrappers snapshot their totals there.
pub trait WindowOp<T> {
    fn combine(&mut self, a: &T, b: &T) -> T;

    /// Called once per emitted output; default does nothing.
    fn mark(&mut self) {}
}

impl<T, O: WindowOp<T> + ?Sized> WindowOp<T> for &mut O {
    fn combine(&mut self, a: &T, b: &T) -> T {
        (**self).combine(a, b)
    }
    fn mark(&mut self) {
        (**self).mark()
    }
}

/// Adapter turning a closure into a [`WindowOp`].
pub struct FnOp<F>(pub F);

impl<T, F: FnMut(&T, &T) -> T> WindowOp<T> for FnOp<F> {
    fn combine(&mut self, a: &T, b: &T) -> T {
        (self.0)(a, b)
    }
}

/// Convenience constructor for [`FnOp`].
pub fn op_fn<T, F: FnMut(&T, &T) -> T>(f: F) -> FnOp<F> {
    FnOp(f)
}

/// A boxed binary operation with an advisory associativity flag.
///
/// The flag is documentation only: algorithms that require associativity say
/// so in their contracts and never verify it at runtime.
pub struct BinaryOp<'a, T> {
    apply: Box<dyn FnMut(&T, &T) -> T + 'a>,
    pub claims_associative: bool,
}

impl<'a, T> BinaryOp<'a, T> {
    pub fn new(apply: impl FnMut(&T, &T) -> T + 'a, claims_associative: bool) -> Self {
        Self {
            apply: Box::new(apply),
            claims_associative,
        }
    }
}

impl<'a, T> WindowOp<T> for BinaryOp<'a, T> {
    fn combine(&mut self, a: &T, b: &T) -> T {
        (self.apply)(a, b)
    }
}

/// The opposite operation: `opposite(op)(a, b) = op(b, a)`.
pub struct OppositeOp<O>(pub O);

impl<T, O: WindowOp<T>> WindowOp<T> for OppositeOp<O> {
    fn combine(&mut self, a: &T, b: &T) -> T {
        self.0.combine(b, a)
    }
    fn mark(&mut self) {
        self.0.mark()
    }
}

// ---------------------------------------------------------------------------
// Finite relations and selection operators
// ---------------------------------------------------------------------------

/// Maximum carrier size accepted by the exhaustive finite checkers.
///
/// Kept small so exhaustive loops stay cheap; every counter-example of
/// interest lives on a 3-element carrier.
pub const MAX_CARRIER: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier size {0} exceeds the maximum of {MAX_CARRIER}")]
    CarrierTooLarge(usize),
    #[error("operation is not selective: op({x}, {y}) = {z} is neither argument")]
    NotSelective { x: usize, y: usize, z: usize },
}

/// A binary relation on the carrier `{0, 1, …, size-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    size: usize,
    matrix: Vec<bool>, // row-major, size * size
}

impl FiniteRelation {
    /// Builds the relation from a membership predicate.
    pub fn from_fn(size: usize, mut related: impl FnMut(usize, usize) -> bool) -> Result<Self, AlgebraError> {
        if size > MAX_CARRIER {
            return Err(AlgebraError::CarrierTooLarge(size));
        }
        let mut matrix = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                matrix[x * size + y] = related(x, y);
            }
        }
        Ok(Self { size, matrix })
    }

    /// Builds a relation on a 3-element carrier from a 6-bit mask over the
    /// off-diagonal pairs, with the diagonal forced true (reflexive).
    ///
    /// Bit `k` of `mask` controls pair `k` in the order
    /// `(0,1) (0,2) (1,0) (1,2) (2,0) (2,1)`.  The 64 masks enumerate all
    /// reflexive relations on a fixed 3-element set.
    pub fn reflexive3_from_mask(mask: u8) -> Self {
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        let mut matrix = vec![false; 9];
        for d in 0..3 {
            matrix[d * 3 + d] = true;
        }
        for (k, &(x, y)) in PAIRS.iter().enumerate() {
            if mask >> k & 1 == 1 {
                matrix[x * 3 + y] = true;
            }
        }
        Self { size: 3, matrix }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.matrix[x * self.size + y]
    }
}

/// Exhaustively computed properties of a finite relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationProperties {
    pub reflexive: bool,
    pub connected: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

/// Computes reflexivity, connectedness, antisymmetry and transitivity by
/// exhaustive quantification over the carrier.
pub fn check_relation_properties(rel: &FiniteRelation) -> RelationProperties {
    let n = rel.size();
    let reflexive = (0..n).all(|x| rel.related(x, x));
    let connected = (0..n).all(|x| (0..n).all(|y| x == y || rel.related(x, y) || rel.related(y, x)));
    let antisymmetric =
        (0..n).all(|x| (0..n).all(|y| x == y || !(rel.related(x, y) && rel.related(y, x))));
    let transitive = (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| !(rel.related(x, y) && rel.related(y, z)) || rel.related(x, z))
        })
    });
    RelationProperties {
        reflexive,
        connected,
        antisymmetric,
        transitive,
    }
}

/// A binary operation on the carrier `{0, …, size-1}` given by its full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    size: usize,
    table: Vec<usize>, // row-major: table[x * size + y] = x op y
}

impl OpTable {
    pub fn from_fn(size: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self, AlgebraError> {
        if size > MAX_CARRIER {
            return Err(AlgebraError::CarrierTooLarge(size));
        }
        let mut table = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                table[x * size + y] = op(x, y);
            }
        }
        Ok(Self { size, table })
    }

    /// Builds a 3-element operation from its three table rows.
    pub fn from_rows3(rows: [[usize; 3]; 3]) -> Self {
        let mut table = vec![0; 9];
        for x in 0..3 {
            for y in 0..3 {
                table[x * 3 + y] = rows[x][y];
            }
        }
        Self { size: 3, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }
}

/// The selection operator of a relation: `x *_R y = y if x R y else x`.
pub fn selection_op_from_relation(rel: &FiniteRelation) -> OpTable {
    let n = rel.size();
    OpTable::from_fn(n, |x, y| if rel.related(x, y) { y } else { x })
        .expect("relation size already validated")
}

/// The relation of a selection operator: `x R_* y  iff  x * y = y`.
///
/// Errors with [`AlgebraError::NotSelective`] if some product is neither
/// argument.
pub fn relation_from_op(op: &OpTable) -> Result<FiniteRelation, AlgebraError> {
    let n = op.size();
    for x in 0..n {
        for y in 0..n {
            let z = op.apply(x, y);
            if z != x && z != y {
                return Err(AlgebraError::NotSelective { x, y, z });
            }
        }
    }
    FiniteRelation::from_fn(n, |x, y| op.apply(x, y) == y)
}

/// Exhaustive associativity check: `(x*y)*z == x*(y*z)` for all triples.
pub fn check_associative(op: &OpTable) -> bool {
    let n = op.size();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| op.apply(op.apply(x, y), z) == op.apply(x, op.apply(y, z))))
    })
}

/// The composition closure of the left-translation maps `x ↦ act(a, x)`.
///
/// `action[a][x]` is the lookup table of the map for action element `a`.
/// Returns the set of all maps obtainable by composing these, as sorted
/// lookup tables.  The action is semi-associative (admits a companion
/// operation) exactly when this closure equals the set of left translations
/// of some operation containing it; on finite carriers, the closure size is
/// the decisive datum used by the tests.
pub fn left_action_closure(action: &[Vec<usize>]) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;
    let mut closure: BTreeSet<Vec<usize>> = action.iter().cloned().collect();
    loop {
        let mut fresh = Vec::new();
        for f in &closure {
            for g in &closure {
                // f after g
                let composed: Vec<usize> = (0..g.len()).map(|x| f[g[x]]).collect();
                if !closure.contains(&composed) {
                    fresh.push(composed);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        closure.extend(fresh);
    }
    closure.into_iter().collect()
}

/// The left translations of a finite operation: row `a` maps `x ↦ a op x`.
pub fn left_translations(op: &OpTable) -> Vec<Vec<usize>> {
    (0..op.size())
        .map(|a| (0..op.size()).map(|x| op.apply(a, x)).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Semidirect product Z+ ⋉ A
// ---------------------------------------------------------------------------

/// An element `⟨i, a⟩` of the semidirect product `Z+ ⋉ A`.
///
/// The first component is a strictly positive exponent index; the second is
/// the payload acted on by the shift operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SemidirectElement<P> {
    pub exponent: usize,
    pub payload: P,
}

impl<P> SemidirectElement<P> {
    pub fn new(exponent: usize, payload: P) -> Self {
        assert!(exponent >= 1, "semidirect exponent must be positive");
        Self { exponent, payload }
    }
}

/// The semidirect product operation
/// `⟨i, a⟩ * ⟨j, b⟩ = ⟨i + j, compose(a, shift(i, b))⟩`.
///
/// `compose` is a [`WindowOp`] so that an instrumented wrapper counts exactly
/// one compose call per semidirect product.
pub struct SemidirectOp<O, S> {
    pub compose: O,
    pub shift: S,
}

impl<P, O, S> WindowOp<SemidirectElement<P>> for SemidirectOp<O, S>
where
    O: WindowOp<P>,
    S: Fn(usize, &P) -> P,
{
    fn combine(&mut self, u: &SemidirectElement<P>, v: &SemidirectElement<P>) -> SemidirectElement<P> {
        let shifted = (self.shift)(u.exponent, &v.payload);
        SemidirectElement {
            exponent: u.exponent + v.exponent,
            payload: self.compose.combine(&u.payload, &shifted),
        }
    }
    fn mark(&mut self) {
        self.compose.mark()
    }
}

/// One semidirect product step as a free function (definition unrolled).
pub fn semidirect_op<P>(
    compose: &mut impl WindowOp<P>,
    shift: &impl Fn(usize, &P) -> P,
    u: &SemidirectElement<P>,
    v: &SemidirectElement<P>,
) -> SemidirectElement<P> {
    let shifted = shift(u.exponent, &v.payload);
    SemidirectElement {
        exponent: u.exponent + v.exponent,
        payload: compose.combine(&u.payload, &shifted),
    }
}

// ---------------------------------------------------------------------------
// Representations of function composition
// ---------------------------------------------------------------------------

/// A `(lift, compose, apply)` triple representing function composition.
///
/// Contract (checked by property tests, not at runtime):
///
/// * `apply(lift(a), x) == act(a, x)` — lifting is faithful;
/// * `apply(f, apply(g, x)) == apply(compose(f, g), x)` — semi-associativity.
///
/// `compose(f, g)` composes with `f` outermost: `f` is the *newer* element in
/// window order (applied last).
pub trait CompositionRep {
    type Elem: Clone;
    type Lifted: Clone;
    type State: Clone;

    fn lift(&self, a: &Self::Elem) -> Self::Lifted;
    fn compose(&self, f: &Self::Lifted, g: &Self::Lifted) -> Self::Lifted;
    fn apply(&self, f: &Self::Lifted, x: &Self::State) -> Self::State;

    /// Advisory: whether `compose` is associative (never trusted blindly).
    fn claims_associative(&self) -> bool {
        true
    }
}

/// Default tolerance for structural equality of float-valued lifted payloads.
pub const FLOAT_EQ_TOLERANCE: f64 = 1e-9;

/// Approximate equality with relative tolerance, treating NaN == NaN as true
/// so that undefined payloads compare structurally.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    if a == b || (a.is_nan() && b.is_nan()) {
        return true;
    }
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= tol * scale
}
