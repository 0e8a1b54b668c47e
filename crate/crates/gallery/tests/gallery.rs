use algebra_core::{approx_eq, CompositionRep, WindowOp, FLOAT_EQ_TOLERANCE};
use gallery::*;
use proptest::prelude::*;
use sequential::{naive_window, two_stacks, TwoStacksVariant};
use std::collections::BTreeSet;

/// Deterministic pseudo-random doubles in [-bound, bound].
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493))
    }
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }
    fn next_f64(&mut self, bound: f64) -> f64 {
        (self.next_u64() as f64 / (1u64 << 53) as f64 * 2.0 - 1.0) * bound
    }
    fn next_usize(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

// ---------------------------------------------------------------------------
// Plain operators
// ---------------------------------------------------------------------------

#[test]
fn basic_operator_examples() {
    assert_eq!(op_sum().combine(&2.0, &3.0), 5.0);
    assert_eq!(op_product().combine(&2.0, &3.0), 6.0);
    assert_eq!(op_concat().combine(&"ab".into(), &"cd".into()), "abcd");
    let s = |v: &[i64]| v.iter().copied().collect::<BTreeSet<i64>>();
    assert_eq!(op_union().combine(&s(&[1, 2]), &s(&[2, 3])), s(&[1, 2, 3]));
    assert_eq!(op_intersection().combine(&s(&[1, 2]), &s(&[2, 3])), s(&[2]));
    assert_eq!(op_coalesce().combine(&None, &Some(3.0)), Some(3.0));
    assert_eq!(op_coalesce().combine(&Some(2.0), &None), Some(2.0));
    assert_eq!(op_max_total_order().combine(&2.0, &5.0), 5.0);
    assert_eq!(op_min_total_order().combine(&2.0, &5.0), 2.0);
}

#[test]
fn coalesce_window_fill_forward() {
    // Newest-on-left windows make coalesce a fill-forward: the latest
    // defined value inside the window wins.
    let data = [Some(5.0), None, None, Some(7.0)];
    let got = naive_window(&mut op_coalesce(), &data, 3);
    assert_eq!(got, vec![Some(5.0), Some(5.0), Some(5.0), Some(7.0)]);
}

#[test]
fn argmax_examples() {
    let data = [(5.0, 1), (7.0, 2), (7.0, 3)];
    let fold = |op: &mut dyn WindowOp<(f64, u64)>| {
        let mut acc = data[0];
        for p in &data[1..] {
            acc = op.combine(p, &acc);
        }
        acc
    };
    assert_eq!(fold(&mut rep_argmax(ArgmaxMode::Earliest)), (7.0, 2));
    assert_eq!(fold(&mut rep_argmax(ArgmaxMode::Latest)), (7.0, 3));

    let mut set = rep_argmax_set();
    let lifted: Vec<(f64, BTreeSet<u64>)> = data
        .iter()
        .map(|&(v, i)| (v, BTreeSet::from([i])))
        .collect();
    let mut acc = lifted[0].clone();
    for p in &lifted[1..] {
        acc = set.combine(p, &acc);
    }
    assert_eq!(acc, (7.0, BTreeSet::from([2, 3])));
}

#[test]
fn argmax_lift_and_commutativity() {
    assert_eq!(argmax_lift(&[5.0, 7.0]), vec![(5.0, 1), (7.0, 2)]);
    // Selection from a total order is commutative on distinct values and
    // tie-resolved deterministically on equal ones.
    let mut rng = Lcg::new(7);
    let mut op = rep_argmax(ArgmaxMode::Earliest);
    for _ in 0..200 {
        let p = (rng.next_f64(3.0).round(), rng.next_u64() % 10);
        let q = (rng.next_f64(3.0).round(), rng.next_u64() % 10);
        assert_eq!(op.combine(&p, &q), op.combine(&q, &p));
    }
}

#[test]
fn max_count_examples() {
    let mut op = rep_max_count();
    let data = [3.0, 7.0, 7.0, 2.0];
    let mut acc = (data[0], 1);
    for &v in &data[1..] {
        acc = op.combine(&(v, 1), &acc);
    }
    assert_eq!(acc, (7.0, 2));
    assert_eq!(op.combine(&(4.0, 1), &(4.0, 1)), (4.0, 2));
    let mut all = (9.0, 1);
    for _ in 1..6 {
        all = op.combine(&(9.0, 1), &all);
    }
    assert_eq!(all, (9.0, 6));
}

// ---------------------------------------------------------------------------
// Associativity of the composes that claim it
// ---------------------------------------------------------------------------

fn check_assoc<T: Clone>(
    op: &mut impl WindowOp<T>,
    gen: &mut impl FnMut(&mut Lcg) -> T,
    eq: impl Fn(&T, &T) -> bool,
    seed: u64,
) {
    let mut rng = Lcg::new(seed);
    for _ in 0..500 {
        let (a, b, c) = (gen(&mut rng), gen(&mut rng), gen(&mut rng));
        let bc = op.combine(&b, &c);
        let ab = op.combine(&a, &b);
        assert!(eq(&op.combine(&a, &bc), &op.combine(&ab, &c)));
    }
}

#[test]
fn associative_composes_pass_random_triples() {
    let tol = FLOAT_EQ_TOLERANCE;
    check_assoc(
        &mut compose_op(&rep_linear_recurrence()),
        &mut |r| LinearRecParams::new(r.next_f64(2.0), r.next_f64(2.0)),
        |p, q| approx_eq(p.m, q.m, tol) && approx_eq(p.a, q.a, tol),
        1,
    );
    check_assoc(
        &mut compose_op(&rep_ewma_type2(0.7)),
        &mut |r| EwmaState { m: r.next_f64(2.0), a: r.next_f64(2.0), u: r.next_f64(2.0) },
        |p, q| approx_eq(p.m, q.m, tol) && approx_eq(p.a, q.a, tol) && approx_eq(p.u, q.u, tol),
        2,
    );
    check_assoc(
        &mut compose_op(&rep_max_of_sum()),
        &mut |r| MaxSumState { a: r.next_f64(4.0), b: r.next_f64(4.0) },
        |p, q| approx_eq(p.a, q.a, tol) && approx_eq(p.b, q.b, tol),
        3,
    );
    check_assoc(
        &mut compose_op(&rep_max_contiguous_subsequence()),
        &mut |r| KadaneState {
            a: r.next_f64(4.0),
            b: r.next_f64(4.0),
            c: r.next_f64(4.0),
            d: r.next_f64(4.0),
        },
        |p, q| {
            approx_eq(p.a, q.a, tol)
                && approx_eq(p.b, q.b, tol)
                && approx_eq(p.c, q.c, tol)
                && approx_eq(p.d, q.d, tol)
        },
        4,
    );
    check_assoc(
        &mut compose_op(&rep_segmented_scan()),
        &mut |r| (r.next_f64(3.0), r.next_u64() % 2 == 0, r.next_f64(3.0)),
        |p, q| approx_eq(p.0, q.0, tol) && p.1 == q.1 && approx_eq(p.2, q.2, tol),
        5,
    );
    check_assoc(
        &mut compose_op(&rep_run_statistics()),
        &mut |r| (r.next_u64() as i64 % 8, r.next_u64() % 2 == 0, r.next_u64() as i64 % 8),
        |p, q| p == q,
        6,
    );
    for norm in [CfracNorm::None, CfracNorm::Frobenius, CfracNorm::OneNorm] {
        check_assoc(
            &mut compose_op(&rep_continued_fraction(norm)),
            &mut |r| {
                let rep = rep_continued_fraction(norm);
                rep.lift(&(1.0 + r.next_f64(1.0).abs()))
            },
            |p, q| {
                p.0.iter()
                    .flatten()
                    .zip(q.0.iter().flatten())
                    .all(|(x, y)| approx_eq(*x, *y, 1e-7))
            },
            7,
        );
    }
}

proptest! {
    #[test]
    fn linrec_compose_associative(
        m in proptest::collection::vec(-2.0f64..2.0, 6)
    ) {
        let rep = rep_linear_recurrence();
        let p = LinearRecParams::new(m[0], m[1]);
        let q = LinearRecParams::new(m[2], m[3]);
        let r = LinearRecParams::new(m[4], m[5]);
        let lhs = rep.compose(&p, &rep.compose(&q, &r));
        let rhs = rep.compose(&rep.compose(&p, &q), &r);
        prop_assert!(approx_eq(lhs.m, rhs.m, FLOAT_EQ_TOLERANCE));
        prop_assert!(approx_eq(lhs.a, rhs.a, FLOAT_EQ_TOLERANCE));
    }
}

// ---------------------------------------------------------------------------
// Lift faithfulness and semi-associativity
// ---------------------------------------------------------------------------

/// Checks the function-composition property pair on random samples:
/// `apply(lift(a), x)` matches the defining recurrence step, and
/// `apply(compose(f, g), x) == apply(f, apply(g, x))` for random products
/// of lifts.
fn check_rep_properties<R: CompositionRep>(
    rep: &R,
    elem: &mut impl FnMut(&mut Lcg) -> R::Elem,
    state: &mut impl FnMut(&mut Lcg) -> R::State,
    step: impl Fn(&R::Elem, &R::State) -> R::State,
    eq: impl Fn(&R::State, &R::State) -> bool,
    seed: u64,
) {
    let mut rng = Lcg::new(seed);
    fn random_product<R: CompositionRep>(
        rep: &R,
        elem: &mut impl FnMut(&mut Lcg) -> R::Elem,
        rng: &mut Lcg,
    ) -> R::Lifted {
        let len = 1 + rng.next_usize(3);
        let mut f = rep.lift(&elem(rng));
        for _ in 1..len {
            f = rep.compose(&rep.lift(&elem(rng)), &f);
        }
        f
    }
    for _ in 0..1000 {
        // Lift faithfulness.
        let a = elem(&mut rng);
        let x = state(&mut rng);
        assert!(eq(&rep.apply(&rep.lift(&a), &x), &step(&a, &x)));
        // Semi-associativity.
        let f = random_product(rep, elem, &mut rng);
        let g = random_product(rep, elem, &mut rng);
        let lhs = rep.apply(&rep.compose(&f, &g), &x);
        let rhs = rep.apply(&f, &rep.apply(&g, &x));
        assert!(eq(&lhs, &rhs));
    }
}

#[test]
fn rep_property_pairs() {
    let feq = |a: &f64, b: &f64| approx_eq(*a, *b, FLOAT_EQ_TOLERANCE);
    let f = |r: &mut Lcg| r.next_f64(2.0);

    check_rep_properties(&rep_linear_recurrence(), &mut |r| LinearRecParams::new(r.next_f64(2.0), r.next_f64(2.0)), &mut f.clone(), |p, x| p.a + p.m * x, feq, 11);
    check_rep_properties(&rep_sum_missing(), &mut |r| if r.next_u64() % 4 == 0 { None } else { Some(r.next_f64(2.0)) }, &mut f.clone(), |a, x| a.unwrap_or(0.0) + x, feq, 12);
    check_rep_properties(&rep_sum_scale_missing(), &mut |r| (r.next_f64(2.0), if r.next_u64() % 4 == 0 { None } else { Some(r.next_f64(2.0)) }), &mut f.clone(), |(m, a), x| a.unwrap_or(0.0) + m * x, feq, 13);
    check_rep_properties(&rep_ewma_type1(0.3), &mut f.clone(), &mut f.clone(), |a, x| 0.7 * a + 0.3 * x, feq, 14);
    check_rep_properties(
        &rep_ewma_type2(0.4),
        &mut f.clone(),
        &mut |r| (r.next_f64(2.0), 1.0 + r.next_f64(0.5).abs()),
        |a, (x, w)| (a + 0.4 * x, 1.0 + 0.4 * w),
        |p, q| approx_eq(p.0, q.0, FLOAT_EQ_TOLERANCE) && approx_eq(p.1, q.1, FLOAT_EQ_TOLERANCE),
        15,
    );
    check_rep_properties(&rep_ewms(0.6), &mut f.clone(), &mut f.clone(), |a, x| a + 0.6 * x, feq, 16);
    check_rep_properties(&rep_max_of_sum(), &mut f.clone(), &mut f.clone(), |a, x| (x + a).max(*a), feq, 17);
    check_rep_properties(&rep_cusum(), &mut |r| (r.next_f64(2.0), r.next_f64(2.0)), &mut f.clone(), |(z, w), x| (x + z - w).max(0.0), feq, 18);
    check_rep_properties(
        &rep_max_contiguous_subsequence(),
        &mut f.clone(),
        &mut |r| {
            let z = r.next_f64(2.0).max(0.0);
            (z, z + r.next_f64(1.0).abs())
        },
        |a, (z, x)| ((z + a).max(0.0), x.max(z + a).max(0.0)),
        |p, q| approx_eq(p.0, q.0, FLOAT_EQ_TOLERANCE) && approx_eq(p.1, q.1, FLOAT_EQ_TOLERANCE),
        19,
    );
    check_rep_properties(&rep_segmented_scan(), &mut |r| (r.next_f64(2.0), r.next_u64() % 3 == 0), &mut f.clone(), |(a, c), x| if *c { *a } else { a + x }, feq, 20);
    check_rep_properties(&rep_run_statistics(), &mut f.clone(), &mut |r| r.next_u64() as i64 % 16, |a, x| if *a > 0.0 { x + 1 } else { 0 }, |p, q| p == q, 21);
}

// ---------------------------------------------------------------------------
// Meta-algorithm: window the composes with Two Stacks, then apply
// ---------------------------------------------------------------------------

/// Runs the windowed recurrence by windowing the lifted functions with the
/// Two Stacks algorithm and applying each fold to the shifted state, then
/// compares against the naive direct fold.
fn check_meta<R: CompositionRep>(
    rep: &R,
    data: &[R::Elem],
    x: &[R::State],
    n: usize,
    eq: impl Fn(&R::State, &R::State) -> bool,
) where
    R::State: Default,
{
    let lifted: Vec<R::Lifted> = data.iter().map(|a| rep.lift(a)).collect();
    let folds = two_stacks(&mut compose_op(rep), TwoStacksVariant::CombinedInsertEvict, &lifted, n);
    let via_meta: Vec<R::State> = folds
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let state = if i >= n { x[i - n].clone() } else { R::State::default() };
            rep.apply(f, &state)
        })
        .collect();
    let direct = naive_windowed_recurrence(rep, data, x, n);
    for (got, want) in via_meta.iter().zip(&direct) {
        assert!(eq(got, want));
    }
}

#[test]
fn meta_algorithm_matches_direct_fold() {
    let mut rng = Lcg::new(99);
    let n_data = 60;
    let fs: Vec<f64> = (0..n_data).map(|_| rng.next_f64(2.0)).collect();
    let xs: Vec<f64> = (0..n_data).map(|_| rng.next_f64(2.0)).collect();
    let pairs: Vec<(f64, f64)> = fs.iter().zip(&xs).map(|(&a, &b)| (a, b)).collect();
    let opts: Vec<Option<f64>> = fs
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 4 == 2 { None } else { Some(v) })
        .collect();
    let flagged: Vec<(f64, bool)> = fs.iter().enumerate().map(|(i, &v)| (v, i % 5 == 0)).collect();
    let zero_states = vec![0.0; n_data];
    let pair_states: Vec<(f64, f64)> = xs.iter().map(|&x| (x, x.abs() + 1.0)).collect();
    let feq = |a: &f64, b: &f64| approx_eq(*a, *b, FLOAT_EQ_TOLERANCE);
    let peq = |p: &(f64, f64), q: &(f64, f64)| {
        approx_eq(p.0, q.0, FLOAT_EQ_TOLERANCE) && approx_eq(p.1, q.1, FLOAT_EQ_TOLERANCE)
    };

    for n in [1, 2, 3, 5, 8, 13] {
        check_meta(&rep_linear_recurrence(), &pairs.iter().map(|&(m, a)| LinearRecParams::new(m, a)).collect::<Vec<_>>(), &xs, n, feq);
        check_meta(&rep_sum_missing(), &opts, &xs, n, feq);
        check_meta(&rep_ewma_type1(0.25), &fs, &xs, n, feq);
        check_meta(&rep_ewma_type2(0.5), &fs, &pair_states, n, peq);
        check_meta(&rep_ewms(0.5), &fs, &xs, n, feq);
        check_meta(&rep_max_of_sum(), &fs, &xs, n, feq);
        check_meta(&rep_cusum(), &pairs, &zero_states, n, feq);
        check_meta(&rep_segmented_scan(), &flagged, &xs, n, feq);
        check_meta(&rep_run_statistics(), &fs, &vec![0i64; n_data], n, |p, q| p == q);
    }
}

#[test]
fn meta_algorithm_on_nonassociative_cfrac_left_norm() {
    // "Pretend the compose is associative, even if it is not": the *₃
    // normalization is nonassociative, but re-bracketing only rescales the
    // matrix, so every window's convergent is unchanged.
    let rep = rep_continued_fraction(CfracNorm::LeftNorm);
    let mut rng = Lcg::new(5);
    let data: Vec<f64> = (0..40).map(|_| 1.0 + rng.next_f64(1.0).abs()).collect();
    let lifted: Vec<Mat2> = data.iter().map(|a| rep.lift(a)).collect();
    for n in [2, 3, 5, 9] {
        let folds = two_stacks(&mut compose_op(&rep), TwoStacksVariant::CombinedInsertEvict, &lifted, n);
        let naive = naive_window(&mut compose_op(&rep), &lifted, n);
        for (f, g) in folds.iter().zip(&naive) {
            assert!(approx_eq(cfrac_value(f), cfrac_value(g), 1e-7));
        }
    }
}

// ---------------------------------------------------------------------------
// Per-representation oracles
// ---------------------------------------------------------------------------

#[test]
fn linrec_examples() {
    let rep = rep_linear_recurrence();
    let c = rep.compose(&LinearRecParams::new(2.0, 3.0), &LinearRecParams::new(4.0, 5.0));
    assert_eq!((c.m, c.a), (8.0, 13.0));
    let id = LinearRecParams::IDENTITY;
    let p = LinearRecParams::new(6.0, -1.5);
    assert_eq!(rep.compose(&id, &p), p);
    assert_eq!(rep.compose(&p, &id), p);
}

#[test]
fn linrec_with_unit_multipliers_is_moving_sum() {
    let data: Vec<f64> = (1..=10).map(f64::from).collect();
    let pairs: Vec<LinearRecParams> = data.iter().map(|&a| LinearRecParams::new(1.0, a)).collect();
    let zeros = vec![0.0; data.len()];
    let got = naive_windowed_recurrence(&rep_linear_recurrence(), &pairs, &zeros, 4);
    let want = naive_window(&mut op_sum(), &data, 4);
    assert_eq!(got, want);
}

#[test]
fn linrec_window_reproduces_sums_with_scale_changes() {
    let mut rng = Lcg::new(31);
    let m: Vec<f64> = (0..50).map(|_| rng.next_f64(1.2)).collect();
    let a: Vec<f64> = (0..50).map(|_| rng.next_f64(2.0)).collect();
    let pairs: Vec<LinearRecParams> = m.iter().zip(&a).map(|(&m, &a)| LinearRecParams::new(m, a)).collect();
    for n in [1usize, 2, 3, 6] {
        let folds = naive_window(&mut compose_op(&rep_linear_recurrence()), &pairs, n);
        let want = vector_window::window_sum_with_scale_changes(&m, &a, n, vector_window::Method::Binary).unwrap();
        for (f, w) in folds.iter().zip(&want) {
            assert!(approx_eq(f.a, *w, FLOAT_EQ_TOLERANCE), "n={n}: {} vs {w}", f.a);
        }
    }
}

#[test]
fn sum_missing_window_example() {
    let data = [Some(1.0), None, Some(2.0)];
    let zeros = vec![0.0; 3];
    let got = naive_windowed_recurrence(&rep_sum_missing(), &data, &zeros, 3);
    assert_eq!(got, vec![1.0, 1.0, 3.0]);
    assert_eq!(rep_sum_missing().lift(&None), 0.0);
    assert_eq!(rep_sum_missing().lift(&Some(5.0)), 5.0);
}

#[test]
fn ewma2_constant_input_averages_to_one() {
    let rep = rep_ewma_type2(0.5);
    assert_eq!(rep.lift(&3.0), EwmaState { m: 0.5, a: 3.0, u: 1.0 });
    let mut f = rep.lift(&1.0);
    for _ in 1..3 {
        f = rep.compose(&rep.lift(&1.0), &f);
    }
    let (x, w) = rep.apply(&f, &(0.0, 0.0));
    assert!(approx_eq(x, 1.75, FLOAT_EQ_TOLERANCE));
    assert!(approx_eq(w, 1.75, FLOAT_EQ_TOLERANCE));
    assert!(approx_eq(ewma2_value(&(x, w)), 1.0, FLOAT_EQ_TOLERANCE));
}

#[test]
fn ewms_window_examples() {
    let rep = rep_ewms(0.5);
    // lift for n=1 is (c, a_i).
    assert_eq!(rep.lift(&4.0), LinearRecParams::new(0.5, 4.0));
    // Constant ones, n=3: (c^3, 1 + c + c^2) = (0.125, 1.75).
    let mut f = rep.lift(&1.0);
    for _ in 1..3 {
        f = rep.compose(&rep.lift(&1.0), &f);
    }
    assert!(approx_eq(f.m, 0.125, FLOAT_EQ_TOLERANCE));
    assert!(approx_eq(f.a, 1.75, FLOAT_EQ_TOLERANCE));

    // Equals the naive convolution a_i + c a_{i-1} + … + c^{n-1} a_{i-n+1}.
    let mut rng = Lcg::new(44);
    let data: Vec<f64> = (0..30).map(|_| rng.next_f64(3.0)).collect();
    let c = 0.5f64;
    for n in [1usize, 2, 4, 7] {
        let folds = naive_window(&mut compose_op(&rep), &data.iter().map(|a| rep.lift(a)).collect::<Vec<_>>(), n);
        for (i, f) in folds.iter().enumerate() {
            let lo = (i + 1).saturating_sub(n);
            let want: f64 = (lo..=i).rev().enumerate().map(|(k, t)| c.powi(k as i32) * data[t]).sum();
            assert!(approx_eq(f.a, want, FLOAT_EQ_TOLERANCE));
        }
    }
}

#[test]
fn max_of_sum_matches_brute_force_suffix_sums() {
    let rep = rep_max_of_sum();
    assert_eq!(rep.lift(&2.5), MaxSumState { a: 2.5, b: 2.5 });
    let mut rng = Lcg::new(77);
    for _ in 0..200 {
        let len = 1 + rng.next_usize(8);
        let w: Vec<f64> = (0..len).map(|_| rng.next_f64(3.0)).collect();
        let mut f = rep.lift(&w[0]);
        for a in &w[1..] {
            f = rep.compose(&rep.lift(a), &f);
        }
        // b = max over sums of contiguous runs ending at the newest item.
        let want = (0..len)
            .map(|s| w[s..].iter().sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(approx_eq(f.b, want, FLOAT_EQ_TOLERANCE));
        assert!(approx_eq(f.a, w.iter().sum(), FLOAT_EQ_TOLERANCE));
    }
}

#[test]
fn kadane_examples_and_brute_force() {
    let rep = rep_max_contiguous_subsequence();
    assert_eq!(
        rep.lift(&2.0),
        KadaneState { a: 2.0, b: 0.0, c: 2.0, d: 0.0 }
    );
    let value = |data: &[f64]| {
        let mut f = rep.lift(&data[0]);
        for a in &data[1..] {
            f = rep.compose(&rep.lift(a), &f);
        }
        kadane_value(&rep, &f)
    };
    let brute = |data: &[f64]| {
        let mut best = 0.0f64;
        for s in 0..data.len() {
            for e in s..data.len() {
                best = best.max(data[s..=e].iter().sum());
            }
        }
        best
    };
    let classic = [-2.0, 1.0, -3.0, 4.0, -1.0, 2.0, 1.0, -5.0, 4.0];
    assert_eq!(value(&classic), 6.0);
    assert_eq!(value(&[-3.0, -1.0, -2.0]), 0.0);
    assert_eq!(value(&[5.0]), 5.0);
    let mut rng = Lcg::new(123);
    for _ in 0..300 {
        let len = 1 + rng.next_usize(9);
        let w: Vec<f64> = (0..len).map(|_| rng.next_f64(4.0)).collect();
        assert!(approx_eq(value(&w), brute(&w), FLOAT_EQ_TOLERANCE));
    }
}

#[test]
fn cusum_matches_naive_recurrence() {
    let rep = rep_cusum();
    assert_eq!(rep.lift(&(5.0, 3.0)), MaxSumState { a: 2.0, b: 0.0 });
    let mut rng = Lcg::new(55);
    let data: Vec<(f64, f64)> = (0..60).map(|_| (rng.next_f64(2.0), rng.next_f64(2.0))).collect();
    // Unwindowed running statistic: fold every prefix, start from 0.
    let got = naive_windowed_recurrence(&rep, &data, &vec![0.0; data.len()], data.len());
    let mut x = 0.0f64;
    for (&(z, w), &y) in data.iter().zip(&got) {
        x = (x + z - w).max(0.0);
        assert!(approx_eq(y, x, FLOAT_EQ_TOLERANCE));
    }
    // z == ω throughout keeps the statistic at zero.
    let flat = vec![(1.5, 1.5); 10];
    let zeros = naive_windowed_recurrence(&rep, &flat, &vec![0.0; 10], 10);
    assert!(zeros.iter().all(|&y| y == 0.0));
}

#[test]
fn segmented_scan_resets_and_plain_scan() {
    let rep = rep_segmented_scan();
    assert_eq!(rep.lift(&(4.0, true)), (4.0, false, 4.0));
    assert_eq!(rep.lift(&(4.0, false)), (4.0, true, 4.0));
    let data = [(1.0, false), (2.0, false), (10.0, true), (3.0, false)];
    let got = naive_windowed_recurrence(&rep, &data, &vec![0.0; 4], 4);
    assert_eq!(got, vec![1.0, 3.0, 10.0, 13.0]);
    // No resets: a plain prefix scan.
    let plain = [(1.0, false), (2.0, false), (3.0, false)];
    let got = naive_windowed_recurrence(&rep, &plain, &vec![0.0; 3], 3);
    assert_eq!(got, vec![1.0, 3.0, 6.0]);
}

#[test]
fn run_statistics_examples() {
    let rep = rep_run_statistics();
    assert_eq!(rep.lift(&2.0), (1, true, 0));
    assert_eq!(rep.lift(&-1.0), (1, false, 0));
    let data = [1.0, 2.0, -1.0, 3.0, 4.0, 5.0];
    let got = naive_windowed_recurrence(&rep, &data, &vec![0i64; 6], 6);
    assert_eq!(got, vec![1, 2, 0, 1, 2, 3]);
    let positive: Vec<f64> = (1..=8).map(f64::from).collect();
    let got = naive_windowed_recurrence(&rep, &positive, &vec![0i64; 8], 8);
    assert_eq!(got, (1..=8).collect::<Vec<i64>>());
    let nonpositive = [-1.0, 0.0, -2.0];
    let got = naive_windowed_recurrence(&rep, &nonpositive, &vec![0i64; 3], 3);
    assert_eq!(got, vec![0, 0, 0]);
}

#[test]
fn continued_fraction_convergents() {
    let rep = rep_continued_fraction(CfracNorm::None);
    assert_eq!(rep.lift(&2.0), Mat2([[2.0, 1.0], [1.0, 0.0]]));
    let fold = |rep: &ContinuedFraction, terms: &[f64]| {
        let mut f = rep.lift(&terms[0]);
        for a in &terms[1..] {
            // Newer term composes on the right here: convergents read the
            // continued fraction left to right, so the first term is the
            // outermost factor.
            f = rep.compose(&f, &rep.lift(a));
        }
        f
    };
    // [1;1,1] = 1 + 1/(1 + 1/1) = 3/2.
    assert!(approx_eq(cfrac_value(&fold(&rep, &[1.0, 1.0, 1.0])), 1.5, 1e-7));
    // Six ones: 13/8.
    assert!(approx_eq(cfrac_value(&fold(&rep, &[1.0; 6])), 13.0 / 8.0, 1e-7));

    // Normalized variants leave the convergent unchanged on positive input.
    let mut rng = Lcg::new(8);
    let terms: Vec<f64> = (0..12).map(|_| 1.0 + rng.next_f64(2.0).abs()).collect();
    let base = cfrac_value(&fold(&rep, &terms));
    for norm in [CfracNorm::Frobenius, CfracNorm::OneNorm, CfracNorm::LeftNorm] {
        let nrep = rep_continued_fraction(norm);
        assert!(approx_eq(cfrac_value(&fold(&nrep, &terms)), base, 1e-7), "{norm:?}");
    }
}

#[test]
fn continued_fraction_left_norm_is_nonassociative_but_usable() {
    let rep = rep_continued_fraction(CfracNorm::LeftNorm);
    assert!(!rep.claims_associative());
    assert!(rep_continued_fraction(CfracNorm::OneNorm).claims_associative());
    let (a, b, c) = (rep.lift(&1.0), rep.lift(&2.0), rep.lift(&3.0));
    let lhs = rep.compose(&a, &rep.compose(&b, &c));
    let rhs = rep.compose(&rep.compose(&a, &b), &c);
    assert_ne!(lhs, rhs, "expected a nonassociativity witness");
    // Yet both bracketings encode the same convergent.
    assert!(approx_eq(cfrac_value(&lhs), cfrac_value(&rhs), 1e-7));
}

#[test]
fn registry_names_are_present_and_unique() {
    for required in ["sum", "linrec", "ewma2", "cfrac.one_norm", "max", "concat"] {
        assert!(REGISTRY.contains(&required), "missing {required}");
    }
    let set: BTreeSet<&str> = REGISTRY.iter().copied().collect();
    assert_eq!(set.len(), REGISTRY.len());
}
