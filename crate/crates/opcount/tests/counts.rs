use algebra_core::WindowOp;
use opcount::*;

#[test]
fn instrumented_op_counts_and_marks() {
    let mut op = instrument(|a: &i64, b: &i64| a + b);
    op.mark(); // output 1: no work
    let s = op.combine(&1, &2);
    op.mark(); // output 2: one op
    let _ = op.combine(&s, &3);
    let _ = op.combine(&s, &4);
    op.mark(); // output 3: two ops
    assert_eq!(op.total(), 3);
    assert_eq!(op.marks(), &[0, 1, 3]);
    assert_eq!(op.increments(), vec![0, 1, 2]);
    op.reset();
    assert_eq!(op.total(), 0);
    assert!(op.marks().is_empty());
}

#[test]
fn two_stacks_anchor_counts() {
    use TwoStacksVariant::*;
    assert_eq!(count_two_stacks(CombinedInsertEvict, 4, 10), 15);
    assert_eq!(count_two_stacks(InsertEvict, 4, 10), 17);
    assert_eq!(count_two_stacks(EvictInsert, 3, 3), 2);
    assert_eq!(count_two_stacks(EvictInsert, 4, 10), 16);
    assert_eq!(count_two_stacks(Variant3, 4, 10), 15);
    assert_eq!(count_two_stacks(Variant4, 4, 10), 17);
    // Trivial regimes.
    for v in TwoStacksVariant::ALL {
        assert_eq!(count_two_stacks(v, 7, 1), 0);
        assert_eq!(count_two_stacks(v, 7, 5), 4);
        assert_eq!(count_two_stacks(v, 7, 7), 6);
        let expect_n1 = if v == InsertEvict { 5 } else { 0 };
        assert_eq!(count_two_stacks(v, 1, 10), expect_n1);
    }
}

#[test]
fn two_stacks_anchor_increments() {
    assert_eq!(
        predicted_increments_two_stacks(TwoStacksVariant::CombinedInsertEvict, 4, 10),
        vec![0, 1, 1, 1, 3, 1, 2, 2, 1, 3]
    );
    assert_eq!(
        predicted_increments_two_stacks(TwoStacksVariant::InsertEvict, 4, 10),
        vec![0, 1, 1, 1, 4, 1, 2, 2, 1, 4]
    );
    assert_eq!(
        predicted_increments_two_stacks(TwoStacksVariant::Variant4, 4, 10),
        vec![0, 1, 1, 1, 3, 2, 2, 3, 2, 2]
    );
}

#[test]
fn dew_anchor_counts() {
    assert_eq!(count_dew(DewVariant::V1, 4, 10), 17);
    assert_eq!(count_dew(DewVariant::V1, 5, 4), 4);
    assert_eq!(count_dew(DewVariant::V1, 2, 9), 8);
    assert_eq!(count_dew(DewVariant::V2, 5, 6), 9);
    assert_eq!(count_dew(DewVariant::V1, 1, 50), 0);
    assert_eq!(count_dew(DewVariant::V2, 6, 1), 0);
}

#[test]
fn dew_anchor_increments() {
    assert_eq!(
        predicted_increments_dew(DewVariant::V1, 4, 10),
        vec![0, 1, 1, 3, 1, 3, 1, 3, 1, 3]
    );
    assert_eq!(
        predicted_increments_dew(DewVariant::V1, 3, 9),
        vec![0, 1, 2, 1, 2, 2, 1, 2, 2]
    );
    assert_eq!(
        predicted_increments_dew(DewVariant::V2, 4, 8),
        vec![0, 1, 2, 2, 2, 2, 2, 2]
    );
}

/// The closed forms and the generated increment sequences must agree: the
/// count equals the sum of the increments for every (variant, n, N).
#[test]
fn closed_forms_match_increment_sums() {
    for n in 1..=9u64 {
        for big_n in 1..=60u64 {
            for v in TwoStacksVariant::ALL {
                let incr = predicted_increments_two_stacks(v, n, big_n);
                assert_eq!(incr.len() as u64, big_n);
                assert_eq!(
                    incr.iter().sum::<u64>(),
                    count_two_stacks(v, n, big_n),
                    "two stacks {v:?} n={n} N={big_n}"
                );
            }
            for v in DewVariant::ALL {
                let incr = predicted_increments_dew(v, n, big_n);
                assert_eq!(incr.len() as u64, big_n);
                assert_eq!(
                    incr.iter().sum::<u64>(),
                    count_dew(v, n, big_n),
                    "dew {v:?} n={n} N={big_n}"
                );
            }
        }
    }
}

/// DEW per-output worst case is 3 operations; Two Stacks variants touch n-1
/// at batch boundaries.
#[test]
fn dew_increments_bounded_by_three() {
    for v in DewVariant::ALL {
        for n in 1..=9u64 {
            for big_n in 1..=60u64 {
                let incr = predicted_increments_dew(v, n, big_n);
                assert!(incr.iter().all(|&d| d <= 3), "{v:?} n={n} N={big_n}");
            }
        }
    }
}

/// Shift property: adding n more items costs exactly 3n-4 more operations
/// once past the startup region.
#[test]
fn dew_slope_is_3n_minus_4() {
    for v in DewVariant::ALL {
        for n in 3..=9u64 {
            for big_n in n.div_ceil(2)..=40 {
                assert_eq!(
                    count_dew(v, n, big_n + n),
                    count_dew(v, n, big_n) + 3 * n - 4,
                    "{v:?} n={n} N={big_n}"
                );
            }
        }
    }
}

#[test]
fn cumulative_dominance_examples() {
    assert_eq!(cumulatively_dominates(&[1, 1, 1, 5], &[1, 2, 2, 3]), Ok(true));
    assert_eq!(cumulatively_dominates(&[2, 0], &[1, 1]), Ok(false));
    assert_eq!(cumulatively_dominates(&[1, 1], &[1, 1]), Ok(true));
    assert_eq!(
        cumulatively_dominates(&[1], &[1, 2]),
        Err(DominanceError::LengthMismatch(1, 2))
    );
}

/// Cross-variant dominance theorems, stated on the actual increment traces.
#[test]
fn dominance_theorems_across_algorithms() {
    for n in 2..=9u64 {
        for big_n in 1..=60u64 {
            let ts_v3 = predicted_increments_two_stacks(TwoStacksVariant::Variant3, n, big_n);
            let dew1 = predicted_increments_dew(DewVariant::V1, n, big_n);
            let dew2 = predicted_increments_dew(DewVariant::V2, n, big_n);
            assert_eq!(
                cumulatively_dominates(&ts_v3, &dew1),
                Ok(true),
                "TS V3 vs DEW V1, n={n} N={big_n}"
            );
            assert_eq!(
                cumulatively_dominates(&ts_v3, &dew2),
                Ok(true),
                "TS V3 vs DEW V2, n={n} N={big_n}"
            );
            // Total-count orderings.
            let (c3, c1, c2) = (
                count_two_stacks(TwoStacksVariant::Variant3, n, big_n),
                count_dew(DewVariant::V1, n, big_n),
                count_dew(DewVariant::V2, n, big_n),
            );
            assert!(c3 <= c1 && c1 <= c2, "n={n} N={big_n}: {c3} {c1} {c2}");
            assert!(c2 <= c1 + 1, "V2 exceeds V1 by at most one, n={n} N={big_n}");
            assert!(c2 <= c3 + n - 2 || n == 2, "n={n} N={big_n}");
        }
        // DEW V1 meets Two Stacks V3 exactly at N = n+1, 2n+1, ...
        for j in 1..=4u64 {
            let big_n = j * n + 1;
            assert_eq!(
                count_dew(DewVariant::V1, n, big_n),
                count_two_stacks(TwoStacksVariant::Variant3, n, big_n),
                "n={n} N={big_n}"
            );
        }
    }
}
