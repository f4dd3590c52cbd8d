mod common;

use common::{any_matrix, form, positive_rational};
use hrr_core::apolarity::max_toeplitz;
use hrr_core::totalpos::{all_minors_nonneg, classify_max_toeplitz, is_tp_contiguous};
use hrr_core::{rat, RatMatrix, Rational};
use proptest::prelude::*;

/// `I + a E_{k,k+1}` or its transpose; products of these with positive
/// diagonals are totally non-negative.
fn elementary(n: usize, k: usize, a: Rational, lower: bool) -> RatMatrix {
    RatMatrix::from_fn(n, n, |r, c| {
        if r == c {
            rat(1, 1)
        } else if (!lower && r == k && c == k + 1) || (lower && r == k + 1 && c == k) {
            a.clone()
        } else {
            rat(0, 1)
        }
    })
}

fn tnn_matrix() -> impl Strategy<Value = RatMatrix> {
    (2usize..=5)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n - 1, positive_rational(), any::<bool>()), 0..8),
                prop::collection::vec(positive_rational(), n),
            )
        })
        .prop_map(|(n, factors, diag)| {
            let mut m = RatMatrix::from_fn(n, n, |r, c| if r == c { diag[r].clone() } else { rat(0, 1) });
            for (k, a, lower) in factors {
                m = m.mul(&elementary(n, k, a, lower)).unwrap();
            }
            m
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bidiagonal_products_are_tnn(m in tnn_matrix()) {
        prop_assert!(all_minors_nonneg(&m).unwrap().is_tnn);
    }

    #[test]
    fn tnn_is_closed_under_products(a in tnn_matrix(), b in tnn_matrix()) {
        if a.rows() == b.rows() {
            prop_assert!(all_minors_nonneg(&a.mul(&b).unwrap()).unwrap().is_tnn);
        }
    }

    #[test]
    fn tnn_passes_to_submatrices(m in tnn_matrix(), keep in prop::collection::vec(any::<bool>(), 5)) {
        let idx: Vec<usize> = (0..m.rows()).filter(|&i| keep[i]).collect();
        if !idx.is_empty() {
            prop_assert!(all_minors_nonneg(&m.submatrix(&idx, &idx).unwrap()).unwrap().is_tnn);
        }
    }

    #[test]
    fn witness_is_a_real_minor(m in any_matrix(4)) {
        let r = all_minors_nonneg(&m).unwrap();
        prop_assert_eq!(r.rank, m.rank());
        match &r.witness {
            Some(w) => {
                prop_assert_eq!(m.minor(&w.rows, &w.cols).unwrap(), w.value.clone());
                if r.is_tnn {
                    prop_assert!(!r.is_tp && w.value == rat(0, 1));
                } else {
                    prop_assert!(w.value < rat(0, 1));
                }
            }
            None => prop_assert!(r.is_tp && r.is_tnn),
        }
    }

    #[test]
    fn fekete_criterion_agrees_with_exhaustive_check(f in form(0..=8)) {
        let a = max_toeplitz(&f);
        let full = all_minors_nonneg(&a).unwrap();
        for k in 1..=a.rows().min(a.cols()) {
            prop_assert_eq!(is_tp_contiguous(&a, k).unwrap(), full.tp_order >= k);
        }
        prop_assert_eq!(classify_max_toeplitz(&f).unwrap(), full);
    }
}

#[test]
fn exhaustive_enumeration_is_capped() {
    let big = RatMatrix::identity(8);
    assert!(all_minors_nonneg(&big).is_err());
}
