mod common;

use common::{form, positive_rational, small_rational};
use hrr_core::apolarity::hilbert_function;
use hrr_core::hessian::{
    hessian_matrix, hessian_polynomial, plucker_expansion, positive_on_quadrant, ssyt_count, ssyt_count_bruteforce,
    subset_to_partition, HessianPoly, Quadrant,
};
use hrr_core::{rat, Form, Rational};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=4, 0..=4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.retain(|&p| p > 0);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hessian_matrix_is_symmetric(f in form(0..=8)) {
        for i in 0..=f.degree() / 2 {
            prop_assert!(hessian_matrix(&f, i).unwrap().is_symmetric());
        }
    }

    #[test]
    fn hessian_vanishes_exactly_from_the_sperner_number(f in form(0..=8)) {
        let s = hilbert_function(&f).unwrap().sperner;
        let d = f.degree();
        for i in 0..=d / 2 {
            let h = hessian_polynomial(&f, i).unwrap().poly;
            prop_assert_eq!(h.degree(), HessianPoly::<Rational>::expected_degree(d, i));
            prop_assert_eq!(h.is_zero(), i >= s);
        }
    }

    #[test]
    fn plucker_matches_hessian(f in form(2..=7)) {
        for i in 0..=f.degree() / 2 {
            prop_assert_eq!(plucker_expansion(&f, i).unwrap().poly, hessian_polynomial(&f, i).unwrap().poly);
        }
    }

    #[test]
    fn hessian_scales_by_a_power(f in form(2..=6), c in positive_rational()) {
        for i in 0..=f.degree() / 2 {
            let scaled = hessian_polynomial(&f.scale(&c), i).unwrap().poly;
            let mut factor = rat(1, 1);
            for _ in 0..=i {
                factor *= c.clone();
            }
            prop_assert_eq!(scaled, hessian_polynomial(&f, i).unwrap().poly.scale(&factor));
        }
    }

    #[test]
    fn tableau_formula_matches_enumeration(shape in shape(), bound in 0usize..=4) {
        prop_assert_eq!(ssyt_count(&shape, bound).unwrap(), ssyt_count_bruteforce(&shape, bound).unwrap());
    }

    #[test]
    fn partition_sizes_add_up(subset in prop::sample::subsequence((1usize..=7).collect::<Vec<_>>(), 3)) {
        let p = subset_to_partition(&subset, 3, 7).unwrap();
        prop_assert_eq!(p.lambda.iter().sum::<usize>(), p.size);
        prop_assert_eq!(p.lambda_conj.iter().sum::<usize>(), p.size);
    }

    #[test]
    fn quadrant_positivity_is_sound(coeffs in prop::collection::vec(small_rational(), 1..=6), samples in prop::collection::vec(positive_rational(), 8)) {
        let h = Form::from_monomial_coeffs(coeffs).unwrap();
        if positive_on_quadrant(&h, Quadrant::Open) {
            for t in &samples {
                prop_assert!(h.eval(t, &rat(1, 1)) > rat(0, 1));
            }
        }
        if positive_on_quadrant(&h, Quadrant::Closed) {
            prop_assert!(positive_on_quadrant(&h, Quadrant::Open));
            prop_assert!(h.eval(&rat(1, 1), &rat(0, 1)) > rat(0, 1));
            prop_assert!(h.eval(&rat(0, 1), &rat(1, 1)) > rat(0, 1));
        }
    }

    #[test]
    fn forms_with_a_positive_root_are_not_positive(root in positive_rational(), rest in prop::collection::vec(positive_rational(), 0..=3)) {
        // (X - root Y) times a positive form
        let mut h = Form::from_monomial_coeffs(vec![-root, rat(1, 1)]).unwrap();
        for c in rest {
            h = h.mul(&Form::from_monomial_coeffs(vec![c, rat(1, 1)]).unwrap());
        }
        prop_assert!(!positive_on_quadrant(&h, Quadrant::Open));
        prop_assert!(!positive_on_quadrant(&h, Quadrant::Closed));
    }
}

#[test]
fn index_beyond_half_degree_is_rejected() {
    let f = Form::new(vec![rat(1, 1); 4]).unwrap();
    assert!(hessian_polynomial(&f, 2).is_err());
}

#[test]
fn brute_force_refuses_large_shapes() {
    assert!(ssyt_count_bruteforce(&[5, 5, 5, 5], 3).is_err());
}

#[test]
fn float_hessian() {
    let f = hrr_core::FloatForm::new(vec![1.0, 1.5, 1.0]).unwrap();
    let h = hessian_polynomial(&f, 1).unwrap().poly;
    assert!((h.normalized_coeffs()[0] - 5.0).abs() < 1e-12);
}
