mod common;

use common::{form, positive_rational};
use hrr_core::apolarity::{
    catalecticant, hilbert_function, lefschetz_gram, min_annihilator_degree, monomial_basis_ordered, toeplitz,
    MonomialOrder,
};
use hrr_core::scalar::Scalar;
use hrr_core::{Linear, Rational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hilbert_function_closed_form(f in form(0..=8)) {
        let data = hilbert_function(&f).unwrap();
        let d = f.degree();
        prop_assert_eq!(data.h.len(), d + 1);
        for i in 0..=d {
            prop_assert_eq!(data.h[i], (i + 1).min(data.sperner).min(d - i + 1));
        }
    }

    #[test]
    fn annihilator_degree_is_complementary(f in form(1..=8)) {
        let s = hilbert_function(&f).unwrap().sperner;
        let ann = min_annihilator_degree(&f).unwrap();
        prop_assert!(ann.generator.apply(&f).is_zero());
        if 2 * s == f.degree() + 2 {
            prop_assert!(ann.degree == s || ann.degree == f.degree() + 2 - s);
        } else {
            prop_assert_eq!(ann.degree, s.min(f.degree() + 2 - s));
        }
    }

    #[test]
    fn basis_size_does_not_depend_on_order(f in form(0..=8)) {
        for i in 0..=f.degree() {
            let a = monomial_basis_ordered(&f, i, MonomialOrder::XFirst).unwrap();
            let b = monomial_basis_ordered(&f, i, MonomialOrder::YFirst).unwrap();
            prop_assert_eq!(a.len(), b.len());
            prop_assert_eq!(a.len(), hilbert_function(&f).unwrap().h[i]);
        }
    }

    #[test]
    fn catalecticant_is_a_reordered_toeplitz(f in form(0..=8)) {
        for i in 0..=f.degree() / 2 {
            let t = toeplitz(&f, i).unwrap().matrix;
            let c = catalecticant(&f, i, MonomialOrder::XFirst);
            prop_assert_eq!(t.rank(), c.rank());
        }
    }

    #[test]
    fn degree_zero_gram_is_scaled_evaluation(f in form(0..=7), a in positive_rational(), b in positive_rational()) {
        let gram = lefschetz_gram(&f, &Linear::new(a.clone(), b.clone()), 0).unwrap().matrix;
        let expected = Rational::factorial(f.degree()) * f.eval(&a, &b);
        prop_assert_eq!(gram.get(0, 0).clone(), expected);
    }

    #[test]
    fn gram_matrices_are_symmetric(f in form(2..=7), a in positive_rational(), b in positive_rational()) {
        let ell = Linear::new(a, b);
        for i in 0..=f.degree() / 2 {
            prop_assert!(lefschetz_gram(&f, &ell, i).unwrap().matrix.is_symmetric());
        }
    }
}
