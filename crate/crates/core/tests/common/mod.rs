#![allow(dead_code)]

use hrr_core::{rat, Form, RatMatrix, Rational};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn form(degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Form> {
    degrees
        .prop_flat_map(|d| prop::collection::vec(small_rational(), d + 1))
        .prop_filter("nonzero form", |c| c.iter().any(|x| *x != rat(0, 1)))
        .prop_map(|c| Form::new(c).unwrap())
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(small_rational(), rows * cols).prop_map(move |d| RatMatrix::new(rows, cols, d).unwrap())
}

pub fn any_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c))
}

pub fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(a: &RatMatrix) -> Rational {
    let n = a.rows();
    if n == 0 {
        return rat(1, 1);
    }
    let mut total = rat(0, 1);
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let sub = if n == 1 { RatMatrix::zeros(0, 0) } else { a.submatrix(&rows, &cols).unwrap() };
        let term = a.get(0, j).clone() * cofactor_det(&sub);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
