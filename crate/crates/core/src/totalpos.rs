//! Total positivity of matrices: exhaustive minor checks, contiguous
//! (Fekete) tests, corner minors and the stratum `𝒪_s` of Toeplitz matrices.

use std::collections::HashMap;

use crate::apolarity::{max_toeplitz, require_nonzero, sperner};
use crate::error::{Error, Result};
use crate::forms::BivariateForm;
use crate::kernel::{subsets_colex, Matrix};
use crate::scalar::Scalar;

/// Sources with both dimensions above this are too large to enumerate.
pub const EXHAUSTIVE_CAP: usize = 7;

/// A minor `Δ_{I,J}` with 0-based index sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorWitness<T> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TpReport<T> {
    pub is_tnn: bool,
    pub is_tp: bool,
    /// Largest `k` such that every minor of size `≤ k` is positive.
    pub tp_order: usize,
    pub rank: usize,
    /// First negative minor if not TNN, else first non-positive minor if
    /// not TP. Minors are ordered by size, then rows and columns in colex.
    pub witness: Option<MinorWitness<T>>,
}

/// Every square minor, by size and then colex on rows and columns.
///
/// Minors of size `k` come from Laplace expansion along the first chosen row
/// over the stored minors of size `k - 1`, so each costs `k` products.
fn for_each_minor<T: Scalar>(a: &Matrix<T>, mut visit: impl FnMut(usize, MinorWitness<T>)) {
    let (m, n) = (a.rows(), a.cols());
    if n > 63 || m > 63 {
        for k in 1..=m.min(n) {
            for rows in subsets_colex(m, k) {
                for cols in subsets_colex(n, k) {
                    let value = a.minor(&rows, &cols).expect("index sets are in range");
                    visit(k, MinorWitness { rows: rows.clone(), cols, value });
                }
            }
        }
        return;
    }
    let mask = |set: &[usize]| set.iter().fold(0u64, |acc, &i| acc | (1 << i));
    let mut previous: HashMap<(u64, u64), T> = HashMap::new();
    previous.insert((0, 0), T::one());
    for k in 1..=m.min(n) {
        let mut current = HashMap::new();
        for rows in subsets_colex(m, k) {
            let row_mask = mask(&rows);
            let rest_rows = row_mask & !(1 << rows[0]);
            for cols in subsets_colex(n, k) {
                let col_mask = mask(&cols);
                let mut value = T::zero();
                for (pos, &c) in cols.iter().enumerate() {
                    let entry = a.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let term = entry.clone() * previous[&(rest_rows, col_mask & !(1 << c))].clone();
                    value = if pos % 2 == 0 { value + term } else { value - term };
                }
                current.insert((row_mask, col_mask), value.clone());
                visit(k, MinorWitness { rows: rows.clone(), cols, value });
            }
        }
        previous = current;
    }
}

/// Decides total non-negativity and total positivity from every minor.
pub fn all_minors_nonneg<T: Scalar>(a: &Matrix<T>) -> Result<TpReport<T>> {
    let small = a.rows().min(a.cols());
    if small > EXHAUSTIVE_CAP {
        return Err(Error::Resource(format!(
            "{}x{} has too many minors to enumerate; use the contiguous tests",
            a.rows(),
            a.cols()
        )));
    }
    // Minors of a positive multiple have the same signs.
    let mut entries: Vec<T> = a.to_rows().concat();
    T::shrink_positive(&mut entries);
    let scaled = Matrix::new(a.rows(), a.cols(), entries)?;
    let mut first_negative: Option<MinorWitness<T>> = None;
    let mut first_nonpositive: Option<MinorWitness<T>> = None;
    let mut tp_order = small;
    for_each_minor(&scaled, |k, minor| {
        if minor.value.is_positive() {
            return;
        }
        tp_order = tp_order.min(k - 1);
        if first_nonpositive.is_none() {
            first_nonpositive = Some(minor.clone());
        }
        if first_negative.is_none() && minor.value.is_negative() {
            first_negative = Some(minor);
        }
    });
    let is_tnn = first_negative.is_none();
    let is_tp = first_nonpositive.is_none();
    let witness = first_negative.or(first_nonpositive).map(|w| MinorWitness {
        value: a.minor(&w.rows, &w.cols).expect("in range"),
        ..w
    });
    Ok(TpReport { is_tnn, is_tp, tp_order, rank: scaled.rank(), witness })
}

fn check_order<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<()> {
    let small = a.rows().min(a.cols());
    if k == 0 || k > small {
        return Err(Error::Index(format!("order {k} outside 1..={small}")));
    }
    Ok(())
}

fn contiguous_minors<T: Scalar>(a: &Matrix<T>, k: usize) -> impl Iterator<Item = T> + '_ {
    let (m, n) = (a.rows(), a.cols());
    (0..=m - k).flat_map(move |i| {
        (0..=n - k).map(move |j| {
            let rows: Vec<usize> = (i..i + k).collect();
            let cols: Vec<usize> = (j..j + k).collect();
            a.minor(&rows, &cols).expect("in range")
        })
    })
}

/// TP_k through contiguous minors of every size up to `k`.
pub fn is_tp_contiguous<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<bool> {
    check_order(a, k)?;
    Ok((1..=k).all(|size| contiguous_minors(a, size).all(|v| v.is_positive())))
}

/// Top-right `Δ_{[k], [n]∖[n-k]}` and bottom-left `Δ_{[m]∖[m-k], [k]}`
/// minors for `k = 1..=s` are all nonzero. False when `s` exceeds the
/// smaller dimension.
pub fn corner_minors_nonzero<T: Scalar>(a: &Matrix<T>, s: usize) -> bool {
    let (m, n) = (a.rows(), a.cols());
    if s > m.min(n) {
        return false;
    }
    (1..=s).all(|k| {
        let top: Vec<usize> = (0..k).collect();
        let right: Vec<usize> = (n - k..n).collect();
        let bottom: Vec<usize> = (m - k..m).collect();
        let top_right = a.minor(&top, &right).expect("in range");
        let bottom_left = a.minor(&bottom, &top).expect("in range");
        !top_right.is_zero() && !bottom_left.is_zero()
    })
}

/// Every contiguous `s × s` minor is nonzero. False when `s` exceeds the
/// smaller dimension.
pub fn contiguous_s_minors_nonzero<T: Scalar>(a: &Matrix<T>, s: usize) -> bool {
    if s > a.rows().min(a.cols()) {
        return false;
    }
    s == 0 || contiguous_minors(a, s).all(|v| !v.is_zero())
}

/// Membership of a Toeplitz matrix in `𝒪_s`: rank `s`, corner minors up to
/// size `s` nonzero, contiguous `s × s` minors nonzero.
pub fn in_open_set_os<T: Scalar>(a: &Matrix<T>, s: usize) -> Result<bool> {
    if !a.is_toeplitz() {
        return Err(Error::Domain("not a Toeplitz matrix".into()));
    }
    if s == 0 {
        return Err(Error::Domain("the stratum index s must be at least 1".into()));
    }
    Ok(a.rank() == s && corner_minors_nonzero(a, s) && contiguous_s_minors_nonzero(a, s))
}

/// Exhaustive report on `φ^{⌊d/2⌋}_d(F)`, cross-checked against the
/// contiguous criterion at every order up to the Sperner number.
pub fn classify_max_toeplitz<T: Scalar>(form: &BivariateForm<T>) -> Result<TpReport<T>> {
    require_nonzero(form)?;
    let phi = max_toeplitz(form);
    let report = all_minors_nonneg(&phi)?;
    let s = sperner(form)?;
    for k in 1..=s.min(phi.rows().min(phi.cols())) {
        if is_tp_contiguous(&phi, k)? != (report.tp_order >= k) {
            return Err(Error::Invariant(format!(
                "contiguous and exhaustive TP_{k} tests disagree on {form:?}"
            )));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Form, RatMatrix};

    fn m(rows: &[&[(i64, i64)]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect()).collect()).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&p| rat(p, 1)).collect()).collect()).unwrap()
    }

    fn mono(a: &[i64]) -> Form {
        Form::from_monomial_coeffs(a.iter().map(|&x| rat(x, 1)).collect()).unwrap()
    }

    fn witness_matrix() -> RatMatrix {
        m(&[&[(3, 2), (1, 1)], &[(1, 1), (3, 2)]])
    }

    fn x2y_matrix() -> RatMatrix {
        m(&[&[(0, 1), (1, 3), (0, 1)], &[(0, 1), (0, 1), (1, 3)]])
    }

    #[test]
    fn exhaustive_examples() {
        let r = all_minors_nonneg(&ints(&[&[1, 1, 1], &[1, 1, 1]])).unwrap();
        assert!(r.is_tnn && !r.is_tp);
        assert_eq!(r.tp_order, 1);
        let r = all_minors_nonneg(&ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!r.is_tnn);
        assert_eq!(r.witness, Some(MinorWitness { rows: vec![0, 1], cols: vec![0, 1], value: rat(-1, 1) }));
        let r = all_minors_nonneg(&witness_matrix()).unwrap();
        assert!(r.is_tnn && r.is_tp && r.witness.is_none());
        assert_eq!((r.tp_order, r.rank), (2, 2));
        assert!(matches!(all_minors_nonneg(&RatMatrix::identity(8)), Err(Error::Resource(_))));
    }

    #[test]
    fn contiguous_examples() {
        assert!(is_tp_contiguous(&witness_matrix(), 2).unwrap());
        assert!(!is_tp_contiguous(&x2y_matrix(), 1).unwrap());
        assert!(!is_tp_contiguous(&ints(&[&[1, 1], &[1, 1]]), 2).unwrap());
        assert!(matches!(is_tp_contiguous(&witness_matrix(), 3), Err(Error::Index(_))));
        assert!(matches!(is_tp_contiguous(&witness_matrix(), 0), Err(Error::Index(_))));
    }

    #[test]
    fn corner_examples() {
        assert!(corner_minors_nonzero(&witness_matrix(), 2));
        assert!(!corner_minors_nonzero(&ints(&[&[1, 1], &[1, 1]]), 2));
        assert!(corner_minors_nonzero(&ints(&[&[0, 1], &[1, 0]]), 1));
        assert!(!corner_minors_nonzero(&ints(&[&[1, 0], &[0, 1]]), 1));
    }

    #[test]
    fn contiguous_nonzero_examples() {
        assert!(contiguous_s_minors_nonzero(&witness_matrix(), 2));
        assert!(!contiguous_s_minors_nonzero(&x2y_matrix(), 2));
    }

    #[test]
    fn open_set_examples() {
        assert!(in_open_set_os(&witness_matrix(), 2).unwrap());
        // Corner entries of the anti-diagonal matrix are the off-diagonal ones.
        assert!(in_open_set_os(&ints(&[&[0, 1], &[1, 0]]), 2).unwrap());
        assert!(!in_open_set_os(&witness_matrix(), 1).unwrap());
        assert!(matches!(in_open_set_os(&ints(&[&[1, 2], &[3, 4]]), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn classify_examples() {
        let r = classify_max_toeplitz(&mono(&[1, 3, 3, 1])).unwrap();
        assert!(r.is_tnn);
        assert_eq!(r.rank, 1);
        assert!(r.tp_order >= 1);
        let r = classify_max_toeplitz(&mono(&[0, 0, 1, 0])).unwrap();
        assert!(r.is_tnn);
        assert_eq!(r.rank, 2);
        assert_eq!(r.tp_order, 0);
        assert!(!classify_max_toeplitz(&mono(&[1, 0, 1])).unwrap().is_tnn);
        assert!(matches!(classify_max_toeplitz(&Form::zero(3)), Err(Error::Domain(_))));
    }
}
