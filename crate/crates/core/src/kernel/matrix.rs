use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense row-major matrix over a [`Scalar`] field.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of rows, which must all have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(r, k).clone() * other.get(k, c).clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// The submatrix on the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        check_index_set(rows, self.rows, "row")?;
        check_index_set(cols, self.cols, "column")?;
        Ok(Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        }))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Constant along every diagonal.
    pub fn is_toeplitz(&self) -> bool {
        (1..self.rows).all(|r| (1..self.cols).all(|c| self.get(r, c) == self.get(r - 1, c - 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.data.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(T::zero());
                };
                swap_rows(&mut a, n, k, p);
                negate = !negate;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let lead = a[i * n + k].clone();
                for j in k + 1..n {
                    let v = (pivot.clone() * a[i * n + j].clone()
                        - lead.clone() * a[k * n + j].clone())
                        / prev.clone();
                    a[i * n + j] = v;
                }
                a[i * n + k] = T::zero();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Determinant of the submatrix on (0-based) rows `rows` and columns `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<T> {
        if rows.len() != cols.len() {
            return Err(Error::Shape(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        self.submatrix(rows, cols)?.det()
    }

    /// Rank over the scalar field, by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        let mut prev = T::one();
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            swap_rows(&mut a, cols, rank, p);
            let pivot = a[rank * cols + c].clone();
            for i in rank + 1..rows {
                let lead = a[i * cols + c].clone();
                for j in c + 1..cols {
                    let v = (pivot.clone() * a[i * cols + j].clone()
                        - lead.clone() * a[rank * cols + j].clone())
                        / prev.clone();
                    a[i * cols + j] = v;
                }
                a[i * cols + c] = T::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        for c in 0..cols {
            let r = pivots.len();
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            swap_rows(&mut a, cols, r, p);
            let inv = T::one() / a[r * cols + c].clone();
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j].clone() * inv.clone();
            }
            for i in (0..rows).filter(|&i| i != r) {
                let factor = a[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    a[i * cols + j] = a[i * cols + j].clone() - factor.clone() * a[r * cols + j].clone();
                }
            }
            pivots.push(c);
        }
        (Self { rows, cols, data: a }, pivots)
    }

    /// Basis of the right null space.
    ///
    /// One vector per free column of the reduced echelon form, taken in
    /// column order: that free variable is 1, the other free variables are 0
    /// and the pivot variables are solved for.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (reduced, pivots) = self.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(r, f).clone();
            }
            v
        })
        .collect()
    }

    /// Sylvester's criterion: every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Err(Error::Domain("positive definiteness of a non-symmetric matrix".into()));
        }
        for k in 1..=self.rows {
            let idx: Vec<usize> = (0..k).collect();
            if !self.minor(&idx, &idx)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Bᵀ·self·B, the form restricted to the column span of `basis`.
    pub fn congruence(&self, basis: &[Vec<T>]) -> Result<Self> {
        let b = Self::from_rows(basis.to_vec())?;
        if !basis.is_empty() && b.cols != self.rows {
            return Err(Error::Dimension("basis vectors do not match the form".into()));
        }
        if basis.is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        b.mul(self)?.mul(&b.transpose())
    }
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for j in 0..cols {
            a.swap(r1 * cols + j, r2 * cols + j);
        }
    }
}

fn check_index_set(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    if let Some(&bad) = idx.iter().find(|&&i| i >= bound) {
        return Err(Error::Index(format!("{what} index {bad} out of range 0..{bound}")));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Index(format!("{what} indices {idx:?} not strictly increasing")));
    }
    Ok(())
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.data[r * self.cols..(r + 1) * self.cols].iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v:?}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, RatMatrix};

    fn m(rows: &[&[(i64, i64)]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&p| rat(p, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(ints(&[&[2, 3], &[3, 2]]).det().unwrap(), rat(-5, 1));
        assert_eq!(RatMatrix::identity(3).det().unwrap(), rat(1, 1));
        assert_eq!(ints(&[&[0, 1], &[1, 0]]).det().unwrap(), rat(-1, 1));
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), rat(1, 1));
        assert!(matches!(ints(&[&[1, 2, 3]]).det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_needs_pivoting() {
        let a = ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(a.det().unwrap(), rat(-1, 1));
        let b = ints(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]);
        // 0*(0-0) - 2*(3-0) + 1*(3-0) = -3
        assert_eq!(b.det().unwrap(), rat(-3, 1));
    }

    #[test]
    fn minor_examples() {
        let ones = ints(&[&[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(ones.minor(&[0, 1], &[0, 2]).unwrap(), rat(0, 1));
        let t = m(&[&[(3, 2), (1, 1)], &[(1, 1), (3, 2)]]);
        assert_eq!(t.minor(&[0, 1], &[0, 1]).unwrap(), rat(5, 4));
        assert_eq!(t.minor(&[0], &[1]).unwrap(), *t.get(0, 1));
        assert!(matches!(t.minor(&[0, 1], &[0]), Err(Error::Shape(_))));
        assert!(matches!(t.minor(&[0], &[2]), Err(Error::Index(_))));
        assert!(matches!(t.minor(&[1, 0], &[0, 1]), Err(Error::Index(_))));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ints(&[&[1, 1, 1, 1], &[1, 1, 1, 1]]).rank(), 1);
        assert_eq!(m(&[&[(0, 1), (1, 3), (0, 1)], &[(0, 1), (0, 1), (1, 3)]]).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(RatMatrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ints(&[&[5, 5]]).kernel_basis(), vec![vec![rat(-1, 1), rat(1, 1)]]);
        assert!(RatMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(
            RatMatrix::zeros(2, 2).kernel_basis(),
            vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]
        );
    }

    #[test]
    fn positive_definite_examples() {
        assert!(ints(&[&[2, 0], &[0, 2]]).is_positive_definite().unwrap());
        assert!(!ints(&[&[-2, -3], &[-3, -2]]).is_positive_definite().unwrap());
        assert!(RatMatrix::zeros(0, 0).is_positive_definite().unwrap());
        assert!(matches!(
            ints(&[&[1, 2], &[0, 1]]).is_positive_definite(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn generic_over_floats() {
        let a = Matrix::<f64>::from_rows(vec![vec![2.0, 3.0], vec![3.0, 2.0]]).unwrap();
        assert_eq!(a.det().unwrap(), -5.0);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn toeplitz_and_symmetry_predicates() {
        assert!(ints(&[&[1, 2, 3], &[4, 1, 2]]).is_toeplitz());
        assert!(!ints(&[&[1, 2, 3], &[4, 1, 3]]).is_toeplitz());
        assert!(ints(&[&[1, 2], &[2, 5]]).is_symmetric());
    }
}
