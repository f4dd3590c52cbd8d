//! Higher Hessians, their signed determinants, quadrant positivity, and the
//! Plücker expansion of the Hessian polynomial in the maximal minors of the
//! Toeplitz matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::apolarity::{require_nonzero, sperner, toeplitz};
use crate::error::{Error, Result};
use crate::forms::{BivariateForm, HomPoly, OperatorPoly};
use crate::kernel::{subsets_colex, Matrix, UniPoly};
use crate::scalar::{sign_power, Scalar};

/// Square matrix of forms; the `i`-th Hessian matrix has entries of degree
/// `d - 2i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix<T> {
    size: usize,
    entries: Vec<BivariateForm<T>>,
}

impl<T: Scalar> FormMatrix<T> {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &BivariateForm<T> {
        &self.entries[r * self.size + c]
    }

    /// The scalar matrix at `(X, Y) = (x, y)`.
    pub fn eval(&self, x: &T, y: &T) -> Matrix<T> {
        Matrix::from_fn(self.size, self.size, |r, c| self.get(r, c).eval(x, y))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Determinant as a form, by expansion over column subsets (exact, no
    /// division, `O(n 2^n)` products).
    pub fn det(&self) -> BivariateForm<T> {
        let n = self.size;
        let entry_degree = self.entries.first().map_or(0, BivariateForm::degree);
        let homs: Vec<HomPoly<T>> = self.entries.iter().map(BivariateForm::to_hom).collect();
        let mut table: Vec<Option<HomPoly<T>>> = vec![None; 1 << n];
        table[0] = Some(HomPoly::one());
        for mask in 0..(1usize << n) {
            let Some(partial) = table[mask].clone() else { continue };
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for col in (0..n).filter(|c| mask & (1 << c) == 0) {
                let inversions = (mask >> (col + 1)).count_ones() as usize;
                let mut term = partial.mul(&homs[row * n + col]);
                if inversions % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut table[mask | (1 << col)];
                *slot = Some(match slot.take() {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
        }
        let full = table[(1 << n) - 1].take().unwrap_or_else(|| HomPoly::zero(n * entry_degree));
        BivariateForm::from_hom(full)
    }
}

fn check_hessian_index<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<()> {
    let d = form.degree();
    if i > d / 2 {
        return Err(Error::Index(format!("Hessian index {i} exceeds floor({d}/2)")));
    }
    Ok(())
}

/// `Hess_i(F) = (x^{p+q} y^{2i-p-q} ∘ F)_{0 ≤ p,q ≤ i}`; `Hess_0(F) = [F]`.
pub fn hessian_matrix<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<FormMatrix<T>> {
    check_hessian_index(form, i)?;
    let n = i + 1;
    // Entries depend only on p + q.
    let by_sum: Vec<BivariateForm<T>> = (0..=2 * i)
        .map(|k| OperatorPoly::monomial(k, 2 * i - k).apply(form))
        .collect();
    let entries = (0..n * n).map(|idx| by_sum[idx / n + idx % n].clone()).collect();
    Ok(FormMatrix { size: n, entries })
}

/// The exponent `⌊(i+1)/2⌋` in the sign of `H^F_i`; it is the sign of the
/// order-reversing permutation on `i + 1` letters.
pub fn hessian_sign_exponent(i: usize) -> usize {
    i.div_ceil(2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HessianPoly<T> {
    pub i: usize,
    pub poly: BivariateForm<T>,
}

impl<T: Scalar> HessianPoly<T> {
    /// `D_i = (i+1)(d-2i)`.
    pub fn expected_degree(d: usize, i: usize) -> usize {
        (i + 1) * (d - 2 * i)
    }
}

/// `H^F_i = (-1)^{⌊(i+1)/2⌋} det Hess_i(F)`, with `H^F_0 = F`.
pub fn hessian_polynomial<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<HessianPoly<T>> {
    check_hessian_index(form, i)?;
    // H_i(λF) = λ^{i+1} H_i(F): work with small integer coefficients.
    let mono = form.monomial_coeffs();
    let mut shrunk = mono.clone();
    T::shrink_positive(&mut shrunk);
    let lambda = match mono.iter().position(|c| !c.is_zero()) {
        Some(k) => shrunk[k].clone() / mono[k].clone(),
        None => T::one(),
    };
    let det = hessian_matrix(&BivariateForm::from_monomial_coeffs(shrunk)?, i)?.det();
    let undo = (0..=i).fold(sign_power::<T>(hessian_sign_exponent(i)), |acc, _| acc / lambda.clone());
    Ok(HessianPoly { i, poly: det.scale(&undo) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    /// `X, Y > 0`.
    Open,
    /// `X, Y ≥ 0`, not both zero.
    Closed,
}

impl Quadrant {
    pub fn label(self) -> &'static str {
        match self {
            Quadrant::Open => "open",
            Quadrant::Closed => "closed",
        }
    }
}

/// Positivity of a form on both quadrants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrantVerdict {
    pub open: bool,
    pub closed: bool,
}

impl QuadrantVerdict {
    pub fn get(self, quadrant: Quadrant) -> bool {
        match quadrant {
            Quadrant::Open => self.open,
            Quadrant::Closed => self.closed,
        }
    }
}

/// Decides `H > 0` on both quadrants exactly.
///
/// With `h(t) = H(t, 1)`: on the open quadrant `H > 0` iff `h` has no roots
/// on `(0, ∞)` and `h(1) > 0`; the closed quadrant also needs `H(1,0) > 0`
/// and `H(0,1) > 0`. The zero form is never positive.
pub fn quadrant_positivity<T: Scalar>(h: &BivariateForm<T>) -> QuadrantVerdict {
    if h.is_zero() {
        return QuadrantVerdict { open: false, closed: false };
    }
    let mono = h.monomial_coeffs();
    let at_x = mono.last().unwrap().is_positive();
    let at_y = mono[0].is_positive();
    let dehom = UniPoly::new(mono);
    if !dehom.eval(&T::one()).is_positive() {
        return QuadrantVerdict { open: false, closed: false };
    }
    let open = dehom
        .count_roots_positive_axis(false)
        .map(|rc| rc.positive == 0)
        .unwrap_or(false);
    QuadrantVerdict { open, closed: open && at_x && at_y }
}

/// Whether `H > 0` on the quadrant; see [`quadrant_positivity`].
pub fn positive_on_quadrant<T: Scalar>(h: &BivariateForm<T>, quadrant: Quadrant) -> bool {
    quadrant_positivity(h).get(quadrant)
}

/// Hessian criterion for ordinary HRR up to degree `i` on the cone:
/// `H_j > 0` on the quadrant for `0 ≤ j ≤ min(i, s-1)`.
pub fn decide_ordinary_hrr_cone<T: Scalar>(form: &BivariateForm<T>, i: usize, quadrant: Quadrant) -> Result<bool> {
    require_nonzero(form)?;
    let s = sperner(form)?;
    for j in 0..=i.min(s - 1) {
        if !positive_on_quadrant(&hessian_polynomial(form, j)?.poly, quadrant) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A subset `J ⊆ [n]` of size `m` and its partition data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionData {
    /// 1-based, strictly increasing.
    pub subset: Vec<usize>,
    pub lambda: Vec<usize>,
    /// Conjugate partition, padded to `n - m` parts.
    pub lambda_conj: Vec<usize>,
    pub size: usize,
    /// Semistandard tableaux of shape `lambda_conj` with entries in `[n-m]`.
    pub n_prime: u64,
}

/// `λ_k = i_{m-k+1} - (m-k+1)` and its conjugate `λ'_k = #{λ_j ≥ k}`.
pub fn subset_to_partition(subset: &[usize], m: usize, n: usize) -> Result<PartitionData> {
    if subset.len() != m || m > n {
        return Err(Error::Domain(format!("{subset:?} is not a {m}-subset of [{n}]")));
    }
    if subset.first().is_some_and(|&j| j == 0)
        || subset.last().is_some_and(|&j| j > n)
        || subset.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::Domain(format!("{subset:?} is not a strictly increasing subset of [{n}]")));
    }
    let lambda: Vec<usize> = (1..=m).map(|k| subset[m - k] - (m - k + 1)).collect();
    let lambda_conj: Vec<usize> = (1..=n - m).map(|k| lambda.iter().filter(|&&l| l >= k).count()).collect();
    let size = lambda.iter().sum();
    let n_prime = ssyt_count(&lambda_conj, n - m)?;
    Ok(PartitionData { subset: subset.to_vec(), lambda, lambda_conj, size, n_prime })
}

fn check_partition(shape: &[usize]) -> Result<()> {
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain(format!("{shape:?} is not a partition")));
    }
    Ok(())
}

/// Number of semistandard Young tableaux of `shape` with entries in
/// `1..=bound`, by `Π_{i<j≤bound} (λ_i - λ_j - i + j) / (j - i)`.
///
/// Shapes with more than `bound` nonzero rows have no such tableaux.
pub fn ssyt_count(shape: &[usize], bound: usize) -> Result<u64> {
    check_partition(shape)?;
    let parts: Vec<usize> = shape.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() > bound {
        return Ok(0);
    }
    let mut padded = parts;
    padded.resize(bound, 0);
    let mut value = BigRational::one();
    for i in 0..bound {
        for j in i + 1..bound {
            let num = padded[i] as i64 - padded[j] as i64 + (j - i) as i64;
            value *= BigRational::new(BigInt::from(num), BigInt::from((j - i) as i64));
        }
    }
    if !value.is_integer() {
        return Err(Error::Invariant(format!("tableau count {value} for {shape:?} is not an integer")));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Invariant(format!("tableau count {value} out of range")))
}

/// Largest shape (in cells) the exhaustive tableau count accepts.
pub const BRUTE_FORCE_CELL_CAP: usize = 16;

/// Counts semistandard tableaux by filling cells row by row: rows weakly
/// increase, columns strictly increase.
pub fn ssyt_count_bruteforce(shape: &[usize], bound: usize) -> Result<u64> {
    check_partition(shape)?;
    let cells: usize = shape.iter().sum();
    if cells > BRUTE_FORCE_CELL_CAP {
        return Err(Error::Resource(format!(
            "{cells} cells exceed the enumeration cap of {BRUTE_FORCE_CELL_CAP}"
        )));
    }
    let positions: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();

    fn fill(k: usize, positions: &[(usize, usize)], grid: &mut [Vec<usize>], bound: usize) -> u64 {
        let Some(&(r, c)) = positions.get(k) else { return 1 };
        let low_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let low_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in low_row.max(low_col)..=bound {
            grid[r][c] = v;
            total += fill(k + 1, positions, grid, bound);
        }
        total
    }

    Ok(fill(0, &positions, &mut grid, bound))
}

/// One summand `N'_J Δ_J X^{|λ(J)|} Y^{D_i - |λ(J)|}` of the expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerTerm<T> {
    pub partition: PartitionData,
    /// The maximal minor `Δ_J(φ^i_d(F))`.
    pub minor: T,
    pub x_exponent: usize,
    /// Prefactor times `N'_J` times the minor.
    pub coefficient: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PluckerExpansion<T> {
    pub i: usize,
    /// `(d!/(d-2i)!)^{i+1}`.
    pub prefactor: T,
    /// One term per `(i+1)`-subset of `[d-i+1]`, colex order.
    pub terms: Vec<PluckerTerm<T>>,
    pub poly: BivariateForm<T>,
}

/// `H^F_i` rebuilt from the Plücker coordinates of `φ^i_d(F)`.
pub fn plucker_expansion<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<PluckerExpansion<T>> {
    check_hessian_index(form, i)?;
    let d = form.degree();
    let phi = toeplitz(form, i)?.matrix;
    let (m, n) = (i + 1, d - i + 1);
    let top = HessianPoly::<T>::expected_degree(d, i);
    let ratio = T::falling_factorial(d, 2 * i);
    let prefactor = (0..m).fold(T::one(), |acc, _| acc * ratio.clone());
    let all_rows: Vec<usize> = (0..m).collect();
    let mut mono = vec![T::zero(); top + 1];
    let mut terms = Vec::new();
    for cols in subsets_colex(n, m) {
        let minor = phi.minor(&all_rows, &cols)?;
        let one_based: Vec<usize> = cols.iter().map(|c| c + 1).collect();
        let partition = subset_to_partition(&one_based, m, n)?;
        let x_exponent = partition.size;
        let coefficient = prefactor.clone() * T::from_int(partition.n_prime as i64) * minor.clone();
        mono[x_exponent] = mono[x_exponent].clone() + coefficient.clone();
        terms.push(PluckerTerm { partition, minor, x_exponent, coefficient });
    }
    let poly = BivariateForm::from_monomial_coeffs(mono)?;
    Ok(PluckerExpansion { i, prefactor, terms, poly })
}

/// Checks `P_i · Hess_i(F) = d!/(d-2i)! · (φ_d(F) · W_{d-2i})_{I,J}` with
/// `I = {0..i}`, `J = {i..2i}`, on `truncation × truncation` corners of the
/// bi-infinite matrices. `φ_d(F) = (c_{q-p})` and `W` is the weighted path
/// matrix `(binom(d-2i, p-q) X^{p-q} Y^{d-2i-p+q})`.
///
/// The inner sum runs over indices up to `d`, so `truncation` must be at
/// least `d + 1` for the finite product to be exact.
pub fn path_matrix_identity_check<T: Scalar>(form: &BivariateForm<T>, i: usize, truncation: usize) -> Result<bool> {
    check_hessian_index(form, i)?;
    let d = form.degree();
    if truncation < d + 1 {
        return Err(Error::Resource(format!(
            "truncation {truncation} is below d + 1 = {}, the product would be cut short",
            d + 1
        )));
    }
    let e = d - 2 * i;
    let toeplitz_entry = |p: usize, q: usize| form.coeff(q as isize - p as isize);
    let path_weight = |p: usize, q: usize| -> HomPoly<T> {
        let mut coeffs = vec![T::zero(); e + 1];
        if p >= q && p - q <= e {
            coeffs[p - q] = T::binomial(e, p - q);
        }
        HomPoly::new(coeffs)
    };
    let scale = T::falling_factorial(d, 2 * i);
    let hess = hessian_matrix(form, i)?;
    for a in 0..=i {
        for b in 0..=i {
            let mut acc = HomPoly::zero(e);
            for k in 0..truncation {
                let c = toeplitz_entry(a, k);
                if !c.is_zero() {
                    acc = acc.add(&path_weight(k, i + b).scale(&c));
                }
            }
            if acc.scale(&scale) != hess.get(i - a, b).to_hom() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Form, Rational};

    fn mono(a: &[i64]) -> Form {
        Form::from_monomial_coeffs(a.iter().map(|&x| rat(x, 1)).collect()).unwrap()
    }

    fn witness() -> Form {
        mono(&[1, 3, 1])
    }

    fn x2y() -> Form {
        mono(&[0, 0, 1, 0])
    }

    fn constant(v: i64) -> Form {
        Form::new(vec![rat(v, 1)]).unwrap()
    }

    #[test]
    fn hessian_matrix_examples() {
        let h = hessian_matrix(&witness(), 1).unwrap();
        assert_eq!(h.get(0, 0), &constant(2));
        assert_eq!(h.get(0, 1), &constant(3));
        assert_eq!(h.get(1, 1), &constant(2));
        // Hess_1(X²Y) = [[∂²/∂Y², ∂²/∂X∂Y], [∂²/∂X∂Y, ∂²/∂X²]] = [[0, 2X], [2X, 2Y]]
        let h = hessian_matrix(&x2y(), 1).unwrap();
        assert_eq!(h.get(0, 0), &mono(&[0, 0]));
        assert_eq!(h.get(0, 1), &mono(&[0, 2]));
        assert_eq!(h.get(1, 1), &mono(&[2, 0]));
        assert!(h.is_symmetric());
        let f = mono(&[3, -1, 4, 1, -5]);
        assert_eq!(hessian_matrix(&f, 0).unwrap().get(0, 0), &f);
        assert!(matches!(hessian_matrix(&witness(), 2), Err(Error::Index(_))));
    }

    #[test]
    fn hessian_polynomial_examples() {
        assert_eq!(hessian_polynomial(&witness(), 1).unwrap().poly, constant(5));
        assert_eq!(hessian_polynomial(&x2y(), 1).unwrap().poly, mono(&[0, 0, 4]));
        assert_eq!(hessian_polynomial(&mono(&[1, 0, 1]), 1).unwrap().poly, constant(-4));
        let f = mono(&[3, -1, 4, 1, -5]);
        assert_eq!(hessian_polynomial(&f, 0).unwrap().poly, f);
    }

    #[test]
    fn sign_exponent_is_reversal_sign() {
        for i in 0..8 {
            let n = i + 1;
            let inversions = n * (n - 1) / 2;
            assert_eq!(hessian_sign_exponent(i) % 2, inversions % 2);
        }
    }

    #[test]
    fn quadrant_examples() {
        let four_x2 = mono(&[0, 0, 4]);
        assert!(positive_on_quadrant(&four_x2, Quadrant::Open));
        assert!(!positive_on_quadrant(&four_x2, Quadrant::Closed));
        let cube = mono(&[1, 3, 3, 1]);
        assert!(positive_on_quadrant(&cube, Quadrant::Open));
        assert!(positive_on_quadrant(&cube, Quadrant::Closed));
        assert!(!positive_on_quadrant(&constant(-4), Quadrant::Open));
        assert!(!positive_on_quadrant(&constant(-4), Quadrant::Closed));
        assert!(!positive_on_quadrant(&Form::zero(2), Quadrant::Open));
        // (X - Y)² touches zero on the diagonal.
        assert!(!positive_on_quadrant(&mono(&[1, -2, 1]), Quadrant::Open));
        // X² - XY + Y² is positive everywhere.
        assert!(positive_on_quadrant(&mono(&[1, -1, 1]), Quadrant::Closed));
    }

    #[test]
    fn cone_decision_examples() {
        assert!(decide_ordinary_hrr_cone(&witness(), 1, Quadrant::Closed).unwrap());
        assert!(decide_ordinary_hrr_cone(&x2y(), 1, Quadrant::Open).unwrap());
        assert!(!decide_ordinary_hrr_cone(&x2y(), 1, Quadrant::Closed).unwrap());
        for q in [Quadrant::Open, Quadrant::Closed] {
            assert!(!decide_ordinary_hrr_cone(&mono(&[1, 0, 1]), 1, q).unwrap());
        }
        assert!(matches!(decide_ordinary_hrr_cone(&Form::zero(2), 1, Quadrant::Open), Err(Error::Domain(_))));
    }

    #[test]
    fn partition_examples() {
        let p = subset_to_partition(&[1, 2, 3], 3, 6).unwrap();
        assert_eq!((p.lambda, p.size), (vec![0, 0, 0], 0));
        let p = subset_to_partition(&[2, 4], 2, 4).unwrap();
        assert_eq!((p.lambda.clone(), p.lambda_conj.clone()), (vec![2, 1], vec![2, 1]));
        let p = subset_to_partition(&[4, 5, 6], 3, 6).unwrap();
        assert_eq!((p.lambda, p.size), (vec![3, 3, 3], 9));
        assert!(subset_to_partition(&[2, 2], 2, 4).is_err());
        assert!(subset_to_partition(&[0, 2], 2, 4).is_err());
        assert!(subset_to_partition(&[1, 5], 2, 4).is_err());
        assert!(subset_to_partition(&[1], 2, 4).is_err());
    }

    #[test]
    fn ssyt_examples() {
        for count in [ssyt_count, ssyt_count_bruteforce] {
            assert_eq!(count(&[], 3).unwrap(), 1);
            assert_eq!(count(&[2, 1], 2).unwrap(), 2);
            assert_eq!(count(&[1], 7).unwrap(), 7);
            assert_eq!(count(&[1, 1, 1], 2).unwrap(), 0);
        }
        assert!(ssyt_count(&[1, 2], 3).is_err());
        assert!(matches!(ssyt_count_bruteforce(&[5, 5, 5, 2], 3), Err(Error::Resource(_))));
    }

    #[test]
    fn plucker_examples() {
        let e = plucker_expansion(&witness(), 1).unwrap();
        assert_eq!(e.prefactor, rat(4, 1));
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].minor, rat(5, 4));
        assert_eq!(e.terms[0].partition.n_prime, 1);
        assert_eq!(e.poly, constant(5));
        let sq = mono(&[1, 2, 1]);
        assert_eq!(plucker_expansion(&sq, 0).unwrap().poly, sq);
        let e = plucker_expansion(&x2y(), 1).unwrap();
        assert_eq!(e.poly, mono(&[0, 0, 4]));
        let last = e.terms.last().unwrap();
        assert_eq!(last.x_exponent, 2);
        assert_eq!(last.minor, rat(1, 9));
    }

    #[test]
    fn path_identity_examples() {
        assert!(path_matrix_identity_check(&witness(), 1, 3).unwrap());
        assert!(path_matrix_identity_check(&mono(&[2, -3, 5, 1]), 0, 4).unwrap());
        let f = Form::new((0..7).map(|k| rat(k * k - 3, k + 1)).collect::<Vec<Rational>>()).unwrap();
        for i in 0..=3 {
            assert!(path_matrix_identity_check(&f, i, 10).unwrap());
        }
        assert!(matches!(path_matrix_identity_check(&f, 2, 5), Err(Error::Resource(_))));
    }
}
