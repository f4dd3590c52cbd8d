//! The algebra `A_F = R / Ann(F)` through exact linear algebra.
//!
//! Two-variable duality makes a Gröbner engine unnecessary: `dim A_i` is the
//! rank of the degree-`i` catalecticant, and an element `α ∈ A_i` is
//! represented faithfully by the form `α ∘ F`. Multiplication maps, their
//! kernels and the Lefschetz pairings are all computed on those images.

use crate::error::{Error, Result};
use crate::forms::{BivariateForm, LinearForm, OperatorPoly};
use crate::kernel::Matrix;
use crate::scalar::{sign_power, Scalar};

/// The normalized Toeplitz matrix `φ^i_d(F)`: `(i+1) × (d-i+1)`, row `r`
/// (0-based) holding `c_{i-r}, ..., c_{d-r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzOfForm<T> {
    pub i: usize,
    pub d: usize,
    pub matrix: Matrix<T>,
}

pub fn toeplitz<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<ToeplitzOfForm<T>> {
    let d = form.degree();
    if i > d {
        return Err(Error::Index(format!("Toeplitz index {i} exceeds degree {d}")));
    }
    let matrix = Matrix::from_fn(i + 1, d - i + 1, |r, q| form.coeff(i as isize - r as isize + q as isize));
    Ok(ToeplitzOfForm { i, d, matrix })
}

/// The Toeplitz matrix of maximal size, `φ^{⌊d/2⌋}_d(F)`.
pub fn max_toeplitz<T: Scalar>(form: &BivariateForm<T>) -> Matrix<T> {
    toeplitz(form, form.degree() / 2).expect("floor(d/2) <= d").matrix
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub h: Vec<usize>,
    pub sperner: usize,
}

impl HilbertData {
    /// `(1, 2, ..., s, ..., s, ..., 2, 1)` for socle degree `d`.
    pub fn closed_form(d: usize, sperner: usize) -> Vec<usize> {
        (0..=d).map(|i| (i + 1).min(sperner).min(d - i + 1)).collect()
    }
}

pub(crate) fn require_nonzero<T: Scalar>(form: &BivariateForm<T>) -> Result<()> {
    if form.is_zero() {
        return Err(Error::Domain("the zero form has no Sperner number".into()));
    }
    Ok(())
}

/// Hilbert function `h_i = rank φ^{min(i, d-i)}` and the Sperner number.
pub fn hilbert_function<T: Scalar>(form: &BivariateForm<T>) -> Result<HilbertData> {
    require_nonzero(form)?;
    let d = form.degree();
    let h: Vec<usize> = (0..=d)
        .map(|i| toeplitz(form, i.min(d - i)).map(|t| t.matrix.rank()))
        .collect::<Result<_>>()?;
    let sperner = h.iter().copied().max().unwrap_or(0);
    if h != HilbertData::closed_form(d, sperner) {
        return Err(Error::Invariant(format!(
            "Hilbert function {h:?} is not of the form (1,2,..,s,..,s,..,2,1)"
        )));
    }
    Ok(HilbertData { h, sperner })
}

pub fn sperner<T: Scalar>(form: &BivariateForm<T>) -> Result<usize> {
    require_nonzero(form)?;
    Ok(max_toeplitz(form).rank())
}

/// Order in which the monomials of a degree are offered to the basis
/// selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// `x^i, x^{i-1} y, ..., y^i` (lexicographic with `x > y`).
    #[default]
    XFirst,
    /// `y^i, x y^{i-1}, ..., x^i`.
    YFirst,
}

impl MonomialOrder {
    /// x-exponents of the degree-`i` monomials in this order.
    pub fn x_exponents(self, i: usize) -> Vec<usize> {
        match self {
            MonomialOrder::XFirst => (0..=i).rev().collect(),
            MonomialOrder::YFirst => (0..=i).collect(),
        }
    }
}

/// A basis of `A_i` made of monomials `x^p y^(i-p)`, stored by `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub degree: usize,
    pub x_exponents: Vec<usize>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.x_exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_exponents.is_empty()
    }

    pub fn operators<T: Scalar>(&self) -> Vec<OperatorPoly<T>> {
        self.x_exponents
            .iter()
            .map(|&p| OperatorPoly::monomial(p, self.degree - p))
            .collect()
    }

    /// Human-readable monomial names such as `x^2y`.
    pub fn labels(&self) -> Vec<String> {
        self.x_exponents
            .iter()
            .map(|&p| monomial_label(p, self.degree - p))
            .collect()
    }
}

pub fn monomial_label(px: usize, py: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", part("x", px), part("y", py));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// The catalecticant `R_i → Q_{d-i}` with columns in the given monomial
/// order. The column of `x^p y^(i-p)` is `c_p, ..., c_{p+d-i}`, which is
/// `(x^p y^(i-p)) ∘ F` up to the factor `d!/(d-i)!`. Zero rows when `i > d`.
pub fn catalecticant<T: Scalar>(form: &BivariateForm<T>, i: usize, order: MonomialOrder) -> Matrix<T> {
    let d = form.degree();
    let cols = order.x_exponents(i);
    let rows = if i > d { 0 } else { d - i + 1 };
    Matrix::from_fn(rows, cols.len(), |m, c| form.coeff((cols[c] + m) as isize))
}

pub fn monomial_basis<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<MonomialBasis> {
    monomial_basis_ordered(form, i, MonomialOrder::XFirst)
}

/// The first monomials in `order` whose images in `A_i` are independent:
/// the pivot columns of the reduced catalecticant.
pub fn monomial_basis_ordered<T: Scalar>(
    form: &BivariateForm<T>,
    i: usize,
    order: MonomialOrder,
) -> Result<MonomialBasis> {
    require_nonzero(form)?;
    let d = form.degree();
    if i > d {
        return Err(Error::Index(format!("degree {i} exceeds socle degree {d}")));
    }
    let exps = order.x_exponents(i);
    let (_, pivots) = catalecticant(form, i, order).rref();
    Ok(MonomialBasis {
        degree: i,
        x_exponents: pivots.into_iter().map(|c| exps[c]).collect(),
    })
}

/// Lowest-degree element of `Ann(F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilator<T> {
    pub degree: usize,
    pub generator: OperatorPoly<T>,
}

/// Smallest `e` whose catalecticant has a kernel, with one kernel element
/// as an operator. This degree equals the Sperner number.
pub fn min_annihilator_degree<T: Scalar>(form: &BivariateForm<T>) -> Result<Annihilator<T>> {
    require_nonzero(form)?;
    for e in 0..=form.degree() + 1 {
        let cat = catalecticant(form, e, MonomialOrder::XFirst);
        if let Some(v) = cat.kernel_basis().into_iter().next() {
            // Kernel coordinates follow x^e, x^{e-1}y, ...; operator
            // coefficients are indexed by the x-exponent.
            let coeffs = v.into_iter().rev().collect();
            return Ok(Annihilator { degree: e, generator: OperatorPoly::new(coeffs)? });
        }
    }
    unreachable!("every operator of degree d+1 annihilates F")
}

/// Matrix of `×g : A_i → A_{i+deg g}` in the given basis of `A_i`.
///
/// The target is embedded in `Q_{d-i-deg g}` via `β ↦ β ∘ F`, so column `p`
/// is the normalized coefficient vector of `(g·m_p) ∘ F` (no rows when the
/// target degree exceeds `d`).
pub fn multiplication_matrix<T: Scalar>(
    form: &BivariateForm<T>,
    g: &OperatorPoly<T>,
    basis: &MonomialBasis,
) -> Matrix<T> {
    let d = form.degree();
    let target = basis.degree + g.degree();
    let rows = if target > d { 0 } else { d - target + 1 };
    let images: Vec<BivariateForm<T>> = basis
        .operators()
        .iter()
        .map(|m| g.mul(m).apply(form))
        .collect();
    Matrix::from_fn(rows, basis.len(), |r, c| images[c].normalized_coeffs()[r].clone())
}

/// `(g·m_p·m_q) ∘ F` over the basis; `deg g + 2i` must equal `d`.
fn pairing_matrix<T: Scalar>(
    form: &BivariateForm<T>,
    g: &OperatorPoly<T>,
    basis: &MonomialBasis,
    sign: T,
) -> Matrix<T> {
    let ops = basis.operators();
    Matrix::from_fn(basis.len(), basis.len(), |p, q| {
        let value = g.mul(&ops[p]).mul(&ops[q]).apply(form);
        sign.clone() * value.scalar_value().expect("full-degree pairing").clone()
    })
}

/// A (mixed) Lefschetz form on `A_i` in a monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    pub degree: usize,
    pub basis: MonomialBasis,
    pub matrix: Matrix<T>,
}

fn check_lefschetz_degree<T: Scalar>(form: &BivariateForm<T>, i: usize) -> Result<()> {
    let d = form.degree();
    if i > d / 2 {
        return Err(Error::Index(format!("Lefschetz degree {i} exceeds floor({d}/2)")));
    }
    Ok(())
}

fn check_tuple<T: Scalar>(form: &BivariateForm<T>, tuple: &[LinearForm<T>]) -> Result<()> {
    if tuple.len() != form.degree() + 1 {
        return Err(Error::Shape(format!(
            "mixed forms need d+1 = {} linear forms, got {}",
            form.degree() + 1,
            tuple.len()
        )));
    }
    Ok(())
}

fn product<T: Scalar>(factors: &[LinearForm<T>]) -> OperatorPoly<T> {
    factors
        .iter()
        .fold(OperatorPoly::one(), |acc, l| acc.mul(&l.to_operator()))
}

/// `(α, β) ↦ (-1)^i (ℓ^{d-2i} α β) ∘ F` on `A_i`.
pub fn lefschetz_gram<T: Scalar>(
    form: &BivariateForm<T>,
    ell: &LinearForm<T>,
    i: usize,
) -> Result<GramMatrix<T>> {
    lefschetz_gram_in(form, ell, &monomial_basis(form, i)?)
}

pub fn lefschetz_gram_in<T: Scalar>(
    form: &BivariateForm<T>,
    ell: &LinearForm<T>,
    basis: &MonomialBasis,
) -> Result<GramMatrix<T>> {
    let i = basis.degree;
    check_lefschetz_degree(form, i)?;
    let g = ell.to_operator().pow(form.degree() - 2 * i);
    Ok(GramMatrix { degree: i, basis: basis.clone(), matrix: pairing_matrix(form, &g, basis, sign_power(i)) })
}

/// `(α, β) ↦ (-1)^i (ℓ_1 ⋯ ℓ_{d-2i} α β) ∘ F`; `ℓ_0` is not used here.
pub fn mixed_lefschetz_gram<T: Scalar>(
    form: &BivariateForm<T>,
    tuple: &[LinearForm<T>],
    i: usize,
) -> Result<GramMatrix<T>> {
    check_tuple(form, tuple)?;
    mixed_lefschetz_gram_in(form, tuple, &monomial_basis(form, i)?)
}

pub fn mixed_lefschetz_gram_in<T: Scalar>(
    form: &BivariateForm<T>,
    tuple: &[LinearForm<T>],
    basis: &MonomialBasis,
) -> Result<GramMatrix<T>> {
    check_tuple(form, tuple)?;
    let i = basis.degree;
    check_lefschetz_degree(form, i)?;
    let g = product(&tuple[1..=form.degree() - 2 * i]);
    Ok(GramMatrix { degree: i, basis: basis.clone(), matrix: pairing_matrix(form, &g, basis, sign_power(i)) })
}

/// `P_{i,ℓ} = ker(×ℓ^{d-2i+1} : A_i → A_{d-i+1})` in basis coordinates;
/// empty above `⌊d/2⌋`.
pub fn primitive_basis<T: Scalar>(
    form: &BivariateForm<T>,
    ell: &LinearForm<T>,
    i: usize,
) -> Result<Vec<Vec<T>>> {
    if i > form.degree() / 2 {
        return Ok(Vec::new());
    }
    primitive_basis_in(form, ell, &monomial_basis(form, i)?)
}

pub fn primitive_basis_in<T: Scalar>(
    form: &BivariateForm<T>,
    ell: &LinearForm<T>,
    basis: &MonomialBasis,
) -> Result<Vec<Vec<T>>> {
    let d = form.degree();
    if basis.degree > d / 2 {
        return Ok(Vec::new());
    }
    let g = ell.to_operator().pow(d - 2 * basis.degree + 1);
    Ok(multiplication_matrix(form, &g, basis).kernel_basis())
}

/// `P_{i,𝓛} = ker(×ℓ_0 ℓ_1 ⋯ ℓ_{d-2i} : A_i → A_{d-i+1})`.
pub fn mixed_primitive_basis<T: Scalar>(
    form: &BivariateForm<T>,
    tuple: &[LinearForm<T>],
    i: usize,
) -> Result<Vec<Vec<T>>> {
    check_tuple(form, tuple)?;
    if i > form.degree() / 2 {
        return Ok(Vec::new());
    }
    mixed_primitive_basis_in(form, tuple, &monomial_basis(form, i)?)
}

pub fn mixed_primitive_basis_in<T: Scalar>(
    form: &BivariateForm<T>,
    tuple: &[LinearForm<T>],
    basis: &MonomialBasis,
) -> Result<Vec<Vec<T>>> {
    check_tuple(form, tuple)?;
    let d = form.degree();
    if basis.degree > d / 2 {
        return Ok(Vec::new());
    }
    let g = product(&tuple[..=d - 2 * basis.degree]);
    Ok(multiplication_matrix(form, &g, basis).kernel_basis())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrrKind {
    Ordinary,
    Mixed,
}

/// Everything decided in one degree `j` of an HRR check.
#[derive(Debug, Clone, PartialEq)]
pub struct HrrDegree<T> {
    pub j: usize,
    pub gram: GramMatrix<T>,
    pub primitive: Vec<Vec<T>>,
    /// The Gram matrix restricted to the primitive subspace.
    pub restricted: Matrix<T>,
    pub nondegenerate: bool,
    pub positive_on_primitive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HrrReport<T> {
    pub kind: HrrKind,
    pub degrees: Vec<HrrDegree<T>>,
    pub holds: bool,
}

fn hrr_degree<T: Scalar>(gram: GramMatrix<T>, primitive: Vec<Vec<T>>) -> Result<HrrDegree<T>> {
    let restricted = gram.matrix.congruence(&primitive)?;
    let positive_on_primitive = restricted.is_positive_definite()?;
    let nondegenerate = !gram.matrix.det()?.is_zero();
    Ok(HrrDegree { j: gram.degree, gram, primitive, restricted, nondegenerate, positive_on_primitive })
}

/// Ordinary HRR up to degree `i` for the pair `(A_F, ℓ)`.
pub fn ordinary_hrr_report<T: Scalar>(
    form: &BivariateForm<T>,
    ell: &LinearForm<T>,
    i: usize,
    order: MonomialOrder,
) -> Result<HrrReport<T>> {
    require_nonzero(form)?;
    if ell.is_zero() {
        return Err(Error::Domain("HRR for the zero linear form".into()));
    }
    let top = i.min(form.degree() / 2);
    let degrees = (0..=top)
        .map(|j| {
            let basis = monomial_basis_ordered(form, j, order)?;
            let gram = lefschetz_gram_in(form, ell, &basis)?;
            let primitive = primitive_basis_in(form, ell, &basis)?;
            hrr_degree(gram, primitive)
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = degrees.iter().all(|deg| deg.positive_on_primitive);
    Ok(HrrReport { kind: HrrKind::Ordinary, degrees, holds })
}

pub fn check_ordinary_hrr<T: Scalar>(form: &BivariateForm<T>, ell: &LinearForm<T>, i: usize) -> Result<bool> {
    Ok(ordinary_hrr_report(form, ell, i, MonomialOrder::XFirst)?.holds)
}

/// Mixed HRR up to degree `i` for `(A_F, 𝓛)`: in each degree the mixed form
/// must be non-degenerate on `A_j` and positive definite on `P_{j,𝓛}`.
pub fn mixed_hrr_report<T: Scalar>(
    form: &BivariateForm<T>,
    tuple: &[LinearForm<T>],
    i: usize,
    order: MonomialOrder,
) -> Result<HrrReport<T>> {
    require_nonzero(form)?;
    check_tuple(form, tuple)?;
    if tuple.iter().any(LinearForm::is_zero) {
        return Err(Error::Domain("mixed HRR with a zero linear form".into()));
    }
    let top = i.min(form.degree() / 2);
    let degrees = (0..=top)
        .map(|j| {
            let basis = monomial_basis_ordered(form, j, order)?;
            let gram = mixed_lefschetz_gram_in(form, tuple, &basis)?;
            let primitive = mixed_primitive_basis_in(form, tuple, &basis)?;
            hrr_degree(gram, primitive)
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = degrees.iter().all(|deg| deg.nondegenerate && deg.positive_on_primitive);
    Ok(HrrReport { kind: HrrKind::Mixed, degrees, holds })
}

pub fn check_mixed_hrr<T: Scalar>(form: &BivariateForm<T>, tuple: &[LinearForm<T>], i: usize) -> Result<bool> {
    Ok(mixed_hrr_report(form, tuple, i, MonomialOrder::XFirst)?.holds)
}
