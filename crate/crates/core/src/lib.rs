//! Hessian and Toeplitz invariants of real bivariate forms.
//!
//! A degree-`d` form `F = Σ binom(d,k) c_k X^k Y^(d-k)` determines an Artinian
//! Gorenstein algebra `A_F`. This crate computes, in exact arithmetic, the
//! objects that decide the Hodge-Riemann relations of `A_F` on the positive
//! quadrant of linear forms: higher Hessians, the normalized Toeplitz
//! matrices of the coefficient sequence, their minors and total positivity,
//! and Lefschetz Gram matrices for explicit linear forms. The [`cattani`]
//! module checks that the Hessian criterion and the Toeplitz criterion agree.
//!
//! Everything is generic over a [`Scalar`] field. The aliases below pin the
//! exact rational instantiation that all decisions should use.

pub mod apolarity;
pub mod cattani;
pub mod error;
pub mod forms;
pub mod hessian;
pub mod kernel;
pub mod scalar;
pub mod totalpos;

pub use error::{Error, Result};
pub use scalar::Scalar;

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;
pub type RatMatrix = kernel::Matrix<Rational>;
pub type RatPoly = kernel::UniPoly<Rational>;
pub type Form = forms::BivariateForm<Rational>;
pub type Operator = forms::OperatorPoly<Rational>;
pub type Linear = forms::LinearForm<Rational>;

pub type FloatMatrix = kernel::Matrix<f64>;
pub type FloatForm = forms::BivariateForm<f64>;

/// The rational `numer / denom`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}
