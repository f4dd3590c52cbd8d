//! The scalar abstraction every algorithm in this crate is written against.
//!
//! Decisions (signs, zero tests, ranks) are only trustworthy for an exact
//! field. [`BigRational`] is the scalar used by the CLI and the verification
//! harness; `f64` is supported so the same code can be used for quick
//! approximate exploration.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// An ordered field with conversions from small integers.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Whether arithmetic on this type is exact. Approximate scalars still run
    /// every algorithm, but zero tests are then at the mercy of rounding.
    const EXACT: bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("small integers are representable")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// n! as a scalar.
    fn factorial(n: usize) -> Self {
        Self::falling_factorial(n, n)
    }

    /// n (n-1) ... (n-k+1), i.e. n! / (n-k)!. Zero when k > n.
    fn falling_factorial(n: usize, k: usize) -> Self {
        if k > n {
            return Self::zero();
        }
        (0..k).fold(Self::one(), |acc, j| acc * Self::from_int((n - j) as i64))
    }

    fn binomial(n: usize, k: usize) -> Self {
        if k > n {
            return Self::zero();
        }
        Self::falling_factorial(n, k) / Self::factorial(k)
    }

    /// Rescales `coeffs` by some positive constant to keep them small.
    /// Signs and ratios are preserved; the default leaves them untouched.
    fn shrink_positive(_coeffs: &mut [Self]) {}
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    /// Divides out the positive rational content, leaving coprime integers.
    fn shrink_positive(coeffs: &mut [Self]) {
        let nonzero = || coeffs.iter().filter(|c| !c.is_zero());
        let denom_lcm = nonzero().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer_gcd = nonzero().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&denom_lcm / c.denom()))));
        if numer_gcd.is_zero() {
            return;
        }
        let factor = BigRational::new(denom_lcm, numer_gcd.abs());
        for c in coeffs.iter_mut() {
            *c = &*c * &factor;
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }
}

/// -1 raised to `exp`.
pub(crate) fn sign_power<T: Scalar>(exp: usize) -> T {
    if exp.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(BigRational::factorial(5), BigRational::from_int(120));
        assert_eq!(BigRational::falling_factorial(6, 2), BigRational::from_int(30));
        assert_eq!(BigRational::binomial(8, 3), BigRational::from_int(56));
        assert_eq!(BigRational::binomial(3, 4), BigRational::from_int(0));
        assert_eq!(f64::binomial(10, 5), 252.0);
        assert_eq!(BigRational::from_ratio(6, 4).to_string(), "3/2");
    }

    #[test]
    fn shrink_keeps_signs_and_ratios() {
        let mut v: Vec<BigRational> = [(3, 4), (-9, 2), (0, 1), (15, 8)]
            .iter()
            .map(|&(p, q)| BigRational::from_ratio(p, q))
            .collect();
        BigRational::shrink_positive(&mut v);
        let expect: Vec<BigRational> = [2, -12, 0, 5].iter().map(|&n| BigRational::from_int(n)).collect();
        assert_eq!(v, expect);
    }
}
