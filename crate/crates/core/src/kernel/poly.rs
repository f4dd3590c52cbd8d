use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Univariate polynomial with coefficients in ascending degree.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

/// Outcome of counting distinct real roots on the positive half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCount {
    /// Distinct roots in the open interval (0, ∞).
    pub positive: usize,
    /// Whether 0 is a root; only filled in when requested.
    pub zero_is_root: Option<bool>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(T::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial t - root.
    pub fn linear_root(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(T::one() / l.clone())),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Sturm sequence p, p', -rem(p, p'), ..., each term rescaled by a
    /// positive constant, which leaves every sign pattern unchanged.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let shrink = |mut p: Self| {
            T::shrink_positive(&mut p.coeffs);
            p
        };
        let mut seq = vec![shrink(self.clone())];
        let mut next = shrink(self.derivative());
        while !next.is_zero() {
            let prev = seq.last().unwrap().clone();
            seq.push(next.clone());
            next = shrink(prev.div_rem(&next).1.neg());
        }
        seq
    }

    /// Number of distinct real roots in (0, ∞).
    ///
    /// Any root at the origin is divided out first. No sign change among the
    /// coefficients means no positive root; otherwise the count comes from a
    /// Sturm sequence, which counts distinct roots even without reducing to
    /// the square-free part.
    pub fn count_roots_positive_axis(&self, include_endpoint_zero: bool) -> Result<RootCount> {
        if self.is_zero() {
            return Err(Error::Domain("root count of the zero polynomial".into()));
        }
        let lowest = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let zero_is_root = include_endpoint_zero.then_some(lowest > 0);
        if sign_changes(self.coeffs.iter()) == 0 {
            return Ok(RootCount { positive: 0, zero_is_root });
        }
        let shifted = Self::new(self.coeffs[lowest..].to_vec());
        let seq = shifted.sturm_sequence();
        let at_zero = sign_changes(seq.iter().filter_map(|p| p.coeffs.first()));
        let at_infinity = sign_changes(seq.iter().filter_map(|p| p.leading()));
        Ok(RootCount { positive: at_zero - at_infinity, zero_is_root })
    }
}

fn sign_changes<'a, T: Scalar>(values: impl Iterator<Item = &'a T>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values.filter(|v| !v.is_zero()) {
        let positive = v.is_positive();
        if last.is_some_and(|l| l != positive) {
            changes += 1;
        }
        last = Some(positive);
    }
    changes
}
