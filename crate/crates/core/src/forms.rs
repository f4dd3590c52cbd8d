//! Bivariate homogeneous forms, the differential operators acting on them,
//! and linear changes of coordinates.
//!
//! Forms in `X, Y` are stored by their *normalized* coefficients
//! `c_0..c_d`, defined by `F = Σ binom(d,k) c_k X^k Y^(d-k)`. In this basis a
//! Toeplitz matrix of `F` is a plain re-indexing of the coefficient list.
//! Operators are polynomials in the dual variables `x, y`, acting by
//! `x ∘ F = ∂F/∂X` and `y ∘ F = ∂F/∂Y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Homogeneous polynomial in two variables by monomial coefficients:
/// `coeffs[k]` multiplies `U^k V^(deg-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> HomPoly<T> {
    /// Panics when `coeffs` is empty; a homogeneous polynomial has a degree.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs d+1 coefficients");
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![T::zero(); degree + 1])
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    /// `u U + v V`.
    pub fn linear(u: T, v: T) -> Self {
        Self::new(vec![v, u])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// Panics on a degree mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![T::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `Σ h_k u^k v^(deg-k)`: substitute `U := u`, `V := v`.
    pub fn substitute(&self, u: &Self, v: &Self) -> Self {
        let d = self.degree();
        let u_pows: Vec<Self> = (0..=d).scan(Self::one(), |acc, _| {
            let cur = acc.clone();
            *acc = acc.mul(u);
            Some(cur)
        })
        .collect();
        let v_pows: Vec<Self> = (0..=d).scan(Self::one(), |acc, _| {
            let cur = acc.clone();
            *acc = acc.mul(v);
            Some(cur)
        })
        .collect();
        assert_eq!(u.degree(), v.degree(), "substitution must preserve homogeneity");
        let target = d * u.degree();
        let mut out = Self::zero(target);
        for (k, h) in self.coeffs.iter().enumerate().filter(|(_, h)| !h.is_zero()) {
            out = out.add(&u_pows[k].mul(&v_pows[d - k]).scale(h));
        }
        out
    }

    pub fn eval(&self, u: &T, v: &T) -> T {
        let d = self.degree();
        self.coeffs.iter().enumerate().fold(T::zero(), |acc, (k, c)| {
            acc + c.clone() * pow(u, k) * pow(v, d - k)
        })
    }
}

fn pow<T: Scalar>(base: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * base.clone())
}

/// A homogeneous form `F(X, Y)` stored by normalized coefficients.
#[derive(Clone, PartialEq)]
pub struct BivariateForm<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> BivariateForm<T> {
    /// From normalized coefficients `(c_0, ..., c_d)`.
    pub fn new(normalized_coeffs: Vec<T>) -> Result<Self> {
        if normalized_coeffs.is_empty() {
            return Err(Error::Shape("a degree-d form needs d+1 coefficients".into()));
        }
        Ok(Self { coeffs: normalized_coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        Self { coeffs: vec![T::zero(); degree + 1] }
    }

    /// From `a_k`, the coefficient of `X^k Y^(d-k)`.
    pub fn from_monomial_coeffs(monomial: Vec<T>) -> Result<Self> {
        if monomial.is_empty() {
            return Err(Error::Shape("a degree-d form needs d+1 coefficients".into()));
        }
        let d = monomial.len() - 1;
        Ok(Self {
            coeffs: monomial
                .into_iter()
                .enumerate()
                .map(|(k, a)| a / T::binomial(d, k))
                .collect(),
        })
    }

    pub fn from_hom(poly: HomPoly<T>) -> Self {
        Self::from_monomial_coeffs(poly.into_coeffs()).expect("HomPoly is never empty")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn normalized_coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `c_k`, or zero outside `0..=d`.
    pub fn coeff(&self, k: isize) -> T {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_else(T::zero)
    }

    pub fn monomial_coeffs(&self) -> Vec<T> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * T::binomial(d, k))
            .collect()
    }

    pub fn to_hom(&self) -> HomPoly<T> {
        HomPoly::new(self.monomial_coeffs())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// The value of a degree-0 form; `None` otherwise.
    pub fn scalar_value(&self) -> Option<&T> {
        (self.degree() == 0).then(|| &self.coeffs[0])
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.to_hom().eval(x, y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_hom(self.to_hom().mul(&other.to_hom()))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// `G(X, Y) = F(pX + rY, qX + sY)`.
    ///
    /// In matrix terms this substitutes `(X, Y)ᵀ := M (X, Y)ᵀ` with
    /// `M = [[p, r], [q, s]]`, so substituting `M` and then `N` is the same
    /// as substituting `M·N` once.
    pub fn linear_substitute(&self, p: &T, q: &T, r: &T, s: &T) -> Self {
        let new_x = HomPoly::linear(p.clone(), r.clone());
        let new_y = HomPoly::linear(q.clone(), s.clone());
        Self::from_hom(self.to_hom().substitute(&new_x, &new_y))
    }

    /// The shifting operator `F(X + tY, Y)`.
    pub fn shift_s(&self, t: &T) -> Self {
        self.linear_substitute(&T::one(), &T::zero(), t, &T::one())
    }

    /// The double shifting operator `F(X + tY, tX + Y)`.
    pub fn shift_r(&self, t: &T) -> Self {
        self.linear_substitute(&T::one(), t, t, &T::one())
    }
}

impl<T: fmt::Debug> fmt::Debug for BivariateForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("{c:?}")).collect();
        write!(f, "Form(d={}; c=[{}])", self.coeffs.len() - 1, parts.join(", "))
    }
}

/// A differential operator: homogeneous polynomial in `x, y`, with
/// `coeffs[k]` multiplying `x^k y^(e-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly<T> {
    poly: HomPoly<T>,
}

impl<T: Scalar> OperatorPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape("an operator of degree e needs e+1 coefficients".into()));
        }
        Ok(Self { poly: HomPoly::new(coeffs) })
    }

    pub fn one() -> Self {
        Self { poly: HomPoly::one() }
    }

    /// The monomial `x^px y^py`.
    pub fn monomial(px: usize, py: usize) -> Self {
        let mut coeffs = vec![T::zero(); px + py + 1];
        coeffs[px] = T::one();
        Self { poly: HomPoly::new(coeffs) }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn coeffs(&self) -> &[T] {
        self.poly.coeffs()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { poly: self.poly.mul(&other.poly) }
    }

    pub fn pow(&self, e: usize) -> Self {
        Self { poly: self.poly.pow(e) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { poly: self.poly.add(&other.poly) }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { poly: self.poly.scale(s) }
    }

    /// The algebra map `x ↦ px + qy`, `y ↦ rx + sy` applied to this operator.
    pub fn substitute(&self, p: &T, q: &T, r: &T, s: &T) -> Self {
        let new_x = HomPoly::linear(p.clone(), q.clone());
        let new_y = HomPoly::linear(r.clone(), s.clone());
        Self { poly: self.poly.substitute(&new_x, &new_y) }
    }

    /// `f ∘ F`, a form of degree `d - e`; the zero form of degree 0 when the
    /// operator degree exceeds the form degree.
    pub fn apply(&self, form: &BivariateForm<T>) -> BivariateForm<T> {
        let (e, d) = (self.degree(), form.degree());
        if e > d {
            return BivariateForm::zero(0);
        }
        let a = form.monomial_coeffs();
        let mut out = vec![T::zero(); d - e + 1];
        for (j, f) in self.coeffs().iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            // x^j y^(e-j) ∘ X^k Y^(d-k) needs k ≥ j and d-k ≥ e-j.
            for k in j..=(d - e + j) {
                if a[k].is_zero() {
                    continue;
                }
                let factor = T::falling_factorial(k, j) * T::falling_factorial(d - k, e - j);
                out[k - j] = out[k - j].clone() + f.clone() * a[k].clone() * factor;
            }
        }
        BivariateForm::from_monomial_coeffs(out).expect("non-empty")
    }
}

/// `f ∘ F`.
pub fn apply_operator<T: Scalar>(f: &OperatorPoly<T>, form: &BivariateForm<T>) -> BivariateForm<T> {
    f.apply(form)
}

/// The linear form `a x + b y`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> LinearForm<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_operator(&self) -> OperatorPoly<T> {
        OperatorPoly { poly: HomPoly::linear(self.a.clone(), self.b.clone()) }
    }
}

/// Checks `φ(f) ∘ F = f ∘ φ*(F)` for the adjoint pair
/// `φ(x) = px + qy, φ(y) = rx + sy` and `φ*(X) = pX + rY, φ*(Y) = qX + sY`.
pub fn adjoint_pairing_check<T: Scalar>(
    f: &OperatorPoly<T>,
    form: &BivariateForm<T>,
    p: &T,
    q: &T,
    r: &T,
    s: &T,
) -> Result<bool> {
    if f.degree() != form.degree() {
        return Err(Error::Shape(format!(
            "operator degree {} against form degree {}",
            f.degree(),
            form.degree()
        )));
    }
    if (p.clone() * s.clone() - q.clone() * r.clone()).is_zero() {
        return Err(Error::Domain("singular change of coordinates".into()));
    }
    let lhs = f.substitute(p, q, r, s).apply(form);
    let rhs = f.apply(&form.linear_substitute(p, q, r, s));
    Ok(lhs == rhs)
}

/// JSON encoding of a rational form, e.g.
/// `{"degree": 2, "normalized_coeffs": ["1", "3/2", "1"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub degree: usize,
    pub normalized_coeffs: Vec<String>,
}

/// Parses `"p/q"` or an integer string. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let valid_int = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let ok = match s.split_once('/') {
        Some((n, d)) => valid_int(n) && !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()),
        None => valid_int(s),
    };
    if !ok {
        return Err(Error::Parse(format!("not a rational: {s:?}")));
    }
    if let Some((_, d)) = s.split_once('/') {
        if d.bytes().all(|b| b == b'0') {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Canonical string for a rational: `"p/q"` in lowest terms, or an integer.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

impl FormJson {
    pub fn from_form(form: &BivariateForm<Rational>) -> Self {
        Self {
            degree: form.degree(),
            normalized_coeffs: form.normalized_coeffs().iter().map(format_rational).collect(),
        }
    }

    /// Rejects a coefficient count that disagrees with the degree and the
    /// identically zero form.
    pub fn to_form(&self) -> Result<BivariateForm<Rational>> {
        if self.normalized_coeffs.len() != self.degree + 1 {
            return Err(Error::Parse(format!(
                "degree {} needs {} coefficients, got {}",
                self.degree,
                self.degree + 1,
                self.normalized_coeffs.len()
            )));
        }
        let coeffs = self
            .normalized_coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let form = BivariateForm::new(coeffs)?;
        if form.is_zero() {
            return Err(Error::Domain("the zero form has no Sperner number".into()));
        }
        Ok(form)
    }
}

pub fn parse_form_json(text: &str) -> Result<BivariateForm<Rational>> {
    let raw: FormJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_form()
}

pub fn form_to_json(form: &BivariateForm<Rational>) -> String {
    serde_json::to_string(&FormJson::from_form(form)).expect("plain struct serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Form, Operator};

    fn form(c: &[(i64, i64)]) -> Form {
        Form::new(c.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    fn mono(a: &[i64]) -> Form {
        Form::from_monomial_coeffs(a.iter().map(|&x| rat(x, 1)).collect()).unwrap()
    }

    #[test]
    fn from_monomial_coefficients() {
        assert_eq!(mono(&[1, 3, 1]), form(&[(1, 1), (3, 2), (1, 1)]));
        assert_eq!(mono(&[1, 3, 3, 1]), form(&[(1, 1); 4]));
        assert_eq!(mono(&[1, 0, 0, 0, 0]).normalized_coeffs()[0], rat(1, 1));
        assert!(mono(&[1, 0, 0, 0, 0]).normalized_coeffs()[1..].iter().all(|c| *c == rat(0, 1)));
    }

    #[test]
    fn operator_examples() {
        // x ∘ X²Y = 2XY
        let x2y = mono(&[0, 0, 1, 0]);
        assert_eq!(Operator::monomial(1, 0).apply(&x2y), mono(&[0, 2, 0]));
        // xy ∘ (X² + 3XY + Y²) = 3
        let f = mono(&[1, 3, 1]);
        assert_eq!(Operator::monomial(1, 1).apply(&f).scalar_value(), Some(&rat(3, 1)));
        // y^d ∘ Y^d = d!
        let yd = mono(&[1, 0, 0, 0, 0, 0]);
        assert_eq!(Operator::monomial(0, 5).apply(&yd).scalar_value(), Some(&rat(120, 1)));
        // too high a degree annihilates
        assert_eq!(Operator::monomial(2, 2).apply(&f), Form::zero(0));
    }

    #[test]
    fn substitution_examples() {
        let (zero, one) = (rat(0, 1), rat(1, 1));
        assert_eq!(mono(&[0, 0, 1]).linear_substitute(&zero, &one, &one, &zero), mono(&[1, 0, 0]));
        // XY with X := X + Y, Y := Y
        assert_eq!(mono(&[0, 1, 0]).linear_substitute(&one, &zero, &one, &one), mono(&[1, 1, 0]));
        let f = mono(&[2, -1, 5, 7]);
        assert_eq!(f.linear_substitute(&one, &zero, &zero, &one), f);
    }

    #[test]
    fn shift_examples() {
        let f = mono(&[4, -1, 0, 2]);
        assert_eq!(f.shift_s(&rat(0, 1)), f);
        assert_eq!(f.shift_r(&rat(0, 1)), f);
        let x2 = mono(&[0, 0, 1]);
        assert_eq!(x2.shift_s(&rat(1, 1)), form(&[(1, 1), (1, 1), (1, 1)]));
        assert_eq!(x2.shift_r(&rat(1, 1)), mono(&[1, 2, 1]));
        let yd = mono(&[1, 0, 0, 0]);
        assert_eq!(yd.shift_s(&rat(7, 3)), yd);
    }

    #[test]
    fn adjoint_examples() {
        let (p, q, r, s) = (rat(2, 1), rat(-1, 3), rat(5, 1), rat(1, 2));
        let x = Operator::monomial(1, 0);
        let big_x = mono(&[0, 1]);
        assert_eq!(x.substitute(&p, &q, &r, &s).apply(&big_x).scalar_value(), Some(&p));
        assert_eq!(x.apply(&big_x.linear_substitute(&p, &q, &r, &s)).scalar_value(), Some(&p));
        assert!(adjoint_pairing_check(&x, &big_x, &p, &q, &r, &s).unwrap());
        let g = Operator::new(vec![rat(1, 1), rat(0, 1), rat(-2, 1)]).unwrap();
        assert!(matches!(
            adjoint_pairing_check(&g, &big_x, &p, &q, &r, &s),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"degree":2,"normalized_coeffs":["1","3/2","1"]}"#;
        let f = parse_form_json(text).unwrap();
        assert_eq!(f, form(&[(1, 1), (3, 2), (1, 1)]));
        assert_eq!(form_to_json(&f), text);
        let neg = r#"{"degree":1,"normalized_coeffs":["-7/3","0"]}"#;
        assert_eq!(form_to_json(&parse_form_json(neg).unwrap()), neg);
    }

    #[test]
    fn json_rejections() {
        for bad in [
            r#"{"degree":2,"normalized_coeffs":["1","1"]}"#,
            r#"{"degree":1,"normalized_coeffs":["0","0"]}"#,
            r#"{"degree":1,"normalized_coeffs":["1/0","1"]}"#,
            r#"{"degree":1,"normalized_coeffs":["1.5","1"]}"#,
            r#"{"degree":1,"normalized_coeffs":["x","1"]}"#,
            r#"{"degree":1,"normalized_coeffs":[1,1]}"#,
            r#"{"degree":1}"#,
        ] {
            assert!(parse_form_json(bad).is_err(), "{bad}");
        }
    }
}
