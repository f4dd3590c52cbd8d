//! Both sides of Cattani's theorem for binary forms, decided exactly, plus
//! replays of the shift-path and perturbation arguments and a corpus fuzzer.
//!
//! Hessian side: `H^F_i > 0` on the (closed or open) positive quadrant for
//! `0 ≤ i ≤ s-1`. Toeplitz side: `φ^{⌊d/2⌋}_d(F)` is totally non-negative
//! and TP_s (closed), or totally non-negative of rank `s` (open).

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::apolarity::{hilbert_function, max_toeplitz, require_nonzero, sperner, toeplitz};
use crate::error::{Error, Result};
use crate::forms::{form_to_json, BivariateForm, HomPoly};
use crate::hessian::{
    hessian_polynomial, path_matrix_identity_check, plucker_expansion, positive_on_quadrant, quadrant_positivity, Quadrant,
};
use crate::scalar::Scalar;
use crate::totalpos::{
    all_minors_nonneg, classify_max_toeplitz, contiguous_s_minors_nonzero, in_open_set_os, is_tp_contiguous,
    MinorWitness, TpReport,
};
use crate::{rat, Form, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct HessianStatus<T> {
    pub i: usize,
    pub poly: BivariateForm<T>,
    pub positive_closed: bool,
    pub positive_open: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<T> {
    pub form: BivariateForm<T>,
    pub sperner: usize,
    pub hessian_side_closed: bool,
    pub hessian_side_open: bool,
    pub toeplitz_side_closed: bool,
    pub toeplitz_side_open: bool,
    /// Both variants of the theorem agree.
    pub agree: bool,
    /// `φ^{s-1}` TP iff `φ^{⌊d/2⌋}` TNN and TP_s.
    pub reformulation_agrees: bool,
    pub per_i_hessian_status: Vec<HessianStatus<T>>,
    pub max_toeplitz: TpReport<T>,
    pub tp_witness: Option<MinorWitness<T>>,
}

fn hessian_statuses<T: Scalar>(form: &BivariateForm<T>) -> Result<Vec<HessianStatus<T>>> {
    let s = sperner(form)?;
    (0..s)
        .map(|i| {
            let poly = hessian_polynomial(form, i)?.poly;
            let verdict = quadrant_positivity(&poly);
            Ok(HessianStatus { i, positive_closed: verdict.closed, positive_open: verdict.open, poly })
        })
        .collect()
}

/// `H^F_i > 0` on the quadrant for every `i < s`.
pub fn decide_hessian_side<T: Scalar>(form: &BivariateForm<T>, quadrant: Quadrant) -> Result<bool> {
    require_nonzero(form)?;
    let s = sperner(form)?;
    for i in 0..s {
        if !positive_on_quadrant(&hessian_polynomial(form, i)?.poly, quadrant) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn toeplitz_side<T: Scalar>(report: &TpReport<T>, s: usize, quadrant: Quadrant) -> bool {
    match quadrant {
        Quadrant::Closed => report.is_tnn && report.tp_order >= s,
        Quadrant::Open => report.is_tnn && report.rank == s,
    }
}

/// Closed: `φ^{⌊d/2⌋}` TNN and TP_s. Open: TNN of rank `s`.
pub fn decide_toeplitz_side<T: Scalar>(form: &BivariateForm<T>, quadrant: Quadrant) -> Result<bool> {
    let report = classify_max_toeplitz(form)?;
    Ok(toeplitz_side(&report, sperner(form)?, quadrant))
}

pub fn verify_equivalence<T: Scalar>(form: &BivariateForm<T>) -> Result<EquivalenceReport<T>> {
    require_nonzero(form)?;
    let s = sperner(form)?;
    let statuses = hessian_statuses(form)?;
    let hessian_side_closed = statuses.iter().all(|h| h.positive_closed);
    let hessian_side_open = statuses.iter().all(|h| h.positive_open);
    let report = classify_max_toeplitz(form)?;
    let toeplitz_side_closed = toeplitz_side(&report, s, Quadrant::Closed);
    let toeplitz_side_open = toeplitz_side(&report, s, Quadrant::Open);
    let small = all_minors_nonneg(&toeplitz(form, s - 1)?.matrix)?;
    let reformulation_agrees = small.is_tp == toeplitz_side_closed;
    Ok(EquivalenceReport {
        form: form.clone(),
        sperner: s,
        hessian_side_closed,
        hessian_side_open,
        toeplitz_side_closed,
        toeplitz_side_open,
        agree: hessian_side_closed == toeplitz_side_closed && hessian_side_open == toeplitz_side_open,
        reformulation_agrees,
        per_i_hessian_status: statuses,
        tp_witness: report.witness.clone(),
        max_toeplitz: report,
    })
}

fn require_closed_hessian_side<T: Scalar>(form: &BivariateForm<T>) -> Result<usize> {
    if !decide_hessian_side(form, Quadrant::Closed)? {
        return Err(Error::Precondition(
            "the Hessians are not positive on the closed quadrant".into(),
        ));
    }
    sperner(form)
}

/// The constant `(d!/(d-r-2s+2)!)^s` relating `H^{x^r∘F}_{s-1}(0,1)` to the
/// `r`-th contiguous maximal minor of `φ^{s-1}_d(F)`.
pub fn contiguous_minor_constant<T: Scalar>(d: usize, s: usize, r: usize) -> T {
    let ratio = T::falling_factorial(d, r + 2 * s - 2);
    (0..s).fold(T::one(), |acc, _| acc * ratio.clone())
}

/// Every contiguous maximal minor of `φ^{s-1}_d(F)` is nonzero. Along the
/// way checks `H^{x^r∘F}_{s-1}(0,1) = C_r Δ_r` with the positive constant
/// from [`contiguous_minor_constant`]; a mismatch is an invariant error.
pub fn contiguous_minor_nonvanishing_check<T: Scalar>(form: &BivariateForm<T>) -> Result<bool> {
    let s = require_closed_hessian_side(form)?;
    let d = form.degree();
    let phi = toeplitz(form, s - 1)?.matrix;
    let rows: Vec<usize> = (0..s).collect();
    let mut all_nonzero = true;
    for r in 0..=phi.cols() - s {
        let cols: Vec<usize> = (r..r + s).collect();
        let minor = phi.minor(&rows, &cols)?;
        let derived = crate::forms::OperatorPoly::monomial(r, 0).apply(form);
        let at_y = hessian_polynomial(&derived, s - 1)?.poly.eval(&T::zero(), &T::one());
        let constant: T = contiguous_minor_constant(d, s, r);
        if !constant.is_positive() || at_y != constant * minor.clone() {
            return Err(Error::Invariant(format!(
                "H_{}(0,1) of x^{r} applied to {form:?} is not a positive multiple of the minor",
                s - 1
            )));
        }
        all_nonzero &= !minor.is_zero();
    }
    debug_assert_eq!(all_nonzero, contiguous_s_minors_nonzero(&phi, s));
    Ok(all_nonzero)
}

/// Largest shift tried when searching for total positivity.
pub const SHIFT_CAP_EXPONENT: u32 = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct PathReport<T> {
    pub t_samples: Vec<T>,
    pub in_os_flags: Vec<bool>,
    /// Whether the search over `t ∈ {0, 1, 2, 4, ..., 2^20}` found a shift
    /// with `φ^{s-1}(S_t(F))` totally positive.
    pub tp_at_large_t: bool,
    pub t_found: Option<T>,
}

/// The shift values tried in order: `0, 1, 2, 4, ..., 2^20`.
pub fn shift_search_values<T: Scalar>() -> Vec<T> {
    std::iter::once(T::zero())
        .chain((0..=SHIFT_CAP_EXPONENT).map(|k| T::from_int(1i64 << k)))
        .collect()
}

/// `0, 1/4, 2/4, ...` up to `max(upper, 1)`.
pub fn quarter_grid(upper: &Rational) -> Vec<Rational> {
    let top = if upper < &Rational::one() { Rational::one() } else { upper.clone() };
    let quarter = rat(1, 4);
    let mut out = Vec::new();
    let mut t = rat(0, 1);
    while t <= top {
        out.push(t.clone());
        t += quarter.clone();
    }
    out
}

/// Membership of `φ^{⌊d/2⌋}_d(S_t(F))` in `𝒪_s` along `t_grid`, and a
/// doubling search for a shift making `φ^{s-1}_d(S_t(F))` totally positive.
/// Reaching the cap is reported, not raised.
pub fn shift_path_experiment<T: Scalar>(form: &BivariateForm<T>, t_grid: &[T]) -> Result<PathReport<T>> {
    let s = require_closed_hessian_side(form)?;
    let in_os_flags = t_grid
        .iter()
        .map(|t| in_open_set_os(&max_toeplitz(&form.shift_s(t)), s))
        .collect::<Result<Vec<_>>>()?;
    let mut t_found = None;
    for t in shift_search_values::<T>() {
        let phi = toeplitz(&form.shift_s(&t), s - 1)?.matrix;
        if is_tp_contiguous(&phi, s)? {
            t_found = Some(t);
            break;
        }
    }
    Ok(PathReport { t_samples: t_grid.to_vec(), in_os_flags, tp_at_large_t: t_found.is_some(), t_found })
}

/// For `0 < t < 1` and `φ^{⌊d/2⌋}` TNN of rank `s`: whether
/// `φ^{s-1}_d(R_t(F))` is totally positive.
pub fn perturbation_check<T: Scalar>(form: &BivariateForm<T>, t: &T) -> Result<bool> {
    if !t.is_positive() || *t >= T::one() {
        return Err(Error::Domain(format!("perturbation parameter {t} outside (0, 1)")));
    }
    if !decide_toeplitz_side(form, Quadrant::Open)? {
        return Err(Error::Precondition(
            "the maximal Toeplitz matrix is not totally non-negative of rank s".into(),
        ));
    }
    let s = sperner(form)?;
    let phi = toeplitz(&form.shift_r(t), s - 1)?.matrix;
    Ok(all_minors_nonneg(&phi)?.is_tp)
}

/// Positive Hessians on the closed quadrant force strictly positive
/// coefficients; on the open quadrant, non-negative ones. Vacuous when
/// neither side holds.
pub fn coefficient_positivity_check<T: Scalar>(form: &BivariateForm<T>) -> Result<bool> {
    require_nonzero(form)?;
    let s = sperner(form)?;
    let closed = decide_hessian_side(form, Quadrant::Closed)?;
    let open = decide_hessian_side(form, Quadrant::Open)?;
    if !closed && !open {
        return Ok(true);
    }
    for i in 0..s {
        let coeffs = hessian_polynomial(form, i)?.poly.monomial_coeffs();
        if closed && !coeffs.iter().all(|c| c.is_positive()) {
            return Ok(false);
        }
        if open && coeffs.iter().any(|c| c.is_negative()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random form families for the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Products of linear forms with positive coefficients.
    #[serde(rename = "a")]
    PositiveProducts,
    /// Normalized coefficients uniform in `[-2, 2]`.
    #[serde(rename = "b")]
    UniformCoefficients,
    /// As `b`, with entries zeroed at random.
    #[serde(rename = "c")]
    SparseCoefficients,
    /// Short sums of `d`-th powers of linear forms.
    #[serde(rename = "d")]
    PowerSums,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::PositiveProducts, Family::UniformCoefficients, Family::SparseCoefficients, Family::PowerSums];

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "a" => Ok(Family::PositiveProducts),
            "b" => Ok(Family::UniformCoefficients),
            "c" => Ok(Family::SparseCoefficients),
            "d" => Ok(Family::PowerSums),
            other => Err(Error::Domain(format!("unknown family {other:?}; expected a, b, c or d"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PositiveProducts => "a",
            Family::UniformCoefficients => "b",
            Family::SparseCoefficients => "c",
            Family::PowerSums => "d",
        }
    }
}

/// Largest degree the generators accept.
pub const MAX_GENERATED_DEGREE: usize = 10;

fn rational_in(rng: &mut ChaCha8Rng, low: i64, high: i64) -> Rational {
    let q = rng.gen_range(1..=6i64);
    rat(rng.gen_range(low * q..=high * q), q)
}

fn positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=9i64), rng.gen_range(1..=4i64))
}

/// `w (aX + bY)^d`.
pub fn power_of_linear(weight: &Rational, a: &Rational, b: &Rational, d: usize) -> Form {
    Form::from_hom(HomPoly::linear(a.clone(), b.clone()).pow(d).scale(weight))
}

fn sample(family: Family, d: usize, rng: &mut ChaCha8Rng) -> Form {
    loop {
        let form = match family {
            Family::PositiveProducts => Form::from_hom((0..d).fold(HomPoly::one(), |acc, _| {
                acc.mul(&HomPoly::linear(positive_rational(rng), positive_rational(rng)))
            })),
            Family::UniformCoefficients => {
                Form::new((0..=d).map(|_| rational_in(rng, -2, 2)).collect()).expect("non-empty")
            }
            Family::SparseCoefficients => Form::new(
                (0..=d)
                    .map(|_| if rng.gen_bool(1.0 / 3.0) { rat(0, 1) } else { rational_in(rng, -2, 2) })
                    .collect(),
            )
            .expect("non-empty"),
            Family::PowerSums => {
                let summands = rng.gen_range(1..=d / 2 + 1);
                (0..summands).fold(Form::zero(d), |acc, _| {
                    let (a, b) = (rational_in(rng, -2, 2), rational_in(rng, -2, 2));
                    let w = positive_rational(rng);
                    let term = power_of_linear(&w, &a, &b, d);
                    Form::new(
                        acc.normalized_coeffs()
                            .iter()
                            .zip(term.normalized_coeffs())
                            .map(|(x, y)| x + y)
                            .collect(),
                    )
                    .expect("non-empty")
                })
            }
        };
        if !form.is_zero() {
            return form;
        }
    }
}

/// The `index`-th form of a family; each index has its own stream, so
/// forms do not depend on how many others were drawn.
pub fn generate_form(family: Family, d: usize, seed: u64, index: u64) -> Result<Form> {
    if d > MAX_GENERATED_DEGREE {
        return Err(Error::Domain(format!("degree {d} exceeds {MAX_GENERATED_DEGREE}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((d as u64) << 32));
    rng.set_stream(index);
    Ok(sample(family, d, &mut rng))
}

pub fn generate_forms(family: Family, d: usize, count: usize, seed: u64) -> Result<Vec<Form>> {
    (0..count as u64).map(|index| generate_form(family, d, seed, index)).collect()
}

/// Perturbation parameters used by the corpus trials.
pub fn perturbation_ts() -> [Rational; 3] {
    [rat(1, 10), rat(1, 3), rat(9, 10)]
}

/// Everything needed to replay a failed trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproBundle {
    pub family: Family,
    pub degree: usize,
    pub seed: u64,
    pub index: u64,
    /// The form as JSON.
    pub form: String,
    /// Monomial coefficients of each `H_i`, `i < s`.
    pub hessians: Vec<Vec<String>>,
    /// Rows of `φ^{⌊d/2⌋}_d(F)`.
    pub max_toeplitz: Vec<Vec<String>>,
    /// 1-based rows and columns, and the value.
    pub witness: Option<(Vec<usize>, Vec<usize>, String)>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub sperner: usize,
    pub hessian_side_closed: bool,
    pub hessian_side_open: bool,
    pub agree: bool,
    /// `Some(t)` when the shift search ran and succeeded; `None` if it did
    /// not run.
    pub shift_found: Option<String>,
    pub shift_cap_hit: bool,
    pub anomaly: Option<ReproBundle>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// All corpus checks on a single form. Any failed check or unexpected
/// error becomes an anomaly with a reproduction bundle.
pub fn run_trial(family: Family, d: usize, seed: u64, index: u64) -> Result<TrialOutcome> {
    let form = generate_form(family, d, seed, index)?;
    let mut failures = Vec::new();
    let report = verify_equivalence(&form)?;
    let s = report.sperner;
    if !report.agree {
        failures.push("Hessian and Toeplitz sides disagree".to_string());
    }
    if !report.reformulation_agrees {
        failures.push("phi^{s-1} TP disagrees with phi^{floor(d/2)} TNN and TP_s".to_string());
    }
    let mut check = |name: &str, outcome: Result<bool>| match outcome {
        Ok(true) => {}
        Ok(false) => failures.push(format!("{name} failed")),
        Err(e) => failures.push(format!("{name} errored: {e}")),
    };
    check("Plucker identity", (0..s).try_fold(true, |ok, i| {
        Ok(ok && plucker_expansion(&form, i)?.poly == hessian_polynomial(&form, i)?.poly)
    }));
    check("rank law", (0..=d / 2).try_fold(true, |ok, i| {
        Ok(ok && toeplitz(&form, i)?.matrix.rank() == (i + 1).min(s))
    }));
    check("Hilbert function", hilbert_function(&form).map(|h| h.sperner == s));
    check("path identity", (0..=d / 2).try_fold(true, |ok, i| {
        Ok(ok && path_matrix_identity_check(&form, i, d + 1)?)
    }));
    check("stratified open set", {
        let phi = max_toeplitz(&form);
        all_minors_nonneg(&phi).and_then(|full| {
            let lhs = in_open_set_os(&phi, s)? && full.is_tnn;
            let rhs = phi.rank() == s && is_tp_contiguous(&phi, s)?;
            Ok(lhs == rhs)
        })
    });
    check("coefficient positivity", coefficient_positivity_check(&form));
    if report.toeplitz_side_open {
        for t in perturbation_ts() {
            check(&format!("perturbation at t={t}"), perturbation_check(&form, &t));
        }
    }
    let mut shift_found = None;
    let mut shift_cap_hit = false;
    if report.hessian_side_closed {
        check("contiguous minors", contiguous_minor_nonvanishing_check(&form));
        match shift_path_experiment(&form, &[]) {
            Ok(path) => match path.t_found {
                Some(t) => {
                    let grid = quarter_grid(&t);
                    check("shift path in O_s", shift_path_experiment(&form, &grid).map(|p| p.in_os_flags.iter().all(|&f| f)));
                    shift_found = Some(t.to_string());
                }
                None => {
                    shift_cap_hit = true;
                    failures.push("shift search reached 2^20".to_string());
                }
            },
            Err(e) => failures.push(format!("shift path errored: {e}")),
        }
    }
    let anomaly = (!failures.is_empty()).then(|| ReproBundle {
        family,
        degree: d,
        seed,
        index,
        form: form_to_json(&form),
        hessians: report.per_i_hessian_status.iter().map(|h| strings(&h.poly.monomial_coeffs())).collect(),
        max_toeplitz: max_toeplitz(&form).to_rows().iter().map(|r| strings(r)).collect(),
        witness: report.tp_witness.as_ref().map(|w| {
            (w.rows.iter().map(|r| r + 1).collect(), w.cols.iter().map(|c| c + 1).collect(), w.value.to_string())
        }),
        failures,
    });
    Ok(TrialOutcome {
        index,
        sperner: s,
        hessian_side_closed: report.hessian_side_closed,
        hessian_side_open: report.hessian_side_open,
        agree: report.agree,
        shift_found,
        shift_cap_hit,
        anomaly,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub family: Family,
    pub degree: usize,
    pub count: usize,
    pub seed: u64,
    pub agreements: usize,
    pub hessian_closed_count: usize,
    pub hessian_open_count: usize,
    pub shift_cap_hits: usize,
    /// Counts of the first shift reaching total positivity, by value.
    pub shift_thresholds: Vec<(String, usize)>,
    pub anomalies: Vec<ReproBundle>,
}

/// Runs `count` trials in parallel; results are merged in index order.
pub fn fuzz(family: Family, d: usize, count: usize, seed: u64) -> Result<FuzzSummary> {
    let trials: Vec<TrialOutcome> = (0..count as u64)
        .into_par_iter()
        .map(|index| run_trial(family, d, seed, index))
        .collect::<Result<_>>()?;
    let mut thresholds: Vec<(String, usize)> = Vec::new();
    for t in trials.iter().filter_map(|t| t.shift_found.as_ref()) {
        match thresholds.iter_mut().find(|(v, _)| v == t) {
            Some((_, n)) => *n += 1,
            None => thresholds.push((t.clone(), 1)),
        }
    }
    thresholds.sort_by_key(|(v, _)| crate::forms::parse_rational(v).expect("formatted rational"));
    Ok(FuzzSummary {
        family,
        degree: d,
        count,
        seed,
        agreements: trials.iter().filter(|t| t.agree).count(),
        hessian_closed_count: trials.iter().filter(|t| t.hessian_side_closed).count(),
        hessian_open_count: trials.iter().filter(|t| t.hessian_side_open).count(),
        shift_cap_hits: trials.iter().filter(|t| t.shift_cap_hit).count(),
        shift_thresholds: thresholds,
        anomalies: trials.into_iter().filter_map(|t| t.anomaly).collect(),
    })
}
