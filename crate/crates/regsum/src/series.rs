//! Regularized summation of infinite series.
//!
//! Each supported term class carries the closed form assigned to it by the
//! summation axioms, plus secondary derivation routes; [`sum`] computes every
//! applicable route and refuses to return a value the routes disagree on.
//! Rational routes must agree exactly, trigonometric routes structurally or
//! to `1e-12` at fifty sampled `theta` inside the admissibility window.

use std::fmt;

use crate::bernoulli::bernoulli_number;
use crate::exact::{binomial, ext_binomial, factorial, neg_one_pow, rat, Rational};
use crate::limits::{
    limit_spliced, trig_sin_limit_form, trig_sin_sq_limit_form, CfKind, ClosedFormValue,
    ThetaWindow, TrigFactor, TrigForm, TrigFunc, TrigTerm,
};
use crate::poly::{alt_indefinite_sum, indefinite_sum, integral_unit, is_quasi_even, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    PoleAtOne,
    NotQuasiEven(String),
    InvalidArgument(String),
    UnknownFamily(String),
    InternalInconsistency(String),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::PoleAtOne => write!(f, "geometric ratio 1 has no regularized sum"),
            SeriesError::NotQuasiEven(msg) => write!(f, "not quasi-even: {}", msg),
            SeriesError::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
            SeriesError::UnknownFamily(name) => {
                write!(f, "'{}' is not a registered even regular family", name)
            }
            SeriesError::InternalInconsistency(msg) => {
                write!(f, "derivation routes disagree: {}", msg)
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Classified general term of a series `sum_{u} f(u)`. Unless noted
/// otherwise the index runs from `u = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesTerm {
    /// `f(u) = p(u)`.
    PolyTerm(Polynomial),
    /// `f(u) = (-1)^(u-1) p(u)`.
    AltPolyTerm(Polynomial),
    /// `f(u) = c g^u`, summed from `u = start` (0 or 1).
    Geometric { c: Rational, g: Rational, start: u8 },
    /// `f(u) = a1 + (u-1) d`.
    ArithProg { a1: Rational, d: Rational },
    /// `f(u) = (-1)^(u-1) (a1 + (u-1) d)`.
    AltArithProg { a1: Rational, d: Rational },
    /// `f(u) = (2u-1)^(k-1)`.
    OddPoly(u32),
    /// `f(u) = (-1)^(u-1) (2u-1)^(k-1)`.
    AltOddPoly(u32),
    /// `f(u) = cos(u theta)`.
    TrigCosSeries,
    /// `f(u) = (-1)^(u-1) cos(u theta)`.
    AltTrigCosSeries,
    /// `f(u) = sin(u theta)`.
    TrigSinSeries,
    /// `f(u) = sin((2u-1) theta)`.
    OddTrigSinSeries,
    /// `f(u) = (-1)^(u-1) u^(2k-1) sin(u theta)`.
    AltPolySin(u32),
    /// `f(u) = (-1)^(u-1) u^(2k) cos(u theta)`.
    AltPolyCos(u32),
    /// `f(u) = x^u C(a, u)`, summed from `u = 0`; equals `(1+x)^a`.
    Binomial { a: i64, x: Rational },
    /// Polynomial `f` with `f(-x) = f(x - eps t)`.
    QuasiEvenPoly { f: Polynomial, t: u32, eps: i32 },
    /// Registry-backed even regular family; the sum is `-f(0)/2`.
    EvenRegular { family: String },
    Combo(Vec<(Rational, SeriesTerm)>),
}

impl SeriesTerm {
    /// Build an [`SeriesTerm::EvenRegular`] after checking the registry.
    /// Families whose `f(0)` is not rational stay registry-only.
    pub fn even_regular(family: &str) -> Result<SeriesTerm, SeriesError> {
        match even_regular_f0(family) {
            Some(ExpectedValue::Exact(_)) => {
                Ok(SeriesTerm::EvenRegular { family: family.to_string() })
            }
            Some(_) => Err(SeriesError::InvalidArgument(format!(
                "family '{}' has a non-rational value at zero",
                family
            ))),
            None => Err(SeriesError::UnknownFamily(family.to_string())),
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            SeriesTerm::PolyTerm(_) => "poly",
            SeriesTerm::AltPolyTerm(_) => "alt-poly",
            SeriesTerm::Geometric { .. } => "geometric",
            SeriesTerm::ArithProg { .. } => "arith-prog",
            SeriesTerm::AltArithProg { .. } => "alt-arith-prog",
            SeriesTerm::OddPoly(_) => "odd-power",
            SeriesTerm::AltOddPoly(_) => "alt-odd-power",
            SeriesTerm::TrigCosSeries => "cos-series",
            SeriesTerm::AltTrigCosSeries => "alt-cos-series",
            SeriesTerm::TrigSinSeries => "sin-series",
            SeriesTerm::OddTrigSinSeries => "odd-sin-series",
            SeriesTerm::AltPolySin(_) => "alt-poly-sin",
            SeriesTerm::AltPolyCos(_) => "alt-poly-cos",
            SeriesTerm::Binomial { .. } => "binomial",
            SeriesTerm::QuasiEvenPoly { .. } => "quasi-even",
            SeriesTerm::EvenRegular { .. } => "even-regular",
            SeriesTerm::Combo(_) => "combo",
        }
    }

    pub fn params_string(&self) -> String {
        match self {
            SeriesTerm::PolyTerm(p) | SeriesTerm::AltPolyTerm(p) => format!("p(u) = {}", p),
            SeriesTerm::Geometric { c, g, start } => format!("c={}, g={}, start={}", c, g, start),
            SeriesTerm::ArithProg { a1, d } | SeriesTerm::AltArithProg { a1, d } => {
                format!("a1={}, d={}", a1, d)
            }
            SeriesTerm::OddPoly(k) | SeriesTerm::AltOddPoly(k) => format!("k={}", k),
            SeriesTerm::TrigCosSeries
            | SeriesTerm::AltTrigCosSeries
            | SeriesTerm::TrigSinSeries
            | SeriesTerm::OddTrigSinSeries => String::new(),
            SeriesTerm::AltPolySin(k) | SeriesTerm::AltPolyCos(k) => format!("k={}", k),
            SeriesTerm::Binomial { a, x } => format!("a={}, x={}", a, x),
            SeriesTerm::QuasiEvenPoly { f, t, eps } => {
                format!("f(u) = {}, t={}, eps={}", f, t, eps)
            }
            SeriesTerm::EvenRegular { family } => format!("family={}", family),
            SeriesTerm::Combo(parts) => format!("{} members", parts.len()),
        }
    }

    /// Exact value of the `u`-th term for the rational classes; `None` for
    /// trig and registry classes.
    pub fn term_exact(&self, u: i64) -> Option<Rational> {
        match self {
            SeriesTerm::PolyTerm(p) => Some(p.eval_int(u)),
            SeriesTerm::AltPolyTerm(p) => Some(neg_one_pow(u - 1) * p.eval_int(u)),
            SeriesTerm::Geometric { c, g, start } => {
                if u < *start as i64 {
                    Some(Rational::zero())
                } else {
                    Some(c * &g.pow(u))
                }
            }
            SeriesTerm::ArithProg { a1, d } => Some(a1 + &(Rational::from_int(u - 1) * d)),
            SeriesTerm::AltArithProg { a1, d } => {
                Some(neg_one_pow(u - 1) * (a1 + &(Rational::from_int(u - 1) * d)))
            }
            SeriesTerm::OddPoly(k) => Some(Rational::from_int(2 * u - 1).pow(*k as i64 - 1)),
            SeriesTerm::AltOddPoly(k) => {
                Some(neg_one_pow(u - 1) * Rational::from_int(2 * u - 1).pow(*k as i64 - 1))
            }
            SeriesTerm::Binomial { a, x } => {
                if u < 0 {
                    Some(Rational::zero())
                } else {
                    Some(x.pow(u) * ext_binomial(*a, u))
                }
            }
            SeriesTerm::QuasiEvenPoly { f, .. } => Some(f.eval_int(u)),
            SeriesTerm::Combo(parts) => {
                let mut acc = Rational::zero();
                for (c, part) in parts {
                    acc += &(c * &part.term_exact(u)?);
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// Numeric value of the `u`-th term; trig classes take their angle from
    /// `theta`.
    pub fn term_f64(&self, u: i64, theta: f64) -> f64 {
        if let Some(v) = self.term_exact(u) {
            return v.to_f64();
        }
        let uf = u as f64;
        let alt = if (u - 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        match self {
            SeriesTerm::TrigCosSeries => (uf * theta).cos(),
            SeriesTerm::AltTrigCosSeries => alt * (uf * theta).cos(),
            SeriesTerm::TrigSinSeries => (uf * theta).sin(),
            SeriesTerm::OddTrigSinSeries => ((2.0 * uf - 1.0) * theta).sin(),
            SeriesTerm::AltPolySin(k) => alt * uf.powi(2 * *k as i32 - 1) * (uf * theta).sin(),
            SeriesTerm::AltPolyCos(k) => alt * uf.powi(2 * *k as i32) * (uf * theta).cos(),
            SeriesTerm::EvenRegular { family } => {
                builtin_examples()
                    .iter()
                    .find(|b| b.name == family)
                    .and_then(|b| b.term)
                    .map(|f| f(u))
                    .unwrap_or(f64::NAN)
            }
            SeriesTerm::Combo(parts) => {
                parts.iter().map(|(c, p)| c.to_f64() * p.term_f64(u, theta)).sum()
            }
            _ => unreachable!("rational classes handled above"),
        }
    }
}

/// Outcome of summing a series: the designated primary closed form plus all
/// derivation routes, already checked for agreement.
#[derive(Debug, Clone)]
pub struct SumResult {
    pub term: SeriesTerm,
    pub value: ClosedFormValue,
    pub routes: Vec<(String, ClosedFormValue)>,
}

impl SumResult {
    pub fn window(&self) -> Option<&ThetaWindow> {
        self.value.window.as_ref()
    }

    pub fn approx(&self) -> Option<f64> {
        match &self.value.kind {
            CfKind::Exact(v) => Some(v.to_f64()),
            CfKind::Trig(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut value = serde_json::Map::new();
        match &self.value.kind {
            CfKind::Exact(v) => {
                value.insert("exact".to_string(), serde_json::json!(v.to_string()));
            }
            CfKind::Trig(form) => {
                value.insert("trig_form".to_string(), serde_json::json!(form.to_string()));
            }
        }
        if let Some(w) = &self.value.window {
            let (lo, hi) = w.to_f64_pair();
            value.insert("window".to_string(), serde_json::json!([lo, hi]));
        }
        serde_json::json!({
            "class": self.term.class_name(),
            "params": self.term.params_string(),
            "value": serde_json::Value::Object(value),
            "approx": self.approx(),
            "routes": self.routes.iter().map(|(name, v)| {
                serde_json::json!({"name": name, "value": v.to_string()})
            }).collect::<Vec<_>>(),
        })
    }
}

/// `sum_{u=1}^inf p(u)`: each monomial `u^s` contributes `-B_{s+1}/(s+1)`.
pub fn poly_series_sum(p: &Polynomial) -> Rational {
    let mut acc = Rational::zero();
    for (s, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc += &(c * &(-bernoulli_number(s as u32 + 1) / Rational::from(s as u32 + 1)));
    }
    acc
}

/// `sum (-1)^(u-1) p(u)`: each monomial `u^s` contributes
/// `(2^(s+1) - 1) B_{s+1}/(s+1)`.
pub fn alt_poly_series_sum(p: &Polynomial) -> Rational {
    let mut acc = Rational::zero();
    for (s, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = (rat(2, 1).pow(s as i64 + 1) - Rational::one())
            * bernoulli_number(s as u32 + 1)
            / Rational::from(s as u32 + 1);
        acc += &(c * &w);
    }
    acc
}

fn exact_cf(v: Rational) -> ClosedFormValue {
    ClosedFormValue::exact(v)
}

/// Fifty interior sample angles of a window.
pub fn sample_thetas(window: &ThetaWindow) -> Vec<f64> {
    let (lo, hi) = window.to_f64_pair();
    (0..50)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / 50.0)
        .collect()
}

fn values_agree(a: &ClosedFormValue, b: &ClosedFormValue) -> bool {
    match (&a.kind, &b.kind) {
        (CfKind::Exact(x), CfKind::Exact(y)) => x == y,
        _ => {
            // structural equality first, then numeric sampling
            if a.kind == b.kind {
                return true;
            }
            let window = match (&a.window, &b.window) {
                (Some(w), Some(v)) => w.intersect(v),
                (Some(w), None) | (None, Some(w)) => w.clone(),
                (None, None) => ThetaWindow::symmetric_pi(),
            };
            sample_thetas(&window).iter().all(|&t| {
                match (a.eval_f64(Some(t)), b.eval_f64(Some(t))) {
                    (Ok(x), Ok(y)) => (x - y).abs() < 1e-12,
                    _ => false,
                }
            })
        }
    }
}

fn build_result(
    term: SeriesTerm,
    routes: Vec<(String, ClosedFormValue)>,
) -> Result<SumResult, SeriesError> {
    let primary = routes[0].1.clone();
    for (name, v) in routes.iter().skip(1) {
        if !values_agree(&primary, v) {
            return Err(SeriesError::InternalInconsistency(format!(
                "{} [{}]: route '{}' gives {} but primary gives {}",
                term.class_name(),
                term.params_string(),
                name,
                v,
                primary
            )));
        }
    }
    Ok(SumResult { term, value: primary, routes })
}

fn sin_factor(mult: Rational, power: i32) -> TrigFactor {
    TrigFactor { func: TrigFunc::Sin, mult, power }
}

fn cos_factor(mult: Rational, power: i32) -> TrigFactor {
    TrigFactor { func: TrigFunc::Cos, mult, power }
}

/// `(1/2) cot(theta/2) - 1/theta`.
fn sin_series_form() -> TrigForm {
    TrigForm::from_terms(vec![
        TrigTerm {
            coeff: rat(1, 2),
            theta_pow: 0,
            factors: vec![cos_factor(rat(1, 2), 1), sin_factor(rat(1, 2), -1)],
        },
        TrigTerm { coeff: rat(-1, 1), theta_pow: -1, factors: Vec::new() },
    ])
}

/// `1/(2 sin theta) - cos(theta)/(2 theta)`.
fn odd_sin_series_form() -> TrigForm {
    TrigForm::from_terms(vec![
        TrigTerm { coeff: rat(1, 2), theta_pow: 0, factors: vec![sin_factor(rat(1, 1), -1)] },
        TrigTerm { coeff: rat(-1, 2), theta_pow: -1, factors: vec![cos_factor(rat(1, 1), 1)] },
    ])
}

/// Window formula for a quasi-even polynomial
/// (`f(-x) = f(x - eps t)`):
/// `(eps/2) sum_{u=delta}^{t-1+delta} (lim f(n - eps u) - f(-eps u)) - f(0)/2`.
fn quasi_even_sum(f: &Polynomial, t: u32, eps: i32) -> Rational {
    let delta = (1 - eps) / 2;
    let mut acc = Rational::zero();
    for u in delta..(t as i32 + delta) {
        let arg = -(eps as i64) * u as i64;
        let lim = integral_unit(&f.shift(&Rational::from_int(arg)));
        acc += &(lim - f.eval_int(arg));
    }
    Rational::from_int(eps as i64) / rat(2, 1) * acc - f.eval_int(0) / rat(2, 1)
}

/// Regularized sum of the series, with every applicable route computed and
/// checked. The first route is the designated primary closed form.
pub fn sum(term: &SeriesTerm) -> Result<SumResult, SeriesError> {
    let t = term.clone();
    match term {
        SeriesTerm::PolyTerm(p) => build_result(
            t,
            vec![
                ("power-sum-closed-form".to_string(), exact_cf(poly_series_sum(p))),
                (
                    "partial-sum-limit".to_string(),
                    exact_cf(integral_unit(&indefinite_sum(p))),
                ),
            ],
        ),
        SeriesTerm::AltPolyTerm(p) => build_result(
            t,
            vec![
                ("alternating-closed-form".to_string(), exact_cf(alt_poly_series_sum(p))),
                (
                    "alternating-partial-sum".to_string(),
                    exact_cf(alt_indefinite_sum(p).0),
                ),
            ],
        ),
        SeriesTerm::Geometric { c, g, start } => {
            if g.is_one() {
                return Err(SeriesError::PoleAtOne);
            }
            if *start > 1 {
                return Err(SeriesError::InvalidArgument(
                    "geometric start index must be 0 or 1".to_string(),
                ));
            }
            let closed = c * &(g.pow(*start as i64) / (Rational::one() - g));
            let mut routes = vec![("geometric-closed-form".to_string(), exact_cf(closed))];
            if !g.is_zero() {
                // reflected series of reciprocal ratio: sum_{u=0}^inf g^u
                // equals -sum_{u=1}^inf g^-u, the latter summed classically
                let from_zero = -(g.recip() / (Rational::one() - g.recip()));
                let reflected = if *start == 1 {
                    c * &(&from_zero - &Rational::one())
                } else {
                    c * &from_zero
                };
                routes.push(("reciprocal-reflection".to_string(), exact_cf(reflected)));
            }
            build_result(t, routes)
        }
        SeriesTerm::ArithProg { a1, d } => {
            let closed = (rat(5, 1) * d - rat(6, 1) * a1) / rat(12, 1);
            let p = Polynomial::from_coeffs(vec![a1 - d, d.clone()]);
            // S_n = (2 a1 + (n-1) d) n / 2
            let s = Polynomial::from_coeffs(vec![
                Rational::zero(),
                (rat(2, 1) * a1 - d) / rat(2, 1),
                d / &rat(2, 1),
            ]);
            build_result(
                t,
                vec![
                    ("arithmetic-closed-form".to_string(), exact_cf(closed)),
                    ("power-sum-expansion".to_string(), exact_cf(poly_series_sum(&p))),
                    ("partial-sum-limit".to_string(), exact_cf(integral_unit(&s))),
                ],
            )
        }
        SeriesTerm::AltArithProg { a1, d } => {
            let closed = (rat(2, 1) * a1 - d) / rat(4, 1);
            let p = Polynomial::from_coeffs(vec![a1 - d, d.clone()]);
            // even partial sums -d n/2, odd partial sums a1 + d (n-1)/2
            let alpha = Polynomial::from_coeffs(vec![Rational::zero(), -d / &rat(2, 1)]);
            let beta = Polynomial::from_coeffs(vec![a1 - &(d / &rat(2, 1)), d / &rat(2, 1)]);
            build_result(
                t,
                vec![
                    ("alternating-arithmetic-closed-form".to_string(), exact_cf(closed)),
                    (
                        "alternating-expansion".to_string(),
                        exact_cf(alt_poly_series_sum(&p)),
                    ),
                    (
                        "spliced-partial-sums".to_string(),
                        exact_cf(limit_spliced(&alpha, &beta)),
                    ),
                ],
            )
        }
        SeriesTerm::OddPoly(k) => {
            if *k < 1 {
                return Err(SeriesError::InvalidArgument("k must be >= 1".to_string()));
            }
            let kk = Rational::from(*k);
            let closed = (rat(2, 1) * (rat(2, 1).pow(*k as i64 - 1) - Rational::one())
                * bernoulli_number(*k)
                + neg_one_pow(*k as i64))
                / (rat(2, 1) * &kk);
            let odd_arg = Polynomial::from_coeffs(vec![rat(-1, 1), rat(2, 1)]);
            let expanded = odd_arg.pow(*k - 1);
            // sum f(2u-1) = (A+B)/2 - lim f(n)/2 for f(u) = u^(k-1)
            let mono = Polynomial::monomial(Rational::one(), *k as usize - 1);
            let split = (poly_series_sum(&mono) + alt_poly_series_sum(&mono)) / rat(2, 1)
                - integral_unit(&mono) / rat(2, 1);
            build_result(
                t,
                vec![
                    ("odd-power-closed-form".to_string(), exact_cf(closed)),
                    ("power-sum-expansion".to_string(), exact_cf(poly_series_sum(&expanded))),
                    ("even-odd-split".to_string(), exact_cf(split)),
                ],
            )
        }
        SeriesTerm::AltOddPoly(k) => {
            if *k < 1 {
                return Err(SeriesError::InvalidArgument("k must be >= 1".to_string()));
            }
            let mut acc = Rational::zero();
            for u in 1..=*k {
                acc += &(neg_one_pow(u as i64)
                    * rat(2, 1).pow(u as i64)
                    * (rat(2, 1).pow(u as i64) - Rational::one())
                    * binomial(*k as u64, u as i64)
                    * bernoulli_number(u));
            }
            let closed = -acc / (rat(2, 1) * Rational::from(*k));
            let odd_arg = Polynomial::from_coeffs(vec![rat(-1, 1), rat(2, 1)]);
            let expanded = odd_arg.pow(*k - 1);
            build_result(
                t,
                vec![
                    ("alternating-odd-closed-form".to_string(), exact_cf(closed)),
                    (
                        "alternating-expansion".to_string(),
                        exact_cf(alt_poly_series_sum(&expanded)),
                    ),
                ],
            )
        }
        SeriesTerm::TrigCosSeries => build_result(
            t,
            vec![
                (
                    "cos-series-closed-form".to_string(),
                    ClosedFormValue::exact_in_window(rat(-1, 2), ThetaWindow::symmetric_pi()),
                ),
                (
                    "even-function-rule".to_string(),
                    // cos(u theta) is even in u with value 1 at u = 0
                    ClosedFormValue::exact_in_window(
                        -Rational::one() / rat(2, 1),
                        ThetaWindow::symmetric_pi(),
                    ),
                ),
            ],
        ),
        SeriesTerm::AltTrigCosSeries => build_result(
            t,
            vec![(
                "alt-cos-series-closed-form".to_string(),
                ClosedFormValue::exact_in_window(rat(1, 2), ThetaWindow::symmetric_pi()),
            )],
        ),
        SeriesTerm::TrigSinSeries => {
            let window = ThetaWindow::zero_to_pi();
            let primary = sin_series_form();
            // (1/2) cot(theta/2) + (1/2) csc^2(theta/2) lim sin(n theta)
            let cot_half = TrigForm::from_terms(vec![TrigTerm {
                coeff: rat(1, 2),
                theta_pow: 0,
                factors: vec![cos_factor(rat(1, 2), 1), sin_factor(rat(1, 2), -1)],
            }]);
            let csc_sq_half = TrigForm::from_terms(vec![TrigTerm {
                coeff: rat(1, 2),
                theta_pow: 0,
                factors: vec![sin_factor(rat(1, 2), -2)],
            }]);
            let via_limit =
                cot_half.add(&csc_sq_half.mul(&trig_sin_limit_form(&Rational::zero())));
            build_result(
                t,
                vec![
                    (
                        "sin-series-closed-form".to_string(),
                        ClosedFormValue::trig(primary, window.clone()),
                    ),
                    (
                        "via-sin-limit".to_string(),
                        ClosedFormValue::trig(via_limit, window),
                    ),
                ],
            )
        }
        SeriesTerm::OddTrigSinSeries => {
            let window = ThetaWindow::zero_to_pi();
            let primary = odd_sin_series_form();
            // csc(theta) * lim sin^2(n theta)
            let csc = TrigForm::from_terms(vec![TrigTerm {
                coeff: Rational::one(),
                theta_pow: 0,
                factors: vec![sin_factor(rat(1, 1), -1)],
            }]);
            let via_limit = csc.mul(&trig_sin_sq_limit_form());
            build_result(
                t,
                vec![
                    (
                        "odd-sin-series-closed-form".to_string(),
                        ClosedFormValue::trig(primary, window.clone()),
                    ),
                    (
                        "via-sin-sq-limit".to_string(),
                        ClosedFormValue::trig(via_limit, window),
                    ),
                ],
            )
        }
        SeriesTerm::AltPolySin(k) | SeriesTerm::AltPolyCos(k) => {
            if *k < 1 {
                return Err(SeriesError::InvalidArgument("k must be >= 1".to_string()));
            }
            build_result(
                t,
                vec![(
                    "alternating-trig-vanishing".to_string(),
                    ClosedFormValue::exact_in_window(
                        Rational::zero(),
                        ThetaWindow::symmetric_pi(),
                    ),
                )],
            )
        }
        SeriesTerm::Binomial { a, x } => {
            if *a == 0 {
                return Err(SeriesError::InvalidArgument(
                    "binomial exponent must be nonzero".to_string(),
                ));
            }
            if !(-Rational::one() < *x && *x <= Rational::one()) {
                return Err(SeriesError::InvalidArgument(format!(
                    "x = {} outside the admissible interval (-1, 1]",
                    x
                )));
            }
            let base = Rational::one() + x;
            let closed = base.pow(*a);
            let mut routes = vec![("binomial-closed-form".to_string(), exact_cf(closed))];
            if *a < 0 && x.is_one() {
                // (1+1)^-m = sum (-1)^u C(m+u-1, m-1): sum the alternating
                // polynomial with the machinery for (-1)^(u-1) p(u)
                let m = (-a) as u64;
                let mut p = Polynomial::one();
                for j in 1..m {
                    p = &p
                        * &Polynomial::from_coeffs(vec![Rational::from(j), Rational::one()]);
                }
                p = p.scale(&factorial(m - 1).recip());
                let value = p.eval_int(0) - alt_poly_series_sum(&p);
                routes.push(("alternating-remainder".to_string(), exact_cf(value)));
            }
            build_result(t, routes)
        }
        SeriesTerm::QuasiEvenPoly { f, t: shift_t, eps } => {
            if *eps != 1 && *eps != -1 {
                return Err(SeriesError::InvalidArgument(format!(
                    "eps must be +1 or -1, got {}",
                    eps
                )));
            }
            let shift = Rational::from_int(*eps as i64 * *shift_t as i64);
            if !is_quasi_even(f, &shift) {
                return Err(SeriesError::NotQuasiEven(format!(
                    "f(-x) != f(x - {}*{})",
                    eps, shift_t
                )));
            }
            build_result(
                t,
                vec![
                    (
                        "window-formula".to_string(),
                        exact_cf(quasi_even_sum(f, *shift_t, *eps)),
                    ),
                    ("power-sum-expansion".to_string(), exact_cf(poly_series_sum(f))),
                ],
            )
        }
        SeriesTerm::EvenRegular { family } => match even_regular_f0(family) {
            Some(ExpectedValue::Exact(f0)) => build_result(
                t,
                vec![(
                    "even-function-rule".to_string(),
                    exact_cf(-f0 / rat(2, 1)),
                )],
            ),
            Some(_) => Err(SeriesError::InvalidArgument(format!(
                "family '{}' has a non-rational value at zero",
                family
            ))),
            None => Err(SeriesError::UnknownFamily(family.clone())),
        },
        SeriesTerm::Combo(parts) => {
            let mut exact_acc = Rational::zero();
            let mut form_acc = TrigForm::zero();
            let mut any_trig = false;
            let mut window: Option<ThetaWindow> = None;
            for (c, part) in parts {
                let inner = sum(part)?;
                match inner.value.kind {
                    CfKind::Exact(v) => exact_acc += &(c * &v),
                    CfKind::Trig(form) => {
                        any_trig = true;
                        form_acc = form_acc.add(&form.scale(c));
                    }
                }
                window = match (window, inner.value.window) {
                    (None, w) => w,
                    (w, None) => w,
                    (Some(a), Some(b)) => Some(a.intersect(&b)),
                };
            }
            let value = if any_trig {
                let total = form_acc.add(&TrigForm::constant(exact_acc));
                ClosedFormValue::trig(total, window.unwrap_or_else(ThetaWindow::symmetric_pi))
            } else {
                ClosedFormValue { kind: CfKind::Exact(exact_acc), window }
            };
            build_result(t, vec![("member-linearity".to_string(), value)])
        }
    }
}

/// Shifted-series sum for a polynomial term:
/// `sum f(u - eps t) = sum f(u) - eps sum_{u=delta}^{t-1+delta}
/// (lim f(n - eps u) - f(-eps u))`, cross-checked against summing the
/// composed polynomial directly.
pub fn shift_sum(term: &SeriesTerm, eps_t: i64) -> Result<Rational, SeriesError> {
    let p = match term {
        SeriesTerm::PolyTerm(p) => p.clone(),
        _ => {
            return Err(SeriesError::InvalidArgument(
                "shift_sum applies to polynomial terms only".to_string(),
            ))
        }
    };
    if eps_t == 0 {
        return Ok(poly_series_sum(&p));
    }
    let eps = eps_t.signum();
    let t = eps_t.unsigned_abs();
    let delta = (1 - eps) / 2;
    let mut correction = Rational::zero();
    for u in delta..(t as i64 + delta) {
        let arg = -eps * u;
        let lim = integral_unit(&p.shift(&Rational::from_int(arg)));
        correction += &(lim - p.eval_int(arg));
    }
    let value = poly_series_sum(&p) - Rational::from_int(eps) * correction;
    // direct route: sum the composed polynomial p(u - eps t)
    let composed = p.shift(&Rational::from_int(-eps_t));
    let direct = poly_series_sum(&composed);
    if value != direct {
        return Err(SeriesError::InternalInconsistency(format!(
            "shift formula gives {} but direct expansion gives {}",
            value, direct
        )));
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralMode {
    Commutative,
    Associative,
    Distributive,
}

impl StructuralMode {
    pub fn name(&self) -> &'static str {
        match self {
            StructuralMode::Commutative => "commutative",
            StructuralMode::Associative => "associative",
            StructuralMode::Distributive => "distributive",
        }
    }
}

/// Report of a structural identity check, with the named exact pieces.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub mode: StructuralMode,
    pub pass: bool,
    pub pieces: Vec<(&'static str, Rational)>,
}

impl fmt::Display for StructuralReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}:",
            if self.pass { "ok  " } else { "FAIL" },
            self.mode.name()
        )?;
        for (name, v) in &self.pieces {
            write!(f, " {}={}", name, v)?;
        }
        Ok(())
    }
}

/// Check the reordering identities on a polynomial or alternating
/// polynomial term: splitting into odd/even subsequences (commutative),
/// pairing adjacent terms (associative), and the half-difference /
/// half-sum forms (distributive). All pieces are computed exactly by this
/// module and the limits module.
pub fn structural_checks(
    term: &SeriesTerm,
    mode: StructuralMode,
) -> Result<StructuralReport, SeriesError> {
    // decompose f(u) = sign(u) p(u); for both supported classes everything
    // reduces to sums of composed polynomials
    let (p, alternating) = match term {
        SeriesTerm::PolyTerm(p) => (p.clone(), false),
        SeriesTerm::AltPolyTerm(p) => (p.clone(), true),
        _ => {
            return Err(SeriesError::InvalidArgument(
                "structural checks apply to polynomial and alternating polynomial terms"
                    .to_string(),
            ))
        }
    };
    let two_x_minus_1 = Polynomial::from_coeffs(vec![rat(-1, 1), rat(2, 1)]);
    let two_x = Polynomial::from_coeffs(vec![rat(0, 1), rat(2, 1)]);
    let p_odd = p.compose(&two_x_minus_1);
    let p_even = p.compose(&two_x);

    let (total, alt_total, odd, even, lim_f, lim_alt_f);
    if alternating {
        // f(u) = (-1)^(u-1) p(u): f(2u-1) = p(2u-1), f(2u) = -p(2u)
        total = alt_poly_series_sum(&p);
        alt_total = poly_series_sum(&p);
        odd = poly_series_sum(&p_odd);
        even = -poly_series_sum(&p_even);
        lim_f = Rational::zero();
        lim_alt_f = -integral_unit(&p);
    } else {
        total = poly_series_sum(&p);
        alt_total = alt_poly_series_sum(&p);
        odd = poly_series_sum(&p_odd);
        even = poly_series_sum(&p_even);
        lim_f = integral_unit(&p);
        lim_alt_f = Rational::zero();
    }
    // the tail correction (f(n) - (-1)^n f(n))/2 in the limit
    let correction = (&lim_f - &lim_alt_f) / rat(2, 1);

    let report = match mode {
        StructuralMode::Commutative => {
            let rhs = &(&odd + &even) + &correction;
            StructuralReport {
                mode,
                pass: total == rhs,
                pieces: vec![
                    ("total", total),
                    ("odd-part", odd),
                    ("even-part", even),
                    ("correction", correction),
                    ("rhs", rhs),
                ],
            }
        }
        StructuralMode::Associative => {
            // pairs summed as a single series
            let paired = if alternating {
                poly_series_sum(&(&p_odd - &p_even))
            } else {
                poly_series_sum(&(&p_odd + &p_even))
            };
            let rhs = &paired + &correction;
            StructuralReport {
                mode,
                pass: total == rhs,
                pieces: vec![
                    ("total", total),
                    ("paired", paired),
                    ("correction", correction),
                    ("rhs", rhs),
                ],
            }
        }
        StructuralMode::Distributive => {
            let half_diff = (&total - &alt_total) / rat(2, 1);
            let half_sum = (&total + &alt_total) / rat(2, 1) - &correction;
            let even_ok = even == half_diff;
            let odd_ok = odd == half_sum;
            StructuralReport {
                mode,
                pass: even_ok && odd_ok,
                pieces: vec![
                    ("total", total),
                    ("alt-total", alt_total),
                    ("even-part", even),
                    ("half-difference", half_diff),
                    ("odd-part", odd),
                    ("half-sum-corrected", half_sum),
                ],
            }
        }
    };
    Ok(report)
}

/// Expected value of a builtin entry: exact rational, or a rational multiple
/// of `tan(1/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedValue {
    Exact(Rational),
    TanHalfScaled(Rational),
}

impl ExpectedValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExpectedValue::Exact(r) => r.to_f64(),
            ExpectedValue::TanHalfScaled(r) => r.to_f64() * 0.5f64.tan(),
        }
    }
}

impl fmt::Display for ExpectedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedValue::Exact(r) => write!(f, "{}", r),
            ExpectedValue::TanHalfScaled(r) => write!(f, "{}*tan(1/2)", r),
        }
    }
}

/// A registered series example: convergent entries carry a numeric term
/// evaluator for the partial-sum oracle, and keep the printed generating
/// function as documentation.
pub struct BuiltinEntry {
    pub name: &'static str,
    /// Term class when the entry is expressible as one.
    pub series: Option<SeriesTerm>,
    /// Numeric term evaluator, `u >= 1`.
    pub term: Option<fn(i64) -> f64>,
    /// Numeric generating function, when one is printed.
    pub generating: Option<fn(i64) -> f64>,
    /// The printed generating function, as documentation.
    pub generating_doc: Option<&'static str>,
    pub expected: ExpectedValue,
    pub convergent: bool,
}

/// `f(0)` for the registered even regular families.
pub fn even_regular_f0(family: &str) -> Option<ExpectedValue> {
    match family {
        "even-recip-quadratic" => Some(ExpectedValue::Exact(rat(-1, 1))),
        "alt-quadratic-ratio" => Some(ExpectedValue::Exact(rat(2, 1))),
        "quarter" => Some(ExpectedValue::Exact(rat(-1, 2))),
        "tan-half" => Some(ExpectedValue::TanHalfScaled(rat(1, 4))),
        "even-rational" => Some(ExpectedValue::Exact(rat(-1, 1))),
        "cosh" => Some(ExpectedValue::Exact(rat(1, 1))),
        "exp-pair" => Some(ExpectedValue::Exact(rat(2, 1))),
        _ => None,
    }
}

fn term_even_recip_quadratic(u: i64) -> f64 {
    1.0 / (4.0 * (u * u) as f64 - 1.0)
}

fn term_alt_quadratic_ratio(u: i64) -> f64 {
    let sq = 2.0 * (u * u) as f64;
    let sign = if u.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * (sq + 0.5) / ((sq - 0.5) * (sq - 0.5))
}

fn term_quarter(u: i64) -> f64 {
    if u > 100 {
        return 0.0; // underflows double precision anyway
    }
    let uf = u as f64;
    let num = (4f64.powi(u as i32) - 1.0) * (uf - 0.5) - 1.0;
    num / 2f64.powi((u * u + u + 1) as i32)
}

fn term_tan_half(u: i64) -> f64 {
    let uf = u as f64;
    let den = 4.0 * uf * uf - 1.0;
    ((uf * uf + 0.25) * 0.5f64.tan() * uf.cos() - uf * uf.sin()) / (den * den)
}

fn term_even_rational(u: i64) -> f64 {
    let u2 = (u * u) as f64;
    (18.0 * u2 - 4.0) / (81.0 * u2 * u2 - 45.0 * u2 + 4.0)
}

fn term_cosh(u: i64) -> f64 {
    (u as f64).cosh()
}

fn term_exp_pair(u: i64) -> f64 {
    let uf = u as f64;
    uf.exp() + (-uf).exp()
}

fn gen_even_recip_quadratic(n: i64) -> f64 {
    -1.0 / (2.0 * (2.0 * n as f64 - 1.0))
}

fn gen_alt_quadratic_ratio(n: i64) -> f64 {
    let sign = if (n - 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let d = 2.0 * n as f64 - 1.0;
    sign / (d * d)
}

fn gen_quarter(n: i64) -> f64 {
    let e = n * n - n + 1;
    if e > 1000 {
        return 0.0;
    }
    -(n as f64 - 0.5) / 2f64.powi(e as i32)
}

fn gen_tan_half(n: i64) -> f64 {
    let nf = n as f64;
    let d = 2.0 * nf - 1.0;
    (nf - 0.5).sin() / (8.0 * d * d * 0.5f64.cos())
}

/// The registry of worked series: the convergent examples with their
/// printed generating functions, the hyperbolic pair, and the divergent
/// staples.
pub fn builtin_examples() -> Vec<BuiltinEntry> {
    vec![
        BuiltinEntry {
            name: "even-recip-quadratic",
            series: SeriesTerm::even_regular("even-recip-quadratic").ok(),
            term: Some(term_even_recip_quadratic),
            generating: Some(gen_even_recip_quadratic),
            generating_doc: Some("-1/(2*(2*n-1))"),
            expected: ExpectedValue::Exact(rat(1, 2)),
            convergent: true,
        },
        BuiltinEntry {
            name: "alt-quadratic-ratio",
            series: SeriesTerm::even_regular("alt-quadratic-ratio").ok(),
            term: Some(term_alt_quadratic_ratio),
            generating: Some(gen_alt_quadratic_ratio),
            generating_doc: Some("(-1)^(n-1)/(2*n-1)^2"),
            expected: ExpectedValue::Exact(rat(-1, 1)),
            convergent: true,
        },
        BuiltinEntry {
            name: "quarter",
            series: SeriesTerm::even_regular("quarter").ok(),
            term: Some(term_quarter),
            generating: Some(gen_quarter),
            generating_doc: Some("-(n-1/2)/2^(n^2-n+1)"),
            expected: ExpectedValue::Exact(rat(1, 4)),
            convergent: true,
        },
        BuiltinEntry {
            name: "tan-half",
            series: None, // value at zero is tan(1/2)/4, not rational
            term: Some(term_tan_half),
            generating: Some(gen_tan_half),
            generating_doc: Some("sin(n-1/2)/(8*(2*n-1)^2*cos(1/2))"),
            expected: ExpectedValue::TanHalfScaled(rat(-1, 8)),
            convergent: true,
        },
        BuiltinEntry {
            name: "even-rational",
            series: SeriesTerm::even_regular("even-rational").ok(),
            term: Some(term_even_rational),
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(1, 2)),
            convergent: true,
        },
        BuiltinEntry {
            name: "cosh",
            series: SeriesTerm::even_regular("cosh").ok(),
            term: Some(term_cosh),
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(-1, 2)),
            convergent: false,
        },
        BuiltinEntry {
            name: "exp-pair",
            series: SeriesTerm::even_regular("exp-pair").ok(),
            term: Some(term_exp_pair),
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(-1, 1)),
            convergent: false,
        },
        BuiltinEntry {
            name: "grandi",
            series: Some(SeriesTerm::AltArithProg { a1: Rational::one(), d: Rational::zero() }),
            term: None,
            generating: None,
            generating_doc: Some("(-1)^n/2"),
            expected: ExpectedValue::Exact(rat(1, 2)),
            convergent: false,
        },
        BuiltinEntry {
            name: "all-ones",
            series: Some(SeriesTerm::ArithProg { a1: Rational::one(), d: Rational::zero() }),
            term: None,
            generating: None,
            generating_doc: Some("n-1"),
            expected: ExpectedValue::Exact(rat(-1, 2)),
            convergent: false,
        },
        BuiltinEntry {
            name: "naturals",
            series: Some(SeriesTerm::ArithProg { a1: Rational::one(), d: Rational::one() }),
            term: None,
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(-1, 12)),
            convergent: false,
        },
        BuiltinEntry {
            name: "odd-naturals",
            series: Some(SeriesTerm::ArithProg { a1: Rational::one(), d: rat(2, 1) }),
            term: None,
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(1, 3)),
            convergent: false,
        },
        BuiltinEntry {
            name: "alt-naturals",
            series: Some(SeriesTerm::AltArithProg { a1: Rational::one(), d: Rational::one() }),
            term: None,
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(1, 4)),
            convergent: false,
        },
        BuiltinEntry {
            name: "alt-odds",
            series: Some(SeriesTerm::AltArithProg { a1: Rational::one(), d: rat(2, 1) }),
            term: None,
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(0, 1)),
            convergent: false,
        },
        BuiltinEntry {
            name: "powers-of-two",
            series: Some(SeriesTerm::Geometric {
                c: Rational::one(),
                g: rat(2, 1),
                start: 0,
            }),
            term: None,
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(-1, 1)),
            convergent: false,
        },
        BuiltinEntry {
            name: "alt-powers-of-two",
            series: Some(SeriesTerm::Geometric {
                c: Rational::one(),
                g: rat(-2, 1),
                start: 0,
            }),
            term: None,
            generating: None,
            generating_doc: None,
            expected: ExpectedValue::Exact(rat(1, 3)),
            convergent: false,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn exact_sum(term: &SeriesTerm) -> Rational {
        sum(term).unwrap().value.as_exact().unwrap().clone()
    }

    #[test]
    fn divergent_staples() {
        assert_eq!(exact_sum(&SeriesTerm::PolyTerm(Polynomial::x())), rat(-1, 12));
        assert_eq!(exact_sum(&SeriesTerm::PolyTerm(Polynomial::one())), rat(-1, 2));
        assert_eq!(exact_sum(&SeriesTerm::AltPolyTerm(Polynomial::x())), rat(1, 4));
        assert_eq!(exact_sum(&SeriesTerm::AltPolyTerm(Polynomial::one())), rat(1, 2));
        assert_eq!(
            exact_sum(&SeriesTerm::Geometric { c: Rational::one(), g: rat(2, 1), start: 0 }),
            rat(-1, 1)
        );
        assert_eq!(
            exact_sum(&SeriesTerm::Geometric { c: Rational::one(), g: rat(-2, 1), start: 0 }),
            rat(1, 3)
        );
        assert_eq!(
            exact_sum(&SeriesTerm::ArithProg { a1: Rational::one(), d: rat(2, 1) }),
            rat(1, 3)
        );
        assert_eq!(
            exact_sum(&SeriesTerm::AltArithProg { a1: Rational::one(), d: rat(2, 1) }),
            rat(0, 1)
        );
    }

    #[test]
    fn geometric_guards() {
        assert!(matches!(
            sum(&SeriesTerm::Geometric { c: Rational::one(), g: Rational::one(), start: 0 }),
            Err(SeriesError::PoleAtOne)
        ));
        // half ratio sums classically
        assert_eq!(
            exact_sum(&SeriesTerm::Geometric { c: Rational::one(), g: rat(1, 2), start: 1 }),
            rat(1, 1)
        );
    }

    #[test]
    fn even_powers_vanish() {
        for k in 1..=10u32 {
            let mono = Polynomial::monomial(Rational::one(), 2 * k as usize);
            assert!(exact_sum(&SeriesTerm::PolyTerm(mono.clone())).is_zero());
            assert!(exact_sum(&SeriesTerm::AltPolyTerm(mono)).is_zero());
        }
    }

    #[test]
    fn quasi_even_example() {
        // (2u-1)^2 with t = 1, eps = -1 sums to -1/6
        let f = poly(&[(1, 1), (-4, 1), (4, 1)]);
        let term = SeriesTerm::QuasiEvenPoly { f, t: 1, eps: -1 };
        assert_eq!(exact_sum(&term), rat(-1, 6));
        // rejection: x^2 is not quasi-even for t = 1
        let bad = SeriesTerm::QuasiEvenPoly {
            f: Polynomial::monomial(Rational::one(), 2),
            t: 1,
            eps: 1,
        };
        assert!(matches!(sum(&bad), Err(SeriesError::NotQuasiEven(_))));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(
            exact_sum(&SeriesTerm::Binomial { a: -2, x: Rational::one() }),
            rat(1, 4)
        );
        assert_eq!(
            exact_sum(&SeriesTerm::Binomial { a: -1, x: Rational::one() }),
            rat(1, 2)
        );
        assert_eq!(
            exact_sum(&SeriesTerm::Binomial { a: -3, x: Rational::one() }),
            rat(1, 8)
        );
        assert_eq!(
            exact_sum(&SeriesTerm::Binomial { a: 4, x: rat(1, 3) }),
            rat(4, 3).pow(4)
        );
        assert!(sum(&SeriesTerm::Binomial { a: 0, x: rat(1, 2) }).is_err());
        assert!(sum(&SeriesTerm::Binomial { a: 2, x: rat(-3, 2) }).is_err());
    }

    #[test]
    fn odd_power_series() {
        assert_eq!(exact_sum(&SeriesTerm::OddPoly(2)), rat(1, 3));
        assert_eq!(exact_sum(&SeriesTerm::OddPoly(3)), rat(-1, 6));
        assert_eq!(exact_sum(&SeriesTerm::OddPoly(1)), rat(-1, 2));
        assert_eq!(exact_sum(&SeriesTerm::AltOddPoly(2)), rat(0, 1));
        assert_eq!(exact_sum(&SeriesTerm::AltOddPoly(1)), rat(1, 2));
        assert_eq!(exact_sum(&SeriesTerm::AltOddPoly(3)), rat(-1, 2));
    }

    #[test]
    fn trig_series_forms() {
        let cos = sum(&SeriesTerm::TrigCosSeries).unwrap();
        assert_eq!(cos.value.as_exact(), Some(&rat(-1, 2)));
        let alt_cos = sum(&SeriesTerm::AltTrigCosSeries).unwrap();
        assert_eq!(alt_cos.value.as_exact(), Some(&rat(1, 2)));
        let sin = sum(&SeriesTerm::TrigSinSeries).unwrap();
        match &sin.value.kind {
            CfKind::Trig(form) => {
                assert_eq!(
                    form.to_string(),
                    "1/2*cos(theta/2)/sin(theta/2) - 1/theta"
                );
            }
            CfKind::Exact(_) => panic!("expected trig form"),
        }
        // the via-limit route collapses structurally to the same form
        assert_eq!(sin.routes[0].1, sin.routes[1].1);
        // odd sin series agrees numerically with its limit route
        let odd = sum(&SeriesTerm::OddTrigSinSeries).unwrap();
        assert_eq!(odd.routes.len(), 2);
        let v = odd.value.eval_f64(Some(1.0)).unwrap();
        let want = 0.5 / 1f64.sin() - 1f64.cos() / 2.0;
        assert!((v - want).abs() < 1e-15);
    }

    #[test]
    fn alternating_trig_vanishing() {
        assert!(sum(&SeriesTerm::AltPolySin(3)).unwrap().value.is_exact_zero());
        assert!(sum(&SeriesTerm::AltPolyCos(2)).unwrap().value.is_exact_zero());
    }

    #[test]
    fn even_regular_families() {
        let t = SeriesTerm::even_regular("even-recip-quadratic").unwrap();
        assert_eq!(exact_sum(&t), rat(1, 2));
        assert_eq!(exact_sum(&SeriesTerm::even_regular("cosh").unwrap()), rat(-1, 2));
        assert_eq!(exact_sum(&SeriesTerm::even_regular("exp-pair").unwrap()), rat(-1, 1));
        assert!(matches!(
            SeriesTerm::even_regular("nope"),
            Err(SeriesError::UnknownFamily(_))
        ));
        // non-rational f(0) families stay registry-only
        assert!(SeriesTerm::even_regular("tan-half").is_err());
    }

    #[test]
    fn combo_linearity() {
        // 3 * sum u + (-2) * sum 2^u = 3(-1/12) - 2(-1) = 7/4
        let combo = SeriesTerm::Combo(vec![
            (rat(3, 1), SeriesTerm::PolyTerm(Polynomial::x())),
            (rat(-2, 1), SeriesTerm::Geometric { c: Rational::one(), g: rat(2, 1), start: 0 }),
        ]);
        assert_eq!(exact_sum(&combo), rat(7, 4));
        // mixing in a trig member keeps the window
        let with_trig = SeriesTerm::Combo(vec![
            (Rational::one(), SeriesTerm::TrigSinSeries),
            (rat(2, 1), SeriesTerm::PolyTerm(Polynomial::one())),
        ]);
        let r = sum(&with_trig).unwrap();
        let got = r.value.eval_f64(Some(1.2)).unwrap();
        let want = 0.5 / (0.6f64).tan() - 1.0 / 1.2 - 1.0;
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn shift_sum_examples() {
        let sq = SeriesTerm::PolyTerm(Polynomial::monomial(Rational::one(), 2));
        // sum (u+1)^2 = sum u^2 + correction
        let shifted = shift_sum(&sq, -1).unwrap();
        assert_eq!(shifted, rat(-2, 3));
        let anyp = SeriesTerm::PolyTerm(poly(&[(1, 2), (3, 1), (1, 1)]));
        assert_eq!(shift_sum(&anyp, 0).unwrap(), exact_sum(&anyp));
        let ones = SeriesTerm::PolyTerm(Polynomial::one());
        assert_eq!(shift_sum(&ones, 1).unwrap(), rat(-1, 2));
        assert!(shift_sum(&SeriesTerm::OddPoly(2), 1).is_err());
    }

    #[test]
    fn structural_examples() {
        // sum 1 = sum(1+1) + 1/2
        let ones = SeriesTerm::PolyTerm(Polynomial::one());
        let r = structural_checks(&ones, StructuralMode::Associative).unwrap();
        assert!(r.pass);
        let alt_ones = SeriesTerm::AltPolyTerm(Polynomial::one());
        let r = structural_checks(&alt_ones, StructuralMode::Associative).unwrap();
        assert!(r.pass);
        // distributive on u: sum 2u = (A - B)/2 with A = -1/12, B = 1/4
        let nat = SeriesTerm::PolyTerm(Polynomial::x());
        let r = structural_checks(&nat, StructuralMode::Distributive).unwrap();
        assert!(r.pass);
        let even_piece = r.pieces.iter().find(|(n, _)| *n == "even-part").unwrap();
        assert_eq!(even_piece.1, rat(-1, 6));
        for mode in [
            StructuralMode::Commutative,
            StructuralMode::Associative,
            StructuralMode::Distributive,
        ] {
            for term in [
                SeriesTerm::PolyTerm(poly(&[(1, 3), (-2, 1), (1, 1), (5, 2)])),
                SeriesTerm::AltPolyTerm(poly(&[(2, 1), (1, 2), (-1, 3)])),
            ] {
                let r = structural_checks(&term, mode).unwrap();
                assert!(r.pass, "{:?} failed: {}", mode, r);
            }
        }
    }

    #[test]
    fn corollary_even_plus_reflected() {
        // sum (f(u) + f(-u)) = -f(0) for polynomial f
        for f in [
            poly(&[(3, 1), (1, 2), (5, 1), (0, 1), (7, 3)]),
            poly(&[(-2, 5), (1, 1)]),
        ] {
            let sym = &f + &f.reflect();
            assert_eq!(exact_sum(&SeriesTerm::PolyTerm(sym)), -f.eval_int(0));
        }
    }

    #[test]
    fn builtin_registry_shape() {
        let entries = builtin_examples();
        let quarter = entries.iter().find(|e| e.name == "quarter").unwrap();
        assert!(quarter.convergent);
        assert_eq!(quarter.expected, ExpectedValue::Exact(rat(1, 4)));
        assert!(quarter.series.is_some());
        let cosh = entries.iter().find(|e| e.name == "cosh").unwrap();
        assert!(!cosh.convergent);
        assert_eq!(cosh.expected, ExpectedValue::Exact(rat(-1, 2)));
        let even_rational = entries.iter().find(|e| e.name == "even-rational").unwrap();
        assert_eq!(even_rational.expected, ExpectedValue::Exact(rat(1, 2)));
        // every entry with a series term reproduces its expected value
        for entry in &entries {
            if let (Some(series), ExpectedValue::Exact(v)) = (&entry.series, &entry.expected) {
                assert_eq!(&exact_sum(series), v, "entry {}", entry.name);
            }
        }
    }

    #[test]
    fn term_evaluators() {
        let t = SeriesTerm::AltArithProg { a1: Rational::one(), d: rat(2, 1) };
        let vals: Vec<Rational> = (1..=4).map(|u| t.term_exact(u).unwrap()).collect();
        assert_eq!(vals, vec![rat(1, 1), rat(-3, 1), rat(5, 1), rat(-7, 1)]);
        let b = SeriesTerm::Binomial { a: -2, x: Rational::one() };
        let vals: Vec<Rational> = (0..=3).map(|u| b.term_exact(u).unwrap()).collect();
        assert_eq!(vals, vec![rat(1, 1), rat(-2, 1), rat(3, 1), rat(-4, 1)]);
        let s = SeriesTerm::TrigSinSeries;
        assert!((s.term_f64(2, 0.7) - (1.4f64).sin()).abs() < 1e-15);
    }
}
