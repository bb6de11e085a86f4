//! Regularized limits.
//!
//! Every elementary function of integer argument receives a limit here:
//! polynomials integrate over `[-1, 0]`, alternating polynomials vanish,
//! even/odd spliced pairs average, and the trigonometric family produces
//! structured closed forms in `theta` ([`TrigForm`]) that support exact
//! structural comparison after canonicalization plus floating-point
//! evaluation inside their admissibility window.

use std::fmt;

use crate::exact::{rat, Rational};
use crate::poly::{integral_unit, is_quasi_odd, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitError {
    NotQuasiOdd(String),
    DomainViolation(String),
}

impl fmt::Display for LimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitError::NotQuasiOdd(msg) => write!(f, "not quasi-odd: {}", msg),
            LimitError::DomainViolation(msg) => write!(f, "domain violation: {}", msg),
        }
    }
}

impl std::error::Error for LimitError {}

/// Open admissibility interval for `theta`, endpoints as exact multiples of
/// pi. Evaluation at or beyond an endpoint is refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaWindow {
    pub lo: Rational,
    pub hi: Rational,
}

impl ThetaWindow {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        ThetaWindow { lo, hi }
    }

    /// `(-pi, pi)`.
    pub fn symmetric_pi() -> Self {
        ThetaWindow::new(rat(-1, 1), rat(1, 1))
    }

    /// `(0, pi)`.
    pub fn zero_to_pi() -> Self {
        ThetaWindow::new(rat(0, 1), rat(1, 1))
    }

    /// `(0, 2 pi)`.
    pub fn zero_to_two_pi() -> Self {
        ThetaWindow::new(rat(0, 1), rat(2, 1))
    }

    pub fn contains(&self, theta: f64) -> bool {
        let lo = self.lo.to_f64() * std::f64::consts::PI;
        let hi = self.hi.to_f64() * std::f64::consts::PI;
        lo < theta && theta < hi
    }

    pub fn intersect(&self, other: &ThetaWindow) -> ThetaWindow {
        ThetaWindow {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.lo.to_f64() * std::f64::consts::PI,
            self.hi.to_f64() * std::f64::consts::PI,
        )
    }
}

impl fmt::Display for ThetaWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |r: &Rational| -> String {
            if r.is_zero() {
                "0".to_string()
            } else if r.is_one() {
                "pi".to_string()
            } else if *r == rat(-1, 1) {
                "-pi".to_string()
            } else {
                format!("{}*pi", r)
            }
        };
        write!(f, "({}, {})", side(&self.lo), side(&self.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TrigFunc {
    Sin,
    Cos,
}

/// One factor `sin(mult * theta)^power` or `cos(mult * theta)^power`;
/// negative powers put the factor in the denominator (csc, sec, and the
/// cot/tan combinations arise this way).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrigFactor {
    pub func: TrigFunc,
    pub mult: Rational,
    pub power: i32,
}

/// `coeff * theta^theta_pow * prod factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigTerm {
    pub coeff: Rational,
    pub theta_pow: i32,
    pub factors: Vec<TrigFactor>,
}

impl TrigTerm {
    fn constant(coeff: Rational) -> Self {
        TrigTerm { coeff, theta_pow: 0, factors: Vec::new() }
    }

    fn key(&self) -> (i32, &[TrigFactor]) {
        (self.theta_pow, &self.factors)
    }

    fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.coeff.to_f64() * theta.powi(self.theta_pow);
        for f in &self.factors {
            let arg = f.mult.to_f64() * theta;
            let base = match f.func {
                TrigFunc::Sin => arg.sin(),
                TrigFunc::Cos => arg.cos(),
            };
            acc *= base.powi(f.power);
        }
        acc
    }
}

/// Canonical sum of trigonometric monomials in `theta` with rational
/// coefficients. Canonicalization folds argument signs into coefficients,
/// cancels `sin^p sin^-q` pairs, strips `cos(0)`, annihilates `sin(0)`,
/// merges like terms, and sorts, so equality of canonical forms is exact
/// structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigForm {
    terms: Vec<TrigTerm>,
}

impl TrigForm {
    pub fn zero() -> Self {
        TrigForm::default()
    }

    pub fn constant(c: Rational) -> Self {
        TrigForm::from_terms(vec![TrigTerm::constant(c)])
    }

    /// Build and canonicalize.
    pub fn from_terms(terms: Vec<TrigTerm>) -> Self {
        let mut canon: Vec<TrigTerm> = Vec::new();
        'terms: for mut term in terms {
            if term.coeff.is_zero() {
                continue;
            }
            // normalize each factor; collapse by (func, mult)
            let mut folded: Vec<TrigFactor> = Vec::new();
            for mut f in std::mem::take(&mut term.factors) {
                if f.power == 0 {
                    continue;
                }
                if f.mult.is_negative() {
                    f.mult = -f.mult;
                    if f.func == TrigFunc::Sin && f.power.rem_euclid(2) == 1 {
                        term.coeff = -term.coeff;
                    }
                }
                if f.mult.is_zero() {
                    match f.func {
                        TrigFunc::Cos => continue, // cos(0) = 1
                        TrigFunc::Sin => {
                            assert!(f.power > 0, "csc(0) cannot appear in a closed form");
                            continue 'terms; // sin(0) = 0 kills the term
                        }
                    }
                }
                match folded
                    .iter_mut()
                    .find(|g| g.func == f.func && g.mult == f.mult)
                {
                    Some(g) => g.power += f.power,
                    None => folded.push(f),
                }
            }
            folded.retain(|f| f.power != 0);
            folded.sort();
            term.factors = folded;
            match canon.iter_mut().find(|t| t.key() == term.key()) {
                Some(t) => t.coeff += &term.coeff,
                None => canon.push(term),
            }
        }
        canon.retain(|t| !t.coeff.is_zero());
        canon.sort_by(|a, b| {
            b.theta_pow
                .cmp(&a.theta_pow)
                .then_with(|| a.factors.cmp(&b.factors))
        });
        TrigForm { terms: canon }
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TrigForm) -> TrigForm {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TrigForm::from_terms(terms)
    }

    pub fn scale(&self, c: &Rational) -> TrigForm {
        TrigForm::from_terms(
            self.terms
                .iter()
                .map(|t| TrigTerm {
                    coeff: &t.coeff * c,
                    theta_pow: t.theta_pow,
                    factors: t.factors.clone(),
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> TrigForm {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &TrigForm) -> TrigForm {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(TrigTerm {
                    coeff: &a.coeff * &b.coeff,
                    theta_pow: a.theta_pow + b.theta_pow,
                    factors,
                });
            }
        }
        TrigForm::from_terms(terms)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(theta)).sum()
    }
}

fn render_arg(mult: &Rational) -> String {
    if mult.is_one() {
        "theta".to_string()
    } else if *mult == rat(1, 2) {
        "theta/2".to_string()
    } else if mult.is_integer() {
        format!("{}*theta", mult)
    } else {
        format!("({})*theta", mult)
    }
}

impl fmt::Display for TrigForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let neg = term.coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = term.coeff.abs();
            let mut numer: Vec<String> = Vec::new();
            let mut denom: Vec<String> = Vec::new();
            for fac in &term.factors {
                let name = match fac.func {
                    TrigFunc::Sin => "sin",
                    TrigFunc::Cos => "cos",
                };
                let p = fac.power.unsigned_abs();
                let rendered = if p == 1 {
                    format!("{}({})", name, render_arg(&fac.mult))
                } else {
                    format!("{}({})^{}", name, render_arg(&fac.mult), p)
                };
                if fac.power > 0 {
                    numer.push(rendered);
                } else {
                    denom.push(rendered);
                }
            }
            if term.theta_pow != 0 {
                let p = term.theta_pow.unsigned_abs();
                let rendered = if p == 1 { "theta".to_string() } else { format!("theta^{}", p) };
                if term.theta_pow > 0 {
                    numer.push(rendered);
                } else {
                    denom.push(rendered);
                }
            }
            if numer.is_empty() || !mag.is_one() {
                numer.insert(0, mag.to_string());
            }
            write!(f, "{}", numer.join("*"))?;
            for d in denom {
                write!(f, "/{}", d)?;
            }
        }
        Ok(())
    }
}

/// A regularized limit or sum value: an exact rational or a trig closed
/// form, optionally carrying the admissible `theta` window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfKind {
    Exact(Rational),
    Trig(TrigForm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormValue {
    pub kind: CfKind,
    pub window: Option<ThetaWindow>,
}

impl ClosedFormValue {
    pub fn exact(v: Rational) -> Self {
        ClosedFormValue { kind: CfKind::Exact(v), window: None }
    }

    pub fn exact_in_window(v: Rational, window: ThetaWindow) -> Self {
        ClosedFormValue { kind: CfKind::Exact(v), window: Some(window) }
    }

    /// A trig form collapses to `Exact(0)` when it canonicalizes to nothing.
    pub fn trig(form: TrigForm, window: ThetaWindow) -> Self {
        if form.is_zero() {
            ClosedFormValue { kind: CfKind::Exact(Rational::zero()), window: Some(window) }
        } else {
            ClosedFormValue { kind: CfKind::Trig(form), window: Some(window) }
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(&self.kind, CfKind::Exact(v) if v.is_zero())
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match &self.kind {
            CfKind::Exact(v) => Some(v),
            CfKind::Trig(_) => None,
        }
    }

    /// Numeric value. Trig forms require `theta`; any value carrying a
    /// window refuses evaluation outside it.
    pub fn eval_f64(&self, theta: Option<f64>) -> Result<f64, LimitError> {
        if let Some(w) = &self.window {
            let t = theta.ok_or_else(|| {
                LimitError::DomainViolation(format!(
                    "value is only defined for theta in {}; supply theta",
                    w
                ))
            })?;
            if !w.contains(t) {
                return Err(LimitError::DomainViolation(format!(
                    "theta = {} outside the admissible window {}",
                    t, w
                )));
            }
        }
        match &self.kind {
            CfKind::Exact(v) => Ok(v.to_f64()),
            CfKind::Trig(form) => {
                let t = theta.ok_or_else(|| {
                    LimitError::DomainViolation("trig closed form needs theta".to_string())
                })?;
                Ok(form.eval(t))
            }
        }
    }
}

impl fmt::Display for ClosedFormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CfKind::Exact(v) => write!(f, "{}", v)?,
            CfKind::Trig(form) => write!(f, "{}", form)?,
        }
        if let Some(w) = &self.window {
            write!(f, "  [theta in {}]", w)?;
        }
        Ok(())
    }
}

/// The sequence classes whose regularized limits are supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionExpr {
    /// `f(n)` for a polynomial `f`.
    Poly(Polynomial),
    /// `(-1)^n f(n)` for a polynomial `f`.
    AltPoly(Polynomial),
    /// `sin((n + beta) theta)`.
    TrigSin(Rational),
    /// `cos((n + beta) theta)`.
    TrigCos(Rational),
    /// `sin^2(n theta)`.
    TrigSinSq,
    /// Even-index values from `alpha`, odd-index from `beta`, where
    /// `alpha - beta` is a polynomial.
    Spliced(Polynomial, Polynomial),
    LinearCombo(Vec<(Rational, FunctionExpr)>),
}

fn sin_factor(mult: Rational) -> TrigFactor {
    TrigFactor { func: TrigFunc::Sin, mult, power: 1 }
}

fn cos_factor(mult: Rational) -> TrigFactor {
    TrigFactor { func: TrigFunc::Cos, mult, power: 1 }
}

/// `lim sin((n + beta) theta) = 2 sin(theta/2) sin((beta - 1/2) theta) / theta`.
pub fn trig_sin_limit_form(beta: &Rational) -> TrigForm {
    TrigForm::from_terms(vec![TrigTerm {
        coeff: rat(2, 1),
        theta_pow: -1,
        factors: vec![sin_factor(rat(1, 2)), sin_factor(beta - &rat(1, 2))],
    }])
}

/// `lim cos((n + beta) theta) = 2 sin(theta/2) cos((beta - 1/2) theta) / theta`.
pub fn trig_cos_limit_form(beta: &Rational) -> TrigForm {
    TrigForm::from_terms(vec![TrigTerm {
        coeff: rat(2, 1),
        theta_pow: -1,
        factors: vec![sin_factor(rat(1, 2)), cos_factor(beta - &rat(1, 2))],
    }])
}

/// `lim sin^2(n theta) = 1/2 - sin(2 theta) / (4 theta)`.
pub fn trig_sin_sq_limit_form() -> TrigForm {
    TrigForm::from_terms(vec![
        TrigTerm::constant(rat(1, 2)),
        TrigTerm { coeff: rat(-1, 4), theta_pow: -1, factors: vec![sin_factor(rat(2, 1))] },
    ])
}

/// The regularized limit of the sequence class. Total: construction never
/// fails; only numeric evaluation can violate a window.
pub fn limit(e: &FunctionExpr) -> ClosedFormValue {
    match e {
        FunctionExpr::Poly(p) => ClosedFormValue::exact(integral_unit(p)),
        FunctionExpr::AltPoly(_) => ClosedFormValue::exact(Rational::zero()),
        FunctionExpr::TrigSin(beta) => {
            ClosedFormValue::trig(trig_sin_limit_form(beta), ThetaWindow::symmetric_pi())
        }
        FunctionExpr::TrigCos(beta) => {
            ClosedFormValue::trig(trig_cos_limit_form(beta), ThetaWindow::symmetric_pi())
        }
        FunctionExpr::TrigSinSq => {
            ClosedFormValue::trig(trig_sin_sq_limit_form(), ThetaWindow::symmetric_pi())
        }
        FunctionExpr::Spliced(alpha, beta) => ClosedFormValue::exact(limit_spliced(alpha, beta)),
        FunctionExpr::LinearCombo(parts) => {
            let mut exact_acc = Rational::zero();
            let mut form_acc = TrigForm::zero();
            let mut window: Option<ThetaWindow> = None;
            let mut any_trig = false;
            for (c, part) in parts {
                let v = limit(part);
                match v.kind {
                    CfKind::Exact(x) => exact_acc += &(c * &x),
                    CfKind::Trig(form) => {
                        any_trig = true;
                        form_acc = form_acc.add(&form.scale(c));
                    }
                }
                window = match (window, v.window) {
                    (None, w) => w,
                    (w, None) => w,
                    (Some(a), Some(b)) => Some(a.intersect(&b)),
                };
            }
            if any_trig {
                let total = form_acc.add(&TrigForm::constant(exact_acc));
                ClosedFormValue::trig(total, window.unwrap_or_else(ThetaWindow::symmetric_pi))
            } else {
                ClosedFormValue { kind: CfKind::Exact(exact_acc), window }
            }
        }
    }
}

/// Limit of a sequence spliced from `alpha` on even and `beta` on odd
/// indices (their difference being a polynomial):
/// `(lim alpha + lim beta) / 2`.
pub fn limit_spliced(alpha: &Polynomial, beta: &Polynomial) -> Rational {
    (integral_unit(alpha) + integral_unit(beta)) / rat(2, 1)
}

/// Limit of a quasi-odd polynomial: for `theta(-x) = -theta(x - eps)` with
/// `eps` in `{-1, 0, +1}`, `lim theta(n + delta) = 0` with
/// `delta = (1 - eps)/2`; cross-checked against the unit integral of the
/// shifted polynomial.
pub fn quasi_odd_limit(theta_poly: &Polynomial, eps: i32) -> Result<Rational, LimitError> {
    if !(-1..=1).contains(&eps) {
        return Err(LimitError::NotQuasiOdd(format!("eps must be -1, 0 or +1, got {}", eps)));
    }
    let shift = Rational::from_int(eps as i64);
    if !is_quasi_odd(theta_poly, &shift) {
        return Err(LimitError::NotQuasiOdd(format!(
            "theta(-x) != -theta(x - {})",
            eps
        )));
    }
    let delta = (Rational::one() - Rational::from_int(eps as i64)) / rat(2, 1);
    let shifted = theta_poly.shift(&delta);
    assert!(
        integral_unit(&shifted).is_zero(),
        "quasi-odd limit must integrate to zero"
    );
    Ok(Rational::zero())
}

/// `lim tan((n + 1/2) theta) = 0` on `(-pi, pi)`.
pub fn tan_half_shift_limit() -> ClosedFormValue {
    ClosedFormValue::exact_in_window(Rational::zero(), ThetaWindow::symmetric_pi())
}

/// `lim cot((n + 1/2) theta) = 0` on `(0, 2 pi)`.
pub fn cot_half_shift_limit() -> ClosedFormValue {
    ClosedFormValue::exact_in_window(Rational::zero(), ThetaWindow::zero_to_two_pi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn polynomial_limits() {
        assert_eq!(limit(&FunctionExpr::Poly(Polynomial::x())).as_exact(), Some(&rat(-1, 2)));
        let sq = Polynomial::monomial(Rational::one(), 2);
        assert_eq!(limit(&FunctionExpr::Poly(sq)).as_exact(), Some(&rat(1, 3)));
        for k in 0..=20u32 {
            let p = Polynomial::monomial(Rational::one(), k as usize);
            let expected = crate::exact::neg_one_pow(k as i64) / Rational::from(k + 1);
            assert_eq!(limit(&FunctionExpr::Poly(p)).as_exact(), Some(&expected));
        }
    }

    #[test]
    fn alternating_polynomial_limit_vanishes() {
        let p = poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]);
        assert!(limit(&FunctionExpr::AltPoly(p)).is_exact_zero());
    }

    #[test]
    fn sin_limit_form_and_numeric_value() {
        let v = limit(&FunctionExpr::TrigSin(Rational::zero()));
        // -2 sin^2(theta/2) / theta, rendered canonically
        match &v.kind {
            CfKind::Trig(form) => {
                assert_eq!(form.to_string(), "-2*sin(theta/2)^2/theta");
            }
            CfKind::Exact(_) => panic!("expected trig form"),
        }
        let at_half_pi = v.eval_f64(Some(std::f64::consts::FRAC_PI_2)).unwrap();
        assert!((at_half_pi - (-2.0 / std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn sin_limit_at_beta_half_is_identically_zero() {
        let v = limit(&FunctionExpr::TrigSin(rat(1, 2)));
        assert!(v.is_exact_zero());
    }

    #[test]
    fn beta_shift_symmetries() {
        for beta_num in -5..=5i64 {
            let beta = rat(beta_num, 2);
            let lhs = trig_sin_limit_form(&(&beta + &Rational::one()));
            let rhs = trig_sin_limit_form(&-&beta).neg();
            assert_eq!(lhs, rhs, "sin shift symmetry at beta = {}", beta);
            let lhs = trig_cos_limit_form(&(&beta + &Rational::one()));
            let rhs = trig_cos_limit_form(&-&beta);
            assert_eq!(lhs, rhs, "cos shift symmetry at beta = {}", beta);
        }
    }

    #[test]
    fn sin_equals_minus_tan_half_times_cos_structurally() {
        // multiply both sides by cos(theta/2) to stay inside the form algebra
        let cos_half = TrigForm::from_terms(vec![TrigTerm {
            coeff: Rational::one(),
            theta_pow: 0,
            factors: vec![cos_factor(rat(1, 2))],
        }]);
        let sin_half = TrigForm::from_terms(vec![TrigTerm {
            coeff: Rational::one(),
            theta_pow: 0,
            factors: vec![sin_factor(rat(1, 2))],
        }]);
        let lhs = trig_sin_limit_form(&Rational::zero()).mul(&cos_half);
        let rhs = trig_cos_limit_form(&Rational::zero()).mul(&sin_half).neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sin_sq_limit_matches_closed_expression() {
        let v = limit(&FunctionExpr::TrigSinSq);
        for &theta in &[0.3, -1.0, 2.5, 1.57] {
            let got = v.eval_f64(Some(theta)).unwrap();
            let want = 0.5 - (2.0 * theta).sin() / (4.0 * theta);
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn csc_times_sin_cancels() {
        // csc^2(theta/2) * sin^2(theta/2) collapses to the constant 1
        let csc_sq = TrigForm::from_terms(vec![TrigTerm {
            coeff: Rational::one(),
            theta_pow: 0,
            factors: vec![TrigFactor { func: TrigFunc::Sin, mult: rat(1, 2), power: -2 }],
        }]);
        let sin_sq = TrigForm::from_terms(vec![TrigTerm {
            coeff: Rational::one(),
            theta_pow: 0,
            factors: vec![TrigFactor { func: TrigFunc::Sin, mult: rat(1, 2), power: 2 }],
        }]);
        assert_eq!(csc_sq.mul(&sin_sq), TrigForm::constant(Rational::one()));
    }

    #[test]
    fn spliced_limits() {
        // alpha = -x/2, beta = 1 + (x-1)/2: the alternating arithmetic
        // partial-sum splice, limit (2 a1 - d)/4 at a1 = d = 1
        let alpha = poly(&[(0, 1), (-1, 2)]);
        let beta = poly(&[(1, 2), (1, 2)]);
        assert_eq!(limit_spliced(&alpha, &beta), rat(1, 4));
        // degenerate splice
        let p = poly(&[(2, 3), (5, 1)]);
        assert_eq!(limit_spliced(&p, &p), integral_unit(&p));
        // odd splice cancels
        assert_eq!(limit_spliced(&Polynomial::x(), &-&Polynomial::x()), Rational::zero());
    }

    #[test]
    fn quasi_odd_limits() {
        // x^3 with eps = 0: odd function, delta = 1/2
        let cube = Polynomial::monomial(Rational::one(), 3);
        assert_eq!(quasi_odd_limit(&cube, 0).unwrap(), Rational::zero());
        // the window-sum example: eps = 1, delta = 0
        let h = poly(&[(-21, 4), (-9, 1), (9, 2), (3, 1)]);
        assert_eq!(quasi_odd_limit(&h, 1).unwrap(), Rational::zero());
        // even polynomial rejected
        let sq = Polynomial::monomial(Rational::one(), 2);
        assert!(matches!(quasi_odd_limit(&sq, 0), Err(LimitError::NotQuasiOdd(_))));
    }

    #[test]
    fn window_enforcement() {
        let v = limit(&FunctionExpr::TrigSin(Rational::zero()));
        assert!(v.eval_f64(Some(3.2)).is_err());
        assert!(v.eval_f64(None).is_err());
        assert!(v.eval_f64(Some(3.0)).is_ok());
        assert!(tan_half_shift_limit().eval_f64(Some(1.0)).unwrap().abs() < 1e-300);
        assert!(cot_half_shift_limit().eval_f64(Some(4.0)).is_ok());
        assert!(cot_half_shift_limit().eval_f64(Some(-1.0)).is_err());
    }

    #[test]
    fn linear_combo_limits() {
        // 3 * lim n + 2 * lim n^2 = -3/2 + 2/3
        let combo = FunctionExpr::LinearCombo(vec![
            (rat(3, 1), FunctionExpr::Poly(Polynomial::x())),
            (rat(2, 1), FunctionExpr::Poly(Polynomial::monomial(Rational::one(), 2))),
        ]);
        assert_eq!(limit(&combo).as_exact(), Some(&rat(-5, 6)));
        // mixing exact and trig members produces a trig form with the window
        let mixed = FunctionExpr::LinearCombo(vec![
            (Rational::one(), FunctionExpr::Poly(Polynomial::one())),
            (rat(1, 2), FunctionExpr::TrigSinSq),
        ]);
        let v = limit(&mixed);
        let got = v.eval_f64(Some(0.7)).unwrap();
        let want = 1.0 + 0.5 * (0.5 - (1.4f64).sin() / 2.8);
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn display_shapes() {
        let w = ThetaWindow::symmetric_pi();
        assert_eq!(w.to_string(), "(-pi, pi)");
        assert_eq!(ThetaWindow::zero_to_two_pi().to_string(), "(0, 2*pi)");
        let form = trig_cos_limit_form(&rat(2, 1));
        assert_eq!(form.to_string(), "2*sin(theta/2)*cos((3/2)*theta)/theta");
        let sq = trig_sin_sq_limit_form();
        assert_eq!(sq.to_string(), "1/2 - 1/4*sin(2*theta)/theta");
    }
}
