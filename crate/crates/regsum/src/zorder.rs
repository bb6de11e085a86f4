//! The nonstandard order on the integers and generalized range sums.
//!
//! The integers are arranged as `[0, 1, 2, ..., -2, -1]`: every non-negative
//! number precedes every negative one, and `-1` is the last element. A
//! segment `Z_{a,b}` is either an ordinary finite run or a wrap-around
//! infinite set, and a sum over it with polynomial summand is always
//! `F(b+1) - F(a)` for the generating function `F`.

use std::fmt;

use crate::exact::{rat, Rational};
use crate::poly::{indefinite_sum, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZOrderError {
    InvalidGenerating(String),
}

impl fmt::Display for ZOrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZOrderError::InvalidGenerating(msg) => write!(f, "invalid generating function: {}", msg),
        }
    }
}

impl std::error::Error for ZOrderError {}

/// Does `a` strictly precede `b` in the order `[0, 1, 2, ..., -2, -1]`?
///
/// Equivalently `-1/a < -1/b` with the convention `0^-1 = infinity`.
pub fn precedes(a: i64, b: i64) -> bool {
    if a == b {
        return false;
    }
    match (a >= 0, b >= 0) {
        (true, true) | (false, false) => a < b,
        (true, false) => true,
        (false, true) => false,
    }
}

/// Non-strict version of [`precedes`].
pub fn precedes_eq(a: i64, b: i64) -> bool {
    a == b || precedes(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    FiniteRun,
    WrapInfinite,
}

/// The segment `Z_{a,b}` of integers between `a` and `b` in the nonstandard
/// order: a finite run when both endpoints sit in the same sign run, a
/// wrap-around infinite set otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZSegment {
    pub a: i64,
    pub b: i64,
    pub kind: SegmentKind,
}

/// Classify `Z_{a,b}`.
pub fn segment(a: i64, b: i64) -> ZSegment {
    let kind = if (0 <= a && a <= b) || (a <= b && b <= -1) {
        SegmentKind::FiniteRun
    } else {
        SegmentKind::WrapInfinite
    };
    ZSegment { a, b, kind }
}

impl ZSegment {
    pub fn is_finite(&self) -> bool {
        self.kind == SegmentKind::FiniteRun
    }

    /// Membership in `Z_{a,b}`: `a <= x <= b` in the order when `a` precedes
    /// `b`, and the complement-of-interval reading `x >= a or x <= b`
    /// otherwise.
    pub fn contains(&self, x: i64) -> bool {
        if precedes_eq(self.a, self.b) {
            precedes_eq(self.a, x) && precedes_eq(x, self.b)
        } else {
            precedes_eq(self.a, x) || precedes_eq(x, self.b)
        }
    }

    /// The elements of a finite run in order; `None` for wrap-around
    /// segments.
    pub fn enumerate(&self) -> Option<impl Iterator<Item = i64>> {
        match self.kind {
            SegmentKind::FiniteRun => Some(self.a..=self.b),
            SegmentKind::WrapInfinite => None,
        }
    }
}

/// A polynomial summand together with its generating function:
/// `generating(x+1) - generating(x) = term(x)` identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandSpec {
    term: Polynomial,
    generating: Polynomial,
}

impl SummandSpec {
    /// Pair a summand with an explicitly supplied generating function,
    /// validating the defining identity.
    pub fn new(term: Polynomial, generating: Polynomial) -> Result<Self, ZOrderError> {
        let diff = &generating.shift(&Rational::one()) - &generating;
        if diff != term {
            return Err(ZOrderError::InvalidGenerating(format!(
                "G(x+1) - G(x) = {} but the summand is {}",
                diff, term
            )));
        }
        Ok(SummandSpec { term, generating })
    }

    /// Build the canonical generating function `F(x) = P(x-1)` from the
    /// indefinite sum `P` of the term.
    pub fn from_polynomial(term: Polynomial) -> Self {
        let generating = indefinite_sum(&term).shift(&rat(-1, 1));
        SummandSpec { term, generating }
    }

    pub fn term(&self) -> &Polynomial {
        &self.term
    }

    pub fn generating(&self) -> &Polynomial {
        &self.generating
    }

    /// The reflected summand `u -> f(-u)` with generating function
    /// `G(x) = -F(1-x)`.
    pub fn negate_argument(&self) -> SummandSpec {
        let term = self.term.reflect();
        let generating = -self.generating.compose(&Polynomial::from_coeffs(vec![
            Rational::one(),
            -Rational::one(),
        ]));
        debug_assert_eq!(&generating.shift(&Rational::one()) - &generating, term);
        SummandSpec { term, generating }
    }
}

/// Generalized range sum `sum_{u=a}^{b} f(u) = F(b+1) - F(a)` for arbitrary
/// limits. On finite runs this equals direct enumeration; on wrap-around
/// segments it is the regularized value.
pub fn range_sum(f: &SummandSpec, a: i64, b: i64) -> Rational {
    f.generating.eval_int(b + 1) - f.generating.eval_int(a)
}

/// Enumeration oracle for finite runs.
pub fn range_sum_enumerated(f: &SummandSpec, seg: &ZSegment) -> Option<Rational> {
    let iter = seg.enumerate()?;
    let mut acc = Rational::zero();
    for u in iter {
        acc += &f.term.eval_int(u);
    }
    Some(acc)
}

/// Check the product reflection for the factorial: the residue of the
/// extended factorial at `-n` must equal the reciprocal of the finite
/// product `prod_{u=1}^{n-1} (-u)`.
pub fn verify_product_reflection(n: u64) -> bool {
    assert!(n >= 1);
    let mut finite = Rational::one();
    for u in 1..n {
        finite *= &Rational::from_int(-(u as i64));
    }
    let lhs = match crate::exact::ext_factorial(-(n as i64)) {
        crate::exact::ExtFactorialValue::Pole { residue } => residue,
        crate::exact::ExtFactorialValue::Finite(_) => return false,
    };
    lhs == finite.recip()
}

/// The sum over all of Z is forced to zero by the axioms; reported without
/// evaluation.
pub fn whole_line_sum(_f: &SummandSpec) -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn precedes_examples() {
        assert!(precedes(0, -1));
        assert!(precedes(7, -1000));
        assert!(!precedes(5, 5));
        assert!(precedes(0, 1));
        assert!(precedes(-5, -3));
        assert!(!precedes(-1, 0));
        assert!(!precedes(-1, 1_000_000));
    }

    #[test]
    fn order_axioms_small_range() {
        let range: Vec<i64> = (-15..=15).collect();
        for &a in &range {
            for &b in &range {
                if a != b {
                    assert!(
                        precedes(a, b) ^ precedes(b, a),
                        "connectedness fails at ({}, {})",
                        a,
                        b
                    );
                }
                for &c in &range {
                    if precedes(a, b) && precedes(b, c) {
                        assert!(precedes(a, c), "transitivity fails at ({}, {}, {})", a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn segment_examples() {
        let s = segment(2, 5);
        assert_eq!(s.kind, SegmentKind::FiniteRun);
        assert_eq!(s.enumerate().unwrap().collect::<Vec<_>>(), vec![2, 3, 4, 5]);

        let s = segment(-5, -3);
        assert_eq!(s.kind, SegmentKind::FiniteRun);
        assert_eq!(s.enumerate().unwrap().collect::<Vec<_>>(), vec![-5, -4, -3]);

        let s = segment(3, -5);
        assert_eq!(s.kind, SegmentKind::WrapInfinite);
        assert!(s.enumerate().is_none());
        for x in [3, 4, 100, -5, -6, -100] {
            assert!(s.contains(x), "{} should be in Z_(3,-5)", x);
        }
        for x in [0, 1, 2, -1, -2, -4] {
            assert!(!s.contains(x), "{} should not be in Z_(3,-5)", x);
        }

        // a > b with both non-negative wraps through the negatives
        let s = segment(5, 2);
        assert_eq!(s.kind, SegmentKind::WrapInfinite);
        assert!(s.contains(5) && s.contains(0) && s.contains(2) && s.contains(-1));
        assert!(!s.contains(3) && !s.contains(4));
    }

    #[test]
    fn range_sum_examples() {
        let f = SummandSpec::from_polynomial(Polynomial::x());
        assert_eq!(range_sum(&f, 2, 4), Rational::from_int(9));
        assert_eq!(range_sum(&f, 1, 0), Rational::zero());
        assert_eq!(range_sum(&f, 1, -3), Rational::from_int(3));
    }

    #[test]
    fn range_sum_matches_enumeration_on_finite_runs() {
        let p = Polynomial::from_coeffs(vec![rat(1, 3), rat(-2, 1), Rational::one()]);
        let f = SummandSpec::from_polynomial(p);
        for (a, b) in [(0, 7), (3, 3), (-6, -2), (-9, -1), (2, 10)] {
            let seg = segment(a, b);
            assert_eq!(
                range_sum(&f, a, b),
                range_sum_enumerated(&f, &seg).unwrap(),
                "mismatch on [{}, {}]",
                a,
                b
            );
        }
    }

    #[test]
    fn empty_sum_for_every_start() {
        let f = SummandSpec::from_polynomial(Polynomial::from_coeffs(vec![
            rat(5, 7),
            rat(1, 2),
            Rational::one(),
            rat(-3, 4),
        ]));
        for a in -20..=20 {
            assert_eq!(range_sum(&f, a, a - 1), Rational::zero());
        }
    }

    #[test]
    fn reflection_identity() {
        // sum_{u=m}^{n} f(u) = sum_{u=-n}^{-m} f(-u) via the reflected spec
        let p = Polynomial::from_coeffs(vec![rat(-1, 2), rat(3, 1), rat(2, 3)]);
        let f = SummandSpec::from_polynomial(p);
        let g = f.negate_argument();
        for (m, n) in [(1i64, 5i64), (2, 2), (4, 9)] {
            let direct = range_sum(&f, m, n);
            let reflected = range_sum(&g, -n, -m);
            assert_eq!(direct, reflected);
            // both sides by enumeration as well
            let lhs = range_sum_enumerated(&f, &segment(m, n)).unwrap();
            let rhs = range_sum_enumerated(&g, &segment(-n, -m)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn swap_negation_identity() {
        // sum_a^b = -sum_{b+1}^{a-1}
        let f = SummandSpec::from_polynomial(Polynomial::from_coeffs(vec![
            rat(1, 5),
            rat(-1, 1),
            rat(2, 1),
        ]));
        for a in -12..=12 {
            for b in -12..=12 {
                assert_eq!(range_sum(&f, a, b), -range_sum(&f, b + 1, a - 1));
            }
        }
    }

    #[test]
    fn splitting_identity() {
        let f = SummandSpec::from_polynomial(Polynomial::from_coeffs(vec![
            rat(2, 1),
            rat(1, 3),
            Rational::one(),
        ]));
        for a in [-8i64, -3, 0, 2] {
            for c in [-9i64, -1, 4, 7] {
                for b in [-9i64, -5, -1, 0, 3, 6] {
                    if segment(a, c).contains(b) {
                        let whole = range_sum(&f, a, c);
                        let split = range_sum(&f, a, b) + range_sum(&f, b + 1, c);
                        assert_eq!(whole, split, "split fails at a={}, b={}, c={}", a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_generating_function_validation() {
        let term = Polynomial::x();
        let good = Polynomial::from_coeffs(vec![Rational::zero(), rat(-1, 2), rat(1, 2)]);
        assert!(SummandSpec::new(term.clone(), good).is_ok());
        let bad = Polynomial::x();
        assert!(SummandSpec::new(term, bad).is_err());
    }

    #[test]
    fn product_reflection() {
        assert!(verify_product_reflection(1));
        assert!(verify_product_reflection(3));
        assert!(verify_product_reflection(5));
        for n in 1..=25 {
            assert!(verify_product_reflection(n));
        }
    }

    #[test]
    fn whole_line_is_zero() {
        let f = SummandSpec::from_polynomial(Polynomial::x());
        assert_eq!(whole_line_sum(&f), Rational::zero());
    }
}
