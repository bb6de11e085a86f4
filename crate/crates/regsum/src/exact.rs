//! Exact rational and extended-factorial arithmetic.
//!
//! Everything in this crate computes over [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms. The extended factorial `lambda(s)` equals
//! `s!` for `s >= 0` and has a simple pole at every negative integer; the
//! quotient shape `lambda(a) / (lambda(b) lambda(a-b))` is evaluated under
//! pole arithmetic so that binomial coefficients extend to all integer pairs.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact fraction in lowest terms, sign carried by the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `numer / denom`, normalizing to lowest terms.
    ///
    /// Panics when `denom` is zero.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(numer: N, denom: D) -> Self {
        let d: BigInt = denom.into();
        assert!(!d.is_zero(), "Rational denominator must be nonzero");
        Rational(BigRational::new(numer.into(), d))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "division by zero Rational");
        Rational(self.0.recip())
    }

    /// Integer power; negative exponents invert. `0^0 = 1`, `0^neg` panics.
    pub fn pow(&self, exp: i64) -> Rational {
        if exp == 0 {
            return Rational::one();
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Rational::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
        })
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

/// Parse "p/q" or "p". Used for test fixtures and CLI input.
impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
                let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
                if d.is_zero() {
                    return Err("zero denominator".to_string());
                }
                Ok(Rational::new(n, d))
            }
            None => {
                let n = BigInt::from_str(s).map_err(|e| e.to_string())?;
                Ok(Rational::from_bigint(n))
            }
        }
    }
}

macro_rules! impl_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational(BigRational::from_integer(BigInt::from(n)))
            }
        }
    )*};
}
impl_from_int!(i8, i16, i32, i64, u8, u16, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(std::ops::$trait::$method(self.0, rhs.0))
            }
        }
        impl std::ops::$trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$trait::$method(self.0, &rhs.0))
            }
        }
        impl std::ops::$trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(std::ops::$trait::$method(&self.0, rhs.0))
            }
        }
        impl std::ops::$trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::ops::AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl std::ops::AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl std::ops::SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl std::ops::MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Shorthand constructor, `rat(p, q) = p/q`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// `(-1)^k` as a Rational.
pub fn neg_one_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

// Factorials are re-read heavily by the composition formulas in the
// bernoulli module, so values up to the memo limit are kept in a shared
// table. Concurrent readers are fine; fills are idempotent.
static FACT_MEMO: LazyLock<RwLock<Vec<BigInt>>> =
    LazyLock::new(|| RwLock::new(vec![BigInt::one()]));
static FACT_MEMO_LIMIT: AtomicUsize = AtomicUsize::new(512);

/// Raise or lower the factorial memoization bound (default 512).
pub fn set_factorial_memo_limit(limit: usize) {
    FACT_MEMO_LIMIT.store(limit, Ordering::Relaxed);
}

fn factorial_bigint(n: u64) -> BigInt {
    let limit = FACT_MEMO_LIMIT.load(Ordering::Relaxed) as u64;
    let memo_target = n.min(limit);
    {
        let memo = FACT_MEMO.read().unwrap();
        if (memo.len() as u64) > n {
            return memo[n as usize].clone();
        }
    }
    let base = {
        let mut memo = FACT_MEMO.write().unwrap();
        while (memo.len() as u64) <= memo_target {
            let next = memo.last().unwrap() * BigInt::from(memo.len());
            memo.push(next);
        }
        memo[memo_target as usize].clone()
    };
    let mut acc = base;
    for i in (memo_target + 1)..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// `n!` as a Rational.
pub fn factorial(n: u64) -> Rational {
    Rational::from_bigint(factorial_bigint(n))
}

/// Ordinary binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    if k < 0 || (k as u64) > n {
        return Rational::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    Rational::from_bigint(acc)
}

/// Value of the extended factorial `lambda(s)`: finite for `s >= 0`, a simple
/// pole with the stated residue at each negative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtFactorialValue {
    Finite(Rational),
    Pole { residue: Rational },
}

impl ExtFactorialValue {
    pub fn is_pole(&self) -> bool {
        matches!(self, ExtFactorialValue::Pole { .. })
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtFactorialValue::Finite(v) => Some(v),
            ExtFactorialValue::Pole { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<&Rational> {
        match self {
            ExtFactorialValue::Finite(_) => None,
            ExtFactorialValue::Pole { residue } => Some(residue),
        }
    }
}

/// `lambda(s) = s!` for `s >= 0`; at `s = -n` a simple pole with residue
/// `(-1)^(n-1) / (n-1)!`.
pub fn ext_factorial(s: i64) -> ExtFactorialValue {
    if s >= 0 {
        ExtFactorialValue::Finite(factorial(s as u64))
    } else {
        let n = (-s) as u64;
        let residue = neg_one_pow(n as i64 - 1) / factorial(n - 1);
        ExtFactorialValue::Pole { residue }
    }
}

/// Binomial coefficient extended to all integer pairs via
/// `lambda(a) / (lambda(b) lambda(a-b))` under pole arithmetic.
///
/// A pole in the denominator annihilates the quotient; a simple pole over a
/// simple pole contributes the ratio of residues; a simple pole over a double
/// pole is zero.
pub fn ext_binomial(a: i64, b: i64) -> Rational {
    let num = ext_factorial(a);
    let d1 = ext_factorial(b);
    let d2 = ext_factorial(a - b);
    let denom_poles = d1.is_pole() as u8 + d2.is_pole() as u8;
    match (&num, denom_poles) {
        (_, 2) => Rational::zero(),
        (ExtFactorialValue::Finite(n), 1) => {
            let _ = n;
            Rational::zero()
        }
        (ExtFactorialValue::Finite(n), _) => {
            let x = d1.as_finite().unwrap();
            let y = d2.as_finite().unwrap();
            n / &(x * y)
        }
        (ExtFactorialValue::Pole { residue }, 1) => match (&d1, &d2) {
            (ExtFactorialValue::Pole { residue: rd }, ExtFactorialValue::Finite(y)) => {
                residue / &(rd * y)
            }
            (ExtFactorialValue::Finite(x), ExtFactorialValue::Pole { residue: rd }) => {
                residue / &(x * rd)
            }
            _ => unreachable!("exactly one denominator pole"),
        },
        (ExtFactorialValue::Pole { .. }, _) => {
            unreachable!("lambda(a) pole forces a pole in lambda(b) or lambda(a-b)")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), rat(10, 1));
        assert_eq!(binomial(4, 0), Rational::one());
        assert_eq!(binomial(7, 9), Rational::zero());
        assert_eq!(binomial(7, -1), Rational::zero());
        assert_eq!(binomial(20, 10), Rational::from_int(184_756));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Rational::one());
        assert_eq!(factorial(5), Rational::from_int(120));
        // beyond the memo limit the value is still exact
        set_factorial_memo_limit(8);
        assert_eq!(factorial(10), Rational::from_int(3_628_800));
        set_factorial_memo_limit(512);
    }

    #[test]
    fn ext_factorial_finite_and_poles() {
        assert_eq!(ext_factorial(0), ExtFactorialValue::Finite(Rational::one()));
        assert_eq!(
            ext_factorial(4),
            ExtFactorialValue::Finite(Rational::from_int(24))
        );
        assert_eq!(ext_factorial(-3), ExtFactorialValue::Pole { residue: rat(1, 2) });
        assert_eq!(ext_factorial(-1), ExtFactorialValue::Pole { residue: rat(1, 1) });
        assert_eq!(ext_factorial(-2), ExtFactorialValue::Pole { residue: rat(-1, 1) });
    }

    #[test]
    fn ext_binomial_spec_cases() {
        assert_eq!(ext_binomial(6, -2), Rational::zero());
        assert_eq!(ext_binomial(-3, 2), Rational::from_int(6));
        assert_eq!(ext_binomial(-2, -5), Rational::from_int(-4));
    }

    #[test]
    fn ext_binomial_matches_ordinary_on_nonneg_range() {
        for a in 0..=12i64 {
            for b in 0..=a {
                assert_eq!(ext_binomial(a, b), binomial(a as u64, b));
            }
            // out of range on either side
            assert_eq!(ext_binomial(a, a + 3), Rational::zero());
        }
    }

    #[test]
    fn ext_binomial_closed_forms_exhaustive() {
        // the three displayed extensions, checked for 1 <= n, m <= 30
        for n in 1..=30i64 {
            for m in 1..=30i64 {
                assert_eq!(ext_binomial(n, -m), Rational::zero());
                assert_eq!(
                    ext_binomial(-n, m),
                    neg_one_pow(m) * binomial((n + m - 1) as u64, m)
                );
                assert_eq!(
                    ext_binomial(-n, -m),
                    neg_one_pow(n + m) * binomial((m - 1) as u64, n - 1)
                );
            }
        }
    }

    #[test]
    fn rational_normalization_and_display() {
        let r = Rational::new(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::new(8, 4).to_string(), "2");
        assert_eq!("5/15".parse::<Rational>().unwrap(), rat(1, 3));
        assert_eq!("-7".parse::<Rational>().unwrap(), Rational::from_int(-7));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn rational_pow() {
        assert_eq!(rat(2, 3).pow(3), rat(8, 27));
        assert_eq!(rat(2, 3).pow(-2), rat(9, 4));
        assert_eq!(rat(5, 7).pow(0), Rational::one());
        assert_eq!(Rational::zero().pow(0), Rational::one());
    }
}
