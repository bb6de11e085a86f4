//! Dense rational-coefficient polynomials and the summation operators built
//! on them: indefinite (power-sum) summation, alternating indefinite
//! summation, integration over `[-1, 0]`, and the symmetric-function
//! utilities used by the Bernoulli identities.

use std::fmt;

use crate::bernoulli::bernoulli_number;
use crate::exact::{binomial, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    InvalidArgument(String),
    NotQuasiOdd(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
            PolyError::NotQuasiOdd(msg) => write!(f, "not quasi-odd: {}", msg),
        }
    }
}

impl std::error::Error for PolyError {}

/// Univariate polynomial with exact rational coefficients, stored densely in
/// ascending degree. The highest-degree coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn x() -> Self {
        Polynomial::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Polynomial { coeffs }
    }

    /// From ascending-degree coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_int(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `self(other(x))`, by Horner over polynomials.
    pub fn compose(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &Rational) -> Polynomial {
        self.compose(&Polynomial::from_coeffs(vec![c.clone(), Rational::one()]))
    }

    /// `self(-x)`.
    pub fn reflect(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl std::ops::$trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_ops!(Add, add; Sub, sub; Mul, mul);

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The power-sum polynomial `B_k(n) = sum_{u=1}^{n} u^k` (so `B_1` carries
/// the `+1/2` convention). `B_0(n) = n` and `B_k(0) = 0` for every `k`.
pub fn bernoulli_polynomial(k: u32) -> Polynomial {
    let kp1 = Rational::from(k + 1);
    let mut coeffs = vec![Rational::zero(); k as usize + 2];
    for u in 0..=k {
        // coefficient of n^(k+1-u)
        let c = binomial(k as u64 + 1, u as i64) * bernoulli_number(u) / &kp1;
        coeffs[(k + 1 - u) as usize] = c;
    }
    Polynomial::from_coeffs(coeffs)
}

/// Indefinite sum: the unique polynomial `P` with `P(x) - P(x-1) = p(x)` and
/// `P(0) = 0`, assembled monomial by monomial from power-sum polynomials.
pub fn indefinite_sum(p: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &bernoulli_polynomial(k as u32).scale(c);
    }
    acc
}

/// Alternating indefinite sum: the pair `(c, q)` with `q(n) + q(n-1) = p(n)`
/// identically and `sum_{u=1}^{n} (-1)^(u-1) p(u) = c + (-1)^(n-1) q(n)`,
/// where `c = q(0)`. Solved by descending-degree coefficient matching.
pub fn alt_indefinite_sum(p: &Polynomial) -> (Rational, Polynomial) {
    if p.is_zero() {
        return (Rational::zero(), Polynomial::zero());
    }
    let d = p.degree().unwrap();
    let mut q = vec![Rational::zero(); d + 1];
    for m in (0..=d).rev() {
        // q(n) + q(n-1) contributes 2*q_m + sum_{j>m} q_j * C(j, m) * (-1)^(j-m)
        let mut carried = Rational::zero();
        for j in (m + 1)..=d {
            let sign = if (j - m) % 2 == 1 { -Rational::one() } else { Rational::one() };
            carried += &(&q[j] * &(binomial(j as u64, m as i64) * sign));
        }
        q[m] = (p.coeff(m) - carried) / rat(2, 1);
    }
    let q = Polynomial::from_coeffs(q);
    let c = q.eval(&Rational::zero());
    (c, q)
}

/// Exact integral of `p` over `[-1, 0]`.
pub fn integral_unit(p: &Polynomial) -> Rational {
    let mut acc = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // int_{-1}^{0} x^k dx = (-1)^k / (k+1)
        let term = c * &(crate::exact::neg_one_pow(k as i64) / Rational::from(k as u32 + 1));
        acc += &term;
    }
    acc
}

/// Elementary symmetric polynomial of `{1, 2, ..., t}` of degree `u`
/// (`sigma_0 = 1`).
pub fn sigma_elem(u: u32, t: u32) -> Result<Rational, PolyError> {
    if u > t {
        return Err(PolyError::InvalidArgument(format!(
            "sigma_elem degree {} exceeds variable count {}",
            u, t
        )));
    }
    let mut e = vec![Rational::zero(); u as usize + 1];
    e[0] = Rational::one();
    for i in 1..=t {
        let xi = Rational::from(i);
        for j in (1..=u.min(i) as usize).rev() {
            let add = &e[j - 1] * &xi;
            e[j] += &add;
        }
    }
    Ok(e[u as usize].clone())
}

/// `(1/t) * sum_{i=0}^{t-1} i^u` with the convention `0^0 = 1`. `t >= 1`.
pub fn power_sum_avg(u: u32, t: u32) -> Rational {
    assert!(t >= 1, "power_sum_avg needs a positive modulus");
    let mut acc = Rational::zero();
    for i in 0..t {
        let term = if u == 0 {
            Rational::one()
        } else {
            Rational::from(i).pow(u as i64)
        };
        acc += &term;
    }
    acc / Rational::from(t)
}

/// `f(x) = x (x+1) ... (x+t) = sum_u sigma_u(t) x^(t+1-u)`, defined for odd
/// `t`, where it satisfies `f(-x) = f(x - t)`.
pub fn build_sigma_poly(t: u32) -> Result<Polynomial, PolyError> {
    if t % 2 == 0 {
        return Err(PolyError::InvalidArgument(format!(
            "build_sigma_poly needs odd t, got {}",
            t
        )));
    }
    let mut acc = Polynomial::x();
    for i in 1..=t {
        acc = &acc * &Polynomial::from_coeffs(vec![Rational::from(i), Rational::one()]);
    }
    Ok(acc)
}

/// Is `w(-x) = -w(x - shift)` as a polynomial identity?
pub fn is_quasi_odd(w: &Polynomial, shift: &Rational) -> bool {
    w.reflect() == -w.shift(&-shift)
}

/// Is `f(-x) = f(x - shift)` as a polynomial identity?
pub fn is_quasi_even(f: &Polynomial, shift: &Rational) -> bool {
    f.reflect() == f.shift(&-shift)
}

/// Window sum `H(x) = sum_{u=delta}^{t-1+delta} w(x - eps*u)` with
/// `delta = (1 - eps)/2`, for `w` satisfying `w(-x) = -w(x - eps*t)`.
/// The result satisfies `H(-x) = -H(x - 1)`.
pub fn h_omega(w: &Polynomial, t: u32, eps: i32) -> Result<Polynomial, PolyError> {
    if eps != 1 && eps != -1 {
        return Err(PolyError::InvalidArgument(format!("eps must be +1 or -1, got {}", eps)));
    }
    let shift = Rational::from_int(eps as i64 * t as i64);
    if !is_quasi_odd(w, &shift) {
        return Err(PolyError::NotQuasiOdd(format!(
            "w(-x) != -w(x - {}*{})",
            eps, t
        )));
    }
    let delta = (1 - eps) / 2; // 0 for eps = +1, 1 for eps = -1
    let mut acc = Polynomial::zero();
    for u in delta..(t as i32 + delta) {
        acc = &acc + &w.shift(&Rational::from_int(-(eps as i64) * u as i64));
    }
    debug_assert_eq!(acc.reflect(), -acc.shift(&rat(-1, 1)));
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn indefinite_sum_examples() {
        assert_eq!(indefinite_sum(&Polynomial::one()), Polynomial::x());
        // sum of u^2 up to x
        let p = indefinite_sum(&Polynomial::monomial(Rational::one(), 2));
        assert_eq!(p, poly(&[(0, 1), (1, 6), (1, 2), (1, 3)]));
        // sum of u^5 at 2 is 1 + 32
        let p5 = indefinite_sum(&Polynomial::monomial(Rational::one(), 5));
        assert_eq!(p5.eval_int(2), Rational::from_int(33));
    }

    #[test]
    fn indefinite_sum_is_inverse_of_difference() {
        let p = poly(&[(3, 7), (-2, 1), (0, 1), (5, 3)]);
        let big_p = indefinite_sum(&p);
        let diff = &big_p - &big_p.shift(&rat(-1, 1));
        assert_eq!(diff, p);
        assert_eq!(big_p.eval_int(0), Rational::zero());
        // enumeration oracle
        let mut acc = Rational::zero();
        for n in 1..=60 {
            acc += &p.eval_int(n);
            assert_eq!(big_p.eval_int(n), acc);
        }
    }

    #[test]
    fn alt_indefinite_sum_examples() {
        let (c, q) = alt_indefinite_sum(&Polynomial::one());
        assert_eq!(c, rat(1, 2));
        assert_eq!(q, Polynomial::constant(rat(1, 2)));

        let (c, q) = alt_indefinite_sum(&Polynomial::x());
        assert_eq!(c, rat(1, 4));
        assert_eq!(q, poly(&[(1, 4), (1, 2)]));

        // for x^2 the constant matches the vanishing alternating square sum
        let (c, q) = alt_indefinite_sum(&Polynomial::monomial(Rational::one(), 2));
        assert_eq!(c, Rational::zero());
        // 1 - 4 + 9 = 6 at n = 3
        let n3 = &c + &(crate::exact::neg_one_pow(3 - 1) * q.eval_int(3));
        assert_eq!(n3, Rational::from_int(6));
    }

    #[test]
    fn alt_indefinite_sum_enumeration_oracle() {
        let p = poly(&[(-1, 2), (3, 1), (0, 1), (2, 5)]);
        let (c, q) = alt_indefinite_sum(&p);
        assert_eq!(&q + &q.shift(&rat(-1, 1)), p);
        let mut acc = Rational::zero();
        for n in 1..=80i64 {
            acc += &(crate::exact::neg_one_pow(n - 1) * p.eval_int(n));
            assert_eq!(&c + &(crate::exact::neg_one_pow(n - 1) * q.eval_int(n)), acc);
        }
    }

    #[test]
    fn integral_unit_examples() {
        assert_eq!(integral_unit(&Polynomial::x()), rat(-1, 2));
        assert_eq!(integral_unit(&Polynomial::monomial(Rational::one(), 2)), rat(1, 3));
        let h = poly(&[(-21, 4), (-9, 1), (9, 2), (3, 1)]);
        assert_eq!(integral_unit(&h), Rational::zero());
    }

    #[test]
    fn bernoulli_polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0), Polynomial::x());
        assert_eq!(bernoulli_polynomial(1), poly(&[(0, 1), (1, 2), (1, 2)]));
        // reflection: B_5(-3) = (+1) * B_5(2) = 33
        let b5 = bernoulli_polynomial(5);
        assert_eq!(b5.eval_int(-3), Rational::from_int(33));
        assert_eq!(b5.eval_int(2), Rational::from_int(33));
        // power-sum oracle
        let b7 = bernoulli_polynomial(7);
        let mut acc = Rational::zero();
        for n in 1..=40i64 {
            acc += &Rational::from_int(n).pow(7);
            assert_eq!(b7.eval_int(n), acc);
        }
    }

    #[test]
    fn sigma_elem_examples() {
        assert_eq!(sigma_elem(2, 3).unwrap(), Rational::from_int(11));
        assert_eq!(sigma_elem(0, 5).unwrap(), Rational::one());
        assert_eq!(sigma_elem(3, 3).unwrap(), Rational::from_int(6));
        assert!(matches!(sigma_elem(4, 3), Err(PolyError::InvalidArgument(_))));
    }

    #[test]
    fn power_sum_avg_examples() {
        assert_eq!(power_sum_avg(0, 5), Rational::one());
        assert_eq!(power_sum_avg(1, 5), Rational::from_int(2));
        assert_eq!(power_sum_avg(2, 3), rat(5, 3));
    }

    #[test]
    fn build_sigma_poly_examples() {
        assert_eq!(build_sigma_poly(1).unwrap(), poly(&[(0, 1), (1, 1), (1, 1)]));
        let f = build_sigma_poly(3).unwrap();
        assert_eq!(f, poly(&[(0, 1), (6, 1), (11, 1), (6, 1), (1, 1)]));
        for r in [0, -1, -2, -3] {
            assert_eq!(f.eval_int(r), Rational::zero());
        }
        // coefficients are the elementary symmetric functions
        for u in 0..=3u32 {
            assert_eq!(f.coeff((3 + 1 - u) as usize), sigma_elem(u, 3).unwrap());
        }
        // quasi-even with shift t
        assert!(is_quasi_even(&f, &Rational::from_int(3)));
        assert!(build_sigma_poly(4).is_err());
    }

    #[test]
    fn h_omega_paper_example() {
        let w = poly(&[(-21, 4), (1, 1), (9, 2), (1, 1)]);
        let h = h_omega(&w, 3, 1).unwrap();
        assert_eq!(h, poly(&[(-21, 4), (-9, 1), (9, 2), (3, 1)]));
        assert_eq!(h.reflect(), -h.shift(&rat(-1, 1)));
    }

    #[test]
    fn h_omega_single_term_and_rejection() {
        // (x + 1/2)^3 is odd about -1/2, so it passes the eps = +1, t = 1
        // check and the one-term window returns it unshifted
        let w1 = poly(&[(1, 8), (3, 4), (3, 2), (1, 1)]);
        assert!(is_quasi_odd(&w1, &Rational::one()));
        assert_eq!(h_omega(&w1, 1, 1).unwrap(), w1);
        // (x - 1/2)^3 is odd about +1/2: eps = -1, t = 1 returns w(x + 1)
        let w2 = poly(&[(-1, 8), (3, 4), (-3, 2), (1, 1)]);
        let h = h_omega(&w2, 1, -1).unwrap();
        assert_eq!(h, w2.shift(&Rational::one()));
        assert_eq!(h, w1);
        // x^2 is not quasi-odd
        assert!(matches!(
            h_omega(&Polynomial::monomial(Rational::one(), 2), 1, 1),
            Err(PolyError::NotQuasiOdd(_))
        ));
        // plain odd x^3 fails the shift-1 condition, as it should
        let w = Polynomial::monomial(Rational::one(), 3);
        assert!(!is_quasi_odd(&w, &Rational::one()));
    }
}
