//! Multi-method Bernoulli number engine and the identity suite around it.
//!
//! Bernoulli numbers here follow the `B_1 = +1/2` convention (generating
//! series `t e^t / (e^t - 1)`); odd-index values vanish from `B_3` on. The
//! recurrence derived from the alternating binomial sum ("Louivre's
//! formula") is the authoritative computation; the other seven methods are
//! verification targets:
//!
//! - [`BernoulliMethod::Louivre`]: alternating binomial recurrence, all `k`
//! - [`BernoulliMethod::Recur1`] / [`Recur2`](BernoulliMethod::Recur2):
//!   recurrences over even indices with power-of-two weights
//! - [`BernoulliMethod::Finite1`] .. [`Finite3`](BernoulliMethod::Finite3):
//!   closed sums over integer compositions
//! - [`BernoulliMethod::Finite4`]: closed sum over partitions into parts >= 2
//! - [`BernoulliMethod::Finite5`]: double sum with powers, no compositions
//!
//! The module also expands the products `Q_r(n)` of power-sum polynomials,
//! checks their unit-interval integrals, hosts the named identity suite, and
//! verifies the Bernoulli prime congruence with exact modular arithmetic.

use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exact::{binomial, factorial, neg_one_pow, rat, Rational};
use crate::poly::{
    build_sigma_poly, integral_unit, is_quasi_even, sigma_elem, bernoulli_polynomial,
    power_sum_avg, Polynomial,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BernoulliError {
    InvalidArgument(String),
    NotQuasiEven(String),
}

impl fmt::Display for BernoulliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BernoulliError::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
            BernoulliError::NotQuasiEven(msg) => write!(f, "not quasi-even: {}", msg),
        }
    }
}

impl std::error::Error for BernoulliError {}

// The only shared mutable state in the crate: identity checks re-read low
// Bernoulli numbers thousands of times. Fills are deterministic, so
// concurrent extension is idempotent.
static BERN_CACHE: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::one()]));

/// `B_k` in the `B_1 = +1/2` convention, by the authoritative recurrence,
/// cached.
pub fn bernoulli_number(k: u32) -> Rational {
    {
        let cache = BERN_CACHE.read().unwrap();
        if (cache.len() as u32) > k {
            return cache[k as usize].clone();
        }
    }
    let mut cache = BERN_CACHE.write().unwrap();
    while (cache.len() as u32) <= k {
        let n = cache.len() as u32;
        // sum_{u=0}^{n} (-1)^(u-1) C(n+1, u) B_u = 0, solved for B_n
        let mut acc = Rational::zero();
        for (u, b) in cache.iter().enumerate() {
            let term = neg_one_pow(u as i64 - 1) * binomial(n as u64 + 1, u as i64) * b;
            acc += &term;
        }
        let b_n = neg_one_pow(n as i64) * acc / Rational::from(n + 1);
        cache.push(b_n);
    }
    cache[k as usize].clone()
}

/// Which formula computes the Bernoulli number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliMethod {
    Louivre,
    Recur1,
    Recur2,
    Finite1,
    Finite2,
    Finite3,
    Finite4,
    Finite5,
}

impl BernoulliMethod {
    pub fn all() -> [BernoulliMethod; 8] {
        use BernoulliMethod::*;
        [Louivre, Recur1, Recur2, Finite1, Finite2, Finite3, Finite4, Finite5]
    }

    pub fn name(&self) -> &'static str {
        match self {
            BernoulliMethod::Louivre => "louivre",
            BernoulliMethod::Recur1 => "recur1",
            BernoulliMethod::Recur2 => "recur2",
            BernoulliMethod::Finite1 => "finite1",
            BernoulliMethod::Finite2 => "finite2",
            BernoulliMethod::Finite3 => "finite3",
            BernoulliMethod::Finite4 => "finite4",
            BernoulliMethod::Finite5 => "finite5",
        }
    }

    /// Can this method compute `B_k`?
    pub fn supports(&self, k: u32) -> bool {
        match self {
            BernoulliMethod::Louivre => true,
            BernoulliMethod::Finite1 | BernoulliMethod::Finite5 => k >= 1,
            BernoulliMethod::Recur1
            | BernoulliMethod::Recur2
            | BernoulliMethod::Finite2
            | BernoulliMethod::Finite3
            | BernoulliMethod::Finite4 => k >= 2 && k % 2 == 0,
        }
    }

    /// Methods whose cost grows with the number of compositions/partitions.
    pub fn is_composition_based(&self) -> bool {
        matches!(
            self,
            BernoulliMethod::Finite1
                | BernoulliMethod::Finite2
                | BernoulliMethod::Finite3
                | BernoulliMethod::Finite4
        )
    }
}

impl std::str::FromStr for BernoulliMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "louivre" => Ok(BernoulliMethod::Louivre),
            "recur1" => Ok(BernoulliMethod::Recur1),
            "recur2" => Ok(BernoulliMethod::Recur2),
            "finite1" => Ok(BernoulliMethod::Finite1),
            "finite2" => Ok(BernoulliMethod::Finite2),
            "finite3" => Ok(BernoulliMethod::Finite3),
            "finite4" => Ok(BernoulliMethod::Finite4),
            "finite5" => Ok(BernoulliMethod::Finite5),
            other => Err(format!("unknown Bernoulli method '{}'", other)),
        }
    }
}

/// Compute `B_k` by the requested method.
///
/// `Recur1`, `Recur2` and `Finite2`..`Finite4` are defined on even `k >= 2`;
/// `Finite1` and `Finite5` on `k >= 1`; `Louivre` everywhere. A mismatch is
/// an invalid-argument error.
pub fn bernoulli(k: u32, method: BernoulliMethod) -> Result<Rational, BernoulliError> {
    if !method.supports(k) {
        return Err(BernoulliError::InvalidArgument(format!(
            "method {} does not cover k = {}",
            method.name(),
            k
        )));
    }
    Ok(match method {
        BernoulliMethod::Louivre => bernoulli_number(k),
        BernoulliMethod::Recur1 => recur1(k / 2),
        BernoulliMethod::Recur2 => recur2(k / 2),
        BernoulliMethod::Finite1 => finite1(k),
        BernoulliMethod::Finite2 => finite2(k / 2),
        BernoulliMethod::Finite3 => finite3(k / 2),
        BernoulliMethod::Finite4 => finite4(k / 2),
        BernoulliMethod::Finite5 => finite5(k),
    })
}

fn two_pow(e: i64) -> Rational {
    rat(2, 1).pow(e)
}

// B_{2j} from sum_{u=0}^{j} (2^(2u-1) - 1) C(2j+1, 2u) B_{2u} = 0,
// bootstrapped from B_0 alone.
fn recur1(half_k: u32) -> Rational {
    let mut evens = vec![Rational::one()];
    for j in 1..=half_k {
        let mut acc = Rational::zero();
        for (u, b) in evens.iter().enumerate() {
            let w = two_pow(2 * u as i64 - 1) - Rational::one();
            acc += &(w * binomial(2 * j as u64 + 1, 2 * u as i64) * b);
        }
        let head = (two_pow(2 * j as i64 - 1) - Rational::one()) * Rational::from(2 * j + 1);
        evens.push(-acc / head);
    }
    evens[half_k as usize].clone()
}

// B_{2j} from sum_{u=0}^{j} (2^(2u-1) - 1) C(2j, 2u) B_{2u} = -2^(2j-1) B_{2j}.
fn recur2(half_k: u32) -> Rational {
    let mut evens = vec![Rational::one()];
    for j in 1..=half_k {
        let mut acc = Rational::zero();
        for (u, b) in evens.iter().enumerate() {
            let w = two_pow(2 * u as i64 - 1) - Rational::one();
            acc += &(w * binomial(2 * j as u64, 2 * u as i64) * b);
        }
        let denom = two_pow(2 * j as i64) - Rational::one();
        evens.push(-acc / denom);
    }
    evens[half_k as usize].clone()
}

// B_k = k! sum over compositions u_1 + ... + u_t = k of
// (-1)^(t+k) / ((u_1 + 1)! ... (u_t + 1)!).
fn finite1(k: u32) -> Rational {
    let mut acc = Rational::zero();
    for comp in compositions(k, 1) {
        let mut denom = Rational::one();
        for &u in &comp {
            denom *= &factorial(u as u64 + 1);
        }
        acc += &(neg_one_pow(comp.len() as i64 + k as i64) / denom);
    }
    factorial(k as u64) * acc
}

// B_{2k} = (2k)!/2 sum over compositions u_1 + ... + u_t = k of
// (-1)^(t-1) (2 u_1 - 1) / ((2 u_1 + 1)! ... (2 u_t + 1)!).
fn finite2(k: u32) -> Rational {
    let mut acc = Rational::zero();
    for comp in compositions(k, 1) {
        let mut denom = Rational::one();
        for &u in &comp {
            denom *= &factorial(2 * u as u64 + 1);
        }
        let head = Rational::from_int(2 * comp[0] as i64 - 1);
        acc += &(neg_one_pow(comp.len() as i64 - 1) * head / denom);
    }
    factorial(2 * k as u64) / rat(2, 1) * acc
}

// B_{2k} = (2k)!/2^(2k) sum over u_0 + u_1 + ... + u_t = k (u_0 >= 0,
// u_i > 0 for i > 0) of (-1)^t / ((2 u_0)! (2 u_1 + 1)! ... (2 u_t + 1)!).
fn finite3(k: u32) -> Rational {
    let mut acc = Rational::zero();
    for u0 in 0..=k {
        let head = factorial(2 * u0 as u64);
        if u0 == k {
            acc += &(Rational::one() / head);
            continue;
        }
        for comp in compositions(k - u0, 1) {
            let mut denom = head.clone();
            for &u in &comp {
                denom *= &factorial(2 * u as u64 + 1);
            }
            acc += &(neg_one_pow(comp.len() as i64) / denom);
        }
    }
    factorial(2 * k as u64) / two_pow(2 * k as i64) * acc
}

// B_{2k} = (2^(2k+1) - 2)^-1 (k + (2k)! sum_{u=1}^{k-1} sum over ordered
// compositions nu_1 + ... + nu_s = 2k - 2u with even parts >= 2 of
// (-1)^s / (2^(s+1) (2u-1)! nu_1! ... nu_s!)),
// the expansion of tanh(x/2) = sinh x / (cosh x + 1): the odd head comes
// from sinh, the even parts from powers of (cosh x - 1).
fn finite4(k: u32) -> Rational {
    let mut inner = Rational::zero();
    for u in 1..k {
        for half in compositions(k - u, 1) {
            let s = half.len() as i64;
            let mut denom = two_pow(s + 1) * factorial(2 * u as u64 - 1);
            for &v in &half {
                denom *= &factorial(2 * v as u64);
            }
            inner += &(neg_one_pow(s) / denom);
        }
    }
    (Rational::from(k) + factorial(2 * k as u64) * inner)
        / (two_pow(2 * k as i64 + 1) - rat(2, 1))
}

// B_k = (-1)^k sum_{u=1}^{k} 1/(u+1) sum_{t=1}^{u} (-1)^t t^k C(u, t).
fn finite5(k: u32) -> Rational {
    let mut acc = Rational::zero();
    for u in 1..=k as u64 {
        let mut inner = Rational::zero();
        for t in 1..=u {
            let term = neg_one_pow(t as i64)
                * Rational::from(t).pow(k as i64)
                * binomial(u, t as i64);
            inner += &term;
        }
        acc += &(inner / Rational::from(u + 1));
    }
    neg_one_pow(k as i64) * acc
}

/// Iterator over the ordered compositions of `k` into parts `>= min_part`,
/// grouped by part count (ascending) and lexicographic within a group.
/// For `min_part = 1` there are `2^(k-1)` of them.
pub fn compositions(k: u32, min_part: u32) -> Compositions {
    assert!(k >= 1, "compositions of k >= 1 only");
    assert!(min_part >= 1, "parts must be positive");
    let max_t = k / min_part;
    let current = if max_t >= 1 { Some(vec![k]) } else { None };
    Compositions { k, min_part, t: 1, max_t, current }
}

pub struct Compositions {
    k: u32,
    min_part: u32,
    t: u32,
    max_t: u32,
    current: Option<Vec<u32>>,
}

impl Compositions {
    fn lex_first(&self, t: u32) -> Vec<u32> {
        let mut c = vec![self.min_part; t as usize];
        c[t as usize - 1] = self.k - self.min_part * (t - 1);
        c
    }

    fn advance(&self, c: &mut Vec<u32>) -> bool {
        let t = c.len();
        if t <= 1 {
            return false;
        }
        let min = self.min_part;
        let mut tail_sum = 0u32;
        for i in (0..t - 1).rev() {
            tail_sum += c[i + 1];
            // raising c[i] by one must leave a valid tail of t-1-i parts
            if tail_sum >= 1 + (t - 1 - i) as u32 * min {
                c[i] += 1;
                for item in c.iter_mut().take(t - 1).skip(i + 1) {
                    *item = min;
                }
                c[t - 1] = tail_sum - 1 - (t - 2 - i) as u32 * min;
                return true;
            }
        }
        false
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if self.advance(&mut succ) {
            self.current = Some(succ);
        } else {
            self.t += 1;
            if self.t <= self.max_t {
                self.current = Some(self.lex_first(self.t));
            }
        }
        Some(out)
    }
}

/// Partitions of `n` into parts `>= min`, parts listed in non-decreasing
/// order. `n = 0` yields the empty partition.
pub fn partitions_with_min(n: u32, min: u32) -> Vec<Vec<u32>> {
    fn recurse(n: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in min..=n {
            prefix.push(p);
            recurse(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    recurse(n, min, &mut Vec::new(), &mut out);
    out
}

/// Specification of the product `Q_r(n) = prod_i ((k_i + 1) B_{k_i}(n))^{m_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrSpec {
    pub pairs: Vec<(u32, u32)>,
}

impl QrSpec {
    pub fn new(pairs: Vec<(u32, u32)>) -> Self {
        assert!(!pairs.is_empty(), "QrSpec needs at least one (k, m) pair");
        assert!(pairs.iter().all(|&(k, m)| k >= 1 && m >= 1));
        QrSpec { pairs }
    }

    /// Degree `N_r = sum (k_i + 1) m_i`.
    pub fn n_r(&self) -> u32 {
        self.pairs.iter().map(|&(k, m)| (k + 1) * m).sum()
    }
}

/// Expand `Q_r` as a polynomial; its constant term is zero.
pub fn qr_polynomial(spec: &QrSpec) -> Polynomial {
    let mut acc = Polynomial::one();
    for &(k, m) in &spec.pairs {
        let factor = bernoulli_polynomial(k).scale(&Rational::from(k + 1));
        acc = &acc * &factor.pow(m);
    }
    acc
}

/// Check the unit-interval integral of `Q_r`: zero for odd `N_r`, and
/// `-2 sum_u q_u B_{u+1}/(u+1)` for even `N_r`.
pub fn verify_qr(spec: &QrSpec) -> bool {
    let q = qr_polynomial(&spec.clone());
    let integral = integral_unit(&q);
    if spec.n_r() % 2 == 1 {
        integral.is_zero()
    } else {
        let mut acc = Rational::zero();
        for (u, c) in q.coeffs().iter().enumerate().skip(1) {
            acc += &(c * &(bernoulli_number(u as u32 + 1) / Rational::from(u as u32 + 1)));
        }
        integral == rat(-2, 1) * acc
    }
}

// Deterministic pseudo-random coefficients for the randomized identities;
// the suite must produce byte-identical reports run to run.
struct DetRng(u64);

impl DetRng {
    fn next_u64(&mut self) -> u64 {
        // splitmix64
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    fn rational(&mut self) -> Rational {
        Rational::new(self.int_in(-9, 9), self.int_in(1, 4))
    }

    fn polynomial(&mut self, degree: u32) -> Polynomial {
        let mut coeffs: Vec<Rational> = (0..degree).map(|_| self.rational()).collect();
        let mut lead = self.rational();
        if lead.is_zero() {
            lead = Rational::one();
        }
        coeffs.push(lead);
        Polynomial::from_coeffs(coeffs)
    }
}

/// One line of the identity suite report.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub check: &'static str,
    pub k: i64,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Aggregated identity suite outcome, ordered by check name then parameter.
#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "check": c.check,
                        "k": c.k,
                        "pass": c.pass,
                        "lhs": c.lhs,
                        "rhs": c.rhs,
                    })
                })
                .collect(),
        )
    }

    fn push(&mut self, check: &'static str, k: i64, lhs: Rational, rhs: Rational) {
        self.checks.push(IdentityCheck {
            check,
            k,
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} (k={}): {} = {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.check,
                c.k,
                c.lhs,
                c.rhs
            )?;
        }
        Ok(())
    }
}

/// Run every named Bernoulli identity for parameters up to `max_k`, with
/// exact evaluation throughout.
pub fn identity_suite(max_k: u32) -> IdentityReport {
    assert!(max_k >= 2, "identity suite needs max_k >= 2");
    let mut report = IdentityReport::default();

    // difference-driven recurrence: for a polynomial f of degree k with
    // f(x) - f(x-1) = sum a_u x^u,
    // sum a_u/(u+1) B_{u+1} = int_0^{-1} (f(x) - f(0)) dx
    for k in 2..=max_k {
        let mut rng = DetRng(0xA5A5_0000 + k as u64);
        let f = rng.polynomial(k);
        let a = &f - &f.shift(&rat(-1, 1));
        let mut lhs = Rational::zero();
        for (u, au) in a.coeffs().iter().enumerate() {
            lhs += &(au * &(bernoulli_number(u as u32 + 1) / Rational::from(u as u32 + 1)));
        }
        let centered = &f - &Polynomial::constant(f.eval_int(0));
        let rhs = -integral_unit(&centered);
        report.push("diff-recurrence", k as i64, lhs, rhs);
    }

    // sum-driven recurrence: with f(x) + f(x-1) = sum b_u x^u,
    // sum (2^(u+1) - 1) b_u/(u+1) B_{u+1} = f(0)
    for k in 2..=max_k {
        let mut rng = DetRng(0xB6B6_0000 + k as u64);
        let f = rng.polynomial(k);
        let b = &f + &f.shift(&rat(-1, 1));
        let mut lhs = Rational::zero();
        for (u, bu) in b.coeffs().iter().enumerate() {
            let w = two_pow(u as i64 + 1) - Rational::one();
            lhs += &(bu * &(w * bernoulli_number(u as u32 + 1) / Rational::from(u as u32 + 1)));
        }
        report.push("sum-recurrence", k as i64, lhs, f.eval_int(0));
    }

    // chained even-index identity: both of
    // sum_{u=1}^{k} 2^(2u-1) (2^(2u) - 1) C(2k, 2u) B_{2u} and
    // (2^(2k) - 1) B_{2k} + sum_{u=0}^{k-1} 2^(2u-1) C(2k, 2u) B_{2u}
    // equal k
    for k in 1..=max_k {
        let mut first = Rational::zero();
        for u in 1..=k {
            let w = two_pow(2 * u as i64 - 1) * (two_pow(2 * u as i64) - Rational::one());
            first += &(w * binomial(2 * k as u64, 2 * u as i64) * bernoulli_number(2 * u));
        }
        report.push("even-power-weight", k as i64, first, Rational::from(k));
        let mut second = (two_pow(2 * k as i64) - Rational::one()) * bernoulli_number(2 * k);
        for u in 0..k {
            second += &(two_pow(2 * u as i64 - 1)
                * binomial(2 * k as u64, 2 * u as i64)
                * bernoulli_number(2 * u));
        }
        report.push("even-power-weight-split", k as i64, second, Rational::from(k));
    }

    // odd-order binomial identities:
    // sum (2^(2u-1) - 1) C(2k+1, 2u) B_{2u} = 0 and the two unweighted /
    // half-weighted companions both equal to (2k+1)/2
    for k in 1..=max_k {
        let mut zero_sum = Rational::zero();
        let mut plain = Rational::zero();
        let mut halved = Rational::zero();
        for u in 0..=k {
            let c = binomial(2 * k as u64 + 1, 2 * u as i64);
            let b = bernoulli_number(2 * u);
            zero_sum += &((two_pow(2 * u as i64 - 1) - Rational::one()) * &c * &b);
            plain += &(&c * &b);
            halved += &(two_pow(2 * u as i64 - 1) * &c * &b);
        }
        report.push("odd-index-binomial", k as i64, zero_sum, Rational::zero());
        let half = Rational::from(2 * k + 1) / rat(2, 1);
        report.push("odd-index-binomial-plain", k as i64, plain, half.clone());
        report.push("odd-index-binomial-halved", k as i64, halved, half);
    }

    // even-order weighted identity:
    // sum (2^(2u-1) - 1) C(2k, 2u) B_{2u} = -2^(2k-1) B_{2k}
    for k in 1..=max_k {
        let mut lhs = Rational::zero();
        for u in 0..=k {
            lhs += &((two_pow(2 * u as i64 - 1) - Rational::one())
                * binomial(2 * k as u64, 2 * u as i64)
                * bernoulli_number(2 * u));
        }
        let rhs = -two_pow(2 * k as i64 - 1) * bernoulli_number(2 * k);
        report.push("half-weight-even", k as i64, lhs, rhs);
    }

    // sum_{u=0}^{(k-1)/2} C(k, 2u+1)/(k-u) B_{2(k-u)} = int_0^{-1} (x^2+x)^k dx
    for k in 1..=max_k {
        let mut lhs = Rational::zero();
        for u in 0..=(k - 1) / 2 {
            lhs += &(binomial(k as u64, 2 * u as i64 + 1) / Rational::from(k - u)
                * bernoulli_number(2 * (k - u)));
        }
        let base = Polynomial::from_coeffs(vec![
            Rational::zero(),
            Rational::one(),
            Rational::one(),
        ]);
        let rhs = -integral_unit(&base.pow(k));
        report.push("quadratic-power-integral", k as i64, lhs, rhs);
    }

    // the two identities pairing B_{2k+1-u} with (-1)^u / 2
    for k in 1..=max_k {
        let mut first = Rational::zero();
        for u in 0..=k {
            let inner = bernoulli_number(2 * k + 1 - u) + neg_one_pow(u as i64) / rat(2, 1);
            first += &(binomial(k as u64, u as i64) / Rational::from(2 * k + 1 - u) * inner);
        }
        report.push("shifted-half-pair", k as i64, first, Rational::zero());
        let mut second = Rational::zero();
        for u in 0..=(2 * k - 1) {
            let inner = bernoulli_number(2 * k + 1 - u) + neg_one_pow(u as i64) / rat(2, 1);
            second += &(binomial(2 * k as u64 + 1, u as i64) / two_pow(u as i64) * inner);
        }
        report.push("shifted-half-pair-binomial", k as i64, second, Rational::zero());
    }

    // alternating binomial recurrence: sum (-1)^(u-1) C(n+1, u) B_u = 0
    for n in 1..=max_k {
        let mut lhs = Rational::zero();
        for u in 0..=n {
            lhs += &(neg_one_pow(u as i64 - 1)
                * binomial(n as u64 + 1, u as i64)
                * bernoulli_number(u));
        }
        report.push("louivre", n as i64, lhs, Rational::zero());
    }

    // composition sum with (B_{2u_1} - 1/2) weights equals 1/(2k-1)!
    for k in 2..=max_k {
        let mut lhs = Rational::zero();
        for comp in compositions(k, 1) {
            if comp.len() < 2 {
                continue;
            }
            let t = comp.len() as i64 - 1; // parts u_0, u_1, ..., u_t
            let mut denom = factorial(2 * comp[0] as u64 - 1);
            for &u in &comp[1..] {
                denom *= &factorial(2 * u as u64);
            }
            let weight = bernoulli_number(2 * comp[1]) - rat(1, 2);
            lhs += &(neg_one_pow(t) * two_pow(1 - t) * weight / denom);
        }
        let rhs = Rational::one() / factorial(2 * k as u64 - 1);
        report.push("composition-factorial", k as i64, lhs, rhs);
    }

    // alternating binomial fractions:
    // sum (-1)^u 2^(2k-u) C(2k, u)/(2k+1-u) = 1/(2k+1), and the odd-order
    // companion sums to zero
    for k in 1..=max_k {
        let mut even_case = Rational::zero();
        for u in 0..=2 * k {
            even_case += &(neg_one_pow(u as i64) * two_pow(2 * k as i64 - u as i64)
                * binomial(2 * k as u64, u as i64)
                / Rational::from(2 * k + 1 - u));
        }
        report.push(
            "alternating-binomial-fraction",
            k as i64,
            even_case,
            Rational::one() / Rational::from(2 * k + 1),
        );
        let mut odd_case = Rational::zero();
        for u in 0..=(2 * k - 1) {
            odd_case += &(neg_one_pow(u as i64) * two_pow(2 * k as i64 - 1 - u as i64)
                * binomial(2 * k as u64 - 1, u as i64)
                / Rational::from(2 * k - u));
        }
        report.push("alternating-binomial-fraction-odd", k as i64, odd_case, Rational::zero());
    }

    // window sum of the sigma polynomial:
    // sum sigma_u(t)/(t+2-u) B_{t+2-u} = -1/2 int_{-1}^0 sum_{u=0}^{t-1} f(x-u) dx
    for t in (1..=max_k).step_by(2) {
        let f = build_sigma_poly(t).expect("t is odd");
        let mut lhs = Rational::zero();
        for u in 0..=t {
            lhs += &(sigma_elem(u, t).unwrap() / Rational::from(t + 2 - u)
                * bernoulli_number(t + 2 - u));
        }
        let mut window = Polynomial::zero();
        for u in 0..t {
            window = &window + &f.shift(&Rational::from_int(-(u as i64)));
        }
        let rhs = rat(-1, 2) * integral_unit(&window);
        report.push("symmetric-function-window", t as i64, lhs, rhs);
    }

    // double sum over derived coefficients a-bar (unit shift):
    // sum_u sum_v (-1)^u a_u abar_v/(u+v+1) (B_{u+v+1} + (-1)^(u+v)/2)
    // collapses to a_0 abar_0
    for k in 1..=max_k.min(8) {
        let mut rng = DetRng(0xC7C7_0000 + k as u64);
        let a: Vec<Rational> = (0..=k).map(|_| rng.rational()).collect();
        let abar: Vec<Rational> = (0..=k)
            .map(|v| {
                let mut acc = Rational::zero();
                for u in v..=k {
                    acc += &(&a[u as usize] * &binomial(u as u64, v as i64));
                }
                acc
            })
            .collect();
        let mut lhs = Rational::zero();
        for u in 0..=k {
            for v in 0..=k {
                let order = u + v + 1;
                let inner = bernoulli_number(order) + neg_one_pow(u as i64 + v as i64) / rat(2, 1);
                lhs += &(neg_one_pow(u as i64) * &a[u as usize] * &abar[v as usize]
                    / Rational::from(order)
                    * inner);
            }
        }
        let rhs = &a[0] * &abar[0];
        report.push("symmetric-double-sum", k as i64, lhs, rhs);
    }

    // odd-part symmetric sums:
    // sum_{u=1}^{(k+1)/2} sigma_{k+1-2u}(k) (2^(2u) - 1)/u B_{2u} = k! (1 - 2^-k)
    for k in 1..=max_k {
        let mut lhs = Rational::zero();
        for u in 1..=(k + 1) / 2 {
            lhs += &(sigma_elem(k + 1 - 2 * u, k).unwrap()
                * (two_pow(2 * u as i64) - Rational::one())
                / Rational::from(u)
                * bernoulli_number(2 * u));
        }
        let rhs = factorial(k as u64) * (Rational::one() - two_pow(-(k as i64)));
        report.push("symmetric-odd-parts", k as i64, lhs, rhs);
    }

    report.checks.sort_by(|x, y| x.check.cmp(y.check).then(x.k.cmp(&y.k)));
    report
}

/// Check the window-sum identity for an even-degree quasi-even polynomial
/// `f` with `f(0) = 0` and `f(-x) = f(x - eps t)`:
/// `sum b_{2u-1}/u B_{2u} = -eps int_{-1}^0 sum_u (f(x - eps u) - f(-eps u)) dx`.
pub fn theorem41_check(f: &Polynomial, t: u32, eps: i32) -> Result<bool, BernoulliError> {
    if eps != 1 && eps != -1 {
        return Err(BernoulliError::InvalidArgument(format!(
            "eps must be +1 or -1, got {}",
            eps
        )));
    }
    let deg = f.degree().unwrap_or(0);
    if deg == 0 || deg % 2 != 0 {
        return Err(BernoulliError::NotQuasiEven(format!(
            "degree must be even and positive, got {}",
            deg
        )));
    }
    if !f.eval_int(0).is_zero() {
        return Err(BernoulliError::NotQuasiEven("f(0) must vanish".to_string()));
    }
    let shift = Rational::from_int(eps as i64 * t as i64);
    if !is_quasi_even(f, &shift) {
        return Err(BernoulliError::NotQuasiEven(format!(
            "f(-x) != f(x - {}*{})",
            eps, t
        )));
    }
    let half = deg as u32 / 2;
    let mut lhs = Rational::zero();
    for u in 1..=half {
        lhs += &(f.coeff(2 * u as usize - 1) / Rational::from(u) * bernoulli_number(2 * u));
    }
    let delta = (1 - eps) / 2;
    let mut window = Polynomial::zero();
    for u in delta..(t as i32 + delta) {
        let shifted = f.shift(&Rational::from_int(-(eps as i64) * u as i64));
        let at_point = f.eval_int(-(eps as i64) * u as i64);
        window = &(&window + &shifted) - &Polynomial::constant(at_point);
    }
    let rhs = -Rational::from_int(eps as i64) * integral_unit(&window);
    Ok(lhs == rhs)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Residue of `r` modulo prime `p`, via the modular inverse of the
/// denominator. Fails when `p` divides the denominator.
pub fn rational_mod(r: &Rational, p: u64) -> Result<u64, BernoulliError> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(BernoulliError::InvalidArgument(format!(
            "{} divides the denominator of {}",
            p, r
        )));
    }
    let num = r.numer().mod_floor(&pb);
    let inv = den.modpow(&BigInt::from(p - 2), &pb);
    let out = (num * inv).mod_floor(&pb);
    Ok(out.to_u64().expect("residue fits in u64"))
}

/// Verify the Bernoulli prime congruence
/// `theta B_{theta-1} = -sum_{u=0}^{theta-2} S_u^p C(theta, u) (mod p)`
/// for prime `p > 2` and odd `theta` in `(1, p]`, together with the special
/// case `p B_{p-1} = -1 (mod p)`.
pub fn bern_congruence(p: u64, theta: u64) -> Result<bool, BernoulliError> {
    if !is_prime(p) || p <= 2 {
        return Err(BernoulliError::InvalidArgument(format!("p = {} is not an odd prime", p)));
    }
    if theta % 2 == 0 || theta <= 1 || theta > p {
        return Err(BernoulliError::InvalidArgument(format!(
            "theta = {} must be odd and in (1, {}]",
            theta, p
        )));
    }
    let lhs_rat = Rational::from(theta) * bernoulli_number(theta as u32 - 1);
    let lhs = rational_mod(&lhs_rat, p)?;
    let mut rhs_rat = Rational::zero();
    for u in 0..=(theta - 2) {
        rhs_rat += &(power_sum_avg(u as u32, p as u32) * binomial(theta, u as i64));
    }
    let rhs = rational_mod(&-rhs_rat, p)?;
    let special_rat = Rational::from(p) * bernoulli_number(p as u32 - 1);
    let special = rational_mod(&special_rat, p)? == p - 1;
    Ok(lhs == rhs && special)
}

/// The table of `B_0 .. B_20` as printed in the source table
/// (`B_1 = +1/2` convention).
pub fn reference_table() -> Vec<Rational> {
    [
        (1, 1),
        (1, 2),
        (1, 6),
        (0, 1),
        (-1, 30),
        (0, 1),
        (1, 42),
        (0, 1),
        (-1, 30),
        (0, 1),
        (5, 66),
        (0, 1),
        (691, 2730),
        (0, 1),
        (7, 6),
        (0, 1),
        (-3617, 510),
        (0, 1),
        (43867, 798),
        (0, 1),
        (-174611, 330),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect()
}

/// One row of the table comparison: the printed value against the computed
/// one. The computation is authoritative; mismatches are reported, not
/// raised.
#[derive(Debug, Clone)]
pub struct TableCheck {
    pub k: u32,
    pub table: Rational,
    pub computed: Rational,
    pub matches: bool,
}

/// Compare `B_0 .. B_20` against the printed table.
pub fn table_check() -> Vec<TableCheck> {
    reference_table()
        .into_iter()
        .enumerate()
        .map(|(k, table)| {
            let computed = bernoulli_number(k as u32);
            let matches = table == computed;
            TableCheck { k: k as u32, table, computed, matches }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn table_check_flags_the_single_misprint() {
        // The printed table drops the sign of B_12; the computation is
        // authoritative and the comparison flags the row instead of failing.
        for entry in table_check() {
            if entry.k == 12 {
                assert!(!entry.matches);
                assert_eq!(entry.table, rat(691, 2730));
                assert_eq!(entry.computed, rat(-691, 2730));
            } else {
                assert!(
                    entry.matches,
                    "B_{} computed {} but table says {}",
                    entry.k, entry.computed, entry.table
                );
            }
        }
        assert_eq!(bernoulli_number(1), rat(1, 2));
        assert_eq!(bernoulli_number(14), rat(7, 6));
        assert_eq!(bernoulli_number(16), rat(-3617, 510));
        assert_eq!(bernoulli_number(20), rat(-174611, 330));
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for k in 1..=12u32 {
            assert!(bernoulli_number(2 * k + 1).is_zero(), "B_{} != 0", 2 * k + 1);
        }
    }

    #[test]
    fn finite_formula_worked_examples() {
        assert_eq!(bernoulli(3, BernoulliMethod::Finite1).unwrap(), Rational::zero());
        assert_eq!(bernoulli(6, BernoulliMethod::Finite2).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(4, BernoulliMethod::Finite3).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(4, BernoulliMethod::Finite4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(2, BernoulliMethod::Finite5).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(3, BernoulliMethod::Finite5).unwrap(), Rational::zero());
    }

    #[test]
    fn cross_method_agreement() {
        for k in 0..=16u32 {
            let baseline = bernoulli_number(k);
            for method in BernoulliMethod::all() {
                if method.supports(k) {
                    assert_eq!(
                        bernoulli(k, method).unwrap(),
                        baseline,
                        "method {} disagrees at k = {}",
                        method.name(),
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn method_domain_errors() {
        assert!(bernoulli(3, BernoulliMethod::Recur1).is_err());
        assert!(bernoulli(5, BernoulliMethod::Finite2).is_err());
        assert!(bernoulli(0, BernoulliMethod::Finite1).is_err());
        assert!(bernoulli(0, BernoulliMethod::Louivre).is_ok());
    }

    #[test]
    fn compositions_spec_order_and_count() {
        let got: Vec<Vec<u32>> = compositions(3, 1).collect();
        assert_eq!(got, vec![vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(compositions(1, 1).collect::<Vec<_>>(), vec![vec![1]]);
        assert_eq!(compositions(4, 1).count(), 8);
        for k in 1..=14u32 {
            let all: Vec<Vec<u32>> = compositions(k, 1).collect();
            assert_eq!(all.len(), 1 << (k - 1));
            let unique: HashSet<Vec<u32>> = all.iter().cloned().collect();
            assert_eq!(unique.len(), all.len(), "duplicate composition at k = {}", k);
            assert!(all.iter().all(|c| c.iter().sum::<u32>() == k));
        }
        // parts >= 2
        let ge2: Vec<Vec<u32>> = compositions(5, 2).collect();
        assert_eq!(ge2, vec![vec![5], vec![2, 3], vec![3, 2]]);
    }

    #[test]
    fn partitions_min2() {
        let parts = partitions_with_min(7, 2);
        assert_eq!(parts, vec![vec![2, 2, 3], vec![2, 5], vec![3, 4], vec![7]]);
        assert_eq!(partitions_with_min(0, 2), vec![Vec::<u32>::new()]);
        assert_eq!(partitions_with_min(3, 2), vec![vec![3]]);
    }

    #[test]
    fn qr_polynomial_paper_examples() {
        // 18 B_2(x) B_5(x)
        let q = qr_polynomial(&QrSpec::new(vec![(2, 1), (5, 1)]));
        let expected = Polynomial::from_coeffs(vec![
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            rat(-1, 4),
            rat(-3, 4),
            rat(3, 4),
            rat(21, 4),
            rat(15, 2),
            rat(9, 2),
            Rational::one(),
        ]);
        assert_eq!(q, expected);
        // 36 B_2(x)^2 B_3(x): degree 10, leading 1 then 5
        let q2 = qr_polynomial(&QrSpec::new(vec![(2, 2), (3, 1)]));
        assert_eq!(q2.degree(), Some(10));
        assert_eq!(q2.coeff(10), Rational::one());
        assert_eq!(q2.coeff(9), Rational::from_int(5));
        assert_eq!(q2.coeff(8), rat(41, 4));
        // single factor: 2 B_1(n) = n^2 + n
        let q3 = qr_polynomial(&QrSpec::new(vec![(1, 1)]));
        assert_eq!(
            q3,
            Polynomial::from_coeffs(vec![Rational::zero(), Rational::one(), Rational::one()])
        );
        assert_eq!(q3.eval_int(0), Rational::zero());
    }

    #[test]
    fn verify_qr_examples() {
        assert!(verify_qr(&QrSpec::new(vec![(2, 1), (5, 1)])));
        assert!(verify_qr(&QrSpec::new(vec![(2, 2), (3, 1)])));
        assert!(verify_qr(&QrSpec::new(vec![(1, 1)])));
        // the even case pins the integral value too
        let q2 = qr_polynomial(&QrSpec::new(vec![(2, 2), (3, 1)]));
        assert_eq!(integral_unit(&q2), rat(1, 27720));
    }

    #[test]
    fn identity_suite_passes_and_pins_values() {
        let report = identity_suite(6);
        assert!(report.all_pass(), "failure: {:?}", report.first_failure());
        // composition-factorial at k = 4 evaluates to 1/7!
        let c4 = report
            .checks
            .iter()
            .find(|c| c.check == "composition-factorial" && c.k == 4)
            .unwrap();
        assert_eq!(c4.lhs, "1/5040");
        // symmetric-function-window at t = 3 evaluates to 9/20
        let t3 = report
            .checks
            .iter()
            .find(|c| c.check == "symmetric-function-window" && c.k == 3)
            .unwrap();
        assert_eq!(t3.lhs, "9/20");
    }

    #[test]
    fn symmetric_double_sum_paper_values() {
        // k = 1, a0 = 1/2, a1 = 1/3 gives abar0 = 5/6 and the sum 5/12
        let a = [rat(1, 2), rat(1, 3)];
        let abar = [&a[0] + &a[1], a[1].clone()];
        assert_eq!(abar[0], rat(5, 6));
        let mut lhs = Rational::zero();
        for u in 0..=1usize {
            for v in 0..=1usize {
                let order = (u + v + 1) as u32;
                let inner = bernoulli_number(order) + neg_one_pow((u + v) as i64) / rat(2, 1);
                lhs += &(neg_one_pow(u as i64) * &a[u] * &abar[v] / Rational::from(order) * inner);
            }
        }
        assert_eq!(lhs, rat(5, 12));
        assert_eq!(&a[0] * &abar[0], rat(5, 12));
    }

    #[test]
    fn theorem41_worked_example() {
        let f = Polynomial::from_coeffs(vec![
            Rational::zero(),
            Rational::from_int(-24),
            Rational::one(),
            Rational::from_int(6),
            Rational::one(),
        ]);
        assert!(theorem41_check(&f, 3, 1).unwrap());
        // both sides are +/- 41/10
        let mut lhs = Rational::zero();
        for u in 1..=2u32 {
            lhs += &(f.coeff(2 * u as usize - 1) / Rational::from(u) * bernoulli_number(2 * u));
        }
        assert_eq!(lhs, rat(-41, 10));

        let sigma = build_sigma_poly(3).unwrap();
        assert!(theorem41_check(&sigma, 3, 1).unwrap());

        // x^2 fails the quasi-even condition for t = 1
        let sq = Polynomial::monomial(Rational::one(), 2);
        assert!(matches!(
            theorem41_check(&sq, 1, 1),
            Err(BernoulliError::NotQuasiEven(_))
        ));
    }

    #[test]
    fn congruence_examples() {
        assert!(bern_congruence(5, 3).unwrap());
        assert!(bern_congruence(5, 5).unwrap());
        assert!(bern_congruence(7, 3).unwrap());
        // both sides of (5, 3) are 3 mod 5
        let lhs = rational_mod(&(Rational::from_int(3) * bernoulli_number(2)), 5).unwrap();
        assert_eq!(lhs, 3);
        assert!(bern_congruence(9, 3).is_err());
        assert!(bern_congruence(5, 4).is_err());
        assert!(bern_congruence(5, 7).is_err());
    }

    #[test]
    fn rational_mod_denominator_guard() {
        assert!(rational_mod(&rat(1, 5), 5).is_err());
        assert_eq!(rational_mod(&rat(1, 2), 5).unwrap(), 3);
        assert_eq!(rational_mod(&rat(-7, 1), 5).unwrap(), 3);
    }
}
