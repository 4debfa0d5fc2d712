//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! A [`Scalar`] stores its conductor `n` together with coordinates in the
//! power basis `1, z, z^2, ..., z^(phi(n)-1)`, reduced modulo the n-th
//! cyclotomic polynomial. Binary operations lift both operands to the least
//! common conductor. Results whose irrational part vanishes collapse back to
//! conductor 1, so plain rationals always live at order 1.
//!
//! Text form: `p/q` (or `p`) for rationals and `c0 + c1*z + c2*z^2@n` for
//! elements of conductor `n`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// The four field operations accepted by [`Scalar::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An exact element of `Q(zeta_order)`.
#[derive(Clone)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
fn cyclotomic(n: u32) -> Arc<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n.
    let mut poly = vec![BigRational::zero(); n as usize + 1];
    poly[0] = -BigRational::one();
    poly[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = poly_div_exact(&poly, &cyclotomic(d));
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Quotient and remainder of `a / b`, `b` nonzero and trimmed.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = &b[db];
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            rem[k + i] -= t;
        }
        quot[k] = c;
        rem.pop();
        poly_trim(&mut rem);
        if rem.len() <= db {
            break;
        }
    }
    (quot, rem)
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (q, r) = poly_divrem(a, b);
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Reduce a polynomial in `z` modulo `Phi_n`, padding to length `phi(n)`.
fn reduce_mod(mut poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = euler_phi(n);
    let modulus = cyclotomic(n);
    while poly.len() > phi {
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = poly.len() - phi;
        // Phi_n is monic: z^phi = -(lower terms)
        for (i, m) in modulus.iter().take(phi).enumerate() {
            if !m.is_zero() {
                poly[shift + i] -= &c * m;
            }
        }
    }
    poly.resize(phi, BigRational::zero());
    poly
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a scalar. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds `sum coeffs[k] * zeta_n^k`; the exponents may exceed `phi(n)`.
    pub fn from_power_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut poly = vec![BigRational::zero(); (n as usize).max(1)];
        for (k, c) in coeffs.into_iter().enumerate() {
            poly[k % n as usize] += c;
        }
        Self {
            order: n,
            coeffs: reduce_mod(poly, n),
        }
        .normalized()
    }

    /// The primitive n-th root of unity `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(n: u32) -> Self {
        assert!(n >= 1, "zeta(n) needs n >= 1");
        let mut poly = vec![BigRational::zero(); 2];
        poly[1] = BigRational::one();
        Self {
            order: n,
            coeffs: reduce_mod(poly, n),
        }
        .normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            let c = self.coeffs.swap_remove(0);
            return Self::from_rational(c);
        }
        self
    }

    /// Coordinates of `self` inside `Q(zeta_target)`; `order` must divide `target`.
    fn lifted_coeffs(&self, target: u32) -> Vec<BigRational> {
        if target == self.order {
            return self.coeffs.clone();
        }
        debug_assert_eq!(target % self.order, 0);
        let step = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(k * step) % target as usize] += c;
        }
        reduce_mod(poly, target)
    }

    fn common(&self, other: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        let n = self.order.lcm(&other.order);
        (n, self.lifted_coeffs(n), other.lifted_coeffs(n))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Extended Euclid in Q[z] against the irreducible modulus.
        let modulus = cyclotomic(self.order).to_vec();
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            debug_assert!(!r1.is_empty(), "cyclotomic modulus is irreducible");
        }
        let c = r1[0].recip();
        let inv: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self {
            order: self.order,
            coeffs: reduce_mod(inv, self.order),
        }
        .normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn arith(&self, op: ArithOp, other: &Self) -> Result<Self, ScalarError> {
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self.checked_div(other)?,
        })
    }

    pub fn pow(&self, exp: i64) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `Tr(self) / [Q(zeta_n):Q]`, which does not depend on the conductor used.
    fn normalized_trace(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = self.order / (k as u32).gcd(&self.order).max(1);
            let m = if k == 0 { 1 } else { m };
            let mu = mobius(m);
            if mu != 0 {
                acc += c * BigRational::new(BigInt::from(mu), BigInt::from(euler_phi(m) as u64));
            }
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.order == 1 {
            self.coeffs[0].hash(state);
        } else {
            self.normalized_trace().hash(state);
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.order == 1 && rhs.order == 1 {
            return Scalar::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (n, mut a, b) = self.common(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Scalar { order: n, coeffs: a }.normalized()
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.order == 1 && rhs.order == 1 {
            return Scalar::from_rational(&self.coeffs[0] - &rhs.coeffs[0]);
        }
        let (n, mut a, b) = self.common(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        Scalar { order: n, coeffs: a }.normalized()
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.order == 1 && rhs.order == 1 {
            return Scalar::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if rhs.order == 1 || self.order == 1 {
            let (r, s) = if rhs.order == 1 {
                (&rhs.coeffs[0], self)
            } else {
                (&self.coeffs[0], rhs)
            };
            if r.is_zero() {
                return Scalar::zero();
            }
            return Scalar {
                order: s.order,
                coeffs: s.coeffs.iter().map(|c| c * r).collect(),
            };
        }
        let (n, a, b) = self.common(rhs);
        Scalar {
            order: n,
            coeffs: reduce_mod(poly_mul(&a, &b), n),
        }
        .normalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*z")?,
                _ => write!(f, "{a}*z^{k}")?,
            }
        }
        write!(f, "@{}", self.order)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ScalarError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let cleaned: String = input
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(err("empty string"));
        }
        let (body, order) = match cleaned.split_once('@') {
            Some((b, n)) => {
                let n: u32 = n.parse().map_err(|_| err("conductor is not a positive integer"))?;
                if n == 0 {
                    return Err(err("conductor must be positive"));
                }
                (b.to_string(), n)
            }
            None => (cleaned.clone(), 1),
        };
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in body.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        terms.push((negative, current));
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coef, power) = if let Some(idx) = term.find('z') {
                let coef_part = &term[..idx];
                let rest = &term[idx + 1..];
                let coef = if coef_part.is_empty() {
                    BigRational::one()
                } else {
                    let c = coef_part
                        .strip_suffix('*')
                        .ok_or_else(|| err("expected '*' before z"))?;
                    parse_rational(c).ok_or_else(|| err("bad coefficient"))?
                };
                let power = if rest.is_empty() {
                    1usize
                } else {
                    rest.strip_prefix('^')
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(|| err("bad exponent"))?
                };
                if order == 1 {
                    return Err(err("z used without a conductor suffix @n"));
                }
                (coef, power)
            } else {
                (parse_rational(&term).ok_or_else(|| err("bad rational"))?, 0)
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            if neg {
                coeffs[power] -= coef;
            } else {
                coeffs[power] += coef;
            }
        }
        Ok(Scalar::from_power_coeffs(order, coeffs))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
