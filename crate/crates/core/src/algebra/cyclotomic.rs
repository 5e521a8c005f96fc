//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CyclotomicNumber`] of order `N` is stored in the power basis
//! `1, ζ, ..., ζ^{φ(N)-1}` reduced modulo the `N`-th cyclotomic polynomial,
//! with integer numerators over one positive common denominator. The
//! representation is canonical for a fixed order: numerators and
//! denominator are coprime as a family and the denominator is positive.
//! Binary operations on numbers of different orders embed both operands
//! into `Q(ζ_lcm)`; equality does the same, so `ζ_4^2 == -1` holds even
//! though the two sides are stored at orders 4 and 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use parking_lot::RwLock;

use super::Rational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().get(&n) {
        return Arc::clone(p);
    }
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let div = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &div);
    }
    let poly = Arc::new(num);
    cache.write().insert(n, Arc::clone(&poly));
    poly
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = r[i + db];
        quot[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    quot
}

/// An element of `Q(ζ_order)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self { order: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Self { order: 1, num: vec![k.into()], den: BigInt::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self { order: 1, num: vec![r.numer().clone()], den: r.denom().clone() }.normalized()
    }

    /// `ζ_order^k` (negative `k` allowed).
    pub fn zeta_power(order: u32, k: i64) -> Self {
        let mut coeffs = vec![0i64; order as usize];
        coeffs[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_root_multiplicities(order, &coeffs)
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_power(order, 1)
    }

    /// `Σ_t m_t ζ_order^t` for integer weights `m_0, ..., m_{order-1}`.
    pub fn from_root_multiplicities(order: u32, weights: &[i64]) -> Self {
        assert_eq!(weights.len(), order as usize);
        let raw: Vec<BigInt> = weights.iter().map(|&w| BigInt::from(w)).collect();
        Self::from_raw(order, raw, BigInt::one())
    }

    /// Builds from an unreduced coefficient vector of any length.
    fn from_raw(order: u32, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        for i in (d..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[i]);
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj != 0 {
                    raw[i - d + j] -= &c * pj;
                }
            }
        }
        raw.resize(d, BigInt::zero());
        Self { order, num: raw, den }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinate `i` as a rational.
    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Option<Self> {
        if coeffs.len() != euler_phi(order) as usize {
            return None;
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Some(Self { order, num, den }.normalized())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The same number expressed in `Q(ζ_target)`; `target` must be a
    /// multiple of the current order.
    pub fn embed(&self, target: u32) -> Self {
        assert!(target % self.order == 0, "cannot embed order {} into {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::from_raw(target, raw, self.den.clone())
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.order, other.order);
        (self.embed(m), other.embed(m))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut raw = vec![BigInt::zero(); n.max(1)];
        for (i, c) in self.num.iter().enumerate() {
            raw[(n - i) % n] += c;
        }
        Self::from_raw(self.order, raw, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The value as a rational if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        let first = self.num.first().cloned().unwrap_or_default();
        let constant = Self::from_rational(&Rational::new(first, self.den.clone()));
        (constant == *self).then(|| Rational::new(constant.num[0].clone(), constant.den))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|k| k.to_i64())
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            order: self.order,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        }
        .normalized()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self { order: self.order, num: self.num.iter().map(|c| c * k).collect(), den: self.den.clone() }
            .normalized()
    }

    /// Approximate complex value `(re, im)` under `ζ ↦ exp(2πi/N)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / self.order as f64;
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    /// Total order on canonical representations: first by order, then by
    /// coordinates. Only meaningful for numbers stored at a common order.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let lhs = a * &other.den;
                let rhs = b * &self.den;
                match lhs.cmp(&rhs) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Textual form used in cache files: `order:c0,c1,...` with each
    /// coordinate as `num/den`.
    pub fn to_cache_string(&self) -> String {
        let coords: Vec<String> = self.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
        format!("{}:{}", self.order, coords.join(","))
    }

    pub fn parse_cache_string(s: &str) -> Option<Self> {
        let (order, rest) = s.split_once(':')?;
        let order: u32 = order.parse().ok().filter(|&o| o >= 1)?;
        let coeffs: Option<Vec<Rational>> = rest
            .split(',')
            .map(|c| {
                let (n, d) = c.split_once('/')?;
                let d: BigInt = d.parse().ok()?;
                if !d.is_positive() {
                    return None;
                }
                Some(Rational::new(n.parse().ok()?, d))
            })
            .collect();
        Self::from_coeffs(order, &coeffs?)
    }
}

impl Default for CyclotomicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.aligned(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = Rational::new(c.clone(), self.den.clone());
            terms.push(match i {
                0 => format!("{coeff}"),
                1 => format!("{coeff}*E({})", self.order),
                _ => format!("{coeff}*E({})^{i}", self.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn add_same(a: &CyclotomicNumber, b: &CyclotomicNumber, sign: i64) -> CyclotomicNumber {
    let num = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| {
            let l = x * &b.den;
            let r = y * &a.den;
            if sign > 0 {
                l + r
            } else {
                l - r
            }
        })
        .collect();
    CyclotomicNumber { order: a.order, num, den: &a.den * &b.den }.normalized()
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.order == rhs.order {
            return add_same(self, rhs, 1);
        }
        let (a, b) = self.aligned(rhs);
        add_same(&a, &b, 1)
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.order == rhs.order {
            return add_same(self, rhs, -1);
        }
        let (a, b) = self.aligned(rhs);
        add_same(&a, &b, -1)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

fn mul_same(a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
    let mut raw = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
    for (i, x) in a.num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if !y.is_zero() {
                raw[i + j] += x * y;
            }
        }
    }
    CyclotomicNumber::from_raw(a.order, raw, &a.den * &b.den)
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.is_zero() || rhs.is_zero() {
            return CyclotomicNumber::zero();
        }
        if self.order == rhs.order {
            return mul_same(self, rhs);
        }
        let (a, b) = self.aligned(rhs);
        mul_same(&a, &b)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = CyclotomicNumber>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn zeta_four_squared_is_minus_one() {
        let i = z(4, 1);
        assert_eq!(&i * &i, CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn conjugate_of_zeta_three() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
        assert!((&z(3, 1) + &z(3, 2)).is_real());
        assert_eq!(&z(3, 1) + &z(3, 2), CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn imaginary_combination_in_q_zeta_five() {
        let x = &z(5, 1) - &z(5, 4);
        // numeric sanity: ζ - ζ^{-1} = 2i sin(2π/5)
        let (re, im) = x.to_complex();
        assert!(re.abs() < 1e-12);
        assert!((im - 2.0 * (2.0 * std::f64::consts::PI / 5.0).sin()).abs() < 1e-12);
        assert!(!x.is_real());
    }

    #[test]
    fn mixed_orders_compare_after_embedding() {
        assert_eq!(z(6, 3), CyclotomicNumber::from_integer(-1));
        assert_eq!(z(12, 4), z(3, 1));
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
        assert_ne!(z(12, 1), z(12, 5));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in 2..30 {
            let s: CyclotomicNumber = (0..n as i64).map(|k| z(n, k)).sum();
            assert!(s.is_zero(), "n={n}");
        }
    }

    #[test]
    fn rational_round_trip() {
        let r = Rational::new(BigInt::from(-6), BigInt::from(4));
        let c = CyclotomicNumber::from_rational(&r);
        assert_eq!(c.to_rational(), Some(Rational::new(BigInt::from(-3), BigInt::from(2))));
        assert_eq!(c.to_integer(), None);
        assert_eq!(z(5, 1).to_rational(), None);
        let s = (&z(7, 2) + &c).scale_int(3);
        assert_eq!(CyclotomicNumber::parse_cache_string(&s.to_cache_string()).unwrap(), s);
    }
}
