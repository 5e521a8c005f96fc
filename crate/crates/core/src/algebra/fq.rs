//! Finite fields `F_q` for odd prime powers `q = p^f`.
//!
//! Elements are encoded as integers `0..q`: the element `c_0 + c_1 t + ... +
//! c_{f-1} t^{f-1}` of `F_p[t]/(modulus)` has index `c_0 + c_1 p + ... +
//! c_{f-1} p^{f-1}`. In particular `0` and `1` are the additive and
//! multiplicative identities and the prime subfield occupies `0..p`.
//!
//! Arithmetic goes through precomputed addition and multiplication tables,
//! which keeps the matrix code in [`crate::group`] allocation free.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly;
use crate::error::{Error, Result};

/// Largest field order accepted. Tables are `q * q` entries.
pub const MAX_FIELD_ORDER: u32 = 1024;

/// The finite field `F_q = F_p[t]/(modulus)`.
pub struct FqField {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqField")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut f) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

impl FqField {
    /// Builds `F_q`. The modulus for `f > 1` is the lexicographically least
    /// monic irreducible polynomial of degree `f` over `F_p`, comparing
    /// coefficient vectors from the constant term upwards.
    pub fn new(q: u32) -> Result<Arc<Self>> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        if p == 2 {
            return Err(Error::Domain("characteristic 2 is not supported".into()));
        }
        if q > MAX_FIELD_ORDER {
            return Err(Error::Domain(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            let prime = Self::from_modulus(p, 1, vec![0, 1]);
            poly::monic_irreducibles(&prime, f as usize)
                .into_iter()
                .next()
                .expect("irreducible polynomials exist in every degree")
        };
        Ok(Arc::new(Self::from_modulus(p, f, modulus)))
    }

    fn from_modulus(p: u32, f: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(f);
        let fu = f as usize;
        let digits = |mut x: u32| -> Vec<u32> {
            (0..fu)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let digit_table: Vec<Vec<u32>> = (0..q).map(digits).collect();
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let (da, db) = (&digit_table[a], &digit_table[b]);
                let s: Vec<u32> = da.iter().zip(db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&s);
                // schoolbook product followed by reduction mod the monic modulus
                let mut prod = vec![0u64; 2 * fu];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
                    }
                }
                for i in (fu..2 * fu).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for j in 0..fu {
                        let sub = c * modulus[j] as u64 % p as u64;
                        prod[i - fu + j] = (prod[i - fu + j] + p as u64 - sub) % p as u64;
                    }
                }
                let r: Vec<u32> = prod[..fu].iter().map(|&x| x as u32).collect();
                mul[a * qs + b] = encode(&r);
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        let mut field = Self { p, f, q, modulus, add, mul, neg, inv, primitive: 1 };
        field.primitive = (1..q)
            .find(|&g| field.multiplicative_order(g) == q - 1)
            .expect("multiplicative group is cyclic");
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus over `F_p`, coefficients from the constant term up.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    /// A generator of the cyclic group `F_q^*`.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn multiplicative_order(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Absolute trace `F_q -> F_p`, returned as a residue in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.f {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        debug_assert!(acc < self.p);
        acc
    }

    /// Coefficients over `F_p` of an encoded element.
    pub fn coeffs(&self, mut a: u32) -> Vec<u32> {
        (0..self.f)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Domain(format!("invalid coefficient vector {coeffs:?}")));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    /// Wraps an encoded value as a [`FieldElement`].
    pub fn element(self: &Arc<Self>, index: u32) -> FieldElement {
        assert!(index < self.q, "element index {index} out of range");
        FieldElement { field: Arc::clone(self), index }
    }

    pub fn element_from_coeffs(self: &Arc<Self>, coeffs: &[u32]) -> Result<FieldElement> {
        let index = self.encode(coeffs)?;
        Ok(self.element(index))
    }
}

/// An element of a finite field, carrying a reference to its field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FqField>,
    index: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let i = self.field.inv(self.index).ok_or_else(|| Error::Domain("division by zero in F_q".into()))?;
        Ok(self.with(i))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.index, e))
    }

    fn with(&self, index: u32) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), index }
    }

    fn same_field(&self, other: &FieldElement) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "operands from different fields"
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}({:?})", self.field.q, self.coeffs())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        self.with(self.field.add(self.index, rhs.index))
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        self.with(self.field.sub(self.index, rhs.index))
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        self.with(self.field.mul(self.index, rhs.index))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.index))
    }
}
