//! The free PSH-algebra on a set of cuspidal labels: `R = ⊗_ρ R(ρ)`, each
//! factor a copy of the ring of symmetric functions with Schur basis,
//! graded by `deg ρ · |λ|`.

pub mod crosscheck;
pub mod lr;
pub mod selfcheck;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use crosscheck::{crosscheck_against_group, CrosscheckReport};
pub use lr::{lr_coefficient, lr_coproduct, lr_product};
pub use selfcheck::{psh_selfcheck, SelfcheckReport};

use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CuspidalLabel {
    pub id: u32,
    pub degree: usize,
    pub dual_id: u32,
}

impl CuspidalLabel {
    pub fn self_dual(id: u32, degree: usize) -> Self {
        Self { id, degree, dual_id: id }
    }

    /// A pair `(ρ, ρ*)` with `ρ ≠ ρ*`.
    pub fn dual_pair(id: u32, dual_id: u32, degree: usize) -> (Self, Self) {
        (Self { id, degree, dual_id }, Self { id: dual_id, degree, dual_id: id })
    }

    pub fn dual(&self) -> Self {
        Self { id: self.dual_id, degree: self.degree, dual_id: self.id }
    }

    pub fn is_self_dual(&self) -> bool {
        self.id == self.dual_id
    }
}

impl fmt::Display for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ρ{}", self.id)
    }
}

/// A finitely supported map from labels to nonempty partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct PSHBasisElement(BTreeMap<CuspidalLabel, Partition>);

impl PSHBasisElement {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(parts: impl IntoIterator<Item = (CuspidalLabel, Partition)>) -> Self {
        let mut map = BTreeMap::new();
        for (l, p) in parts {
            if !p.is_empty() {
                map.insert(l, p);
            }
        }
        Self(map)
    }

    pub fn primary(label: CuspidalLabel, lambda: Partition) -> Self {
        Self::new([(label, lambda)])
    }

    pub fn support(&self) -> &BTreeMap<CuspidalLabel, Partition> {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(l, p)| l.degree * p.size()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_primary(&self) -> bool {
        self.0.len() == 1
    }
}

impl fmt::Display for PSHBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(l, p)| format!("{l}:{p}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// An integer combination of basis elements with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PSHElement(BTreeMap<PSHBasisElement, i64>);

impl PSHElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: PSHBasisElement) -> Self {
        Self(BTreeMap::from([(b, 1)]))
    }

    pub fn terms(&self) -> &BTreeMap<PSHBasisElement, i64> {
        &self.0
    }

    pub fn coeff(&self, b: &PSHBasisElement) -> i64 {
        self.0.get(b).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, b: PSHBasisElement, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(b.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&b);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, &c) in &other.0 {
            out.add_term(b.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (b, &c) in &self.0 {
            out.add_term(b.clone(), c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.values().all(|&c| c > 0)
    }
}

impl FromIterator<(PSHBasisElement, i64)> for PSHElement {
    fn from_iter<I: IntoIterator<Item = (PSHBasisElement, i64)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

/// An element of `R ⊗ R`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PSHTensor(BTreeMap<(PSHBasisElement, PSHBasisElement), i64>);

impl PSHTensor {
    pub fn terms(&self) -> &BTreeMap<(PSHBasisElement, PSHBasisElement), i64> {
        &self.0
    }

    pub fn coeff(&self, a: &PSHBasisElement, b: &PSHBasisElement) -> i64 {
        self.0.get(&(a.clone(), b.clone())).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, a: PSHBasisElement, b: PSHBasisElement, c: i64) {
        if c == 0 {
            return;
        }
        let key = (a, b);
        let e = self.0.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&key);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.0.values().all(|&c| c > 0)
    }

    /// Product in `R ⊗ R`: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((a, b), &x) in &self.0 {
            for ((c, d), &y) in &other.0 {
                let left = multiply_basis(a, c);
                let right = multiply_basis(b, d);
                for (l, &u) in left.terms() {
                    for (r, &v) in right.terms() {
                        out.add_term(l.clone(), r.clone(), x * y * u * v);
                    }
                }
            }
        }
        out
    }
}

/// Product of two basis elements: Littlewood–Richardson on shared labels,
/// juxtaposition across distinct labels.
pub fn multiply_basis(a: &PSHBasisElement, b: &PSHBasisElement) -> PSHElement {
    let mut labels: Vec<CuspidalLabel> = a.0.keys().chain(b.0.keys()).copied().collect();
    labels.sort();
    labels.dedup();
    let empty = Partition::empty();
    let mut partial: Vec<(Vec<(CuspidalLabel, Partition)>, i64)> = vec![(Vec::new(), 1)];
    for l in labels {
        let x = a.0.get(&l).unwrap_or(&empty);
        let y = b.0.get(&l).unwrap_or(&empty);
        let prod = lr_product(x, y);
        partial = partial
            .into_iter()
            .flat_map(|(parts, c)| {
                prod.iter().map(move |(lam, &k)| {
                    let mut p = parts.clone();
                    p.push((l, lam.clone()));
                    (p, c * k as i64)
                })
            })
            .collect();
    }
    partial.into_iter().map(|(parts, c)| (PSHBasisElement::new(parts), c)).collect()
}

pub fn psh_multiply(a: &PSHElement, b: &PSHElement) -> PSHElement {
    let mut out = PSHElement::zero();
    for (x, &c) in &a.0 {
        for (y, &d) in &b.0 {
            for (z, &k) in multiply_basis(x, y).terms() {
                out.add_term(z.clone(), c * d * k);
            }
        }
    }
    out
}

/// Coproduct of a basis element, the tensor of the per-label coproducts.
pub fn comultiply_basis(a: &PSHBasisElement) -> PSHTensor {
    let mut partial: Vec<(Vec<(CuspidalLabel, Partition)>, Vec<(CuspidalLabel, Partition)>, i64)> =
        vec![(Vec::new(), Vec::new(), 1)];
    for (&l, lam) in &a.0 {
        let co = lr_coproduct(lam);
        partial = partial
            .into_iter()
            .flat_map(|(left, right, c)| {
                co.iter().map(move |((mu, nu), &k)| {
                    let mut x = left.clone();
                    let mut y = right.clone();
                    x.push((l, mu.clone()));
                    y.push((l, nu.clone()));
                    (x, y, c * k as i64)
                })
            })
            .collect();
    }
    let mut out = PSHTensor::default();
    for (x, y, c) in partial {
        out.add_term(PSHBasisElement::new(x), PSHBasisElement::new(y), c);
    }
    out
}

pub fn psh_comultiply(a: &PSHElement) -> PSHTensor {
    let mut out = PSHTensor::default();
    for (x, &c) in &a.0 {
        for ((l, r), &k) in comultiply_basis(x).terms() {
            out.add_term(l.clone(), r.clone(), c * k);
        }
    }
    out
}

pub fn dual_basis(b: &PSHBasisElement) -> PSHBasisElement {
    PSHBasisElement::new(b.0.iter().map(|(l, p)| (l.dual(), p.clone())))
}

/// `ρ ↦ ρ*` on labels, partitions fixed.
pub fn psh_dual(a: &PSHElement) -> PSHElement {
    a.0.iter().map(|(b, &c)| (dual_basis(b), c)).collect()
}

/// The primary factors `{ρ : λ_ρ}` of a basis element.
pub fn primary_decomposition(b: &PSHBasisElement) -> Vec<(CuspidalLabel, Partition)> {
    b.0.iter().map(|(l, p)| (*l, p.clone())).collect()
}

/// The pairing making the basis orthonormal.
pub fn pairing(a: &PSHElement, b: &PSHElement) -> i64 {
    a.0.iter().map(|(x, &c)| c * b.coeff(x)).sum()
}

/// All basis elements of total degree `m` over the given labels.
pub fn basis_of_degree(labels: &[CuspidalLabel], m: usize) -> Vec<PSHBasisElement> {
    fn rec(
        labels: &[CuspidalLabel],
        i: usize,
        remaining: usize,
        cur: &mut Vec<(CuspidalLabel, Partition)>,
        out: &mut Vec<PSHBasisElement>,
    ) {
        if remaining == 0 {
            out.push(PSHBasisElement::new(cur.clone()));
            return;
        }
        if i == labels.len() {
            return;
        }
        rec(labels, i + 1, remaining, cur, out);
        let d = labels[i].degree;
        for k in 1..=remaining / d {
            for p in Partition::all(k) {
                cur.push((labels[i], p));
                rec(labels, i + 1, remaining - d * k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(labels, 0, m, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn rho() -> CuspidalLabel {
        CuspidalLabel::self_dual(0, 1)
    }

    #[test]
    fn rho_squared() {
        let x = PSHElement::basis(PSHBasisElement::primary(rho(), p(&[1])));
        let sq = psh_multiply(&x, &x);
        assert_eq!(sq.terms().len(), 2);
        assert_eq!(sq.coeff(&PSHBasisElement::primary(rho(), p(&[2]))), 1);
        assert_eq!(sq.coeff(&PSHBasisElement::primary(rho(), p(&[1, 1]))), 1);
    }

    #[test]
    fn distinct_labels_juxtapose() {
        let other = CuspidalLabel::self_dual(1, 1);
        let a = PSHElement::basis(PSHBasisElement::primary(rho(), p(&[1])));
        let b = PSHElement::basis(PSHBasisElement::primary(other, p(&[1])));
        let prod = psh_multiply(&a, &b);
        assert_eq!(prod, PSHElement::basis(PSHBasisElement::new([(rho(), p(&[1])), (other, p(&[1]))])));
    }

    #[test]
    fn pieri_rule() {
        let a = PSHElement::basis(PSHBasisElement::primary(rho(), p(&[2])));
        let b = PSHElement::basis(PSHBasisElement::primary(rho(), p(&[1])));
        let prod = psh_multiply(&a, &b);
        assert_eq!(prod.terms().len(), 2);
        assert_eq!(prod.coeff(&PSHBasisElement::primary(rho(), p(&[3]))), 1);
        assert_eq!(prod.coeff(&PSHBasisElement::primary(rho(), p(&[2, 1]))), 1);
    }

    #[test]
    fn primitive_coproduct() {
        let x = PSHBasisElement::primary(rho(), p(&[1]));
        let co = comultiply_basis(&x);
        assert_eq!(co.terms().len(), 2);
        assert_eq!(co.coeff(&x, &PSHBasisElement::one()), 1);
        assert_eq!(co.coeff(&PSHBasisElement::one(), &x), 1);
    }

    #[test]
    fn adjointness_on_a_box_pair() {
        let a = PSHBasisElement::primary(rho(), p(&[1]));
        let c = PSHBasisElement::primary(rho(), p(&[2]));
        let ab = multiply_basis(&a, &a);
        assert_eq!(ab.coeff(&c), 1);
        assert_eq!(comultiply_basis(&c).coeff(&a, &a), 1);
    }

    #[test]
    fn dual_relabels() {
        let (s, t) = CuspidalLabel::dual_pair(3, 4, 1);
        let b = PSHBasisElement::new([(s, p(&[1])), (t, p(&[2]))]);
        let d = dual_basis(&b);
        assert_eq!(d, PSHBasisElement::new([(s, p(&[2])), (t, p(&[1]))]));
        let st = PSHBasisElement::primary(rho(), p(&[2, 1]));
        assert_eq!(dual_basis(&st), st);
    }

    #[test]
    fn primary_factors_reconstruct() {
        let other = CuspidalLabel::self_dual(1, 2);
        let b = PSHBasisElement::new([(rho(), p(&[1])), (other, p(&[3, 1]))]);
        let parts = primary_decomposition(&b);
        assert_eq!(parts, vec![(rho(), p(&[1])), (other, p(&[3, 1]))]);
        let prod = parts
            .into_iter()
            .fold(PSHElement::basis(PSHBasisElement::one()), |acc, (l, lam)| {
                psh_multiply(&acc, &PSHElement::basis(PSHBasisElement::primary(l, lam)))
            });
        assert_eq!(prod.coeff(&b), 1);
    }

    #[test]
    fn gl2_f3_basis_count() {
        let (a, b) = (CuspidalLabel::self_dual(0, 1), CuspidalLabel::self_dual(1, 1));
        let cusp2: Vec<CuspidalLabel> = (2..5).map(|i| CuspidalLabel::self_dual(i, 2)).collect();
        let mut labels = vec![a, b];
        labels.extend(cusp2);
        assert_eq!(basis_of_degree(&labels, 2).len(), 8);
        assert_eq!(basis_of_degree(&labels, 0), vec![PSHBasisElement::one()]);
    }
}
