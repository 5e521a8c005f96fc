//! Conjugacy classes of `GL_n(F_q)` via rational canonical form.
//!
//! A class is labelled by the multiset of pairs (monic irreducible `f ≠ x`,
//! partition `λ`) with `Σ deg(f)|λ| = n`: the elementary divisors of a
//! matrix in the class are the `f^{λ_i}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::matrix::Matrix;
use super::GroupSpec;
use crate::algebra::{poly, FqField};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// One elementary-divisor family: an irreducible polynomial with a partition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimaryPart {
    /// Monic irreducible, coefficients from the constant term up.
    pub poly: Vec<u32>,
    pub partition: Partition,
}

impl PrimaryPart {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
}

impl Ord for PrimaryPart {
    fn cmp(&self, other: &Self) -> Ordering {
        self.poly
            .len()
            .cmp(&other.poly.len())
            .then_with(|| self.poly.cmp(&other.poly))
            .then_with(|| self.partition.cmp(&other.partition))
    }
}

impl PartialOrd for PrimaryPart {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical label of a conjugacy class: primary parts sorted by
/// (degree, coefficients, partition).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConjugacyClassLabel(Vec<PrimaryPart>);

impl ConjugacyClassLabel {
    pub fn new(mut parts: Vec<PrimaryPart>) -> Self {
        parts.sort();
        Self(parts)
    }

    pub fn parts(&self) -> &[PrimaryPart] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|p| p.degree() * p.partition.size()).sum()
    }

    /// Compact text form: `c0.c1..:λ1.λ2;...`, `e` for the empty label.
    pub fn to_compact(&self) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|p| {
                let coeffs: Vec<String> = p.poly.iter().map(u32::to_string).collect();
                format!("{}:{}", coeffs.join("."), p.partition.to_compact())
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_compact(s: &str) -> Option<Self> {
        if s == "e" {
            return Some(Self::default());
        }
        let parts: Option<Vec<PrimaryPart>> = s
            .split(';')
            .map(|part| {
                let (c, l) = part.split_once(':')?;
                let poly: Option<Vec<u32>> = c.split('.').map(|x| x.parse().ok()).collect();
                Some(PrimaryPart { poly: poly?, partition: Partition::parse_compact(l)? })
            })
            .collect();
        Some(Self::new(parts?))
    }
}

impl fmt::Debug for ConjugacyClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl fmt::Display for ConjugacyClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|p| format!("{}^{}", poly_to_string(&p.poly), p.partition))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn poly_to_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coeff = if a == 1 && i > 0 { String::new() } else { format!("[{a}]") };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    terms.join("+")
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub label: ConjugacyClassLabel,
    pub representative: Matrix,
    pub size: u128,
    pub centralizer_order: u128,
    /// Multiplicative order of the representative.
    pub element_order: u64,
}

/// Order of the centralizer of a unipotent-type block `λ` over `F_Q`:
/// `Q^{Σ λ'_i^2} Π_i Π_{k=1}^{m_i} (1 - Q^{-k})`.
pub fn block_centralizer_order(partition: &Partition, big_q: u128) -> u128 {
    let conj = partition.conjugate();
    let sq: u32 = conj.parts().iter().map(|&c| (c * c) as u32).sum();
    let mut shift = 0u32;
    let mut prod: u128 = 1;
    for &m in &partition.multiplicities() {
        for k in 1..=m as u32 {
            shift += k;
            prod *= big_q.pow(k) - 1;
        }
    }
    big_q.pow(sq - shift) * prod
}

/// `GL_n(F_q)` together with its canonically ordered classes.
pub struct GeneralLinearGroup {
    spec: GroupSpec,
    irreducibles: Vec<Vec<u32>>,
    classes: Vec<ClassData>,
    index: HashMap<ConjugacyClassLabel, usize>,
    exponent: u64,
}

impl fmt::Debug for GeneralLinearGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GL_{}(F_{})", self.spec.n, self.spec.q())
    }
}

impl GeneralLinearGroup {
    /// Enumerates the classes analytically from rational canonical forms.
    pub fn new(spec: GroupSpec) -> Self {
        let f = spec.field().clone();
        let n = spec.n;
        let irreducibles: Vec<Vec<u32>> = (1..=n.max(1))
            .flat_map(|d| poly::monic_irreducibles(&f, d))
            .filter(|p| p != &[0, 1])
            .collect();
        let mut labels = Vec::new();
        enumerate_labels(&irreducibles, 0, n, &mut Vec::new(), &mut labels);
        labels.sort();
        let order = spec.order();
        let q = f.q() as u128;
        let mut classes: Vec<ClassData> = labels
            .into_iter()
            .map(|label| {
                let centralizer_order: u128 = label
                    .parts()
                    .iter()
                    .map(|p| block_centralizer_order(&p.partition, q.pow(p.degree() as u32)))
                    .product();
                let representative = representative(&label, &f);
                ClassData {
                    size: order / centralizer_order,
                    centralizer_order,
                    representative,
                    label,
                    element_order: 0,
                }
            })
            .collect();
        for c in &mut classes {
            c.element_order = element_order(&c.representative, &f);
        }
        let exponent = classes.iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.element_order));
        let index = classes.iter().enumerate().map(|(i, c)| (c.label.clone(), i)).collect();
        Self { spec, irreducibles, classes, index, exponent }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn field(&self) -> &Arc<FqField> {
        self.spec.field()
    }

    pub fn order(&self) -> u128 {
        self.spec.order()
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn index_of_label(&self, label: &ConjugacyClassLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index of the identity class.
    pub fn identity_class(&self) -> usize {
        self.index_of(&Matrix::identity(self.n())).expect("identity is invertible")
    }

    /// Conjugacy class label of an invertible matrix.
    pub fn class_of(&self, m: &Matrix) -> Result<ConjugacyClassLabel> {
        class_label(m, &self.irreducibles, self.field())
    }

    pub fn index_of(&self, m: &Matrix) -> Result<usize> {
        let label = self.class_of(m)?;
        self.index_of_label(&label)
            .ok_or_else(|| Error::Inconsistent(format!("label {label:?} not among enumerated classes")))
    }

    /// Class index of `g^s` for every `s in 0..element_order(g)`, per class.
    pub fn power_maps(&self) -> Result<Vec<Vec<usize>>> {
        let f = self.field();
        self.classes
            .iter()
            .map(|c| {
                let mut out = Vec::with_capacity(c.element_order as usize);
                let mut x = Matrix::identity(self.n());
                for _ in 0..c.element_order {
                    out.push(self.index_of(&x)?);
                    x = x.mul(&c.representative, f);
                }
                Ok(out)
            })
            .collect()
    }

    /// Class index of the inverse of each class.
    pub fn inverse_classes(&self) -> Result<Vec<usize>> {
        let f = self.field();
        self.classes
            .iter()
            .map(|c| self.index_of(&c.representative.inverse(f).expect("representatives are invertible")))
            .collect()
    }

    /// All elements of a class, by orbit search under conjugation by the
    /// standard generators.
    pub fn class_elements(&self, class: usize) -> Vec<Matrix> {
        let f = self.field();
        let gens = super::generators(self.n(), f);
        let pairs: Vec<(Matrix, Matrix)> = gens.into_iter().map(|g| {
            let gi = g.inverse(f).unwrap();
            (g, gi)
        }).collect();
        let start = self.classes[class].representative.clone();
        let mut seen = std::collections::HashSet::new();
        seen.insert(start.clone());
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head].clone();
            head += 1;
            for (g, gi) in &pairs {
                let y = x.conjugate_by(g, gi, f);
                if seen.insert(y.clone()) {
                    orbit.push(y);
                }
            }
        }
        orbit
    }
}

fn enumerate_labels(
    irr: &[Vec<u32>],
    start: usize,
    remaining: usize,
    cur: &mut Vec<PrimaryPart>,
    out: &mut Vec<ConjugacyClassLabel>,
) {
    if remaining == 0 {
        out.push(ConjugacyClassLabel::new(cur.clone()));
        return;
    }
    for j in start..irr.len() {
        let d = irr[j].len() - 1;
        for k in 1..=remaining / d {
            for partition in Partition::all(k) {
                cur.push(PrimaryPart { poly: irr[j].clone(), partition });
                enumerate_labels(irr, j + 1, remaining - d * k, cur, out);
                cur.pop();
            }
        }
    }
}

/// Block diagonal sum of companion matrices of the elementary divisors.
pub fn representative(label: &ConjugacyClassLabel, f: &FqField) -> Matrix {
    let blocks: Vec<Matrix> = label
        .parts()
        .iter()
        .flat_map(|p| p.partition.parts().iter().map(move |&k| Matrix::companion(&poly::pow(f, &p.poly, k), f)))
        .collect();
    Matrix::block_diag(&blocks)
}

pub fn element_order(m: &Matrix, f: &FqField) -> u64 {
    let mut x = m.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.mul(m, f);
        k += 1;
    }
    k
}

/// Label from kernel dimensions: `dim ker f(M)^k = deg f · Σ_i min(λ_i, k)`.
fn class_label(m: &Matrix, irreducibles: &[Vec<u32>], f: &FqField) -> Result<ConjugacyClassLabel> {
    let n = m.n();
    if !m.is_invertible(f) {
        return Err(Error::Domain("singular matrix has no class in GL_n".into()));
    }
    let mut remaining = n;
    let mut parts = Vec::new();
    let mut cp = m.charpoly(f);
    for p in irreducibles {
        if remaining == 0 {
            break;
        }
        let d = p.len() - 1;
        if d > remaining || !poly::rem(f, &cp, p).is_empty() {
            continue;
        }
        let base = m.eval_poly(p, f);
        let mut nullity = n - base.rank(f);
        if nullity == 0 {
            continue;
        }
        let mut conj = Vec::new();
        let mut prev = 0;
        let mut power = base.clone();
        while nullity > prev {
            conj.push((nullity - prev) / d);
            prev = nullity;
            power = power.mul(&base, f);
            nullity = n - power.rank(f);
        }
        remaining -= prev;
        for _ in 0..prev / d {
            cp = poly::div_exact(f, &cp, p);
        }
        parts.push(PrimaryPart { poly: p.clone(), partition: Partition::new(conj).conjugate() });
    }
    if remaining != 0 {
        return Err(Error::Inconsistent("primary decomposition does not exhaust the space".into()));
    }
    Ok(ConjugacyClassLabel::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(n: usize, q: u32) -> GeneralLinearGroup {
        GeneralLinearGroup::new(GroupSpec::new(n, q).unwrap())
    }

    #[test]
    fn centralizer_formula_small_cases() {
        let q = 3u128;
        assert_eq!(block_centralizer_order(&Partition::row(1), q), 2);
        assert_eq!(block_centralizer_order(&Partition::row(2), q), 6);
        assert_eq!(block_centralizer_order(&Partition::column(2), q), 48);
    }

    #[test]
    fn gl2_f3_has_eight_classes() {
        let g = gl(2, 3);
        assert_eq!(g.num_classes(), 8);
        assert_eq!(g.classes().iter().map(|c| c.size).sum::<u128>(), 48);
    }

    #[test]
    fn identity_and_diagonal_labels() {
        let g = gl(2, 3);
        let id = g.class_of(&Matrix::identity(2)).unwrap();
        assert_eq!(id.to_compact(), "2.1:1.1");
        let d = g.class_of(&Matrix::diagonal(&[1, 2])).unwrap();
        // x + 1 = [1,1] sorts before x - 1 = x + 2 = [2,1]
        assert_eq!(d.to_compact(), "1.1:1;2.1:1");
        let jordan = g.class_of(&Matrix::from_rows(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(jordan.to_compact(), "2.1:2");
        assert!(g.class_of(&Matrix::zero(2)).is_err());
    }

    #[test]
    fn representatives_have_their_labels() {
        for (n, q) in [(2, 3), (2, 5), (3, 3), (2, 9)] {
            let g = gl(n, q);
            for c in g.classes() {
                assert_eq!(g.class_of(&c.representative).unwrap(), c.label);
                assert_eq!(c.size * c.centralizer_order, g.order());
            }
        }
    }

    #[test]
    fn compact_label_round_trip() {
        let g = gl(3, 3);
        for c in g.classes() {
            assert_eq!(ConjugacyClassLabel::parse_compact(&c.label.to_compact()).unwrap(), c.label);
        }
    }
}
