//! Exact irreducible character tables and class functions.

pub mod cache;
mod dixon;
pub mod parabolic;

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

pub use dixon::build_character_table;
pub use parabolic::{Family, ParabolicData};

use crate::algebra::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::group::{group_order, ClassData, GeneralLinearGroup, GroupSpec};

/// Explicit size limits. Exceeding one is an error, never a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_rank: usize,
    pub max_group_order: u128,
    /// Largest unipotent radical enumerated for restriction or Whittaker sums.
    pub max_unipotent: u128,
    /// Upper bound for the splitting prime searched by the table builder.
    pub max_prime: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_rank: 3, max_group_order: group_order(3, 7), max_unipotent: 1 << 20, max_prime: 1 << 31 }
    }
}

impl Budget {
    /// Also admits `GL_4(F_3)`.
    pub fn stretch() -> Self {
        Self { max_rank: 4, max_group_order: group_order(4, 3), ..Self::default() }
    }

    pub fn check_group(&self, spec: &GroupSpec) -> Result<()> {
        if spec.n > self.max_rank {
            return Err(Error::Budget(format!("rank {} exceeds the configured maximum {}", spec.n, self.max_rank)));
        }
        if spec.order() > self.max_group_order {
            return Err(Error::Budget(format!(
                "|GL_{}(F_{})| = {} exceeds the configured maximum {}",
                spec.n,
                spec.q(),
                spec.order(),
                self.max_group_order
            )));
        }
        Ok(())
    }

    pub fn check_unipotent(&self, size: u128) -> Result<()> {
        if size > self.max_unipotent {
            return Err(Error::Budget(format!("unipotent group of order {size} exceeds {}", self.max_unipotent)));
        }
        Ok(())
    }
}

/// A complex-valued class function on `L = Π GL_{n_i}(F_q)`; the domain
/// lists the ranks `n_i` (a single entry for `GL_n` itself). Values are
/// indexed by the canonical (flattened) class order of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub domain: Vec<usize>,
    pub values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(domain: Vec<usize>, values: Vec<CyclotomicNumber>) -> Self {
        Self { domain, values }
    }

    pub fn on_group(n: usize, values: Vec<CyclotomicNumber>) -> Self {
        Self { domain: vec![n], values }
    }

    pub fn zero_like(&self) -> Self {
        Self { domain: self.domain.clone(), values: vec![CyclotomicNumber::zero(); self.values.len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn conj(&self) -> Self {
        Self { domain: self.domain.clone(), values: self.values.iter().map(CyclotomicNumber::conj).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { domain: self.domain.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { domain: self.domain.clone(), values })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self { domain: self.domain.clone(), values: self.values.iter().map(|v| v.scale_int(k)).collect() }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain || self.values.len() != other.values.len() {
            return Err(Error::Domain(format!(
                "class functions on different domains {:?} and {:?}",
                self.domain, other.domain
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleCharacter {
    pub values: Vec<CyclotomicNumber>,
    pub degree: u64,
}

impl IrreducibleCharacter {
    pub fn is_real(&self) -> bool {
        self.values.iter().all(CyclotomicNumber::is_real)
    }
}

/// `(1/|G|) Σ_c |c| f(c) conj(g(c))`.
pub fn weighted_inner_product(
    sizes: &[u128],
    order: u128,
    f: &[CyclotomicNumber],
    g: &[CyclotomicNumber],
) -> Result<CyclotomicNumber> {
    if f.len() != sizes.len() || g.len() != sizes.len() {
        return Err(Error::Domain("mismatched class lists in inner product".into()));
    }
    let sum: CyclotomicNumber = sizes
        .iter()
        .zip(f.iter().zip(g))
        .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
        .map(|(&s, (a, b))| (a * &b.conj()).scale(&Rational::from_integer(BigInt::from(s))))
        .sum();
    Ok(sum.scale(&Rational::new(BigInt::from(1), BigInt::from(order))))
}

/// An exact character table of `GL_n(F_q)` in canonical class order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<GeneralLinearGroup>,
    chars: Vec<IrreducibleCharacter>,
    splitting_prime: u64,
}

impl CharacterTable {
    /// Assembles and validates a table; characters are re-sorted by
    /// (degree, values).
    pub fn from_parts(
        group: Arc<GeneralLinearGroup>,
        mut chars: Vec<IrreducibleCharacter>,
        splitting_prime: u64,
    ) -> Result<Self> {
        chars.sort_by(|a, b| {
            a.degree.cmp(&b.degree).then_with(|| {
                a.values
                    .iter()
                    .zip(&b.values)
                    .map(|(x, y)| x.canonical_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        let table = Self { group, chars, splitting_prime };
        table.validate()?;
        Ok(table)
    }

    pub fn group(&self) -> &Arc<GeneralLinearGroup> {
        &self.group
    }

    pub fn spec(&self) -> &GroupSpec {
        self.group.spec()
    }

    pub fn classes(&self) -> &[ClassData] {
        self.group.classes()
    }

    pub fn chars(&self) -> &[IrreducibleCharacter] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }

    pub fn splitting_prime(&self) -> u64 {
        self.splitting_prime
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.chars.iter().map(|c| c.degree).collect()
    }

    pub fn class_sizes(&self) -> Vec<u128> {
        self.classes().iter().map(|c| c.size).collect()
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::on_group(self.group.n(), self.chars[i].values.clone())
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        self.chars
            .iter()
            .position(|c| c.values.iter().all(|v| *v == CyclotomicNumber::one()))
            .expect("the trivial character is present")
    }

    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<CyclotomicNumber> {
        if f.domain != [self.group.n()] || g.domain != [self.group.n()] {
            return Err(Error::Domain("class functions are not on this group".into()));
        }
        weighted_inner_product(&self.class_sizes(), self.group.order(), &f.values, &g.values)
    }

    /// Multiplicities `⟨f, χ⟩` of every irreducible; they must be integers.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        (0..self.len())
            .map(|i| {
                let ip = self.inner_product(f, &self.character(i))?;
                ip.to_i64().ok_or_else(|| Error::Inconsistent(format!("non-integral multiplicity {ip}")))
            })
            .collect()
    }

    /// Index of the row equal to the given values.
    pub fn find(&self, values: &[CyclotomicNumber]) -> Option<usize> {
        self.chars.iter().position(|c| c.values == values)
    }

    /// `π ↦ π*` as a permutation of row indices (complex conjugation).
    pub fn dual_permutation(&self) -> Result<Vec<usize>> {
        self.chars
            .iter()
            .map(|c| {
                let conj: Vec<CyclotomicNumber> = c.values.iter().map(CyclotomicNumber::conj).collect();
                self.find(&conj).ok_or_else(|| Error::Inconsistent("conjugate of a row is not a row".into()))
            })
            .collect()
    }

    /// Exact row and column orthogonality, `Σ deg² = |G|`, integrality and
    /// divisibility of degrees.
    pub fn validate(&self) -> Result<()> {
        let r = self.classes().len();
        if self.chars.len() != r {
            return Err(Error::Inconsistent(format!("{} characters for {r} classes", self.chars.len())));
        }
        let order = self.group.order();
        let id = self.group.identity_class();
        for (i, c) in self.chars.iter().enumerate() {
            if c.values.len() != r {
                return Err(Error::Inconsistent(format!("row {i} has {} values", c.values.len())));
            }
            if c.values[id] != CyclotomicNumber::from_integer(c.degree) || c.degree == 0 {
                return Err(Error::Inconsistent(format!("row {i}: value at identity is not its degree")));
            }
            if order % c.degree as u128 != 0 {
                return Err(Error::Inconsistent(format!("degree {} does not divide |G|", c.degree)));
            }
        }
        let sum_sq: u128 = self.chars.iter().map(|c| (c.degree as u128).pow(2)).sum();
        if sum_sq != order {
            return Err(Error::Inconsistent(format!("sum of squared degrees {sum_sq} != |G| = {order}")));
        }
        let sizes: Vec<BigInt> = self.classes().iter().map(|c| BigInt::from(c.size)).collect();
        let conj: Vec<Vec<CyclotomicNumber>> =
            self.chars.iter().map(|c| c.values.iter().map(CyclotomicNumber::conj).collect()).collect();
        let order_c = CyclotomicNumber::from_integer(BigInt::from(order));
        let rows_ok = (0..r).into_par_iter().all(|i| {
            (i..r).all(|j| {
                let s: CyclotomicNumber = (0..r)
                    .map(|k| (&self.chars[i].values[k] * &conj[j][k]).scale(&Rational::from_integer(sizes[k].clone())))
                    .sum();
                if i == j {
                    s == order_c
                } else {
                    s.is_zero()
                }
            })
        });
        if !rows_ok {
            return Err(Error::Inconsistent("row orthogonality fails".into()));
        }
        let cols_ok = (0..r).into_par_iter().all(|k| {
            (k..r).all(|l| {
                let s: CyclotomicNumber = (0..r).map(|i| &self.chars[i].values[k] * &conj[i][l]).sum();
                if k == l {
                    s == CyclotomicNumber::from_integer(BigInt::from(self.classes()[k].centralizer_order))
                } else {
                    s.is_zero()
                }
            })
        });
        if !cols_ok {
            return Err(Error::Inconsistent("column orthogonality fails".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, q: u32) -> CharacterTable {
        build_character_table(&GroupSpec::new(n, q).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn gl1_f3() {
        let t = table(1, 3);
        assert_eq!(t.len(), 2);
        let rows: Vec<Vec<i64>> = t.chars().iter().map(|c| c.values.iter().map(|v| v.to_i64().unwrap()).collect()).collect();
        assert!(rows.contains(&vec![1, 1]));
        assert!(rows.contains(&vec![1, -1]) || rows.contains(&vec![-1, 1]));
    }

    #[test]
    fn gl2_f3_degrees() {
        let t = table(2, 3);
        assert_eq!(t.degrees(), vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(t.splitting_prime(), 73);
    }

    #[test]
    fn trivial_group() {
        let t = table(0, 5);
        assert_eq!(t.degrees(), vec![1]);
    }

    #[test]
    fn inner_products_gl2_f3() {
        let t = table(2, 3);
        for i in 0..t.len() {
            for j in 0..t.len() {
                let ip = t.inner_product(&t.character(i), &t.character(j)).unwrap();
                assert_eq!(ip, CyclotomicNumber::from_integer(i64::from(i == j)));
            }
        }
        let regular = (0..t.len()).fold(t.character(0).zero_like(), |acc, i| {
            acc.add(&t.character(i).scale_int(t.chars()[i].degree as i64)).unwrap()
        });
        let triv = t.character(t.trivial());
        assert_eq!(t.inner_product(&regular, &triv).unwrap(), CyclotomicNumber::one());
    }

    #[test]
    fn mismatched_domains_are_rejected() {
        let t = table(2, 3);
        let bad = ClassFunction::on_group(1, vec![CyclotomicNumber::one(); 2]);
        assert!(t.inner_product(&bad, &t.character(0)).is_err());
    }

    #[test]
    fn budget_rejects_large_groups() {
        let spec = GroupSpec::new(4, 3).unwrap();
        assert!(matches!(build_character_table(&spec, &Budget::default()), Err(Error::Budget(_))));
        assert!(Budget::stretch().check_group(&spec).is_ok());
    }
}
