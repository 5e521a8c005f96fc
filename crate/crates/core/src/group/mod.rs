//! The group engine for `G_n = GL_n(F_q)`: matrices, conjugacy classes,
//! standard parabolic subgroups, involutions and their centralizers.

pub mod classes;
pub mod geometric;
pub mod matrix;
pub mod subgroups;

use std::sync::Arc;

pub use classes::{ClassData, ConjugacyClassLabel, GeneralLinearGroup, PrimaryPart};
pub use matrix::Matrix;
pub use subgroups::{CentralizerClass, CompositionSpec, InvolutionSpec};

use crate::algebra::FqField;
use crate::error::{Error, Result};

/// `GL_n(F_q)`, described by rank and field. Rank 0 denotes the trivial group.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub n: usize,
    field: Arc<FqField>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field
    }
}

impl Eq for GroupSpec {}

impl GroupSpec {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        Self::with_field(n, FqField::new(q)?)
    }

    pub fn with_field(n: usize, field: Arc<FqField>) -> Result<Self> {
        let bits = (n * n) as f64 * (field.q() as f64).log2();
        if bits > 120.0 {
            return Err(Error::Domain(format!("|GL_{n}(F_{})| does not fit the integer width", field.q())));
        }
        Ok(Self { n, field })
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `Π_{i=0}^{n-1} (q^n - q^i)`.
    pub fn order(&self) -> u128 {
        group_order(self.n, self.q())
    }
}

pub fn group_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}

/// Generators of `GL_n(F_q)`: all elementary transvections and the
/// diagonal matrices with one primitive entry.
pub fn generators(n: usize, f: &FqField) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        let mut d = Matrix::identity(n);
        d.set(i, i, f.primitive_element());
        gens.push(d);
        for j in 0..n {
            if i != j {
                let mut t = Matrix::identity(n);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    gens
}

/// Every invertible matrix, by brute force over all `q^{n^2}` matrices.
/// Only sensible for tiny groups; `limit` guards the number of candidates.
pub fn all_elements(spec: &GroupSpec, limit: u128) -> Result<Vec<Matrix>> {
    let q = spec.q() as u128;
    let n = spec.n;
    let candidates = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if candidates > limit {
        return Err(Error::Budget(format!("{candidates} candidate matrices exceed enumeration limit {limit}")));
    }
    let f = spec.field();
    let mut out = Vec::with_capacity(spec.order() as usize);
    let mut data = vec![0u32; n * n];
    for _ in 0..candidates {
        let m = Matrix::from_data(n, data.clone());
        if m.is_invertible(f) {
            out.push(m);
        }
        for d in data.iter_mut() {
            *d += 1;
            if *d < f.q() {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}
