//! Standard parabolic subgroups `P = L ⋉ U` attached to interval
//! compositions of `n`, and involutions `A = diag(I_p, -I_{n-p})` with their
//! centralizers `H_A ≅ GL_p × GL_{n-p}`.

use super::classes::{ConjugacyClassLabel, GeneralLinearGroup};
use super::matrix::Matrix;
use super::{generators, GroupSpec};
use crate::algebra::FqField;
use crate::error::{Error, Result};

/// Ordered composition `(n_0, ..., n_{m-1})` of `n` into positive parts; block
/// `i` is the interval of indices `[n_0 + ... + n_{i-1}, n_0 + ... + n_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionSpec(Vec<usize>);

impl CompositionSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Domain(format!("composition {parts:?} must have positive parts")));
        }
        Ok(Self(parts))
    }

    pub fn trivial(n: usize) -> Self {
        Self(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&p| {
                let o = acc;
                acc += p;
                o
            })
            .collect()
    }

    /// `f_T`: block index of each coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(b, &p)| std::iter::repeat(b).take(p)).collect()
    }

    /// Number of free entries of the unipotent radical, `Σ_{i<j} n_i n_j`.
    pub fn unipotent_dimension(&self) -> usize {
        let n = self.n();
        (n * n - self.0.iter().map(|p| p * p).sum::<usize>()) / 2
    }

    pub fn unipotent_order(&self, q: u32) -> u128 {
        (q as u128).pow(self.unipotent_dimension() as u32)
    }

    /// Membership in `P(T)`: zero below the block diagonal.
    pub fn in_parabolic(&self, m: &Matrix) -> bool {
        let block = self.block_of();
        let n = m.n();
        (0..n).all(|i| (0..n).all(|j| block[i] <= block[j] || m.get(i, j) == 0))
    }

    /// Diagonal blocks of `m` (its image in the Levi quotient when `m ∈ P`).
    pub fn levi_blocks(&self, m: &Matrix) -> Vec<Matrix> {
        self.offsets().iter().zip(&self.0).map(|(&o, &p)| m.diagonal_block(o, p)).collect()
    }

    /// The two-block compositions `(p, n-p)`, `1 ≤ p ≤ n-1`.
    pub fn two_block(n: usize) -> Vec<CompositionSpec> {
        (1..n).map(|p| CompositionSpec(vec![p, n - p])).collect()
    }
}

/// All elements `I + A` of `U(T)`, `A` strictly block upper triangular.
pub fn unipotent_radical(comp: &CompositionSpec, f: &FqField) -> UnipotentIter {
    let block = comp.block_of();
    let n = comp.n();
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| block[i] < block[j]).collect();
    UnipotentIter { n, q: f.q(), counter: vec![0; free.len()], free, done: false }
}

pub struct UnipotentIter {
    n: usize,
    q: u32,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

impl Iterator for UnipotentIter {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        let mut m = Matrix::identity(self.n);
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            m.set(i, j, v);
        }
        self.done = true;
        for c in self.counter.iter_mut() {
            *c += 1;
            if *c < self.q {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(m)
    }
}

/// Representatives `x` of the cosets `G/P(T)`: one per flag of type `T`,
/// found by orbit search from the standard flag.
pub fn flag_representatives(comp: &CompositionSpec, f: &FqField) -> Vec<Matrix> {
    let n = comp.n();
    let cuts: Vec<usize> = comp.offsets().into_iter().skip(1).collect();
    let key = |x: &Matrix| -> Vec<Vec<Vec<u32>>> { cuts.iter().map(|&k| x.column_span_key(k, f)).collect() };
    let gens = generators(n, f);
    let start = Matrix::identity(n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(key(&start));
    let mut reps = vec![start];
    let mut head = 0;
    while head < reps.len() {
        let x = reps[head].clone();
        head += 1;
        for g in &gens {
            let y = g.mul(&x, f);
            if seen.insert(key(&y)) {
                reps.push(y);
            }
        }
    }
    reps
}

/// The symmetric pair datum `A = diag(I_p, -I_{n-p})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionSpec {
    pub n: usize,
    pub p: usize,
}

impl InvolutionSpec {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if p > n {
            return Err(Error::Domain(format!("involution needs 0 <= p <= n, got p={p}, n={n}")));
        }
        Ok(Self { n, p })
    }

    pub fn matrix(&self, f: &FqField) -> Matrix {
        let minus_one = f.neg(1);
        let diag: Vec<u32> = (0..self.n).map(|i| if i < self.p { 1 } else { minus_one }).collect();
        Matrix::diagonal(&diag)
    }

    /// `σ_A(X) = A X A^{-1}`.
    pub fn apply(&self, x: &Matrix, f: &FqField) -> Matrix {
        let a = self.matrix(f);
        a.mul(x, f).mul(&a, f)
    }

    pub fn centralizer_order(&self, q: u32) -> u128 {
        super::group_order(self.p, q) * super::group_order(self.n - self.p, q)
    }
}

/// A conjugacy class of `H_A = GL_p × GL_{n-p}` and the class of `G` it fuses into.
#[derive(Clone, Debug)]
pub struct CentralizerClass {
    /// Class indices in `GL_p` and `GL_{n-p}`.
    pub factor_classes: (usize, usize),
    pub factor_labels: (ConjugacyClassLabel, ConjugacyClassLabel),
    pub representative: Matrix,
    pub size: u128,
    pub centralizer_order: u128,
    pub fused_label: ConjugacyClassLabel,
    pub fused_index: usize,
}

/// Classes of `H_A` as pairs of factor classes, each with its fused label in `G`.
pub fn involution_centralizer_classes(
    inv: &InvolutionSpec,
    g: &GeneralLinearGroup,
    first: &GeneralLinearGroup,
    second: &GeneralLinearGroup,
) -> Result<Vec<CentralizerClass>> {
    if first.n() != inv.p || second.n() != inv.n - inv.p || g.n() != inv.n {
        return Err(Error::Domain("factor ranks do not match the involution".into()));
    }
    let mut out = Vec::with_capacity(first.num_classes() * second.num_classes());
    for (i, a) in first.classes().iter().enumerate() {
        for (j, b) in second.classes().iter().enumerate() {
            let representative = Matrix::block_diag(&[a.representative.clone(), b.representative.clone()]);
            let fused_label = g.class_of(&representative)?;
            let fused_index = g
                .index_of_label(&fused_label)
                .ok_or_else(|| Error::Inconsistent(format!("fused label {fused_label:?} missing from G")))?;
            out.push(CentralizerClass {
                factor_classes: (i, j),
                factor_labels: (a.label.clone(), b.label.clone()),
                representative,
                size: a.size * b.size,
                centralizer_order: a.centralizer_order * b.centralizer_order,
                fused_label,
                fused_index,
            });
        }
    }
    Ok(out)
}

/// Classes of a Levi subgroup `L = Π GL_{n_i}` as tuples of factor classes,
/// flattened in mixed radix with the first factor most significant.
#[derive(Clone, Debug)]
pub struct LeviClasses {
    pub radices: Vec<usize>,
}

impl LeviClasses {
    pub fn new(factors: &[&GeneralLinearGroup]) -> Self {
        Self { radices: factors.iter().map(|g| g.num_classes()).collect() }
    }

    pub fn len(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.radices).fold(0, |acc, (&i, &r)| acc * r + i)
    }

    pub fn unflatten(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = k % r;
            k /= r;
        }
        out
    }
}

/// Helper owning the factor groups of `H_A`.
pub fn centralizer_factors(inv: &InvolutionSpec, spec: &GroupSpec) -> Result<(GeneralLinearGroup, GeneralLinearGroup)> {
    let f = spec.field().clone();
    Ok((
        GeneralLinearGroup::new(GroupSpec::with_field(inv.p, f.clone())?),
        GeneralLinearGroup::new(GroupSpec::with_field(inv.n - inv.p, f)?),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_order;

    #[test]
    fn unipotent_counts() {
        let f = FqField::new(3).unwrap();
        let count = |parts: Vec<usize>| unipotent_radical(&CompositionSpec::new(parts).unwrap(), &f).count();
        assert_eq!(count(vec![3]), 1);
        assert_eq!(count(vec![1, 1]), 3);
        assert_eq!(count(vec![1, 1, 1]), 27);
        assert_eq!(count(vec![1, 2]), 9);
        let comp = CompositionSpec::new(vec![2, 1]).unwrap();
        assert!(unipotent_radical(&comp, &f).all(|u| comp.in_parabolic(&u)));
    }

    #[test]
    fn flag_counts() {
        let f = FqField::new(3).unwrap();
        let flags = |parts: Vec<usize>| flag_representatives(&CompositionSpec::new(parts).unwrap(), &f).len();
        assert_eq!(flags(vec![1, 1]), 4);
        assert_eq!(flags(vec![1, 2]), 13);
        assert_eq!(flags(vec![1, 1, 1]), 4 * 13);
        assert_eq!(flags(vec![2]), 1);
    }

    #[test]
    fn torus_centralizer_fusion_gl2_f3() {
        let spec = GroupSpec::new(2, 3).unwrap();
        let g = GeneralLinearGroup::new(spec.clone());
        let inv = InvolutionSpec::new(2, 1).unwrap();
        let (a, b) = centralizer_factors(&inv, &spec).unwrap();
        let classes = involution_centralizer_classes(&inv, &g, &a, &b).unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|c| c.size == 1));
        let distinct: std::collections::HashSet<_> = classes.iter().map(|c| c.fused_index).collect();
        assert_eq!(distinct.len(), 3);
        assert_eq!(classes.iter().map(|c| c.size).sum::<u128>(), inv.centralizer_order(3));
    }

    #[test]
    fn trivial_involution_keeps_labels() {
        let spec = GroupSpec::new(2, 3).unwrap();
        let g = GeneralLinearGroup::new(spec.clone());
        let inv = InvolutionSpec::new(2, 0).unwrap();
        let (a, b) = centralizer_factors(&inv, &spec).unwrap();
        let classes = involution_centralizer_classes(&inv, &g, &a, &b).unwrap();
        assert_eq!(classes.len(), g.num_classes());
        for c in &classes {
            assert_eq!(c.fused_label, c.factor_labels.1);
        }
        assert_eq!(group_order(0, 3) * group_order(2, 3), 48);
    }

    #[test]
    fn levi_index_round_trip() {
        let l = LeviClasses { radices: vec![2, 8, 3] };
        for k in 0..l.len() {
            assert_eq!(l.flatten(&l.unflatten(k)), k);
        }
    }
}
