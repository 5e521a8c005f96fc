//! Brute-force check that every double coset `H g P` contains an `x` with
//! `x σ(x)^{-1}` normalizing the diagonal torus (i.e. monomial).

use std::collections::HashSet;

use serde::Serialize;

use super::matrix::Matrix;
use super::subgroups::{CompositionSpec, InvolutionSpec};
use super::{all_elements, GroupSpec};
use crate::error::{Error, Result};

/// Largest group order accepted for full double-coset enumeration.
pub const GEOMETRIC_CHECK_LIMIT: u128 = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosetRecord {
    pub size: usize,
    /// A representative of the double coset, row major.
    pub representative: Vec<u32>,
    /// An element `x` of the coset with `x σ(x)^{-1}` monomial, if any.
    pub witness: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricReport {
    pub n: usize,
    pub q: u32,
    pub p: usize,
    pub composition: Vec<usize>,
    pub cosets: Vec<DoubleCosetRecord>,
    /// True when some double coset has no witness.
    pub counterexample: bool,
}

pub fn double_coset_geometric_check(
    spec: &GroupSpec,
    comp: &CompositionSpec,
    inv: &InvolutionSpec,
) -> Result<GeometricReport> {
    if spec.order() > GEOMETRIC_CHECK_LIMIT {
        return Err(Error::Budget(format!(
            "|G| = {} exceeds the double coset limit {GEOMETRIC_CHECK_LIMIT}",
            spec.order()
        )));
    }
    if comp.n() != spec.n || inv.n != spec.n {
        return Err(Error::Domain("composition and involution must have rank n".into()));
    }
    let f = spec.field();
    let elements = all_elements(spec, u128::MAX)?;
    let a = inv.matrix(f);
    let h: Vec<Matrix> = elements.iter().filter(|x| a.mul(x, f) == x.mul(&a, f)).cloned().collect();
    let p: Vec<Matrix> = elements.iter().filter(|x| comp.in_parabolic(x)).cloned().collect();
    let mut visited: HashSet<Matrix> = HashSet::new();
    let mut cosets = Vec::new();
    for g in &elements {
        if visited.contains(g) {
            continue;
        }
        let mut members = HashSet::new();
        for x in &h {
            let xg = x.mul(g, f);
            for y in &p {
                members.insert(xg.mul(y, f));
            }
        }
        let mut sorted: Vec<&Matrix> = members.iter().collect();
        sorted.sort();
        let witness = sorted
            .iter()
            .find(|x| {
                let sx = inv.apply(x, f);
                let si = sx.inverse(f).expect("σ preserves invertibility");
                x.mul(&si, f).is_monomial()
            })
            .map(|x| x.data().to_vec());
        cosets.push(DoubleCosetRecord {
            size: members.len(),
            representative: g.data().to_vec(),
            witness,
        });
        visited.extend(members);
    }
    let counterexample = cosets.iter().any(|c| c.witness.is_none());
    Ok(GeometricReport {
        n: spec.n,
        q: spec.q(),
        p: inv.p,
        composition: comp.parts().to_vec(),
        cosets,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_group_is_one_coset_with_identity_witness() {
        let spec = GroupSpec::new(2, 3).unwrap();
        let r = double_coset_geometric_check(&spec, &CompositionSpec::trivial(2), &InvolutionSpec::new(2, 1).unwrap())
            .unwrap();
        assert_eq!(r.cosets.len(), 1);
        assert_eq!(r.cosets[0].size, 48);
        assert!(!r.counterexample);
    }

    #[test]
    fn refuses_large_groups() {
        let spec = GroupSpec::new(3, 5).unwrap();
        let comp = CompositionSpec::new(vec![1, 1, 1]).unwrap();
        assert!(matches!(
            double_coset_geometric_check(&spec, &comp, &InvolutionSpec::new(3, 1).unwrap()),
            Err(Error::Budget(_))
        ));
    }
}
