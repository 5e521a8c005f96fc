//! Distinction by `H_A ≅ GL_p × GL_{n-p}` and the self-duality verifier.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{CyclotomicNumber, Rational};
use crate::chartable::{ClassFunction, Family};
use crate::error::{Error, Result};
use crate::group::subgroups::involution_centralizer_classes;
use crate::group::{all_elements, InvolutionSpec, Matrix};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Largest `|G|` for which distinction is recomputed by listing `H` explicitly.
pub const EXPLICIT_H_LIMIT: u128 = 10_000;

/// `weights[c] = #{h ∈ H : h ∈ C_c}`, the fusion of `H`-classes into `G`.
#[derive(Clone, Debug)]
pub struct FusionWeights {
    pub inv: InvolutionSpec,
    pub h_order: u128,
    pub weights: Vec<u128>,
}

impl FusionWeights {
    pub fn new(family: &Family, inv: InvolutionSpec) -> Result<Self> {
        let g = family.group(inv.n)?;
        let first = family.group(inv.p)?;
        let second = family.group(inv.n - inv.p)?;
        let classes = involution_centralizer_classes(&inv, &g, &first, &second)?;
        let mut weights = vec![0u128; g.num_classes()];
        for c in &classes {
            weights[c.fused_index] += c.size;
        }
        let h_order = first.order() * second.order();
        if weights.iter().sum::<u128>() != h_order {
            return Err(Error::Inconsistent("H-class sizes do not sum to |H|".into()));
        }
        Ok(Self { inv, h_order, weights })
    }

    /// `dim Hom_H(π, 1) = (1/|H|) Σ_{h ∈ H} χ(h)`.
    pub fn dimension(&self, chi: &ClassFunction) -> Result<i64> {
        if chi.values.len() != self.weights.len() {
            return Err(Error::Domain("class function does not match the fusion data".into()));
        }
        let sum: CyclotomicNumber = self
            .weights
            .iter()
            .zip(&chi.values)
            .filter(|(&w, _)| w > 0)
            .map(|(&w, v)| v.scale(&Rational::from_integer(BigInt::from(w))))
            .sum();
        let dim = sum.scale(&Rational::new(BigInt::from(1), BigInt::from(self.h_order)));
        dim.to_i64()
            .filter(|&d| d >= 0)
            .ok_or_else(|| Error::Inconsistent(format!("distinction dimension {dim} is not a non-negative integer")))
    }
}

pub fn distinction_dimension(family: &Family, chi: &ClassFunction, inv: InvolutionSpec) -> Result<i64> {
    FusionWeights::new(family, inv)?.dimension(chi)
}

/// `π ≅ π*`, i.e. the character is real-valued.
pub fn is_self_dual(chi: &ClassFunction) -> bool {
    chi.values.iter().all(CyclotomicNumber::is_real)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DistinctionRow {
    pub index: usize,
    pub degree: u64,
    pub cuspidal: bool,
    pub dim_invariants: i64,
    pub self_dual: bool,
    pub whittaker: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DistinctionReport {
    pub format_version: u32,
    pub n: usize,
    pub q: u32,
    pub p: usize,
    pub h_order: String,
    pub rows: Vec<DistinctionRow>,
    pub theorem_holds: bool,
    /// Indices of distinguished irreducibles that are not self-dual.
    pub counterexamples: Vec<usize>,
    pub max_dim_invariants: i64,
    /// `Σ dim · deg`, which must equal `[G : H]`.
    pub permutation_degree: String,
    pub index_of_h: String,
}

impl DistinctionReport {
    pub fn cuspidal_holds(&self) -> bool {
        self.rows.iter().filter(|r| r.cuspidal && r.dim_invariants > 0).all(|r| r.self_dual)
    }

    pub fn permutation_identity_holds(&self) -> bool {
        self.permutation_degree == self.index_of_h
    }
}

/// Per-irreducible data that does not depend on `p`.
#[derive(Clone, Debug)]
struct RowBase {
    degree: u64,
    cuspidal: bool,
    self_dual: bool,
    whittaker: i64,
}

fn row_bases(family: &Family, n: usize) -> Result<Vec<RowBase>> {
    let table = family.table(n)?;
    let cusp = family.cuspidal_indices(n)?;
    (0..table.len())
        .into_par_iter()
        .map(|i| {
            let chi = table.character(i);
            Ok(RowBase {
                degree: table.chars()[i].degree,
                cuspidal: cusp.contains(&i),
                self_dual: is_self_dual(&chi),
                whittaker: family.whittaker_multiplicity(&chi)?,
            })
        })
        .collect()
}

fn report_from(family: &Family, n: usize, p: usize, bases: &[RowBase]) -> Result<DistinctionReport> {
    let inv = InvolutionSpec::new(n, p)?;
    let table = family.table(n)?;
    let fusion = FusionWeights::new(family, inv)?;
    let rows = bases
        .iter()
        .enumerate()
        .map(|(i, b)| {
            Ok(DistinctionRow {
                index: i,
                degree: b.degree,
                cuspidal: b.cuspidal,
                dim_invariants: fusion.dimension(&table.character(i))?,
                self_dual: b.self_dual,
                whittaker: b.whittaker,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let counterexamples: Vec<usize> =
        rows.iter().filter(|r| r.dim_invariants > 0 && !r.self_dual).map(|r| r.index).collect();
    let permutation_degree: u128 = rows.iter().map(|r| r.dim_invariants as u128 * r.degree as u128).sum();
    Ok(DistinctionReport {
        format_version: REPORT_FORMAT_VERSION,
        n,
        q: family.q(),
        p,
        h_order: fusion.h_order.to_string(),
        theorem_holds: counterexamples.is_empty(),
        max_dim_invariants: rows.iter().map(|r| r.dim_invariants).max().unwrap_or(0),
        rows,
        counterexamples,
        permutation_degree: permutation_degree.to_string(),
        index_of_h: (table.group().order() / fusion.h_order).to_string(),
    })
}

pub fn distinction_report(family: &Family, n: usize, p: usize) -> Result<DistinctionReport> {
    let bases = row_bases(family, n)?;
    report_from(family, n, p, &bases)
}

/// One report per `p ∈ {0, ..., n}`, computed in parallel.
pub fn verify_main_theorem(family: &Family, n: usize) -> Result<Vec<DistinctionReport>> {
    let bases = row_bases(family, n)?;
    for k in 0..=n {
        family.group(k)?;
    }
    (0..=n).into_par_iter().map(|p| report_from(family, n, p, &bases)).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CuspidalSurveyEntry {
    pub p: usize,
    /// `(index, dim_invariants, self_dual)` for every cuspidal irreducible.
    pub cuspidals: Vec<(usize, i64, bool)>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CuspidalSurvey {
    pub format_version: u32,
    pub n: usize,
    pub q: u32,
    pub num_cuspidals: usize,
    pub entries: Vec<CuspidalSurveyEntry>,
    pub holds: bool,
}

/// The self-duality implication restricted to cuspidal irreducibles.
pub fn cuspidal_distinction_survey(family: &Family, n: usize) -> Result<CuspidalSurvey> {
    Ok(survey_from_reports(family.q(), n, &verify_main_theorem(family, n)?))
}

pub fn survey_from_reports(q: u32, n: usize, reports: &[DistinctionReport]) -> CuspidalSurvey {
    let entries: Vec<CuspidalSurveyEntry> = reports
        .iter()
        .map(|r| CuspidalSurveyEntry {
            p: r.p,
            cuspidals: r.rows.iter().filter(|x| x.cuspidal).map(|x| (x.index, x.dim_invariants, x.self_dual)).collect(),
            holds: r.cuspidal_holds(),
        })
        .collect();
    CuspidalSurvey {
        format_version: REPORT_FORMAT_VERSION,
        n,
        q,
        num_cuspidals: reports.first().map_or(0, |r| r.rows.iter().filter(|x| x.cuspidal).count()),
        holds: entries.iter().all(|e| e.holds),
        entries,
    }
}

/// Distinction dimensions of every irreducible with respect to the
/// centralizer of `g A g^{-1}`, summing over an explicit list of its elements.
pub fn conjugated_distinction_dimensions(family: &Family, inv: InvolutionSpec, g: &Matrix) -> Result<Vec<i64>> {
    let group = family.group(inv.n)?;
    if group.order() > EXPLICIT_H_LIMIT {
        return Err(Error::Budget(format!("|G| = {} exceeds {EXPLICIT_H_LIMIT}", group.order())));
    }
    let f = family.field();
    let gi = g.inverse(f).ok_or_else(|| Error::Domain("conjugating matrix is singular".into()))?;
    let a = inv.matrix(f).conjugate_by(g, &gi, f);
    let mut weights = vec![0u128; group.num_classes()];
    let mut h_order = 0u128;
    for x in all_elements(group.spec(), u128::MAX)? {
        if a.mul(&x, f) == x.mul(&a, f) {
            weights[group.index_of(&x)?] += 1;
            h_order += 1;
        }
    }
    if h_order != inv.centralizer_order(family.q()) {
        return Err(Error::Inconsistent("centralizer of the conjugated involution has the wrong order".into()));
    }
    let fusion = FusionWeights { inv, h_order, weights };
    let table = family.table(inv.n)?;
    (0..table.len()).map(|i| fusion.dimension(&table.character(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::Budget;

    #[test]
    fn trivial_character_is_distinguished_once() {
        let fam = Family::new(3, Budget::default()).unwrap();
        let t = fam.table(2).unwrap();
        for p in 0..=2 {
            let inv = InvolutionSpec::new(2, p).unwrap();
            assert_eq!(distinction_dimension(&fam, &t.character(t.trivial()), inv).unwrap(), 1);
        }
    }

    #[test]
    fn p_zero_detects_only_the_trivial_character() {
        let fam = Family::new(5, Budget::default()).unwrap();
        let t = fam.table(2).unwrap();
        let fusion = FusionWeights::new(&fam, InvolutionSpec::new(2, 0).unwrap()).unwrap();
        for i in 0..t.len() {
            assert_eq!(fusion.dimension(&t.character(i)).unwrap(), i64::from(i == t.trivial()));
        }
    }

    #[test]
    fn steinberg_has_two_torus_invariants() {
        let fam = Family::new(3, Budget::default()).unwrap();
        let t = fam.table(2).unwrap();
        let st = (0..t.len()).find(|&i| t.chars()[i].degree == 3 && is_self_dual(&t.character(i))).unwrap();
        let dims: Vec<_> = (0..t.len())
            .filter(|&i| t.chars()[i].degree == 3)
            .map(|i| distinction_dimension(&fam, &t.character(i), InvolutionSpec::new(2, 1).unwrap()).unwrap())
            .collect();
        assert!(dims.contains(&2));
        assert!(is_self_dual(&t.character(st)));
    }

    #[test]
    fn order_four_character_is_not_self_dual() {
        let fam = Family::new(5, Budget::default()).unwrap();
        let t = fam.table(1).unwrap();
        assert_eq!(t.chars().iter().filter(|c| c.is_real()).count(), 2);
        let non_real = (0..t.len()).filter(|&i| !is_self_dual(&t.character(i))).count();
        assert_eq!(non_real, 2);
    }
}
