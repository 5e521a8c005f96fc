//! Harish-Chandra induction and restriction at the level of class functions,
//! plus cuspidality and generic (Whittaker) multiplicities.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use parking_lot::Mutex;
use rayon::prelude::*;

use super::cache::{self, CacheStatus};
use super::{dixon, weighted_inner_product, Budget, CharacterTable, ClassFunction};
use crate::algebra::{CyclotomicNumber, FqField, Rational};
use crate::error::{Error, Result};
use crate::group::subgroups::{flag_representatives, unipotent_radical, LeviClasses};
use crate::group::{CompositionSpec, GeneralLinearGroup, GroupSpec, Matrix};

/// Precomputed incidence data for a standard parabolic `P = L U`.
#[derive(Debug)]
pub struct ParabolicData {
    pub comp: CompositionSpec,
    pub factors: Vec<Arc<GeneralLinearGroup>>,
    pub levi: LeviClasses,
    pub levi_sizes: Vec<u128>,
    pub levi_order: u128,
    pub unipotent_order: u128,
    /// Per class of `G`: `(Levi class, number of flags)` pairs.
    induce: Vec<Vec<(usize, u64)>>,
    /// Per Levi class `l`: `(class of lu, number of u ∈ U)` pairs.
    restrict: Vec<Vec<(usize, u64)>>,
}

impl ParabolicData {
    fn build(group: &GeneralLinearGroup, comp: CompositionSpec, factors: Vec<Arc<GeneralLinearGroup>>) -> Result<Self> {
        let f = group.field();
        let refs: Vec<&GeneralLinearGroup> = factors.iter().map(|g| g.as_ref()).collect();
        let levi = LeviClasses::new(&refs);
        let levi_class = |y: &Matrix| -> Result<usize> {
            let idx = comp
                .levi_blocks(y)
                .iter()
                .zip(&factors)
                .map(|(b, g)| g.index_of(b))
                .collect::<Result<Vec<_>>>()?;
            Ok(levi.flatten(&idx))
        };

        let flags = flag_representatives(&comp, f);
        let flag_pairs: Vec<(Matrix, Matrix)> =
            flags.into_iter().map(|x| (x.inverse(f).expect("flag representatives are invertible"), x)).collect();
        let induce = group
            .classes()
            .par_iter()
            .map(|c| {
                let mut counts: HashMap<usize, u64> = HashMap::new();
                for (xi, x) in &flag_pairs {
                    let y = xi.mul(&c.representative, f).mul(x, f);
                    if comp.in_parabolic(&y) {
                        *counts.entry(levi_class(&y)?).or_default() += 1;
                    }
                }
                let mut v: Vec<(usize, u64)> = counts.into_iter().collect();
                v.sort_unstable();
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;

        let unipotent: Vec<Matrix> = unipotent_radical(&comp, f).collect();
        let restrict = (0..levi.len())
            .into_par_iter()
            .map(|k| {
                let idx = levi.unflatten(k);
                let blocks: Vec<Matrix> =
                    idx.iter().zip(&factors).map(|(&i, g)| g.classes()[i].representative.clone()).collect();
                let l = Matrix::block_diag(&blocks);
                let mut counts: HashMap<usize, u64> = HashMap::new();
                for u in &unipotent {
                    *counts.entry(group.index_of(&l.mul(u, f))?).or_default() += 1;
                }
                let mut v: Vec<(usize, u64)> = counts.into_iter().collect();
                v.sort_unstable();
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;

        let levi_sizes = (0..levi.len())
            .map(|k| levi.unflatten(k).iter().zip(&factors).map(|(&i, g)| g.classes()[i].size).product())
            .collect();
        let levi_order = factors.iter().map(|g| g.order()).product();
        Ok(Self {
            unipotent_order: unipotent.len() as u128,
            comp,
            factors,
            levi,
            levi_sizes,
            levi_order,
            induce,
            restrict,
        })
    }

    pub fn levi_inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<CyclotomicNumber> {
        self.check_levi(a)?;
        self.check_levi(b)?;
        weighted_inner_product(&self.levi_sizes, self.levi_order, &a.values, &b.values)
    }

    fn check_levi(&self, a: &ClassFunction) -> Result<()> {
        if a.domain.as_slice() != self.comp.parts() || a.values.len() != self.levi.len() {
            return Err(Error::Domain(format!(
                "class function on {:?} is not on the Levi subgroup {:?}",
                a.domain,
                self.comp.parts()
            )));
        }
        Ok(())
    }
}

/// Superdiagonal trace histogram over the full upper unitriangular group:
/// `hist[class][t] = #{u in class : Tr(Σ u_{i,i+1}) = t}`.
#[derive(Debug)]
struct WhittakerData {
    p: u32,
    unipotent_order: u128,
    hist: Vec<Vec<u64>>,
}

/// Tables, groups and parabolic data for all `GL_m(F_q)` at a fixed `q`.
/// Everything built is memoized; results do not depend on build order.
pub struct Family {
    field: Arc<FqField>,
    budget: Budget,
    cache_dir: Option<PathBuf>,
    groups: Mutex<HashMap<usize, Arc<GeneralLinearGroup>>>,
    tables: Mutex<HashMap<usize, Arc<CharacterTable>>>,
    cache_status: Mutex<HashMap<usize, CacheStatus>>,
    parabolics: Mutex<HashMap<CompositionSpec, Arc<ParabolicData>>>,
    whittaker: Mutex<HashMap<usize, Arc<WhittakerData>>>,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Family(q = {})", self.field.q())
    }
}

impl Family {
    pub fn new(q: u32, budget: Budget) -> Result<Self> {
        Ok(Self::with_field(FqField::new(q)?, budget))
    }

    pub fn with_field(field: Arc<FqField>, budget: Budget) -> Self {
        Self {
            field,
            budget,
            cache_dir: None,
            groups: Mutex::default(),
            tables: Mutex::default(),
            cache_status: Mutex::default(),
            parabolics: Mutex::default(),
            whittaker: Mutex::default(),
        }
    }

    pub fn with_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn spec(&self, n: usize) -> Result<GroupSpec> {
        GroupSpec::with_field(n, self.field.clone())
    }

    pub fn group(&self, n: usize) -> Result<Arc<GeneralLinearGroup>> {
        if let Some(g) = self.groups.lock().get(&n) {
            return Ok(g.clone());
        }
        let spec = self.spec(n)?;
        self.budget.check_group(&spec)?;
        let g = Arc::new(GeneralLinearGroup::new(spec));
        Ok(self.groups.lock().entry(n).or_insert(g).clone())
    }

    /// The character table of `GL_n(F_q)`, from the cache directory when a
    /// valid file exists there.
    pub fn table(&self, n: usize) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.tables.lock().get(&n) {
            return Ok(t.clone());
        }
        let group = self.group(n)?;
        let (table, status) = match &self.cache_dir {
            Some(dir) => match cache::load(dir, group.clone()) {
                Ok(Some(t)) => (t, CacheStatus::Hit),
                Ok(None) => (self.build_and_store(group, dir)?, CacheStatus::Built),
                Err(_) => (self.build_and_store(group, dir)?, CacheStatus::Rebuilt),
            },
            None => (dixon::build_for_group(group, &self.budget)?, CacheStatus::Uncached),
        };
        self.cache_status.lock().insert(n, status);
        Ok(self.tables.lock().entry(n).or_insert_with(|| Arc::new(table)).clone())
    }

    fn build_and_store(&self, group: Arc<GeneralLinearGroup>, dir: &std::path::Path) -> Result<CharacterTable> {
        let table = dixon::build_for_group(group, &self.budget)?;
        cache::store(dir, &table)?;
        Ok(table)
    }

    /// How the table of rank `n` was obtained, once it has been requested.
    pub fn cache_status(&self, n: usize) -> Option<CacheStatus> {
        self.cache_status.lock().get(&n).copied()
    }

    pub fn parabolic(&self, comp: &CompositionSpec) -> Result<Arc<ParabolicData>> {
        if let Some(d) = self.parabolics.lock().get(comp) {
            return Ok(d.clone());
        }
        self.budget.check_unipotent(comp.unipotent_order(self.q()))?;
        let group = self.group(comp.n())?;
        let factors = comp.parts().iter().map(|&k| self.group(k)).collect::<Result<Vec<_>>>()?;
        let data = Arc::new(ParabolicData::build(&group, comp.clone(), factors)?);
        Ok(self.parabolics.lock().entry(comp.clone()).or_insert(data).clone())
    }

    /// The class function `l ↦ Π parts[i](l_i)` on the Levi subgroup.
    pub fn outer_product(&self, comp: &CompositionSpec, parts: &[ClassFunction]) -> Result<ClassFunction> {
        if parts.len() != comp.num_blocks() {
            return Err(Error::Domain(format!("{} parts for composition {:?}", parts.len(), comp.parts())));
        }
        let data = self.parabolic(comp)?;
        for (part, g) in parts.iter().zip(&data.factors) {
            if part.domain != [g.n()] || part.values.len() != g.num_classes() {
                return Err(Error::Domain(format!("part on {:?} does not match block GL_{}", part.domain, g.n())));
            }
        }
        let values = (0..data.levi.len())
            .map(|k| {
                let idx = data.levi.unflatten(k);
                idx.iter()
                    .zip(parts)
                    .fold(CyclotomicNumber::one(), |acc, (&i, part)| &acc * &part.values[i])
            })
            .collect();
        Ok(ClassFunction::new(comp.parts().to_vec(), values))
    }

    /// `Ind_P^G` of the inflation of a class function on `L`.
    pub fn induce_from_levi(&self, comp: &CompositionSpec, phi: &ClassFunction) -> Result<ClassFunction> {
        let data = self.parabolic(comp)?;
        data.check_levi(phi)?;
        let values = data
            .induce
            .par_iter()
            .map(|row| row.iter().map(|&(l, c)| phi.values[l].scale_int(c as i64)).sum())
            .collect();
        Ok(ClassFunction::on_group(comp.n(), values))
    }

    /// `π_1 × ... × π_m = Ind_P^G(π_1 ⊠ ... ⊠ π_m)`.
    pub fn parabolic_induce(&self, comp: &CompositionSpec, parts: &[ClassFunction]) -> Result<ClassFunction> {
        let phi = self.outer_product(comp, parts)?;
        self.induce_from_levi(comp, &phi)
    }

    /// `r_P(χ)(l) = (1/|U|) Σ_{u ∈ U} χ(lu)`.
    pub fn jacquet_restrict(&self, comp: &CompositionSpec, chi: &ClassFunction) -> Result<ClassFunction> {
        let data = self.parabolic(comp)?;
        let g = self.group(comp.n())?;
        if chi.domain != [comp.n()] || chi.values.len() != g.num_classes() {
            return Err(Error::Domain(format!("class function on {:?} is not on GL_{}", chi.domain, comp.n())));
        }
        let scale = Rational::new(BigInt::from(1), BigInt::from(data.unipotent_order));
        let values = data
            .restrict
            .par_iter()
            .map(|row| {
                let s: CyclotomicNumber = row.iter().map(|&(c, k)| chi.values[c].scale_int(k as i64)).sum();
                s.scale(&scale)
            })
            .collect();
        Ok(ClassFunction::new(comp.parts().to_vec(), values))
    }

    pub fn levi_inner_product(
        &self,
        comp: &CompositionSpec,
        a: &ClassFunction,
        b: &ClassFunction,
    ) -> Result<CyclotomicNumber> {
        self.parabolic(comp)?.levi_inner_product(a, b)
    }

    /// Zero Jacquet restriction along every maximal proper parabolic.
    pub fn is_cuspidal(&self, chi: &ClassFunction) -> Result<bool> {
        let n = single_rank(chi)?;
        for comp in CompositionSpec::two_block(n) {
            if !self.jacquet_restrict(&comp, chi)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row indices of the cuspidal irreducibles of `GL_n(F_q)`.
    pub fn cuspidal_indices(&self, n: usize) -> Result<Vec<usize>> {
        let table = self.table(n)?;
        let flags = (0..table.len())
            .into_par_iter()
            .map(|i| self.is_cuspidal(&table.character(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(flags.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i).collect())
    }

    fn whittaker_data(&self, n: usize) -> Result<Arc<WhittakerData>> {
        if let Some(w) = self.whittaker.lock().get(&n) {
            return Ok(w.clone());
        }
        let g = self.group(n)?;
        let f = self.field.clone();
        let comp = if n == 0 { None } else { Some(CompositionSpec::new(vec![1; n])?) };
        let p = f.p();
        let mut hist = vec![vec![0u64; p as usize]; g.num_classes()];
        let mut count = 0u128;
        match comp {
            None => {
                hist[g.identity_class()][0] = 1;
                count = 1;
            }
            Some(comp) => {
                self.budget.check_unipotent(comp.unipotent_order(self.q()))?;
                for u in unipotent_radical(&comp, &f) {
                    let s = (0..n - 1).fold(0, |acc, i| f.add(acc, u.get(i, i + 1)));
                    hist[g.index_of(&u)?][f.trace(s) as usize] += 1;
                    count += 1;
                }
            }
        }
        let w = Arc::new(WhittakerData { p, unipotent_order: count, hist });
        Ok(self.whittaker.lock().entry(n).or_insert(w).clone())
    }

    /// `⟨χ|_U, ψ⟩_U` for the generic character `ψ(u) = ζ_p^{Tr(Σ u_{i,i+1})}`
    /// of the upper unitriangular group.
    pub fn whittaker_multiplicity(&self, chi: &ClassFunction) -> Result<i64> {
        let n = single_rank(chi)?;
        let w = self.whittaker_data(n)?;
        if chi.values.len() != w.hist.len() {
            return Err(Error::Domain("class function length does not match the group".into()));
        }
        let weights: CyclotomicNumber = w
            .hist
            .iter()
            .zip(&chi.values)
            .filter(|(h, _)| h.iter().any(|&c| c > 0))
            .map(|(h, v)| {
                let mut m = vec![0i64; w.p as usize];
                for (t, &c) in h.iter().enumerate() {
                    m[(w.p as usize - t) % w.p as usize] += c as i64;
                }
                v * &CyclotomicNumber::from_root_multiplicities(w.p, &m)
            })
            .sum();
        let mult = weights.scale(&Rational::new(BigInt::from(1), BigInt::from(w.unipotent_order)));
        mult.to_i64()
            .filter(|&m| m >= 0)
            .ok_or_else(|| Error::Inconsistent(format!("Whittaker multiplicity {mult} is not a non-negative integer")))
    }

    /// Multiplicities of the irreducibles of `GL_n` in a class function.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>> {
        let n = single_rank(chi)?;
        self.table(n)?.decompose(chi)
    }

    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<CyclotomicNumber> {
        let n = single_rank(a)?;
        self.table(n)?.inner_product(a, b)
    }
}

fn single_rank(chi: &ClassFunction) -> Result<usize> {
    match chi.domain.as_slice() {
        [n] => Ok(*n),
        d => Err(Error::Domain(format!("expected a class function on a single GL_n, got domain {d:?}"))),
    }
}
