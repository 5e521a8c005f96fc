//! Realizes the free PSH model inside `⊕_m R(GL_m(F_q))` and checks that
//! induction, restriction, duality and genericity match it exactly.
//!
//! The dictionary sends `{ρ : λ}` to the Jacobi–Trudi determinant
//! `det(h_{λ_i - i + j})`, where `h_m` is the unique generic constituent of
//! `ρ^m`, and a general basis element to the parabolic product of its
//! primary factors.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::*;
use crate::algebra::CyclotomicNumber;
use crate::chartable::{ClassFunction, Family};
use crate::error::Result;
use crate::group::CompositionSpec;

pub const CROSSCHECK_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LabelRecord {
    pub label: CuspidalLabel,
    /// The cuspidal is row `row` of the table of `GL_rank`.
    pub rank: usize,
    pub row: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeCount {
    pub m: usize,
    pub basis_elements: usize,
    pub irreducibles: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RhoSquared {
    pub label: u32,
    /// `(row, multiplicity, Whittaker multiplicity)` for each constituent.
    pub constituents: Vec<(usize, i64, i64)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub format_version: u32,
    pub n: usize,
    pub q: u32,
    pub labels: Vec<LabelRecord>,
    pub counts: Vec<DegreeCount>,
    pub rho_squared: Vec<RhoSquared>,
    pub products_checked: usize,
    pub restrictions_checked: usize,
    pub whittaker_checked: usize,
    pub duals_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

struct Dictionary<'a> {
    family: &'a Family,
    /// `h[(label id, m)]`, a character of `GL_{m deg ρ}`.
    h: HashMap<(u32, usize), ClassFunction>,
    images: HashMap<PSHBasisElement, ClassFunction>,
    rows: HashMap<PSHBasisElement, usize>,
}

impl Dictionary<'_> {
    fn tensor_image(&self, factors: &[ClassFunction]) -> Result<ClassFunction> {
        let parts: Vec<ClassFunction> = factors.iter().filter(|f| f.domain != [0]).cloned().collect();
        match parts.len() {
            0 => Ok(ClassFunction::on_group(0, vec![CyclotomicNumber::one()])),
            1 => Ok(parts.into_iter().next().unwrap()),
            _ => {
                let comp = CompositionSpec::new(parts.iter().map(|p| p.domain[0]).collect())?;
                self.family.parabolic_induce(&comp, &parts)
            }
        }
    }

    /// `Σ_σ sgn(σ) Π_i h_{λ_i - i + σ(i)}`.
    fn jacobi_trudi(&self, label: CuspidalLabel, lambda: &Partition) -> Result<ClassFunction> {
        let r = lambda.len();
        let rank = label.degree * lambda.size();
        let size = self.family.group(rank)?.num_classes();
        let mut acc = ClassFunction::on_group(rank, vec![CyclotomicNumber::zero(); size]);
        for (perm, sign) in permutations(r) {
            let idx: Vec<i64> = (0..r).map(|i| lambda.part(i) as i64 - i as i64 + perm[i] as i64).collect();
            if idx.iter().any(|&k| k < 0) {
                continue;
            }
            let factors: Vec<ClassFunction> = idx.iter().map(|&k| self.h[&(label.id, k as usize)].clone()).collect();
            let term = self.tensor_image(&factors)?;
            acc = if sign > 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    }
}

fn permutations(r: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        let r = used.len();
        if cur.len() == r {
            let inversions = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..r {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

pub fn crosscheck_against_group(family: &Family, n: usize) -> Result<CrosscheckReport> {
    let mut report = CrosscheckReport {
        format_version: CROSSCHECK_FORMAT_VERSION,
        n,
        q: family.q(),
        labels: Vec::new(),
        counts: Vec::new(),
        rho_squared: Vec::new(),
        products_checked: 0,
        restrictions_checked: 0,
        whittaker_checked: 0,
        duals_checked: 0,
        failures: Vec::new(),
        passed: false,
    };

    // cuspidal labels with duality read off from complex conjugation
    let mut ids: HashMap<(usize, usize), u32> = HashMap::new();
    let mut raw = Vec::new();
    for k in 1..=n {
        for row in family.cuspidal_indices(k)? {
            ids.insert((k, row), ids.len() as u32);
            raw.push((k, row));
        }
    }
    for &(k, row) in &raw {
        let perm = family.table(k)?.dual_permutation()?;
        let dual_id = *ids.get(&(k, perm[row])).ok_or_else(|| {
            crate::Error::Mismatch(format!("dual of cuspidal row {row} of GL_{k} is not cuspidal"))
        })?;
        report.labels.push(LabelRecord { label: CuspidalLabel { id: ids[&(k, row)], degree: k, dual_id }, rank: k, row });
    }
    let labels: Vec<CuspidalLabel> = report.labels.iter().map(|r| r.label).collect();

    let mut dict = Dictionary { family, h: HashMap::new(), images: HashMap::new(), rows: HashMap::new() };

    // h_m: the generic constituent of ρ^m
    for rec in &report.labels {
        let d = rec.rank;
        let rho = family.table(d)?.character(rec.row);
        dict.h.insert((rec.label.id, 0), ClassFunction::on_group(0, vec![CyclotomicNumber::one()]));
        dict.h.insert((rec.label.id, 1), rho.clone());
        for m in 2..=n / d {
            let comp = CompositionSpec::new(vec![d; m])?;
            let power = family.parabolic_induce(&comp, &vec![rho.clone(); m])?;
            let table = family.table(d * m)?;
            let mult = table.decompose(&power)?;
            let mut constituents = Vec::new();
            for (i, &c) in mult.iter().enumerate().filter(|(_, &c)| c != 0) {
                constituents.push((i, c, family.whittaker_multiplicity(&table.character(i))?));
            }
            let generic: Vec<&(usize, i64, i64)> = constituents.iter().filter(|x| x.2 > 0).collect();
            if generic.len() != 1 || generic[0].1 != 1 || generic[0].2 != 1 {
                report.failures.push(format!(
                    "{}^{m} does not have exactly one generic constituent of multiplicity one: {constituents:?}",
                    rec.label
                ));
                return Ok(report);
            }
            dict.h.insert((rec.label.id, m), table.character(generic[0].0));
            if m == 2 {
                let mults: Vec<i64> = constituents.iter().map(|x| x.1).collect();
                if mults != [1, 1] {
                    report.failures.push(format!("{}^2 has constituent multiplicities {mults:?}", rec.label));
                }
                report.rho_squared.push(RhoSquared { label: rec.label.id, constituents });
            }
        }
    }

    // the dictionary on every basis element of degree ≤ n
    let bases: Vec<Vec<PSHBasisElement>> = (0..=n).map(|m| basis_of_degree(&labels, m)).collect();
    for (m, basis) in bases.iter().enumerate() {
        let table = family.table(m)?;
        report.counts.push(DegreeCount { m, basis_elements: basis.len(), irreducibles: table.len() });
        if basis.len() != table.len() {
            report.failures.push(format!(
                "degree {m}: {} basis elements but {} irreducibles of GL_{m}",
                basis.len(),
                table.len()
            ));
            continue;
        }
        for b in basis {
            let factors = primary_decomposition(b)
                .into_iter()
                .map(|(l, lam)| dict.jacobi_trudi(l, &lam))
                .collect::<Result<Vec<_>>>()?;
            let image = dict.tensor_image(&factors)?;
            match table.find(&image.values) {
                Some(row) => {
                    dict.rows.insert(b.clone(), row);
                }
                None => report.failures.push(format!("image of {b} is not an irreducible character of GL_{m}")),
            }
            dict.images.insert(b.clone(), image);
        }
        let mut rows: Vec<usize> = basis.iter().filter_map(|b| dict.rows.get(b).copied()).collect();
        rows.sort_unstable();
        rows.dedup();
        if rows.len() != table.len() {
            report.failures.push(format!("degree {m}: the dictionary is not a bijection onto irreducibles"));
        }
    }
    if !report.failures.is_empty() {
        return Ok(report);
    }

    // products: all binary products of basis elements, and products of ≥ 3 cuspidals
    let mut product_cases: Vec<Vec<PSHBasisElement>> = Vec::new();
    for i in 1..n {
        for j in 1..=n - i {
            for a in &bases[i] {
                for b in &bases[j] {
                    product_cases.push(vec![a.clone(), b.clone()]);
                }
            }
        }
    }
    let primitive: Vec<PSHBasisElement> =
        labels.iter().map(|&l| PSHBasisElement::primary(l, Partition::row(1))).collect();
    fn sequences(prim: &[PSHBasisElement], budget: usize, cur: &mut Vec<PSHBasisElement>, out: &mut Vec<Vec<PSHBasisElement>>) {
        if cur.len() >= 3 {
            out.push(cur.clone());
        }
        for p in prim {
            if p.degree() <= budget {
                cur.push(p.clone());
                sequences(prim, budget - p.degree(), cur, out);
                cur.pop();
            }
        }
    }
    sequences(&primitive, n, &mut Vec::new(), &mut product_cases);
    let dict = &dict;
    let product_failures: Vec<String> = product_cases
        .par_iter()
        .map(|factors| -> Result<Option<String>> {
            let images: Vec<ClassFunction> = factors.iter().map(|f| dict.images[f].clone()).collect();
            let induced = dict.tensor_image(&images)?;
            let m = factors.iter().map(PSHBasisElement::degree).sum::<usize>();
            let observed = family.table(m)?.decompose(&induced)?;
            let expected = factors.iter().fold(PSHElement::basis(PSHBasisElement::one()), |acc, f| {
                psh_multiply(&acc, &PSHElement::basis(f.clone()))
            });
            let mut predicted = vec![0i64; observed.len()];
            for (b, &c) in expected.terms() {
                predicted[dict.rows[b]] += c;
            }
            Ok((predicted != observed).then(|| {
                let names: Vec<String> = factors.iter().map(ToString::to_string).collect();
                format!("product {} decomposes as {observed:?}, model predicts {predicted:?}", names.join(" · "))
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.products_checked = product_cases.len();
    report.failures.extend(product_failures);

    // restriction along (k, m - k) matches the coproduct
    let mut restriction_cases = Vec::new();
    for m in 2..=n {
        for c in &bases[m] {
            for k in 1..m {
                restriction_cases.push((c.clone(), k));
            }
        }
    }
    let restriction_failures: Vec<String> = restriction_cases
        .par_iter()
        .map(|(c, k)| -> Result<Vec<String>> {
            let m = c.degree();
            let comp = CompositionSpec::new(vec![*k, m - k])?;
            let r = family.jacquet_restrict(&comp, &dict.images[c])?;
            let co = comultiply_basis(c);
            let mut out = Vec::new();
            for a in &bases[*k] {
                for b in &bases[m - k] {
                    let sigma = family.outer_product(&comp, &[dict.images[a].clone(), dict.images[b].clone()])?;
                    let ip = family.levi_inner_product(&comp, &r, &sigma)?;
                    if ip != CyclotomicNumber::from_integer(co.coeff(a, b)) {
                        out.push(format!("restriction of {c} pairs to {ip} with {a} ⊗ {b}, coproduct gives {}", co.coeff(a, b)));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.restrictions_checked = restriction_cases.len();
    report.failures.extend(restriction_failures);

    // genericity and duality
    for basis in bases.iter().skip(1) {
        for b in basis {
            let w = family.whittaker_multiplicity(&dict.images[b])?;
            let single_rows = b.support().values().all(|p| p.len() == 1);
            report.whittaker_checked += 1;
            if w != i64::from(single_rows) {
                report.failures.push(format!("{b} has Whittaker multiplicity {w}"));
            }
            let dual = dual_basis(b);
            report.duals_checked += 1;
            if dict.images[&dual] != dict.images[b].conj() {
                report.failures.push(format!("image of the dual of {b} is not the conjugate character"));
            }
        }
    }

    report.failures.sort();
    report.passed = report.failures.is_empty();
    Ok(report)
}
