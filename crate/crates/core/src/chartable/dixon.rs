//! Character tables by splitting the class algebra over a prime field
//! `F_ℓ` with `ℓ ≡ 1 mod e`, then lifting eigenvalue multiplicities to
//! exact cyclotomic values.

use std::sync::Arc;

use rayon::prelude::*;

use super::{Budget, CharacterTable, IrreducibleCharacter};
use crate::algebra::modp::{is_prime, PrimeField};
use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{GeneralLinearGroup, GroupSpec};

pub fn build_character_table(spec: &GroupSpec, budget: &Budget) -> Result<CharacterTable> {
    budget.check_group(spec)?;
    let group = Arc::new(GeneralLinearGroup::new(spec.clone()));
    build_for_group(group, budget)
}

pub(crate) fn build_for_group(group: Arc<GeneralLinearGroup>, budget: &Budget) -> Result<CharacterTable> {
    let order = group.order();
    let e = group.exponent();
    let ell = splitting_prime(order, e, budget.max_prime)?;
    let fp = PrimeField::new(ell);
    let r = group.num_classes();
    let id = group.identity_class();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| unit(r, i)).collect()];
    let mut by_size: Vec<usize> = (0..r).filter(|&j| j != id).collect();
    by_size.sort_by_key(|&j| (group.classes()[j].size, j));
    let mut ops = by_size.into_iter();
    while spaces.iter().any(|s| s.len() > 1) {
        let j = ops
            .next()
            .ok_or_else(|| Error::Inconsistent("class operators do not split the class algebra".into()))?;
        let m = class_matrix(&group, j, &fp)?;
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(&fp, &space, &m)?);
            }
        }
        spaces = next;
    }

    let inverses = group.inverse_classes()?;
    let powers = group.power_maps()?;
    let sizes: Vec<u64> = group.classes().iter().map(|c| (c.size % ell as u128) as u64).collect();
    let size_inv: Vec<u64> = sizes.iter().map(|&s| fp.inv(s).expect("class sizes are prime to ℓ")).collect();
    let order_mod = (order % ell as u128) as u64;
    let z = fp.root_of_unity(e);
    let max_degree = isqrt(order);

    let chars: Vec<IrreducibleCharacter> = spaces
        .into_par_iter()
        .map(|space| {
            let mut v = space.into_iter().next().expect("one-dimensional space");
            let lead = fp.inv(v[id]).ok_or_else(|| Error::Inconsistent("eigenvector vanishes at identity".into()))?;
            for x in v.iter_mut() {
                *x = fp.mul(*x, lead);
            }
            let s = (0..r).fold(0, |acc, k| fp.add(acc, fp.mul(fp.mul(v[k], v[inverses[k]]), size_inv[k])));
            let target = fp.mul(order_mod, fp.inv(s).ok_or_else(|| Error::Inconsistent("degenerate norm".into()))?);
            let degree = (1..=max_degree)
                .find(|&d| fp.mul(d % ell, d % ell) == target)
                .ok_or_else(|| Error::Inconsistent("no integral degree matches the norm".into()))?;
            let modular: Vec<u64> = (0..r).map(|k| fp.mul(fp.mul(v[k], degree % ell), size_inv[k])).collect();
            let values = (0..r)
                .map(|k| lift(&fp, &modular, &powers[k], z, e, degree))
                .collect::<Result<Vec<_>>>()?;
            Ok(IrreducibleCharacter { values, degree })
        })
        .collect::<Result<_>>()?;
    CharacterTable::from_parts(group, chars, ell)
}

/// Smallest prime `ℓ ≡ 1 mod e` with `ℓ > 2√|G|`.
fn splitting_prime(order: u128, e: u64, max_prime: u64) -> Result<u64> {
    let lower = 2 * isqrt(order) + 2;
    let mut ell = (lower / e + 1) * e + 1;
    while ell <= max_prime {
        if is_prime(ell) {
            return Ok(ell);
        }
        ell += e;
    }
    Err(Error::Config(format!("no prime ℓ ≡ 1 mod {e} above {lower} and below {max_prime}")))
}

fn isqrt(n: u128) -> u64 {
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x as u64
}

fn unit(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// `M[k][l] = #{y ∈ C_j : y^{-1} z_k ∈ C_l}` mod ℓ, the transpose of the
/// structure-constant matrix, so that `(|C_k| χ(z_k) / χ(1))_k` is a left
/// eigenvector with eigenvalue `ω_χ(C_j)`.
fn class_matrix(group: &GeneralLinearGroup, j: usize, fp: &PrimeField) -> Result<Vec<Vec<u64>>> {
    let f = group.field();
    let elements = group.class_elements(j);
    if elements.len() as u128 != group.classes()[j].size {
        return Err(Error::Inconsistent(format!(
            "orbit of class {j} has {} elements, expected {}",
            elements.len(),
            group.classes()[j].size
        )));
    }
    let r = group.num_classes();
    let reps: Vec<_> = group.classes().iter().map(|c| c.representative.clone()).collect();
    let counts = elements
        .par_iter()
        .try_fold(
            || vec![0u64; r * r],
            |mut acc, y| -> Result<Vec<u64>> {
                let yi = y.inverse(f).expect("class elements are invertible");
                for (k, z) in reps.iter().enumerate() {
                    let l = group.index_of(&yi.mul(z, f))?;
                    acc[k * r + l] += 1;
                }
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u64; r * r],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(counts.chunks(r).map(|row| row.iter().map(|&c| fp.reduce(c)).collect()).collect())
}

/// Splits an invariant subspace (RREF row basis) into eigenspaces of `M`
/// acting on the right.
fn split(fp: &PrimeField, basis: &[Vec<u64>], m: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = m.len();
    let dim = basis.len();
    let pivots: Vec<usize> =
        basis.iter().map(|b| b.iter().position(|&x| x != 0).expect("basis rows are nonzero")).collect();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|k| (0..r).filter(|&l| b[l] != 0).fold(0, |acc, l| fp.add(acc, fp.mul(b[l], m[l][k]))))
                .collect()
        })
        .collect();
    let a: Vec<Vec<u64>> = images.iter().map(|img| pivots.iter().map(|&p| img[p]).collect()).collect();
    let roots = fp.roots(&fp.charpoly(&a));
    if roots.len() == 1 {
        return Ok(vec![basis.to_vec()]);
    }
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..dim)
            .map(|i| (0..dim).map(|i2| if i == i2 { fp.sub(a[i][i2], lambda) } else { a[i][i2] }).collect())
            .collect();
        let coeffs = fp.left_kernel(&shifted);
        let mut rows: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                (0..r)
                    .map(|k| (0..dim).fold(0, |acc, i| fp.add(acc, fp.mul(c[i], basis[i][k]))))
                    .collect()
            })
            .collect();
        fp.rref(&mut rows);
        total += rows.len();
        out.push(rows);
    }
    if total != dim {
        return Err(Error::Inconsistent("class operator is not diagonalizable mod ℓ".into()));
    }
    Ok(out)
}

/// Recovers `χ(g) = Σ_t m_t ζ_o^t` from the eigenvalue multiplicities
/// `m_t = (1/o) Σ_s χ(g^s) ζ_o^{-ts}` computed mod ℓ.
fn lift(fp: &PrimeField, modular: &[u64], powers: &[usize], z: u64, e: u64, degree: u64) -> Result<CyclotomicNumber> {
    let o = powers.len() as u64;
    let zo = fp.pow(z, e / o);
    let zo_inv = fp.inv(zo).expect("roots of unity are invertible");
    let o_inv = fp.inv(o % fp.modulus).expect("element orders are prime to ℓ");
    let mut mult = Vec::with_capacity(o as usize);
    for t in 0..o {
        let step = fp.pow(zo_inv, t);
        let mut acc = 0;
        let mut w = 1;
        for &c in powers {
            acc = fp.add(acc, fp.mul(modular[c], w));
            w = fp.mul(w, step);
        }
        let m = fp.mul(acc, o_inv);
        if m > degree {
            return Err(Error::Inconsistent(format!("eigenvalue multiplicity {m} exceeds degree {degree}")));
        }
        mult.push(m as i64);
    }
    if mult.iter().sum::<i64>() != degree as i64 {
        return Err(Error::Inconsistent("eigenvalue multiplicities do not sum to the degree".into()));
    }
    Ok(CyclotomicNumber::from_root_multiplicities(o as u32, &mult))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_primes() {
        assert_eq!(splitting_prime(48, 24, 1 << 31).unwrap(), 73);
        assert_eq!(splitting_prime(11232, 312, 1 << 31).unwrap(), 313);
        assert!(matches!(splitting_prime(11232, 312, 300), Err(Error::Config(_))));
    }

    #[test]
    fn integer_square_root() {
        assert_eq!(isqrt(48), 6);
        assert_eq!(isqrt(49), 7);
        assert_eq!(isqrt(0), 0);
    }
}
