use std::collections::BTreeMap;

use glnq_core::chartable::{Budget, Family};
use glnq_core::partition::Partition;
use glnq_core::psh::selfcheck::default_labels;
use glnq_core::psh::*;

/// Schur polynomial in `k` variables via semistandard tableaux, as a map
/// from exponent vectors to coefficients.
fn schur(lambda: &Partition, k: usize) -> BTreeMap<Vec<u32>, i64> {
    let cells: Vec<(usize, usize)> =
        (0..lambda.len()).flat_map(|r| (0..lambda.part(r)).map(move |c| (r, c))).collect();
    let mut grid = vec![vec![0usize; lambda.part(0)]; lambda.len()];
    let mut out = BTreeMap::new();
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        k: usize,
        out: &mut BTreeMap<Vec<u32>, i64>,
    ) {
        if i == cells.len() {
            let mut e = vec![0u32; k];
            for &(r, c) in cells {
                e[grid[r][c]] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[i];
        let lo = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
        let lo = if c > 0 { lo.max(grid[r][c - 1]) } else { lo };
        for v in lo..k {
            grid[r][c] = v;
            rec(i + 1, cells, grid, k, out);
        }
    }
    rec(0, &cells, &mut grid, k, &mut out);
    out
}

fn poly_mul(a: &BTreeMap<Vec<u32>, i64>, b: &BTreeMap<Vec<u32>, i64>) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    for (x, &c) in a {
        for (y, &d) in b {
            let e: Vec<u32> = x.iter().zip(y).map(|(u, v)| u + v).collect();
            *out.entry(e).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn lr_coefficients_match_schur_polynomial_products() {
    // enough variables that the Schur polynomials of degree ≤ 5 are independent
    for m in 0..=5 {
        let k = m.max(1);
        for i in 0..=m {
            for mu in Partition::all(i) {
                for nu in Partition::all(m - i) {
                    let mut expected = poly_mul(&schur(&mu, k), &schur(&nu, k));
                    for lam in Partition::all(m) {
                        let c = lr_coefficient(&lam, &mu, &nu) as i64;
                        for (e, v) in schur(&lam, k) {
                            *expected.entry(e).or_insert(0) -= c * v;
                        }
                    }
                    expected.retain(|_, c| *c != 0);
                    assert!(expected.is_empty(), "{mu} * {nu}");
                }
            }
        }
    }
}

#[test]
fn selfcheck_to_degree_six() {
    let r = psh_selfcheck(&default_labels(), 6);
    assert!(r.passed, "{:?}", r.failures);
    assert!(r.hopf_pairs_checked > 0 && r.associativity_checked > 0);
}

#[test]
fn crosscheck_rank_one() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let r = crosscheck_against_group(&fam, 1).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.labels.len(), 2);
}

#[test]
fn crosscheck_gl2_f3() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let r = crosscheck_against_group(&fam, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.counts[2], glnq_core::psh::crosscheck::DegreeCount { m: 2, basis_elements: 8, irreducibles: 8 });
    assert_eq!(r.labels.iter().filter(|l| l.rank == 2).count(), 3);
    assert_eq!(r.rho_squared.len(), 2);
    for sq in &r.rho_squared {
        assert_eq!(sq.constituents.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(sq.constituents.iter().filter(|c| c.2 == 1).count(), 1);
    }
}

#[test]
fn crosscheck_gl2_f5() {
    let fam = Family::new(5, Budget::default()).unwrap();
    let r = crosscheck_against_group(&fam, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.labels.iter().filter(|l| l.rank == 2).count(), 10);
}

#[test]
fn crosscheck_gl3_f3() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let r = crosscheck_against_group(&fam, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert!(r.restrictions_checked > 0);
}

#[test]
fn dual_is_an_involution_on_random_elements() {
    use rand::{Rng, SeedableRng};
    let labels = default_labels();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let m = rng.gen_range(0..=5);
        let basis = basis_of_degree(&labels, m);
        let mut a = PSHElement::zero();
        for _ in 0..3 {
            a.add_term(basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(-3..=3));
        }
        assert_eq!(psh_dual(&psh_dual(&a)), a);
    }
}
