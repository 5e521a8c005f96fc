use glnq_core::algebra::CyclotomicNumber;
use glnq_core::chartable::{build_character_table, cache, Budget, ClassFunction, Family};
use glnq_core::group::{CompositionSpec, GroupSpec};

fn comp(parts: &[usize]) -> CompositionSpec {
    CompositionSpec::new(parts.to_vec()).unwrap()
}

/// Frobenius orbits of characters of `F_{q^n}^*` not factoring through the
/// norm to any proper subfield, counted by Möbius inversion over `d | n`.
fn necklace_count(n: u64, q: u64) -> u64 {
    fn mobius(mut k: u64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= k {
            if k.is_multiple_of(p) {
                k /= p;
                if k.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if k > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(n / d) * (q.pow(d as u32) as i64 - 1)).sum();
    total as u64 / n
}

#[test]
fn gl3_f3_table_is_exact() {
    let t = build_character_table(&GroupSpec::new(3, 3).unwrap(), &Budget::default()).unwrap();
    let sum: u128 = t.degrees().iter().map(|&d| (d as u128).pow(2)).sum();
    assert_eq!(sum, 11232);
    assert_eq!(t.len(), 24);
    assert_eq!(t.degrees().iter().filter(|&&d| d == 1).count(), 2);
}

#[test]
fn linear_character_count_is_q_minus_one() {
    for (n, q) in [(1, 5), (2, 3), (2, 5), (1, 9), (2, 9)] {
        let t = build_character_table(&GroupSpec::new(n, q).unwrap(), &Budget::default()).unwrap();
        assert_eq!(t.degrees().iter().filter(|&&d| d == 1).count(), q as usize - 1, "GL_{n}(F_{q})");
    }
}

#[test]
fn duality_permutes_rows() {
    let t = build_character_table(&GroupSpec::new(2, 5).unwrap(), &Budget::default()).unwrap();
    let perm = t.dual_permutation().unwrap();
    let mut sorted = perm.clone();
    sorted.sort();
    assert_eq!(sorted, (0..t.len()).collect::<Vec<_>>());
    assert!(perm.iter().enumerate().all(|(i, &j)| perm[j] == i));
}

#[test]
fn cuspidal_counts_match_necklaces() {
    for (n, q) in [(2, 3), (2, 5), (3, 3)] {
        let fam = Family::new(q, Budget::default()).unwrap();
        let found = fam.cuspidal_indices(n).unwrap().len() as u64;
        assert_eq!(found, necklace_count(n as u64, q as u64), "GL_{n}(F_{q})");
    }
    assert_eq!(necklace_count(2, 7), 21);
    assert_eq!(necklace_count(3, 3), 8);
}

#[test]
fn gl2_f3_cuspidals_have_degree_two() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let t = fam.table(2).unwrap();
    let cusp = fam.cuspidal_indices(2).unwrap();
    assert!(cusp.iter().all(|&i| t.chars()[i].degree == 2));
    assert!(!fam.is_cuspidal(&t.character(t.trivial())).unwrap());
}

#[test]
fn induction_of_trivial_characters() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let g1 = fam.table(1).unwrap();
    let triv = g1.character(g1.trivial());
    let ind = fam.parabolic_induce(&comp(&[1, 1]), &[triv.clone(), triv]).unwrap();
    let t2 = fam.table(2).unwrap();
    assert_eq!(ind.values[t2.group().identity_class()], CyclotomicNumber::from_integer(4));
    assert_eq!(fam.inner_product(&ind, &ind).unwrap(), CyclotomicNumber::from_integer(2));
    let m = fam.decompose(&ind).unwrap();
    assert_eq!(m.iter().filter(|&&x| x == 1).count(), 2);
    let generic: Vec<i64> = (0..t2.len())
        .filter(|&i| m[i] == 1)
        .map(|i| fam.whittaker_multiplicity(&t2.character(i)).unwrap())
        .collect();
    assert_eq!(generic.iter().filter(|&&w| w == 1).count(), 1);
}

#[test]
fn induction_of_distinct_linear_characters_is_irreducible() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let g1 = fam.table(1).unwrap();
    let ind = fam.parabolic_induce(&comp(&[1, 1]), &[g1.character(0), g1.character(1)]).unwrap();
    assert_eq!(fam.inner_product(&ind, &ind).unwrap(), CyclotomicNumber::one());
    let t2 = fam.table(2).unwrap();
    assert_eq!(ind.values[t2.group().identity_class()], CyclotomicNumber::from_integer(4));
}

#[test]
fn single_block_induction_and_restriction_are_identities() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let t = fam.table(2).unwrap();
    for i in 0..t.len() {
        let chi = t.character(i);
        assert_eq!(fam.parabolic_induce(&comp(&[2]), std::slice::from_ref(&chi)).unwrap(), chi);
        assert_eq!(fam.jacquet_restrict(&comp(&[2]), &chi).unwrap().values, chi.values);
    }
}

#[test]
fn steinberg_restriction_to_torus() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let t2 = fam.table(2).unwrap();
    let g1 = fam.table(1).unwrap();
    let triv1 = g1.character(g1.trivial());
    let steinberg = (0..t2.len()).find(|&i| t2.chars()[i].degree == 3 && t2.chars()[i].is_real()).unwrap();
    let c = comp(&[1, 1]);
    let r = fam.jacquet_restrict(&c, &t2.character(steinberg)).unwrap();
    let sigma = fam.outer_product(&c, &[triv1.clone(), triv1]).unwrap();
    let lhs = fam.levi_inner_product(&c, &r, &sigma).unwrap();
    let ind = fam.induce_from_levi(&c, &sigma).unwrap();
    assert_eq!(lhs, fam.inner_product(&t2.character(steinberg), &ind).unwrap());
}

#[test]
fn whittaker_of_trivial_is_zero() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let t2 = fam.table(2).unwrap();
    assert_eq!(fam.whittaker_multiplicity(&t2.character(t2.trivial())).unwrap(), 0);
}

#[test]
fn gelfand_graev_is_multiplicity_free() {
    // the multiplicities of ψ in χ|_U are those of χ in Ind_U^G ψ, whose degree is |G|/|U|
    for q in [3, 5] {
        let fam = Family::new(q, Budget::default()).unwrap();
        let t2 = fam.table(2).unwrap();
        let w: Vec<i64> = (0..t2.len()).map(|i| fam.whittaker_multiplicity(&t2.character(i)).unwrap()).collect();
        assert!(w.iter().all(|&m| m <= 1));
        let degree: u64 = w.iter().zip(t2.chars()).map(|(&m, c)| m as u64 * c.degree).sum();
        assert_eq!(degree as u128, t2.group().order() / q as u128);
    }
}

#[test]
fn whittaker_rejects_bad_domains() {
    let fam = Family::new(3, Budget::default()).unwrap();
    let bad = ClassFunction::new(vec![1, 1], vec![CyclotomicNumber::one(); 4]);
    assert!(fam.whittaker_multiplicity(&bad).is_err());
    assert!(fam.parabolic_induce(&comp(&[1, 1]), &[]).is_err());
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let fam = Family::new(3, Budget::default()).unwrap().with_cache(dir.path());
    let built = fam.table(2).unwrap();
    assert_eq!(fam.cache_status(2), Some(cache::CacheStatus::Built));

    let again = Family::new(3, Budget::default()).unwrap().with_cache(dir.path());
    let loaded = again.table(2).unwrap();
    assert_eq!(again.cache_status(2), Some(cache::CacheStatus::Hit));
    assert_eq!(loaded.chars(), built.chars());

    let path = cache::cache_path(dir.path(), 2, 3);
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\"degree\": 4", "\"degree\": 5", 1);
    assert_ne!(tampered, text);
    std::fs::write(&path, tampered).unwrap();
    let third = Family::new(3, Budget::default()).unwrap().with_cache(dir.path());
    assert_eq!(third.table(2).unwrap().chars(), built.chars());
    assert_eq!(third.cache_status(2), Some(cache::CacheStatus::Rebuilt));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn cache_rejects_wrong_values() {
    let t = build_character_table(&GroupSpec::new(2, 3).unwrap(), &Budget::default()).unwrap();
    let json = cache::to_json(&t).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    doc["characters"][7]["values"][0] = serde_json::Value::String("1:3/1".into());
    let err = cache::from_json(&doc.to_string(), t.group().clone());
    assert!(err.is_err());
    assert!(cache::from_json(&json, t.group().clone()).is_ok());
}
