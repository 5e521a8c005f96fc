use std::sync::Arc;

use glnq_core::algebra::{CyclotomicNumber, FqField};
use glnq_core::group::subgroups::{centralizer_factors, involution_centralizer_classes};
use glnq_core::group::{GeneralLinearGroup, GroupSpec, InvolutionSpec, Matrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn field_strategy() -> impl Strategy<Value = (Arc<FqField>, u32, u32, u32)> {
    prop_oneof![Just(3u32), Just(5), Just(9), Just(27)].prop_flat_map(|q| {
        let f = FqField::new(q).unwrap();
        (Just(f), 0..q, 0..q, 0..q)
    })
}

fn cyclotomic_strategy() -> impl Strategy<Value = CyclotomicNumber> {
    prop_oneof![Just(1u32), Just(3), Just(4), Just(5), Just(8), Just(12)].prop_flat_map(|order| {
        proptest::collection::vec(-4i64..=4, order as usize)
            .prop_map(move |w| CyclotomicNumber::from_root_multiplicities(order, &w))
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_strategy()) {
        let (x, y, z) = (f.element(a), f.element(b), f.element(c));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x + &(-&x)).is_zero());
        if !x.is_zero() {
            prop_assert_eq!((&x * &x.inv().unwrap()).index(), 1);
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(a in cyclotomic_strategy(), b in cyclotomic_strategy()) {
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.is_real(), a.conj() == a);
    }

    #[test]
    fn canonical_form_is_idempotent(a in cyclotomic_strategy()) {
        let again = CyclotomicNumber::from_coeffs(a.order(), &a.coeffs()).unwrap();
        prop_assert_eq!(again.coeffs(), a.coeffs());
        let (re, im) = a.to_complex();
        let (re2, im2) = again.to_complex();
        prop_assert!((re - re2).abs() < 1e-9 && (im - im2).abs() < 1e-9);
    }

    #[test]
    fn multiplication_agrees_numerically(a in cyclotomic_strategy(), b in cyclotomic_strategy()) {
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let (pr, pi) = (&a * &b).to_complex();
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
    }
}

fn random_invertible(rng: &mut impl Rng, n: usize, f: &FqField) -> Matrix {
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
        let m = Matrix::from_data(n, data);
        if m.is_invertible(f) {
            return m;
        }
    }
}

#[test]
fn class_of_is_conjugation_invariant() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for (n, q, trials) in [(2, 3, 300), (3, 3, 400), (3, 5, 200), (2, 9, 100)] {
        let g = GeneralLinearGroup::new(GroupSpec::new(n, q).unwrap());
        let f = g.field().clone();
        for _ in 0..trials {
            let m = random_invertible(&mut rng, n, &f);
            let x = random_invertible(&mut rng, n, &f);
            let xi = x.inverse(&f).unwrap();
            assert_eq!(g.class_of(&m.conjugate_by(&x, &xi, &f)).unwrap(), g.class_of(&m).unwrap());
        }
    }
}

#[test]
fn class_sizes_match_orbits() {
    for (n, q) in [(2, 3), (2, 5), (3, 3)] {
        let g = GeneralLinearGroup::new(GroupSpec::new(n, q).unwrap());
        let total: u128 = g.classes().iter().map(|c| c.size).sum();
        assert_eq!(total, g.order());
        for (i, c) in g.classes().iter().enumerate() {
            assert_eq!(c.size * c.centralizer_order, g.order());
            if g.order() <= 10_000 {
                let orbit = g.class_elements(i);
                assert_eq!(orbit.len() as u128, c.size);
                assert!(orbit.iter().all(|m| g.index_of(m).unwrap() == i));
            }
        }
    }
}

#[test]
fn jordan_block_label_survives_all_conjugations() {
    let spec = GroupSpec::new(2, 3).unwrap();
    let g = GeneralLinearGroup::new(spec.clone());
    let f = g.field().clone();
    let j = Matrix::from_rows(&[&[1, 1], &[0, 1]]);
    let label = g.class_of(&j).unwrap();
    assert_eq!(label.to_compact(), "2.1:2");
    for x in glnq_core::group::all_elements(&spec, u128::MAX).unwrap() {
        let xi = x.inverse(&f).unwrap();
        assert_eq!(g.class_of(&j.conjugate_by(&x, &xi, &f)).unwrap(), label);
    }
}

#[test]
fn fusion_is_well_defined() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let spec = GroupSpec::new(3, 3).unwrap();
    let g = GeneralLinearGroup::new(spec.clone());
    let f = g.field().clone();
    let inv = InvolutionSpec::new(3, 1).unwrap();
    let (a, b) = centralizer_factors(&inv, &spec).unwrap();
    let classes = involution_centralizer_classes(&inv, &g, &a, &b).unwrap();
    assert_eq!(classes.len(), 16);
    assert_eq!(classes.iter().map(|c| c.size).sum::<u128>(), 96);
    for c in &classes {
        assert!(c.fused_label.parts().len() <= 2);
        for _ in 0..5 {
            let h = Matrix::block_diag(&[random_invertible(&mut rng, 1, &f), random_invertible(&mut rng, 2, &f)]);
            let hi = h.inverse(&f).unwrap();
            assert_eq!(g.class_of(&c.representative.conjugate_by(&h, &hi, &f)).unwrap(), c.fused_label);
        }
    }
}
