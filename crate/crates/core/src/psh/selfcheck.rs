//! Exhaustive verification of the PSH axioms on the free model.

use rayon::prelude::*;
use serde::Serialize;

use super::*;

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SelfcheckReport {
    pub max_degree: usize,
    pub labels: Vec<CuspidalLabel>,
    pub basis_sizes: Vec<usize>,
    pub lr_symmetry_checked: usize,
    pub products_checked: usize,
    pub coproducts_checked: usize,
    pub hopf_pairs_checked: usize,
    pub associativity_checked: usize,
    pub dual_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// The default label set: a self-dual and a dual pair in degree 1, and a
/// self-dual label in degree 2.
pub fn default_labels() -> Vec<CuspidalLabel> {
    let (a, b) = CuspidalLabel::dual_pair(1, 2, 1);
    vec![CuspidalLabel::self_dual(0, 1), a, b, CuspidalLabel::self_dual(3, 2)]
}

/// Positivity, adjointness of `m` and `m*`, Hopf compatibility, LR
/// symmetry, associativity, and that `*` is an involutive ring automorphism,
/// all exhaustively up to `max_degree`. Hopf compatibility and associativity
/// are run on single-label elements up to `min(max_degree, 4)`.
pub fn psh_selfcheck(labels: &[CuspidalLabel], max_degree: usize) -> SelfcheckReport {
    let mut report = SelfcheckReport { max_degree, labels: labels.to_vec(), ..Default::default() };
    let bases: Vec<Vec<PSHBasisElement>> = (0..=max_degree).map(|m| basis_of_degree(labels, m)).collect();
    report.basis_sizes = bases.iter().map(Vec::len).collect();
    let mut failures = Vec::new();

    for m in 0..=max_degree {
        for lam in Partition::all(m) {
            for k in 0..=m {
                for mu in Partition::all(k) {
                    for nu in Partition::all(m - k) {
                        report.lr_symmetry_checked += 1;
                        if lr_coefficient(&lam, &mu, &nu) != lr_coefficient(&lam, &nu, &mu) {
                            failures.push(format!("LR symmetry fails at {lam}, {mu}, {nu}"));
                        }
                    }
                }
            }
        }
    }

    // ⟨ab, c⟩ = ⟨a ⊗ b, m*(c)⟩ for every triple of basis elements
    let pairs: Vec<(usize, usize)> =
        (0..=max_degree).flat_map(|i| (0..=max_degree - i).map(move |j| (i, j))).collect();
    let adjoint: Vec<(usize, usize, Vec<String>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut fails = Vec::new();
            let mut products = 0;
            let mut coproducts = 0;
            let products_of: Vec<Vec<PSHElement>> = bases[i]
                .iter()
                .map(|a| bases[j].iter().map(|b| multiply_basis(a, b)).collect())
                .collect();
            for row in &products_of {
                for prod in row {
                    products += 1;
                    if !prod.is_positive() {
                        fails.push("product with a non-positive coefficient".to_string());
                    }
                }
            }
            for c in &bases[i + j] {
                let co = comultiply_basis(c);
                coproducts += 1;
                if !co.is_positive() {
                    fails.push(format!("coproduct of {c} has a non-positive coefficient"));
                }
                for (ai, a) in bases[i].iter().enumerate() {
                    for (bi, b) in bases[j].iter().enumerate() {
                        if products_of[ai][bi].coeff(c) != co.coeff(a, b) {
                            fails.push(format!("adjointness fails for a = {a}, b = {b}, c = {c}"));
                        }
                    }
                }
            }
            (products, coproducts, fails)
        })
        .collect();
    for (p, c, f) in adjoint {
        report.products_checked += p;
        report.coproducts_checked += c;
        failures.extend(f);
    }

    let hopf_degree = max_degree.min(4);
    for label in labels {
        let single: Vec<Vec<PSHBasisElement>> =
            (0..=hopf_degree).map(|m| basis_of_degree(std::slice::from_ref(label), m)).collect();
        for i in 0..=hopf_degree {
            for j in 0..=hopf_degree - i {
                for a in &single[i] {
                    for b in &single[j] {
                        report.hopf_pairs_checked += 1;
                        let ab = multiply_basis(a, b);
                        let lhs = psh_comultiply(&ab);
                        let rhs = comultiply_basis(a).multiply(&comultiply_basis(b));
                        if lhs != rhs {
                            failures.push(format!("Hopf compatibility fails for {a}, {b}"));
                        }
                        for k in 0..=hopf_degree - i - j {
                            for c in &single[k] {
                                report.associativity_checked += 1;
                                let left = psh_multiply(&ab, &PSHElement::basis(c.clone()));
                                let right = psh_multiply(&PSHElement::basis(a.clone()), &multiply_basis(b, c));
                                if left != right {
                                    failures.push(format!("associativity fails for {a}, {b}, {c}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // * is involutive and multiplicative
    for i in 0..=max_degree {
        for j in 0..=max_degree - i {
            for a in &bases[i] {
                if dual_basis(&dual_basis(a)) != *a {
                    failures.push(format!("dual is not an involution on {a}"));
                }
                for b in &bases[j] {
                    report.dual_checked += 1;
                    let lhs = psh_dual(&multiply_basis(a, b));
                    let rhs = multiply_basis(&dual_basis(a), &dual_basis(b));
                    if lhs != rhs {
                        failures.push(format!("dual is not multiplicative on {a}, {b}"));
                    }
                }
            }
        }
    }

    for (m, basis) in bases.iter().enumerate() {
        for b in basis {
            let rebuilt = primary_decomposition(b).into_iter().fold(PSHElement::basis(PSHBasisElement::one()), |acc, (l, lam)| {
                psh_multiply(&acc, &PSHElement::basis(PSHBasisElement::primary(l, lam)))
            });
            if rebuilt.coeff(b) != 1 || b.degree() != m {
                failures.push(format!("primary factors of {b} do not reconstruct it"));
            }
        }
    }

    failures.sort();
    failures.dedup();
    report.passed = failures.is_empty();
    report.failures = failures;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selfcheck_passes() {
        let r = psh_selfcheck(&default_labels(), 3);
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.basis_sizes[0], 1);
        assert_eq!(r.basis_sizes[1], 3);
    }
}
