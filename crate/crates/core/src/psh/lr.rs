//! Littlewood–Richardson coefficients by enumerating LR tableaux.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use parking_lot::RwLock;

use crate::partition::Partition;

type Key = (Partition, Partition, Partition);

fn memo() -> &'static RwLock<HashMap<Key, u64>> {
    static MEMO: OnceLock<RwLock<HashMap<Key, u64>>> = OnceLock::new();
    MEMO.get_or_init(RwLock::default)
}

/// `c^λ_{μν}`: the number of semistandard tableaux of shape `λ/μ` and
/// content `ν` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if mu.is_empty() || nu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&c) = memo().read().get(&key) {
        return c;
    }
    let c = count_tableaux(lambda, mu, nu);
    memo().write().insert(key, c);
    c
}

fn count_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // cells in reverse reading order: rows top to bottom, each right to left
    let cells: Vec<(usize, usize)> =
        (0..lambda.len()).flat_map(|r| (mu.part(r)..lambda.part(r)).rev().map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = (0..lambda.len()).map(|r| vec![usize::MAX; lambda.part(r)]).collect();
    let mut content = vec![0usize; nu.len()];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        content: &mut Vec<usize>,
        mu: &Partition,
        nu: &Partition,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        // weakly increasing along rows: bounded by the (already filled) right neighbour
        let upper = grid[r].get(c + 1).copied().filter(|&v| v != usize::MAX).unwrap_or(nu.len() - 1);
        // strictly increasing down columns
        let lower = if r > 0 && c >= mu.part(r - 1) { grid[r - 1][c] + 1 } else { 0 };
        let mut total = 0;
        for v in lower..=upper.min(nu.len() - 1) {
            if content[v] >= nu.part(v) || (v > 0 && content[v] >= content[v - 1]) {
                continue;
            }
            content[v] += 1;
            grid[r][c] = v;
            total += rec(k + 1, cells, grid, content, mu, nu);
            grid[r][c] = usize::MAX;
            content[v] -= 1;
        }
        total
    }
    rec(0, &cells, &mut grid, &mut content, mu, nu)
}

/// `s_μ s_ν = Σ_λ c^λ_{μν} s_λ`.
pub fn lr_product(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, u64> {
    Partition::all(mu.size() + nu.size())
        .into_iter()
        .filter_map(|l| {
            let c = lr_coefficient(&l, mu, nu);
            (c > 0).then_some((l, c))
        })
        .collect()
}

/// `Δ s_λ = Σ_{μ,ν} c^λ_{μν} s_μ ⊗ s_ν`.
pub fn lr_coproduct(lambda: &Partition) -> BTreeMap<(Partition, Partition), u64> {
    let mut out = BTreeMap::new();
    for k in 0..=lambda.size() {
        for mu in Partition::all(k).into_iter().filter(|m| lambda.contains(m)) {
            for nu in Partition::all(lambda.size() - k) {
                let c = lr_coefficient(lambda, &mu, &nu);
                if c > 0 {
                    out.insert((mu.clone(), nu), c);
                }
            }
        }
    }
    out
}
