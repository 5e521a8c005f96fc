//! Univariate polynomials over `F_q`, stored as coefficient vectors of
//! encoded field elements from the constant term upwards. The zero
//! polynomial is the empty vector; otherwise the last entry is nonzero.

use super::fq::FqField;

pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(field: &FqField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(field: &FqField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = field.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = field.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[shift + j] = field.sub(r[shift + j], field.mul(c, bj));
        }
        r = trim(r);
    }
    r
}

/// Quotient of `a` by a monic divisor `b`; the remainder must vanish.
pub fn div_exact(field: &FqField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else { return Vec::new() };
    if da < db {
        return Vec::new();
    }
    let mut quot = vec![0; da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr];
        let shift = dr - db;
        quot[shift] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[shift + j] = field.sub(r[shift + j], field.mul(c, bj));
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty());
    trim(quot)
}

/// `a^k`, by repeated multiplication.
pub fn pow(field: &FqField, a: &[u32], k: usize) -> Vec<u32> {
    (0..k).fold(vec![1], |acc, _| mul(field, &acc, a))
}

/// All monic polynomials of the given degree, in lexicographic order of
/// their coefficient vectors read from the constant term upwards.
pub fn monic_polys(field: &FqField, deg: usize) -> Vec<Vec<u32>> {
    let q = field.q() as u64;
    let count = q.pow(deg as u32);
    (0..count)
        .map(|t| {
            // constant term is the most significant digit so that the numeric
            // order of t is the lexicographic order of the coefficient vector
            let mut c = vec![0; deg + 1];
            let mut x = t;
            for i in (0..deg).rev() {
                c[i] = (x % q) as u32;
                x /= q;
            }
            c[deg] = 1;
            c
        })
        .collect()
}

/// Monic irreducible polynomials of degree `deg`, lexicographically ordered
/// as in [`monic_polys`].
pub fn monic_irreducibles(field: &FqField, deg: usize) -> Vec<Vec<u32>> {
    assert!(deg >= 1);
    let smaller: Vec<Vec<u32>> = (1..=deg / 2).flat_map(|d| monic_irreducibles(field, d)).collect();
    monic_polys(field, deg)
        .into_iter()
        .filter(|f| smaller.iter().all(|g| !rem(field, f, g).is_empty()))
        .collect()
}
