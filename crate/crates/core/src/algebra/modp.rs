//! Linear algebra over a word-sized prime field `F_ℓ`, used to split the
//! class algebra when building character tables.

/// Deterministic primality test by trial division; ℓ stays well below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Self {
        debug_assert!(is_prime(modulus));
        Self { modulus }
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a % self.modulus, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a % self.modulus != 0).then(|| self.pow(a, self.modulus - 2))
    }

    /// An element of exact multiplicative order `e`; requires `e | ℓ - 1`.
    pub fn root_of_unity(&self, e: u64) -> u64 {
        assert_eq!((self.modulus - 1) % e, 0);
        let factors = prime_factors(e);
        for g in 2..self.modulus {
            let cand = self.pow(g, (self.modulus - 1) / e);
            if factors.iter().all(|&r| self.pow(cand, e / r) != 1) {
                return cand;
            }
        }
        1
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]).expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : x A = 0}` (left kernel) for a square matrix `A`.
    pub fn left_kernel(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        // left kernel of A = right kernel of A^T
        let mut t: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
        let pivots = self.rref(&mut t);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; n];
                v[fc] = 1;
                for (row, &pc) in t.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[fc]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - A)`, constant term first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
            if piv != k + 1 {
                h.swap(piv, k + 1);
                for row in h.iter_mut() {
                    row.swap(piv, k + 1);
                }
            }
            let inv = self.inv(h[k + 1][k]).expect("nonzero pivot");
            for i in k + 2..n {
                if h[i][k] == 0 {
                    continue;
                }
                let f = self.mul(h[i][k], inv);
                // row_i -= f row_{k+1}, then col_{k+1} += f col_i
                for j in 0..n {
                    let v = self.mul(f, h[k + 1][j]);
                    h[i][j] = self.sub(h[i][j], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(f, row[i]);
                    row[k + 1] = self.add(row[k + 1], v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0; m + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[m][m], c));
            }
            let mut prod = 1;
            for i in (0..m).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(h[i][m], prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots in `F_ℓ`, ascending. Brute force over the field.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.modulus).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_bruteforce(f: &PrimeField, a: &[Vec<u64>]) -> u64 {
        // Laplace expansion along the first row
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for j in 0..n {
            let minor: Vec<Vec<u64>> =
                a[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let term = f.mul(a[0][j], det_bruteforce(f, &minor));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn charpoly_matches_determinant_at_sample_points() {
        let f = PrimeField::new(101);
        let a = vec![vec![3, 0, 7, 1], vec![0, 0, 5, 2], vec![9, 4, 1, 0], vec![0, 0, 0, 6]];
        let cp = f.charpoly(&a);
        assert_eq!(cp.len(), 5);
        for x in [0, 1, 2, 17, 55] {
            let m: Vec<Vec<u64>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { f.sub(x, a[i][j]) } else { f.sub(0, a[i][j]) }).collect())
                .collect();
            assert_eq!(f.eval(&cp, x), det_bruteforce(&f, &m));
        }
    }

    #[test]
    fn left_kernel_is_annihilated() {
        let f = PrimeField::new(13);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ker = f.left_kernel(&a);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for j in 0..3 {
                let s = (0..3).fold(0, |acc, i| f.add(acc, f.mul(v[i], a[i][j])));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        let f = PrimeField::new(313);
        let z = f.root_of_unity(312);
        assert_eq!(f.pow(z, 312), 1);
        assert!(prime_factors(312).iter().all(|&r| f.pow(z, 312 / r) != 1));
    }
}
