use std::fmt;
use std::sync::Arc;

use crate::algebra::{FieldElement, FqField};

/// A square matrix over `F_q`, row major, entries encoded as in [`FqField`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.data.chunks(self.n.max(1)).collect();
        write!(f, "{rows:?}")
    }
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_data(n: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let n = rows.len();
        let data = rows.iter().flat_map(|r| {
            assert_eq!(r.len(), n);
            r.iter().copied()
        });
        Self { n, data: data.collect() }
    }

    pub fn diagonal(entries: &[u32]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn entry(&self, field: &Arc<FqField>, i: usize, j: usize) -> FieldElement {
        field.element(self.get(i, j))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn mul(&self, other: &Matrix, f: &FqField) -> Matrix {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        out[i * n + j] = f.add(out[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        Matrix { n, data: out }
    }

    pub fn add(&self, other: &Matrix, f: &FqField) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { n: self.n, data }
    }

    pub fn scale(&self, c: u32, f: &FqField) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn pow(&self, mut e: u64, f: &FqField) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// `g M g^{-1}`.
    pub fn conjugate_by(&self, g: &Matrix, g_inv: &Matrix, f: &FqField) -> Matrix {
        g.mul(self, f).mul(g_inv, f)
    }

    /// Polynomial evaluation `Σ c_i M^i` (Horner).
    pub fn eval_poly(&self, poly: &[u32], f: &FqField) -> Matrix {
        let mut acc = Matrix::zero(self.n);
        for &c in poly.iter().rev() {
            acc = acc.mul(self, f);
            for i in 0..self.n {
                let d = i * self.n + i;
                acc.data[d] = f.add(acc.data[d], c);
            }
        }
        acc
    }

    pub fn rank(&self, f: &FqField) -> usize {
        let mut rows: Vec<Vec<u32>> = self.data.chunks(self.n.max(1)).map(<[u32]>::to_vec).collect();
        if self.n == 0 {
            return 0;
        }
        row_reduce(&mut rows, f).len()
    }

    /// `det(xI - M)`, constant term first, via upper Hessenberg reduction.
    pub fn charpoly(&self, f: &FqField) -> Vec<u32> {
        let n = self.n;
        let mut h: Vec<Vec<u32>> = self.data.chunks(n.max(1)).map(<[u32]>::to_vec).collect();
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
            if piv != k + 1 {
                h.swap(piv, k + 1);
                for row in h.iter_mut() {
                    row.swap(piv, k + 1);
                }
            }
            let inv = f.inv(h[k + 1][k]).expect("nonzero pivot");
            for i in k + 2..n {
                if h[i][k] == 0 {
                    continue;
                }
                let c = f.mul(h[i][k], inv);
                for j in 0..n {
                    let v = f.mul(c, h[k + 1][j]);
                    h[i][j] = f.sub(h[i][j], v);
                }
                for row in h.iter_mut() {
                    let v = f.mul(c, row[i]);
                    row[k + 1] = f.add(row[k + 1], v);
                }
            }
        }
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for m in 0..n {
            let mut next = vec![0; m + 2];
            for (d, &c) in polys[m].iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h[m][m], c));
            }
            let mut prod = 1;
            for i in (0..m).rev() {
                prod = f.mul(prod, h[i + 1][i]);
                let coef = f.mul(h[i][m], prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn is_invertible(&self, f: &FqField) -> bool {
        self.rank(f) == self.n
    }

    pub fn det(&self, f: &FqField) -> u32 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self, f: &FqField) -> Option<Matrix> {
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![0; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(&self.data[i * n..(i + 1) * n]);
            a[i * w + n + i] = 1;
        }
        for c in 0..n {
            let p = (c..n).find(|&r| a[r * w + c] != 0)?;
            if p != c {
                for j in 0..w {
                    a.swap(p * w + j, c * w + j);
                }
            }
            let inv = f.inv(a[c * w + c]).unwrap();
            for j in 0..w {
                a[c * w + j] = f.mul(a[c * w + j], inv);
            }
            for r in 0..n {
                let factor = a[r * w + c];
                if r == c || factor == 0 {
                    continue;
                }
                for j in 0..w {
                    a[r * w + j] = f.sub(a[r * w + j], f.mul(factor, a[c * w + j]));
                }
            }
        }
        let mut out = Matrix::zero(n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&a[i * w + n..(i + 1) * w]);
        }
        Some(out)
    }

    /// Companion matrix of a monic polynomial of degree `d ≥ 1`.
    pub fn companion(poly: &[u32], f: &FqField) -> Matrix {
        let d = poly.len() - 1;
        assert_eq!(poly[d], 1, "companion matrix needs a monic polynomial");
        let mut m = Matrix::zero(d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, f.neg(poly[i]));
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n = blocks.iter().map(Matrix::n).sum();
        let mut m = Matrix::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    /// Square sub-block starting at `(start, start)`.
    pub fn diagonal_block(&self, start: usize, size: usize) -> Matrix {
        let mut m = Matrix::zero(size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, self.get(start + i, start + j));
            }
        }
        m
    }

    /// Exactly one nonzero entry in every row and every column.
    pub fn is_monomial(&self) -> bool {
        let n = self.n;
        let rows_ok = (0..n).all(|i| (0..n).filter(|&j| self.get(i, j) != 0).count() == 1);
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| self.get(i, j) != 0).count() == 1);
        rows_ok && cols_ok
    }

    /// Rows spanning the column space of the first `k` columns, in reduced
    /// echelon form (a canonical key for that subspace).
    pub fn column_span_key(&self, k: usize, f: &FqField) -> Vec<Vec<u32>> {
        let mut rows: Vec<Vec<u32>> = (0..k).map(|j| (0..self.n).map(|i| self.get(i, j)).collect()).collect();
        row_reduce(&mut rows, f);
        rows
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<u32>>, f: &FqField) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let f = FqField::new(5).unwrap();
        let m = Matrix::from_rows(&[&[1, 2, 0], &[3, 4, 1], &[0, 1, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&inv, &f).is_identity());
        // det = 1*(4-1) - 2*(3-0) = -3 = 2 mod 5
        assert_eq!(m.det(&f), 2);
        let singular = Matrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse(&f).is_none());
        assert_eq!(singular.det(&f), 0);
        assert_eq!(singular.rank(&f), 1);
    }

    #[test]
    fn companion_matrix_satisfies_its_polynomial() {
        let f = FqField::new(3).unwrap();
        let poly = [2, 1, 0, 1]; // x^3 + x + 2
        let c = Matrix::companion(&poly, &f);
        assert_eq!(c.eval_poly(&poly, &f), Matrix::zero(3));
    }
}
