//! Dense square matrices over a [`FieldSpec`], stored row-major as encoded
//! field values.

use std::fmt::Write as _;

use crate::ffield::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    dim: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Matrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_data(dim: usize, data: Vec<u32>) -> Matrix {
        assert_eq!(data.len(), dim * dim);
        Matrix { dim, data }
    }

    pub fn zeros(dim: usize) -> Matrix {
        Matrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Matrix {
        Matrix::scalar(dim, 1)
    }

    pub fn scalar(dim: usize, c: u32) -> Matrix {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.dim + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(1)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// `Some(c)` if the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<u32> {
        let c = *self.data.first()?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.get(i, j);
                if (i == j && v != c) || (i != j && v != 0) {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn mul(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        Matrix { dim: n, data: out }
    }

    pub fn scale(&self, c: u32, f: &FieldSpec) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u64, f: &FieldSpec) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            k >>= 1;
        }
        acc
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self, f: &FieldSpec) -> Option<Matrix> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), pinv));
                inv.set(col, j, f.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(factor, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j))));
                }
            }
        }
        Some(inv)
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Representative of the scalar class: first nonzero entry scaled to 1.
    pub fn projective_normalize(&self, f: &FieldSpec) -> Matrix {
        match self.data.iter().find(|&&v| v != 0) {
            Some(&lead) if lead != 1 => self.scale(f.inv(lead).unwrap(), f),
            _ => self.clone(),
        }
    }

    /// Kronecker product, row-major blocks `a_ij * B`.
    pub fn kron(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        let (m1, m2) = (self.dim, other.dim);
        let n = m1 * m2;
        let mut out = Matrix::zeros(n);
        for i in 0..m1 {
            for j in 0..m1 {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..m2 {
                    for l in 0..m2 {
                        out.set(i * m2 + k, j * m2 + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.dim).sum();
        let mut out = Matrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            out.put_block(off, off, b);
            off += b.dim;
        }
        out
    }

    pub fn put_block(&mut self, row: usize, col: usize, b: &Matrix) {
        for i in 0..b.dim {
            for j in 0..b.dim {
                self.set(row + i, col + j, b.get(i, j));
            }
        }
    }

    /// The `size x size` block whose top-left corner is at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Matrix {
        let mut out = Matrix::zeros(size);
        for i in 0..size {
            for j in 0..size {
                out.set(i, j, self.get(row + i, col + j));
            }
        }
        out
    }

    pub fn render(&self, f: &FieldSpec) -> String {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let cells: Vec<String> = (0..self.dim).map(|j| f.render(self.get(i, j))).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Multi-line grid with `|` separating `block`-wide column groups.
    pub fn render_grid(&self, f: &FieldSpec, block: usize) -> String {
        let cells: Vec<Vec<String>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| f.render(self.get(i, j))).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            if i > 0 && block > 0 && i % block == 0 {
                let _ = writeln!(out);
            }
            for (j, c) in row.iter().enumerate() {
                if j > 0 && block > 0 && j % block == 0 {
                    out.push_str(" |");
                }
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_make;

    #[test]
    fn inverse_roundtrip() {
        let f = fq_make(7, 1).unwrap();
        let a = Matrix::from_rows(vec![vec![1, 4], vec![6, 6]]);
        let ai = a.inverse(&f).unwrap();
        assert!(a.mul(&ai, &f).is_identity());
        assert!(Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]).inverse(&f).is_none());
    }

    #[test]
    fn kron_scalars_and_blocks() {
        let f = fq_make(5, 1).unwrap();
        let a = Matrix::from_rows(vec![vec![2]]);
        assert_eq!(a.kron(&a, &f), Matrix::from_rows(vec![vec![4]]));
        let b = Matrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let i2 = Matrix::identity(2);
        let k = i2.kron(&b, &f);
        assert_eq!(k.block(0, 0, 2), b);
        assert_eq!(k.block(2, 2, 2), b);
        assert!(k.block(0, 2, 2).is_zero());
    }

    #[test]
    fn projective_normalization() {
        let f = fq_make(5, 1).unwrap();
        let a = Matrix::from_rows(vec![vec![0, 3], vec![2, 1]]);
        let n = a.projective_normalize(&f);
        assert_eq!(n.get(0, 1), 1);
        assert_eq!(n, a.scale(4, &f).projective_normalize(&f));
        assert_eq!(n.projective_normalize(&f), n);
    }
}
