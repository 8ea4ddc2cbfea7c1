use super::scalar::{Field, Scalar};
use std::fmt;

/// Dense row-major matrix over an exact field. Empty shapes are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
}

/// Reduced row echelon form with pivot columns.
pub struct Rref {
    pub m: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, field, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(field, rows.len(), c, |i, j| field.int(rows[i][j]))
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, data }
    }

    /// Column vector from entries.
    pub fn column(field: Field, v: Vec<Scalar>) -> Matrix {
        Matrix { rows: v.len(), cols: 1, field, data: v }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.int(-1))
    }

    /// Horizontal concatenation; all parts need the same row count.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.set_block(0, off, p);
            off += p.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.set_block(off, 0, p);
            off += p.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Reduced row echelon form; the pivot in each column is the first nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(r, j).mul(&inv);
                    m.set(r, j, v);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> =
                (c..m.cols).filter(|&j| !m.get(r, j).is_zero()).map(|j| (j, m.get(r, j).clone())).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let nv = m.get(i, *j).sub(&f.mul(v));
                    m.set(i, *j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            return self.transpose().rref().pivots.len();
        }
        self.rref().pivots.len()
    }

    /// Columns spanning the kernel; `cols - rank` of them.
    pub fn kernel_basis(&self) -> Matrix {
        let n = self.cols;
        if self.rows == 0 {
            return Matrix::identity(self.field, n);
        }
        let Rref { m, pivots } = self.rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut out = Matrix::zeros(self.field, n, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = m.get(i, f);
                if !v.is_zero() {
                    out.set(p, k, v.neg());
                }
            }
        }
        out
    }

    /// Rows spanning the left kernel `{y : y·self = 0}`.
    pub fn left_kernel_basis(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Particular solution `X0` of `self·X = b` and a kernel basis `N` of `self`;
    /// every solution is `X0 + N·Y`.
    pub fn solve_all(&self, b: &Matrix) -> Result<(Matrix, Matrix), LinalgError> {
        assert_eq!(self.rows, b.rows, "solve_all: row mismatch");
        let x = self.solve(b)?;
        Ok((x, self.kernel_basis()))
    }

    /// Some solution of `self·X = b`.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let n = self.cols;
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let Rref { m, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, m.get(i, n + j).clone());
            }
        }
        debug_assert!(self.mul(&x) == *b);
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let Rref { m, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(m.block(0, n, n, n))
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// `X` with `self·X = I`; requires full row rank.
    pub fn right_inverse(&self) -> Matrix {
        self.solve(&Matrix::identity(self.field, self.rows)).expect("right inverse needs full row rank")
    }

    /// `X` with `X·self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Matrix {
        self.transpose().right_inverse().transpose()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Flattened column-major vector of entries.
    pub fn vec_cols(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    pub fn from_vec_cols(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(field, rows, cols, |i, j| v[j * rows + i].clone())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    const Q: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(Q, 0, 0).rank(), 0);
        assert_eq!(Matrix::identity(Q, 2).rank(), 2);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 2);
        let (x, n) = id.solve_all(&id).unwrap();
        assert_eq!(x, id);
        assert_eq!(n.cols, 0);

        let a = Matrix::from_i64(Q, &[&[1, 1]]);
        let (x, n) = a.solve_all(&Matrix::from_i64(Q, &[&[0]])).unwrap();
        assert!(x.is_zero());
        assert_eq!(n.cols, 1);
        assert_eq!(n.get(0, 0).add(n.get(1, 0)), Q.zero());
        assert!(!n.get(0, 0).is_zero());

        let z = Matrix::zeros(Q, 2, 2);
        assert_eq!(z.solve_all(&Matrix::from_i64(Q, &[&[1], &[0]])), Err(LinalgError::Inconsistent));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols, 0);
        let k = Matrix::zeros(Q, 3, 3).kernel_basis();
        assert_eq!((k.cols, k.rank()), (3, 3));
        let k = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 0, 1]]).kernel_basis();
        assert_eq!(k.cols, 1);
        assert_eq!(k.col(0), vec![Q.int(-1), Q.int(1), Q.int(0)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(Q, &[&[2, 1], &[7, 4]]);
        let b = a.inverse().unwrap();
        assert_eq!(a.mul(&b), Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn empty_shapes_behave_as_zero_maps() {
        let a = Matrix::zeros(Q, 0, 3);
        assert_eq!(a.kernel_basis().cols, 3);
        let b = Matrix::zeros(Q, 3, 0);
        assert_eq!(b.kernel_basis().cols, 0);
        assert_eq!(b.mul(&Matrix::zeros(Q, 0, 2)), Matrix::zeros(Q, 3, 2));
    }
}
