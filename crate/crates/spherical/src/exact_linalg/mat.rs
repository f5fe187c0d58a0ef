use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::scalar::{GaussRational, Rational};
use super::LinalgError;

/// Dense row-major matrix over Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![GaussRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRational::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| GaussRational::int(rows[i][j]))
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        Self::from_fn(rows.len(), cols, |i, j| {
            GaussRational::real(rows[i][j].clone())
        })
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = GaussRational::one();
        m
    }

    pub fn diag(entries: &[GaussRational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn diag_ints(entries: &[i64]) -> Self {
        Self::diag(
            &entries
                .iter()
                .map(|&e| GaussRational::int(e))
                .collect::<Vec<_>>(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|e| e.is_real())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &GaussRational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn scale_q(&self, s: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.scale(s)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| -e).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "shape mismatch in add"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "shape mismatch in sub"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_scaled(&mut self, o: &Mat, s: &GaussRational) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    /// Product skipping zero entries on both sides.
    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Mat::zeros(self.rows, o.cols);
        let nz_rows: Vec<Vec<usize>> = (0..o.rows)
            .map(|k| (0..o.cols).filter(|&j| !o[(k, j)].is_zero()).collect())
            .collect();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for &j in &nz_rows[k] {
                    let p = a * &o[(k, j)];
                    out.data[i * o.cols + j] += &p;
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> GaussRational {
        let mut t = GaussRational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        Mat::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            &self[(i / o.rows, j / o.cols)] * &o[(i % o.rows, j % o.cols)]
        })
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(blocks: &[&Mat]) -> Mat {
        let r = blocks[0].rows;
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let mut c0 = 0;
        for b in blocks {
            m.set_block(0, c0, b);
            c0 += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&Mat]) -> Mat {
        let c = blocks[0].cols;
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Mat::zeros(r, c);
        let mut r0 = 0;
        for b in blocks {
            m.set_block(r0, 0, b);
            r0 += b.rows;
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<GaussRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<GaussRational>]) -> Mat {
        let r = cols.first().map_or(0, |c| c.len());
        Mat::from_fn(r, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn apply(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        (0..self.rows)
            .map(|i| {
                let mut s = GaussRational::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !vj.is_zero() {
                        s += &(a * vj);
                    }
                }
                s
            })
            .collect()
    }

    /// Real matrix [[Re, -Im], [Im, Re]] representing the same real-linear map.
    pub fn realify_blocks(&self) -> Vec<Vec<Rational>> {
        let (r, c) = (self.rows, self.cols);
        let mut out = vec![vec![Rational::zero(); 2 * c]; 2 * r];
        for i in 0..r {
            for j in 0..c {
                let e = &self[(i, j)];
                out[i][j] = e.re.clone();
                out[r + i][c + j] = e.re.clone();
                out[i][c + j] = -e.im.clone();
                out[r + i][j] = e.im.clone();
            }
        }
        out
    }

    /// Real coordinates of the entries: (Re a00, Im a00, Re a01, Im a01, ...).
    pub fn realified_entries(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(2 * self.data.len());
        for e in &self.data {
            v.push(e.re.clone());
            v.push(e.im.clone());
        }
        v
    }

    pub fn from_realified_entries(rows: usize, cols: usize, v: &[Rational]) -> Mat {
        Mat::from_fn(rows, cols, |i, j| {
            let k = 2 * (i * cols + j);
            GaussRational::new(v[k].clone(), v[k + 1].clone())
        })
    }

    pub fn real_rows(&self) -> Result<Vec<Vec<Rational>>, LinalgError> {
        if !self.is_real() {
            return Err(LinalgError::NotReal);
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.re.clone()).collect())
            .collect())
    }

    /// Exact inverse by Gauss-Jordan elimination over Q(i).
    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(LinalgError::Singular)?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a[(col, col)].inv().unwrap();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.row_axpy(r, col, &f);
                    inv.row_axpy(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &GaussRational) {
        for j in 0..self.cols {
            let k = r * self.cols + j;
            if !self.data[k].is_zero() {
                self.data[k] = &self.data[k] * s;
            }
        }
    }

    /// row[r] -= f * row[src]
    fn row_axpy(&mut self, r: usize, src: usize, f: &GaussRational) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = s * f;
                self.data[r * self.cols + j] -= &d;
            }
        }
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut out = Mat::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 1..self.rows.max(1) {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = GaussRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
