use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact_linalg::{q, GaussRational, Mat, Rational};

/// a + b i + c j + d k over Q.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quat {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quat {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quat { a, b, c, d }
    }

    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quat::new(q(a), q(b), q(c), q(d))
    }

    pub fn real(a: Rational) -> Self {
        Quat::new(a, q(0), q(0), q(0))
    }

    pub fn zero() -> Self {
        Quat::ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quat::ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quat::ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quat::ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quat::ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quat::new(
            self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    pub fn norm_sq(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Quat::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        (!n.is_zero()).then(|| self.conj().scale(&n.recip()))
    }

    /// Complex pair (A, B) with q = A + j B.
    pub fn complex_parts(&self) -> (GaussRational, GaussRational) {
        (
            GaussRational::new(self.a.clone(), self.b.clone()),
            GaussRational::new(self.c.clone(), -self.d.clone()),
        )
    }
}

impl<'a, 'b> Mul<&'b Quat> for &'a Quat {
    type Output = Quat;
    fn mul(self, o: &'b Quat) -> Quat {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        Quat::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl<'a, 'b> Add<&'b Quat> for &'a Quat {
    type Output = Quat;
    fn add(self, o: &'b Quat) -> Quat {
        Quat::new(
            &self.a + &o.a,
            &self.b + &o.b,
            &self.c + &o.c,
            &self.d + &o.d,
        )
    }
}

impl<'a, 'b> Sub<&'b Quat> for &'a Quat {
    type Output = Quat;
    fn sub(self, o: &'b Quat) -> Quat {
        Quat::new(
            &self.a - &o.a,
            &self.b - &o.b,
            &self.c - &o.c,
            &self.d - &o.d,
        )
    }
}

impl<'a> Neg for &'a Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(
            -self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }
}

/// Dense quaternionic matrix acting on column vectors from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Quat>,
}

impl QuatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMat {
            rows,
            cols,
            data: vec![Quat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quat::one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Quat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Quat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &QuatMat) -> QuatMat {
        let mut out = QuatMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> QuatMat {
        let mut out = QuatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Complex image [[A, -B̄], [B, Ā]] where Q = A + jB; multiplicative and *-compatible.
    pub fn to_complex(&self) -> Mat {
        let (r, c) = (self.rows, self.cols);
        let mut m = Mat::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let (a, b) = self.get(i, j).complex_parts();
                m[(i, j)] = a.clone();
                m[(i, c + j)] = -b.conj();
                m[(r + i, j)] = b;
                m[(r + i, c + j)] = a.conj();
            }
        }
        m
    }

    /// Inverse of `to_complex` for matrices satisfying the quaternionic condition.
    pub fn from_complex(m: &Mat) -> QuatMat {
        let (r, c) = (m.rows() / 2, m.cols() / 2);
        let mut out = QuatMat::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let a = &m[(i, j)];
                let b = &m[(r + i, j)];
                out.set(
                    i,
                    j,
                    Quat::new(a.re.clone(), a.im.clone(), b.re.clone(), -b.im.clone()),
                );
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&QuatMat]) -> QuatMat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = QuatMat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

/// The complex structure J with X J = J X̄ exactly for complex images of quaternionic matrices.
pub fn quaternionic_structure(n: usize) -> Mat {
    let mut j = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = GaussRational::int(-1);
        j[(n + i, i)] = GaussRational::int(1);
    }
    j
}

impl Quat {
    pub fn from_gauss(z: &GaussRational) -> Quat {
        Quat::new(z.re.clone(), z.im.clone(), q(0), q(0))
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_complex(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// The complex number a + bi, when c = d = 0.
    pub fn to_gauss(&self) -> Option<GaussRational> {
        self.is_complex()
            .then(|| GaussRational::new(self.a.clone(), self.b.clone()))
    }
}

impl QuatMat {
    pub fn from_mat(m: &Mat) -> QuatMat {
        QuatMat {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(Quat::from_gauss).collect(),
        }
    }

    /// Entrywise complex matrix; `None` if some entry has a j or k part.
    pub fn to_mat(&self) -> Option<Mat> {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).to_gauss()?;
            }
        }
        Some(m)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Quat::is_real)
    }

    pub fn is_complex(&self) -> bool {
        self.data.iter().all(Quat::is_complex)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Quat::is_zero)
    }

    pub fn transpose(&self) -> QuatMat {
        let mut out = QuatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn neg(&self) -> QuatMat {
        QuatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, o: &QuatMat) -> QuatMat {
        QuatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QuatMat) -> QuatMat {
        QuatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Multiply every entry by s on the left.
    pub fn scale_left(&self, s: &Quat) -> QuatMat {
        QuatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| s * x).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Quat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<Quat>]) -> QuatMat {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = QuatMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn inverse(&self) -> Option<QuatMat> {
        self.to_complex()
            .inverse()
            .ok()
            .map(|m| QuatMat::from_complex(&m))
    }

    /// Realification [[A, -B], [B, A]] of a complex matrix A + iB.
    pub fn realify(&self) -> QuatMat {
        debug_assert!(self.is_complex());
        let (r, c) = (self.rows, self.cols);
        let mut out = QuatMat::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let x = self.get(i, j);
                out.set(i, j, Quat::real(x.a.clone()));
                out.set(i, c + j, Quat::real(-x.b.clone()));
                out.set(r + i, j, Quat::real(x.b.clone()));
                out.set(r + i, c + j, Quat::real(x.a.clone()));
            }
        }
        out
    }

    /// Complex image as a QuatMat with complex entries.
    pub fn complex_image(&self) -> QuatMat {
        QuatMat::from_mat(&self.to_complex())
    }
}
