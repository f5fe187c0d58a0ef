use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::LieError;
use crate::exact_linalg::sparse::{self, SparseRref, SparseVec};
use crate::exact_linalg::{
    kernel_sparse, signature, GaussRational, Mat, Rational, Signature, Subspace,
};

/// A real Lie algebra of N×N complex matrices, with its basis in reduced
/// echelon form over the interleaved real coordinates of the entries.
/// Coordinates of a member are therefore its entries at the pivot positions.
pub struct LieAlg {
    n: usize,
    label: String,
    basis: Vec<Mat>,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    sc: Vec<SparseVec>,
    complexified: bool,
}

impl fmt::Debug for LieAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LieAlg({}, N={}, dim={})",
            self.label,
            self.n,
            self.dim()
        )
    }
}

impl LieAlg {
    /// Span of the given matrices; fails with `NotClosed` unless the span is a subalgebra.
    pub fn new(n: usize, spanning: &[Mat], label: impl Into<String>) -> Result<LieAlg, LieError> {
        let mut r = SparseRref::new(2 * n * n);
        for m in spanning {
            if m.rows() != n || m.cols() != n {
                return Err(LieError::SizeMismatch(n, m.rows()));
            }
            r.insert(&sparse::from_dense(&m.realified_entries()));
        }
        Self::from_subspace(n, Subspace::from_rref(r), label)
    }

    /// Algebra whose realified entry space is the given subspace of R^{2N^2}.
    pub fn from_subspace(
        n: usize,
        space: Subspace,
        label: impl Into<String>,
    ) -> Result<LieAlg, LieError> {
        assert_eq!(space.ambient_dim(), 2 * n * n);
        let rows = space.sparse_rows().to_vec();
        let pivots = space.pivots().to_vec();
        let basis = rows
            .iter()
            .map(|r| {
                let mut m = Mat::zeros(n, n);
                for (k, x) in r {
                    let e = &mut m[(k / 2 / n, (k / 2) % n)];
                    if k % 2 == 0 {
                        e.re = x.clone();
                    } else {
                        e.im = x.clone();
                    }
                }
                m
            })
            .collect();
        let mut g = LieAlg {
            n,
            label: label.into(),
            basis,
            rows,
            pivots,
            sc: Vec::new(),
            complexified: false,
        };
        g.sc = g.compute_structure_constants()?;
        Ok(g)
    }

    fn compute_structure_constants(&self) -> Result<Vec<SparseVec>, LieError> {
        let d = self.dim();
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .collect();
        let brackets = crate::par::map(&pairs, |&(i, j)| {
            let c = self.basis[i].commutator(&self.basis[j]);
            self.coords(&c)
                .map(|v| sparse::from_dense(&v))
                .ok_or(LieError::NotClosed(i, j))
        });
        let mut sc = vec![Vec::new(); d * d];
        for (&(i, j), b) in pairs.iter().zip(brackets) {
            let b = b?;
            sc[j * d + i] = sparse::scale(&b, &Rational::from_integer((-1).into()));
            sc[i * d + j] = b;
        }
        Ok(sc)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub(crate) fn mark_complexified(mut self) -> Self {
        self.complexified = true;
        self
    }

    pub fn is_complexified(&self) -> bool {
        self.complexified
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The algebra as a subspace of R^{2N^2} (interleaved realified entries).
    pub fn space(&self) -> Subspace {
        Subspace::span_sparse(2 * self.n * self.n, &self.rows)
    }

    /// Coordinates without the membership check (for matrices known to lie in g).
    pub fn coords_unchecked(&self, m: &Mat) -> Vec<Rational> {
        let v = m.entries();
        self.pivots
            .iter()
            .map(|&k| {
                if k % 2 == 0 {
                    v[k / 2].re.clone()
                } else {
                    v[k / 2].im.clone()
                }
            })
            .collect()
    }

    /// Coordinates of `m`, or None when `m` is not in the algebra.
    pub fn coords(&self, m: &Mat) -> Option<Vec<Rational>> {
        if m.rows() != self.n || m.cols() != self.n {
            return None;
        }
        let c = self.coords_unchecked(m);
        let mut acc = m.realified_entries();
        for (ci, row) in c.iter().zip(&self.rows) {
            sparse::add_scaled_into(&mut acc, &-ci.clone(), row);
        }
        acc.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.coords(m).is_some()
    }

    pub fn element(&self, c: &[Rational]) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                m.add_scaled(b, &GaussRational::real(ci.clone()));
            }
        }
        m
    }

    /// Structure constants of [b_i, b_j] as a sparse coordinate vector.
    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.sc[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                sparse::add_scaled_into(&mut out, &(xi * yj), &self.sc[i * d + j]);
            }
        }
        out
    }

    /// [x, b_j] for every basis element, as sparse columns.
    fn ad_columns(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let d = self.dim();
        (0..d)
            .map(|j| {
                let mut col = vec![Rational::zero(); d];
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() && i != j {
                        sparse::add_scaled_into(&mut col, xi, &self.sc[i * d + j]);
                    }
                }
                col
            })
            .collect()
    }

    /// Matrix of ad(x) on coordinates: row k, column j holds the k-th coordinate of [x, b_j].
    pub fn ad_matrix(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let cols = self.ad_columns(x);
        let d = self.dim();
        (0..d)
            .map(|k| (0..d).map(|j| cols[j][k].clone()).collect())
            .collect()
    }

    /// Gram matrix of B(x, y) = tr(ad x ad y).
    pub fn killing_form(&self) -> BilinearFormData {
        let d = self.dim();
        let ads: Vec<Vec<Vec<Rational>>> = (0..d).map(|i| self.ad_matrix(&unit(d, i))).collect();
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let mut t = Rational::zero();
                for k in 0..d {
                    for l in 0..d {
                        let a = &ads[i][k][l];
                        if !a.is_zero() {
                            let b = &ads[j][l][k];
                            if !b.is_zero() {
                                t += a * b;
                            }
                        }
                    }
                }
                m[(i, j)] = GaussRational::real(t.clone());
                m[(j, i)] = GaussRational::real(t);
            }
        }
        BilinearFormData::new(m, FormKind::Symmetric)
    }

    /// {x in g : [x, t] = 0 for all t}.
    pub fn centralizer(&self, targets: &[Vec<Rational>]) -> Subspace {
        let d = self.dim();
        let mut rows: Vec<SparseVec> = Vec::new();
        for t in targets {
            let cols = self.ad_columns(t);
            for k in 0..d {
                let row: Vec<Rational> = (0..d).map(|j| cols[j][k].clone()).collect();
                let sp = sparse::from_dense(&row);
                if !sp.is_empty() {
                    rows.push(sp);
                }
            }
        }
        kernel_sparse(&rows, d)
    }

    pub fn centralizer_of(&self, s: &Subspace) -> Subspace {
        self.centralizer(&s.basis())
    }

    /// Span of the brackets of two coordinate subspaces.
    pub fn bracket_space(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut v = Vec::new();
        for x in u.basis() {
            for y in w.basis() {
                v.push(self.bracket(&x, &y));
            }
        }
        Subspace::span(self.dim(), &v)
    }

    pub fn is_closed(&self, s: &Subspace) -> bool {
        let b = s.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.bracket(&b[i], &b[j])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| {
            (i + 1..b.len()).all(|j| self.bracket(&b[i], &b[j]).iter().all(|x| x.is_zero()))
        })
    }

    /// Exact Jacobi check on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (ei, ej, ek) = (unit(d, i), unit(d, j), unit(d, k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((x, y), z)| !(x + y + z).is_zero())
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrices of a coordinate subspace.
    pub fn matrices_of(&self, s: &Subspace) -> Vec<Mat> {
        s.basis().iter().map(|c| self.element(c)).collect()
    }

    /// Coordinate subspace spanned by matrices that must lie in g.
    pub fn span_of(&self, mats: &[Mat]) -> Result<Subspace, LieError> {
        let mut v = Vec::with_capacity(mats.len());
        for m in mats {
            v.push(self.coords(m).ok_or(LieError::NotInAlgebra)?);
        }
        Ok(Subspace::span(self.dim(), &v))
    }
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Cartan involution of the form Y -> -M Y^* M^{-1}; `Standard` is M = I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theta {
    Standard,
    Gram { m: Mat, m_inv: Mat },
}

impl Theta {
    pub fn gram(m: Mat) -> Theta {
        if m == Mat::identity(m.rows()) {
            return Theta::Standard;
        }
        let m_inv = m.inverse().expect("theta Gram matrix must be invertible");
        Theta::Gram { m, m_inv }
    }

    pub fn apply(&self, y: &Mat) -> Mat {
        match self {
            Theta::Standard => y.adjoint().neg(),
            Theta::Gram { m, m_inv } => m.mul(&y.adjoint()).mul(m_inv).neg(),
        }
    }

    /// The Gram matrix itself (identity for the standard involution).
    pub fn matrix(&self, n: usize) -> Mat {
        match self {
            Theta::Standard => Mat::identity(n),
            Theta::Gram { m, .. } => m.clone(),
        }
    }

    /// Conjugate by S: the involution Ad(S) θ Ad(S)^{-1}.
    pub fn transported(&self, s: &Mat) -> Theta {
        let m = self.matrix(s.rows());
        Theta::gram(s.mul(&m).mul(&s.adjoint()))
    }
}

/// A subalgebra of a parent algebra, stored as a coordinate subspace.
#[derive(Clone, Debug)]
pub struct Subalg {
    pub parent: Arc<LieAlg>,
    pub coords: Subspace,
    pub provenance: String,
    /// A Cartan involution of the parent that preserves this subalgebra, when known.
    pub theta: Option<Theta>,
}

impl Subalg {
    pub fn new(
        parent: Arc<LieAlg>,
        coords: Subspace,
        provenance: impl Into<String>,
    ) -> Result<Subalg, LieError> {
        if !parent.is_closed(&coords) {
            return Err(LieError::NotClosed(0, 0));
        }
        Ok(Subalg {
            parent,
            coords,
            provenance: provenance.into(),
            theta: None,
        })
    }

    pub fn from_matrices(
        parent: Arc<LieAlg>,
        mats: &[Mat],
        provenance: impl Into<String>,
    ) -> Result<Subalg, LieError> {
        let coords = parent.span_of(mats)?;
        Self::new(parent, coords, provenance)
    }

    pub fn whole(parent: Arc<LieAlg>) -> Subalg {
        let d = parent.dim();
        let label = parent.label().to_string();
        Subalg {
            parent,
            coords: Subspace::full(d),
            provenance: label,
            theta: Some(Theta::Standard),
        }
    }

    pub fn with_theta(mut self, theta: Theta) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn matrices(&self) -> Vec<Mat> {
        self.parent.matrices_of(&self.coords)
    }

    /// The subalgebra as a Lie algebra in its own right.
    pub fn to_lie_alg(&self) -> Result<LieAlg, LieError> {
        LieAlg::new(
            self.parent.ambient_size(),
            &self.matrices(),
            self.provenance.clone(),
        )
    }

    pub fn is_theta_stable(&self, theta: &Theta) -> bool {
        self.matrices().iter().all(|b| {
            self.parent
                .coords(&theta.apply(b))
                .is_some_and(|c| self.coords.contains(&c))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FormKind {
    Symmetric,
    Hermitian,
    Skew,
    SkewHermitian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFormData {
    pub matrix: Mat,
    pub kind: FormKind,
    pub signature: Option<Signature>,
}

impl BilinearFormData {
    pub fn new(matrix: Mat, kind: FormKind) -> Self {
        let signature = match kind {
            FormKind::Symmetric if matrix.is_real() => signature(&matrix).ok(),
            FormKind::Hermitian => {
                signature(&hermitian_realified(&matrix))
                    .ok()
                    .map(|s| Signature {
                        pos: s.pos / 2,
                        neg: s.neg / 2,
                        zero: s.zero / 2,
                    })
            }
            _ => None,
        };
        BilinearFormData {
            matrix,
            kind,
            signature,
        }
    }

    pub fn kind_matches(&self) -> bool {
        let m = &self.matrix;
        match self.kind {
            FormKind::Symmetric => *m == m.transpose(),
            FormKind::Skew => *m == m.transpose().neg(),
            FormKind::Hermitian => *m == m.adjoint(),
            FormKind::SkewHermitian => *m == m.adjoint().neg(),
        }
    }
}

/// Real symmetric matrix of Re h(x, y) on C^n = R^{2n}; its inertia is twice that of h.
pub fn hermitian_realified(h: &Mat) -> Mat {
    let r = h.realify_blocks();
    Mat::from_rational_rows(&r, 2 * h.cols())
}
