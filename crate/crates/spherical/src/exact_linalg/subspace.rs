use num_traits::Zero;

use super::scalar::Rational;
use super::sparse::{self, SparseRref, SparseVec};
use super::LinalgError;

/// Subspace of Q^n stored as its unique reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient)
                .map(|i| vec![(i, Rational::from_integer(1.into()))])
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_rref(r: SparseRref) -> Self {
        let ambient = r.ncols;
        let (rows, pivots) = r.into_sorted();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn span_sparse<'a>(ambient: usize, vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut r = SparseRref::new(ambient);
        for v in vs {
            r.insert(v);
        }
        Self::from_rref(r)
    }

    pub fn span(ambient: usize, vs: &[Vec<Rational>]) -> Self {
        let sp: Vec<SparseVec> = vs.iter().map(|v| sparse::from_dense(v)).collect();
        Self::span_sparse(ambient, &sp)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sparse_rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| sparse::to_dense(r, self.ambient))
            .collect()
    }

    pub fn rref(&self) -> SparseRref {
        let mut r = SparseRref::new(self.ambient);
        for row in &self.rows {
            r.insert(row);
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.rref().contains(v)
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        let r = self.rref();
        o.rows.iter().all(|v| r.contains(v))
    }

    /// Coefficients of `v` in the echelon basis, or None if `v` is outside.
    pub fn coords_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut acc = v.to_vec();
        for (ci, row) in c.iter().zip(&self.rows) {
            sparse::add_scaled_into(&mut acc, &-ci.clone(), row);
        }
        if acc.iter().all(|x| x.is_zero()) {
            Some(c)
        } else {
            None
        }
    }

    pub fn combination(&self, c: &[Rational]) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.rows) {
            sparse::add_scaled_into(&mut acc, ci, row);
        }
        acc
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != o.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, o.ambient));
        }
        let mut r = self.rref();
        for v in &o.rows {
            r.insert(v);
        }
        Ok(Self::from_rref(r))
    }

    /// Zassenhaus: echelonize [[u, u], [w, 0]]; rows with vanishing left half span U ∩ W.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != o.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, o.ambient));
        }
        let n = self.ambient;
        let mut r = SparseRref::new(2 * n);
        for v in &self.rows {
            let mut d = v.clone();
            d.extend(v.iter().map(|(i, x)| (i + n, x.clone())));
            r.insert(&d);
        }
        for v in &o.rows {
            r.insert(v);
        }
        let (rows, pivots) = r.into_sorted();
        let inter: Vec<SparseVec> = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(row, _)| row.into_iter().map(|(i, x)| (i - n, x)).collect())
            .collect();
        Ok(Self::span_sparse(n, &inter))
    }
}
