use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::algebra::{LieAlg, Theta};
use super::LieError;
use crate::exact_linalg::sparse::{self, SparseVec};
use crate::exact_linalg::{kernel_rows, kernel_sparse, Mat, Rational, Subspace};

/// Matrix of θ on coordinates (column j = coordinates of θ(b_j)).
fn theta_columns(g: &LieAlg, theta: &Theta) -> Result<Vec<Vec<Rational>>, LieError> {
    g.basis()
        .iter()
        .map(|b| {
            g.coords(&theta.apply(b))
                .ok_or(LieError::ThetaNotInvolutive)
        })
        .collect()
}

/// k and s as the ±1 eigenspaces of θ, with θ² = 1 and the bracket rules verified.
pub fn cartan_decomposition(g: &LieAlg, theta: &Theta) -> Result<(Subspace, Subspace), LieError> {
    let d = g.dim();
    let cols = theta_columns(g, theta)?;
    let eig = |sign: i64| {
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|k| {
                (0..d)
                    .map(|j| {
                        let mut v = cols[j][k].clone();
                        if j == k {
                            v -= Rational::from_integer(sign.into());
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        kernel_rows(&rows, d)
    };
    let (k, s) = (eig(1), eig(-1));
    if k.dim() + s.dim() != d {
        return Err(LieError::ThetaNotInvolutive);
    }
    let kb = k.basis();
    let sb = s.basis();
    for (i, x) in kb.iter().enumerate() {
        for y in kb.iter().skip(i + 1) {
            if !k.contains(&g.bracket(x, y)) {
                return Err(LieError::ThetaNotInvolutive);
            }
        }
        for y in &sb {
            if !s.contains(&g.bracket(x, y)) {
                return Err(LieError::ThetaNotInvolutive);
            }
        }
    }
    for (i, x) in sb.iter().enumerate() {
        for y in sb.iter().skip(i + 1) {
            if !k.contains(&g.bracket(x, y)) {
                return Err(LieError::ThetaNotInvolutive);
            }
        }
    }
    Ok((k, s))
}

/// Real diagonal matrices in g.
pub fn find_split_torus(g: &LieAlg) -> Subspace {
    let n = g.ambient_size();
    let d = g.dim();
    // one constraint per realified entry that must vanish: off-diagonal entries and imaginary diagonals
    let mut cons: Vec<SparseVec> = vec![Vec::new(); 2 * n * n];
    for (j, b) in g.basis().iter().enumerate() {
        for (k, x) in sparse::from_dense(&b.realified_entries()) {
            let entry = k / 2;
            let diag = entry / n == entry % n;
            if !diag || k % 2 == 1 {
                cons[k].push((j, x));
            }
        }
    }
    let rows: Vec<SparseVec> = cons.into_iter().filter(|r| !r.is_empty()).collect();
    kernel_sparse(&rows, d)
}

#[derive(Clone, Debug)]
pub struct RestrictedRoot {
    /// Values on the ordered basis of a.
    pub values: Vec<Rational>,
    pub space: Subspace,
}

impl RestrictedRoot {
    pub fn is_positive(&self) -> bool {
        self.values
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_positive())
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub theta: Theta,
    pub k: Subspace,
    pub s: Subspace,
    pub a: Subspace,
    pub roots: Vec<RestrictedRoot>,
    pub g0: Subspace,
    pub m: Subspace,
    pub n: Subspace,
    pub nbar: Subspace,
    pub p: Subspace,
    pub quasi_split: bool,
}

impl ParabolicData {
    pub fn real_rank(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_n(&self) -> usize {
        self.n.dim()
    }
}

/// Restricted root decomposition for a split torus of real diagonal matrices.
pub fn restricted_roots(g: &LieAlg, a: &Subspace) -> Result<Vec<RestrictedRoot>, LieError> {
    if !g.is_abelian(a) {
        return Err(LieError::NotAbelian);
    }
    let d = g.dim();
    let hs: Vec<Mat> = g.matrices_of(a);
    if hs.iter().any(|h| !h.is_diagonal() || !h.is_real()) {
        return Err(LieError::IrrationalSpectrum);
    }
    let n = g.ambient_size();
    let mut cands: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            cands.insert(hs.iter().map(|h| &h[(i, i)].re - &h[(j, j)].re).collect());
        }
    }
    let ads: Vec<Vec<Vec<Rational>>> = a.basis().iter().map(|x| g.ad_matrix(x)).collect();
    let cands: Vec<Vec<Rational>> = cands.into_iter().collect();
    let spaces = crate::par::map(&cands, |lam| {
        let mut rows: Vec<SparseVec> = Vec::new();
        for (ad, l) in ads.iter().zip(lam) {
            for (k, row) in ad.iter().enumerate() {
                let mut r = row.clone();
                r[k] -= l;
                let sp = sparse::from_dense(&r);
                if !sp.is_empty() {
                    rows.push(sp);
                }
            }
        }
        kernel_sparse(&rows, d)
    });
    let mut total = 0;
    let mut out = Vec::new();
    for (values, space) in cands.into_iter().zip(spaces) {
        if space.dim() > 0 {
            total += space.dim();
            out.push(RestrictedRoot { values, space });
        }
    }
    if total != d {
        return Err(LieError::IrrationalSpectrum);
    }
    Ok(out)
}

/// Minimal parabolic for the standard involution θ(X) = -X^*.
pub fn minimal_parabolic(g: &LieAlg) -> Result<ParabolicData, LieError> {
    minimal_parabolic_with(g, Theta::Standard)
}

pub fn minimal_parabolic_with(g: &LieAlg, theta: Theta) -> Result<ParabolicData, LieError> {
    let d = g.dim();
    let (k, s) = cartan_decomposition(g, &theta)?;
    let a = find_split_torus(g).intersect(&s)?;
    let roots = restricted_roots(g, &a)?;
    let zero = Subspace::zero(d);
    let mut g0 = zero.clone();
    let mut n = zero.clone();
    let mut nbar = zero.clone();
    for r in &roots {
        if r.values.iter().all(|v| v.is_zero()) {
            g0 = r.space.clone();
        } else if r.is_positive() {
            n = n.sum(&r.space)?;
        } else {
            nbar = nbar.sum(&r.space)?;
        }
    }
    let ms = g0.intersect(&s)?;
    if ms.dim() != a.dim() {
        return Err(LieError::NotMaximalAbelian(ms.dim(), a.dim()));
    }
    let m = g0.intersect(&k)?;
    let p = g0.sum(&n)?;
    let quasi_split = g.is_abelian(&m);
    Ok(ParabolicData {
        theta,
        k,
        s,
        a,
        roots,
        g0,
        m,
        n,
        nbar,
        p,
        quasi_split,
    })
}

pub fn real_rank(g: &LieAlg) -> Result<usize, LieError> {
    Ok(minimal_parabolic(g)?.real_rank())
}

/// Real rank for an arbitrary Cartan involution: grow an abelian subspace of s until it is maximal.
/// All maximal abelian subspaces of s are conjugate under K, so the greedy result has the right dimension.
pub fn real_rank_with(g: &LieAlg, theta: &Theta) -> Result<usize, LieError> {
    let (_, s) = cartan_decomposition(g, theta)?;
    let mut a = Subspace::zero(g.dim());
    loop {
        let z = g.centralizer_of(&a).intersect(&s)?;
        match z.basis().into_iter().find(|x| !a.contains(x)) {
            Some(x) => a = a.sum(&Subspace::span(g.dim(), &[x]))?,
            None => return Ok(a.dim()),
        }
    }
}
