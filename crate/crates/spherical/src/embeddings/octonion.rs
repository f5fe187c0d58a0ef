//! Octonions by Cayley–Dickson doubling of H, and the spin and G2 matrices built from them.

use crate::exact_linalg::sparse::SparseVec;
use crate::exact_linalg::{kernel_sparse, q, GaussRational, Mat, Rational};
use crate::real_forms::quaternion::Quat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    Compact,
    Split,
}

/// The 8-dimensional composition algebra with basis e_0 = 1, e_1..e_7.
#[derive(Clone, Debug)]
pub struct OctonionAlgebra {
    pub signature: Signature,
    /// table[i][j] = (sign, k) with e_i e_j = sign · e_k
    table: Vec<Vec<(i64, usize)>>,
}

fn quat_basis(i: usize) -> Quat {
    match i {
        0 => Quat::one(),
        1 => Quat::i(),
        2 => Quat::j(),
        _ => Quat::k(),
    }
}

fn quat_index(x: &Quat) -> (i64, usize) {
    let parts = [&x.a, &x.b, &x.c, &x.d];
    for (k, p) in parts.iter().enumerate() {
        if **p != q(0) {
            return (if **p > q(0) { 1 } else { -1 }, k);
        }
    }
    unreachable!("basis products are nonzero")
}

impl OctonionAlgebra {
    /// (a, b)(c, d) = (ac + γ d̄ b, d a + b c̄) with γ = -1 (compact) or +1 (split).
    pub fn new(signature: Signature) -> Self {
        let gamma = if signature == Signature::Compact {
            -1
        } else {
            1
        };
        let pair = |i: usize| -> (Quat, Quat) {
            if i < 4 {
                (quat_basis(i), Quat::zero())
            } else {
                (Quat::zero(), quat_basis(i - 4))
            }
        };
        let table = (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| {
                        let (a, b) = pair(i);
                        let (c, d) = pair(j);
                        let first = &(&a * &c) + &(&(&d.conj() * &b).scale(&q(gamma)));
                        let second = &(&d * &a) + &(&b * &c.conj());
                        if first.is_zero() {
                            let (s, k) = quat_index(&second);
                            (s, k + 4)
                        } else {
                            quat_index(&first)
                        }
                    })
                    .collect()
            })
            .collect();
        OctonionAlgebra { signature, table }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> (i64, usize) {
        self.table[i][j]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![q(0); 8];
        for i in 0..8 {
            if x[i] == q(0) {
                continue;
            }
            for j in 0..8 {
                if y[j] == q(0) {
                    continue;
                }
                let (s, k) = self.table[i][j];
                out[k] += &x[i] * &y[j] * q(s);
            }
        }
        out
    }

    /// Norm form N(e_i) on the basis: diag(1,...,1) or diag(1,1,1,1,-1,-1,-1,-1).
    pub fn norm_diag(&self) -> Vec<i64> {
        (0..8)
            .map(|i| {
                if i >= 4 && self.signature == Signature::Split {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }

    /// Matrix of left multiplication by e_i on R^8.
    pub fn left_mul(&self, i: usize) -> Mat {
        let mut m = Mat::zeros(8, 8);
        for j in 0..8 {
            let (s, k) = self.table[i][j];
            m[(k, j)] = GaussRational::int(s);
        }
        m
    }

    /// Derivations of O restricted to Im O, as 7×7 matrices.
    pub fn derivations(&self) -> Vec<Mat> {
        // unknown D[r][c] at index 7r + c on Im O basis e_1..e_7
        let idx = |r: usize, c: usize| 7 * (r - 1) + (c - 1);
        let mut rows: Vec<SparseVec> = Vec::new();
        for i in 1..8 {
            for j in 1..8 {
                // D(e_i e_j) - D(e_i) e_j - e_i D(e_j) = 0, component k
                let mut eq: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); 8];
                let (s, m) = self.table[i][j];
                if m != 0 {
                    for k in 1..8 {
                        eq[k].push((idx(k, m), q(s)));
                    }
                }
                for a in 1..8 {
                    let (s2, k) = self.table[a][j];
                    eq[k].push((idx(a, i), q(-s2)));
                    let (s3, k) = self.table[i][a];
                    eq[k].push((idx(a, j), q(-s3)));
                }
                for e in eq {
                    let mut v: Vec<(usize, Rational)> = Vec::new();
                    let mut e = e;
                    e.sort_by_key(|p| p.0);
                    for (c, x) in e {
                        match v.last_mut() {
                            Some(last) if last.0 == c => last.1 += x,
                            _ => v.push((c, x)),
                        }
                    }
                    v.retain(|p| p.1 != q(0));
                    if !v.is_empty() {
                        rows.push(v);
                    }
                }
            }
        }
        let ker = kernel_sparse(&rows, 49);
        ker.basis()
            .iter()
            .map(|v| Mat::from_fn(7, 7, |r, c| GaussRational::real(v[7 * r + c].clone())))
            .collect()
    }
}

/// span{L_i L_j : 1 <= i < j <= 7}: spin(7) in so(8), or spin(4,3) in so(4,4) for split octonions.
pub fn spin7(o: &OctonionAlgebra) -> Vec<Mat> {
    let l: Vec<Mat> = (1..8).map(|i| o.left_mul(i)).collect();
    let mut out = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            out.push(l[i].mul(&l[j]));
        }
    }
    out
}

/// Nine pairwise anticommuting symmetric 16×16 matrices squaring to I.
pub fn spin9_generators() -> Vec<Mat> {
    let o = OctonionAlgebra::new(Signature::Compact);
    let id = Mat::identity(8);
    let z = Mat::zeros(8, 8);
    let mut g = vec![Mat::block_diag(&[&id, &id.neg()])];
    for i in 1..8 {
        let l = o.left_mul(i);
        let top = Mat::hstack(&[&z, &l]);
        let bottom = Mat::hstack(&[&l.neg(), &z]);
        g.push(Mat::vstack(&[&top, &bottom]));
    }
    g.push(Mat::vstack(&[
        &Mat::hstack(&[&z, &id]),
        &Mat::hstack(&[&id, &z]),
    ]));
    g
}

/// span{γ_a γ_b}: spin(9) in so(16).
pub fn spin9() -> Vec<Mat> {
    let g = spin9_generators();
    let mut out = Vec::new();
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            out.push(g[a].mul(&g[b]));
        }
    }
    out
}
