use num_traits::Zero;

use crate::exact_linalg::sparse::SparseVec;
use crate::exact_linalg::{kernel_sparse, GaussRational, Mat, Rational, Subspace};

/// Linear conditions cutting a real subalgebra out of gl(N, C).
#[derive(Clone, Debug)]
pub enum Cond {
    Real,
    Traceless,
    /// X^* H + H X = 0
    Hermitian(Mat),
    /// X^T B + B X = 0
    Bilinear(Mat),
    /// X J = J X̄
    Quaternionic(Mat),
}

fn apply(c: &Cond, x: &Mat) -> Option<Mat> {
    match c {
        Cond::Hermitian(h) => Some(x.adjoint().mul(h).add(&h.mul(x))),
        Cond::Bilinear(b) => Some(x.transpose().mul(b).add(&b.mul(x))),
        Cond::Quaternionic(j) => Some(x.mul(j).sub(&j.mul(&x.conj()))),
        _ => None,
    }
}

/// Solution space in interleaved realified entry coordinates.
pub fn solve(n: usize, conds: &[Cond]) -> Subspace {
    let nv = 2 * n * n;
    let mut rows: Vec<SparseVec> = Vec::new();
    for c in conds {
        match c {
            Cond::Real => {
                for k in (1..nv).step_by(2) {
                    rows.push(vec![(k, Rational::from_integer(1.into()))]);
                }
            }
            Cond::Traceless => {
                for part in 0..2 {
                    rows.push(
                        (0..n)
                            .map(|i| (2 * (i * n + i) + part, Rational::from_integer(1.into())))
                            .collect(),
                    );
                }
            }
            _ => {
                let mut eq: Vec<SparseVec> = vec![Vec::new(); nv];
                for k in 0..nv {
                    let (i, j) = ((k / 2) / n, (k / 2) % n);
                    let mut u = Mat::zeros(n, n);
                    u[(i, j)] = if k % 2 == 0 {
                        GaussRational::one()
                    } else {
                        GaussRational::i()
                    };
                    let out = apply(c, &u).unwrap();
                    for (e, v) in out.realified_entries().into_iter().enumerate() {
                        if !v.is_zero() {
                            eq[e].push((k, v));
                        }
                    }
                }
                rows.extend(eq.into_iter().filter(|r| !r.is_empty()));
            }
        }
    }
    kernel_sparse(&rows, nv)
}
