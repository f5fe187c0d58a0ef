use num_traits::{Signed, Zero};

use super::mat::Mat;
use super::scalar::{q, Rational};
use super::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

/// Exact inertia of a real symmetric matrix by symmetric Gaussian elimination.
pub fn signature(s: &Mat) -> Result<Signature, LinalgError> {
    if !s.is_square() || !s.is_real() || *s != s.transpose() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = s.rows();
    let mut a: Vec<Vec<Rational>> = s.real_rows()?;
    let mut sig = Signature {
        pos: 0,
        neg: 0,
        zero: 0,
    };
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&i| !a[i][i].is_zero());
        let piv = match diag {
            Some(i) => i,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                match off {
                    None => {
                        sig.zero += n - k;
                        break;
                    }
                    Some((i, j)) => {
                        // e_i <- e_i + e_j turns the zero diagonal into 2 a_ij
                        for c in 0..n {
                            let v = a[j][c].clone();
                            a[i][c] += v;
                        }
                        for r in 0..n {
                            let v = a[r][j].clone();
                            a[r][i] += v;
                        }
                        i
                    }
                }
            }
        };
        a.swap(k, piv);
        for row in a.iter_mut() {
            row.swap(k, piv);
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in (k + 1)..n {
            a[k][i] = q(0);
            a[i][k] = q(0);
        }
        k += 1;
    }
    Ok(sig)
}
