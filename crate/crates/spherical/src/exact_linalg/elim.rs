use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mat::Mat;
use super::modp;
use super::scalar::{denominator_lcm, Rational};
use super::sparse::{self, SparseRref};
use super::subspace::Subspace;
use crate::genericity::rng::SplitMix64;

const PRIME_STREAM_SEED: u64 = 0x5eed_0f_0bad_cafe;

/// Rank by fraction-free (Bareiss) elimination of the integer-scaled rows.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = denominator_lcm(r);
            r.iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..m {
        if rank == n {
            break;
        }
        let Some(piv) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let pivot = a[rank][col].clone();
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for j in (col + 1)..m {
                let mut v = &row[j] * &pivot;
                if !f.is_zero() && !prow[j].is_zero() {
                    v -= &f * &prow[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of rational rows: two modular ranks first, Bareiss only if they are deficient.
pub fn rank_rows(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let full = rows.len().min(rows[0].len());
    if full == 0 {
        return 0;
    }
    let mut rng = SplitMix64::new(PRIME_STREAM_SEED);
    let mut tried = 0;
    let mut attempts = 0;
    while tried < 2 && attempts < 8 {
        attempts += 1;
        let p = modp::random_prime(&mut rng);
        if let Ok(r) = modp::rank_mod_p_rows(rows, p) {
            tried += 1;
            if r == full {
                return full;
            }
        }
    }
    bareiss_rank(rows)
}

/// Row rank over Q(i).
pub fn rank(m: &Mat) -> usize {
    if m.is_real() {
        rank_rows(&m.real_rows().unwrap())
    } else {
        rank_rows(&m.realify_blocks()) / 2
    }
}

/// Right null space of rational rows with `ncols` columns.
pub fn kernel_rows(rows: &[Vec<Rational>], ncols: usize) -> Subspace {
    let sp: Vec<_> = rows.iter().map(|r| sparse::from_dense(r)).collect();
    kernel_sparse(&sp, ncols)
}

pub fn kernel_sparse(rows: &[sparse::SparseVec], ncols: usize) -> Subspace {
    let mut r = SparseRref::new(ncols);
    for row in rows {
        r.insert(row);
        if r.rank() == ncols {
            return Subspace::zero(ncols);
        }
    }
    let (rref, pivots) = r.into_sorted();
    let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut vecs = Vec::new();
    for f in (0..ncols).filter(|c| !is_pivot.contains(c)) {
        let mut v: sparse::SparseVec = Vec::new();
        for (row, &pc) in rref.iter().zip(&pivots) {
            if let Some(x) = sparse::get(row, f) {
                v.push((pc, -x.clone()));
            }
        }
        v.push((f, Rational::one()));
        v.sort_by_key(|e| e.0);
        vecs.push(v);
    }
    Subspace::span_sparse(ncols, &vecs)
}

/// Null space of `m`: over Q for real matrices; for Gaussian matrices, the real
/// kernel of the realified map on interleaved (re, im) coordinates.
pub fn kernel(m: &Mat) -> Subspace {
    if m.is_real() {
        kernel_rows(&m.real_rows().unwrap(), m.cols())
    } else {
        let c = m.cols();
        let mut rows = Vec::with_capacity(2 * m.rows());
        for i in 0..m.rows() {
            let mut re = vec![Rational::zero(); 2 * c];
            let mut im = vec![Rational::zero(); 2 * c];
            for j in 0..c {
                let e = &m[(i, j)];
                re[2 * j] = e.re.clone();
                re[2 * j + 1] = -e.im.clone();
                im[2 * j] = e.im.clone();
                im[2 * j + 1] = e.re.clone();
            }
            rows.push(re);
            rows.push(im);
        }
        kernel_rows(&rows, 2 * c)
    }
}
