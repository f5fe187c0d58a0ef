//! Reduction modulo word-sized primes.
//!
//! Gaussian entries reduce to pairs in F_p[i]/(i^2+1). That quotient is a ring
//! image of Z_(p)[i] whether or not -1 is a square mod p, so products and sums
//! commute with reduction; ranks are only ever taken of real coordinate rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::mat::Mat;
use super::scalar::{GaussRational, Rational};
use super::LinalgError;
use crate::genericity::rng::SplitMix64;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniform-ish prime in [2^29, 2^30).
pub fn random_prime(rng: &mut SplitMix64) -> u64 {
    loop {
        let c = (1u64 << 29) | (rng.next_u64() & ((1u64 << 29) - 1)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

pub fn reduce(r: &Rational, p: u64) -> Result<u64, LinalgError> {
    if r.is_zero() {
        return Ok(0);
    }
    let d = reduce_int(r.denom(), p);
    if d == 0 {
        return Err(LinalgError::BadPrime(p));
    }
    let n = if r.numer().is_negative() {
        (p - reduce_int(&-r.numer(), p)) % p
    } else {
        reduce_int(r.numer(), p)
    };
    Ok(mul_mod(n, inv_mod(d, p), p))
}

/// Rank of a matrix of residues; consumes the rows.
pub fn rank_residues(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank][col..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for r in (rank + 1)..rows.len() {
            let f = rows[r][col];
            if f == 0 {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if *pv != 0 {
                    rows[r][j] = (rows[r][j] + p - mul_mod(f, *pv, p)) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank_mod_p_rows(rows: &[Vec<Rational>], p: u64) -> Result<usize, LinalgError> {
    let red = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| reduce(x, p))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rank_residues(red, p))
}

/// Rank of the reduction of `m` modulo `p` (over F_p, Gaussian matrices via realification).
pub fn rank_mod_p(m: &Mat, p: u64) -> Result<usize, LinalgError> {
    if m.is_real() {
        rank_mod_p_rows(&m.real_rows()?, p)
    } else {
        Ok(rank_mod_p_rows(&m.realify_blocks(), p)? / 2)
    }
}

/// Element of F_p[i]/(i^2+1).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ModGauss {
    pub re: u64,
    pub im: u64,
}

/// Square matrix over F_p[i]/(i^2+1).
#[derive(Clone, Debug)]
pub struct ModMat {
    pub n: usize,
    pub p: u64,
    pub data: Vec<ModGauss>,
}

impl ModMat {
    pub fn from_mat(m: &Mat, p: u64) -> Result<ModMat, LinalgError> {
        assert!(m.is_square());
        let data = m
            .entries()
            .iter()
            .map(|e: &GaussRational| {
                Ok(ModGauss {
                    re: reduce(&e.re, p)?,
                    im: reduce(&e.im, p)?,
                })
            })
            .collect::<Result<Vec<_>, LinalgError>>()?;
        Ok(ModMat {
            n: m.rows(),
            p,
            data,
        })
    }

    pub fn mul(&self, o: &ModMat) -> ModMat {
        let (n, p) = (self.n, self.p);
        let mut re = vec![0u128; n * n];
        let mut im = vec![0u128; n * n];
        let pp = p as u128;
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0 && a.im == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = o.data[k * n + j];
                    if b.re == 0 && b.im == 0 {
                        continue;
                    }
                    let idx = i * n + j;
                    // (a.re + i a.im)(b.re + i b.im)
                    re[idx] +=
                        a.re as u128 * b.re as u128 + (pp - a.im as u128) * b.im as u128 % pp;
                    im[idx] += a.re as u128 * b.im as u128 + a.im as u128 * b.re as u128;
                    if re[idx] > (1u128 << 120) {
                        re[idx] %= pp;
                    }
                    if im[idx] > (1u128 << 120) {
                        im[idx] %= pp;
                    }
                }
            }
        }
        let data = re
            .into_iter()
            .zip(im)
            .map(|(r, i)| ModGauss {
                re: (r % pp) as u64,
                im: (i % pp) as u64,
            })
            .collect();
        ModMat { n, p, data }
    }

    /// Interleaved real coordinates of the entries, matching `Mat::realified_entries`.
    pub fn realified_at(&self, positions: &[usize]) -> Vec<u64> {
        positions
            .iter()
            .map(|&k| {
                let e = self.data[k / 2];
                if k % 2 == 0 {
                    e.re
                } else {
                    e.im
                }
            })
            .collect()
    }
}
