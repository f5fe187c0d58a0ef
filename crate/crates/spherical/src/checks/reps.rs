//! Representations of complex simple Lie algebras by exact action matrices.
//!
//! Every representation here is given on a real (rational) basis of a split
//! real form, which is a complex basis of the complex algebra as well, so
//! ranks over Q agree with ranks over C.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::embeddings::octonion::{spin7, spin9, OctonionAlgebra, Signature};
use crate::exact_linalg::{q, GaussRational, Mat, Rational, Subspace};
use crate::lie_core::LieAlg;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("unknown representation {0}")]
    Unknown(String),
    #[error("{0} is outside the row's range")]
    OutOfRange(String),
    #[error("malformed representation name {0}")]
    Malformed(String),
}

#[derive(Clone)]
pub struct Rep {
    pub name: String,
    /// Action of a basis of the (semisimple) Lie algebra.
    pub mats: Vec<Mat>,
    /// True when the matrices define a real representation of a real form
    /// whose invariant forms have a meaningful signature.
    pub real: bool,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Rep({}, dim V = {}, dim G = {})",
            self.name,
            self.dim_v(),
            self.dim_g()
        )
    }
}

impl Rep {
    pub fn new(name: impl Into<String>, mats: Vec<Mat>, real: bool) -> Rep {
        Rep {
            name: name.into(),
            mats,
            real,
        }
    }

    pub fn dim_v(&self) -> usize {
        self.mats.first().map_or(0, Mat::rows)
    }

    pub fn dim_g(&self) -> usize {
        self.mats.len()
    }

    /// Bracket closure and ρ([X,Y]) = [ρX, ρY] on the span; checks the span is a Lie algebra.
    pub fn is_lie(&self) -> bool {
        LieAlg::new(self.dim_v(), &self.mats, &self.name).is_ok()
    }
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    Mat::unit(n, i, j)
}

pub fn sl_basis(n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(unit(n, i, j));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        out.push(unit(n, i, i).sub(&unit(n, i + 1, i + 1)));
    }
    out
}

pub fn so_basis(n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(unit(n, i, j).sub(&unit(n, j, i)));
        }
    }
    out
}

/// sp(n) preserving [[0, I], [-I, 0]] on C^{2n}.
pub fn sp_basis(n: usize) -> Vec<Mat> {
    let m = 2 * n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(unit(m, i, j).sub(&unit(m, n + j, n + i)));
        }
    }
    for i in 0..n {
        for j in i..n {
            let b = if i == j {
                unit(m, i, n + i)
            } else {
                unit(m, i, n + j).add(&unit(m, j, n + i))
            };
            out.push(b.clone());
            out.push(b.transpose());
        }
    }
    out
}

fn omega(n: usize) -> Mat {
    let mut w = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        w[(i, n + i)] = GaussRational::one();
        w[(n + i, i)] = -GaussRational::one();
    }
    w
}

fn subsets(n: usize, k: usize, multi: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        n: usize,
        k: usize,
        start: usize,
        multi: bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, if multi { i } else { i + 1 }, multi, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, multi, &mut cur, &mut out);
    out
}

/// Induced action on Λ^k (multi = false) or Sym^k (multi = true) by derivations.
fn power(mats: &[Mat], k: usize, multi: bool) -> Vec<Mat> {
    let n = mats.first().map_or(0, Mat::rows);
    let basis = subsets(n, k, multi);
    let index: HashMap<Vec<usize>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let d = basis.len();
    mats.iter()
        .map(|x| {
            let mut out = Mat::zeros(d, d);
            for (col, s) in basis.iter().enumerate() {
                for pos in 0..k {
                    for l in 0..n {
                        let c = &x[(l, s[pos])];
                        if c.is_zero() {
                            continue;
                        }
                        let mut t = s.clone();
                        t[pos] = l;
                        let mut sign = 1i64;
                        if !multi {
                            if s.iter().enumerate().any(|(j, &v)| j != pos && v == l) {
                                continue;
                            }
                            // bubble sort, counting transpositions
                            for a in 0..k {
                                for b in 0..k - 1 - a {
                                    if t[b] > t[b + 1] {
                                        t.swap(b, b + 1);
                                        sign = -sign;
                                    }
                                }
                            }
                        } else {
                            t.sort_unstable();
                        }
                        let row = index[&t];
                        let add = c * &GaussRational::real(q(sign));
                        out[(row, col)] = &out[(row, col)] + &add;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn exterior_power(mats: &[Mat], k: usize) -> Vec<Mat> {
    power(mats, k, false)
}

pub fn symmetric_power(mats: &[Mat], k: usize) -> Vec<Mat> {
    power(mats, k, true)
}

/// Action on an invariant subspace of Q^N (real matrices only).
pub fn restrict(mats: &[Mat], sub: &Subspace) -> Vec<Mat> {
    let basis = sub.basis();
    let d = basis.len();
    mats.iter()
        .map(|x| {
            let mut out = Mat::zeros(d, d);
            for (j, v) in basis.iter().enumerate() {
                let w: Vec<Rational> = x
                    .apply(
                        &v.iter()
                            .map(|r| GaussRational::real(r.clone()))
                            .collect::<Vec<_>>(),
                    )
                    .into_iter()
                    .map(|z| z.re)
                    .collect();
                let c = sub.coords_of(&w).expect("subspace is invariant");
                for (i, ci) in c.into_iter().enumerate() {
                    out[(i, j)] = GaussRational::real(ci);
                }
            }
            out
        })
        .collect()
}

pub fn adjoint(g: &LieAlg) -> Vec<Mat> {
    let d = g.dim();
    (0..d)
        .map(|i| {
            let mut e = vec![Rational::zero(); d];
            e[i] = q(1);
            Mat::from_rational_rows(&g.ad_matrix(&e), d)
        })
        .collect()
}

/// Λ^k₀ C^{2n}: the kernel of the contraction Λ^k → Λ^{k-2} with the symplectic form.
pub fn sp_primitive(n: usize, k: usize) -> Vec<Mat> {
    let basis = sp_basis(n);
    let ext = exterior_power(&basis, k);
    let w = omega(n);
    let tuples = subsets(2 * n, k, false);
    let lower: HashMap<Vec<usize>, usize> = subsets(2 * n, k - 2, false)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut rows = vec![vec![Rational::zero(); tuples.len()]; lower.len()];
    for (col, t) in tuples.iter().enumerate() {
        for a in 0..k {
            for b in a + 1..k {
                let c = &w[(t[a], t[b])].re;
                if c.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = (0..k).filter(|&i| i != a && i != b).map(|i| t[i]).collect();
                let sign = if (a + b) % 2 == 1 { q(1) } else { q(-1) };
                rows[lower[&rest]][col] += c * &sign;
            }
        }
    }
    let sub = crate::exact_linalg::kernel_rows(&rows, tuples.len());
    restrict(&ext, &sub)
}

pub fn sp_second_fundamental(n: usize) -> Vec<Mat> {
    sp_primitive(n, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Table2Row {
    pub row: usize,
    pub group: &'static str,
    pub rho: &'static str,
    /// Smallest admissible n for the series rows; 0 for fixed rows.
    pub min_n: usize,
    pub preh: bool,
    pub form: u8,
    pub quote: &'static str,
}

pub const TABLE2: &[Table2Row] = &[
    Table2Row {
        row: 1,
        group: "G simple (sl(n,C))",
        rho: "adjoint",
        min_n: 3,
        preh: false,
        form: 1,
        quote: "$G$ simple                  & adjoint     & $\\dim G$           &           & 1",
    },
    Table2Row {
        row: 2,
        group: "SL(n,C)",
        rho: "w1",
        min_n: 3,
        preh: true,
        form: 0,
        quote:
            "$\\SL(n,\\C)$, $n \\geq 3$     & $\\omega_1$  & $n$                & \\checkmark& 0",
    },
    Table2Row {
        row: 3,
        group: "SL(n,C)",
        rho: "2w1",
        min_n: 3,
        preh: true,
        form: 0,
        quote:
            "$\\SL(n,\\C)$, $n \\geq 3$     & $2\\omega_1$ & $\\frac{1}{2}n(n+1)$& \\checkmark& 0",
    },
    Table2Row {
        row: 4,
        group: "SL(n,C)",
        rho: "w2",
        min_n: 5,
        preh: true,
        form: 0,
        quote:
            "$\\SL(n,\\C)$, $n \\geq 5$     & $\\omega_2$  & $\\frac{1}{2}n(n-1)$& \\checkmark& 0",
    },
    Table2Row {
        row: 5,
        group: "Sp(n,C)",
        rho: "w1",
        min_n: 1,
        preh: true,
        form: 2,
        quote:
            "$\\Sp(n,\\C)$, $n \\geq 1$     & $\\omega_1$  & $2n$               & \\checkmark& 2",
    },
    Table2Row {
        row: 6,
        group: "Sp(n,C)",
        rho: "w2",
        min_n: 3,
        preh: false,
        form: 1,
        quote: "$\\Sp(n,\\C)$, $n \\geq 3$     & $\\omega_2$  & $(n-1)(2n+1)$      &           & 1",
    },
    Table2Row {
        row: 7,
        group: "SO(n,C)",
        rho: "w1",
        min_n: 3,
        preh: true,
        form: 1,
        quote:
            "$\\SO(n,\\C)$, $n\\geq 3$, $n\\neq 4$ & $\\omega_1$  & $n$          & \\checkmark& 1",
    },
    Table2Row {
        row: 8,
        group: "SL(2,C)",
        rho: "3w1",
        min_n: 0,
        preh: true,
        form: 2,
        quote: "$\\SL(2,\\C)$                 & $3\\omega_1$ & $4$                & \\checkmark& 2",
    },
    Table2Row {
        row: 9,
        group: "SL(6,C)",
        rho: "w3",
        min_n: 0,
        preh: true,
        form: 2,
        quote: "$\\SL(6,\\C)$                 & $\\omega_3$  & $20$               & \\checkmark& 2",
    },
    Table2Row {
        row: 10,
        group: "SL(7,C)",
        rho: "w3",
        min_n: 0,
        preh: true,
        form: 0,
        quote: "$\\SL(7,\\C)$                & $\\omega_3$  & $35$               & \\checkmark& 0",
    },
    Table2Row {
        row: 11,
        group: "SL(8,C)",
        rho: "w3",
        min_n: 0,
        preh: true,
        form: 0,
        quote: "$\\SL(8,\\C)$                & $\\omega_3$  & $56$               & \\checkmark& 0",
    },
    Table2Row {
        row: 12,
        group: "Sp(3,C)",
        rho: "w3",
        min_n: 0,
        preh: true,
        form: 2,
        quote: "$\\Sp(3,\\C)$                & $\\omega_3$  & $14$               & \\checkmark& 2",
    },
    Table2Row {
        row: 13,
        group: "Spin(7,C)",
        rho: "spin",
        min_n: 0,
        preh: true,
        form: 1,
        quote: "$\\Spin(7,\\C)$              & spin        & $8$                & \\checkmark& 1",
    },
    Table2Row {
        row: 14,
        group: "Spin(9,C)",
        rho: "spin",
        min_n: 0,
        preh: true,
        form: 1,
        quote: "$\\Spin(9,\\C)$              & spin        & $16$               & \\checkmark& 1",
    },
    Table2Row {
        row: 20,
        group: "G2(C)",
        rho: "w1",
        min_n: 0,
        preh: true,
        form: 1,
        quote: "$\\sG_2^\\C$                 & $\\omega_1$  & $7$                & \\checkmark& 1",
    },
];

pub fn table2_row(row: usize) -> Option<&'static Table2Row> {
    TABLE2.iter().find(|r| r.row == row)
}

/// The representation of Table 2 row `row` at parameter `n` (ignored for fixed rows).
pub fn table2_rep(row: usize, n: usize) -> Result<Rep, RepError> {
    let r = table2_row(row).ok_or_else(|| RepError::Unknown(format!("T2.{row}")))?;
    if r.min_n > 0 && (n < r.min_n || (row == 7 && n == 4)) {
        return Err(RepError::OutOfRange(format!("T2.{row}({n})")));
    }
    let name = if r.min_n > 0 {
        format!("T2.{row}({n})")
    } else {
        format!("T2.{row}")
    };
    let mats = match row {
        1 => {
            let g = LieAlg::new(n, &sl_basis(n), "sl").expect("sl(n) closes");
            adjoint(&g)
        }
        2 => sl_basis(n),
        3 => symmetric_power(&sl_basis(n), 2),
        4 => exterior_power(&sl_basis(n), 2),
        5 => sp_basis(n),
        6 => sp_second_fundamental(n),
        7 => so_basis(n),
        8 => symmetric_power(&sl_basis(2), 3),
        9 => exterior_power(&sl_basis(6), 3),
        10 => exterior_power(&sl_basis(7), 3),
        11 => exterior_power(&sl_basis(8), 3),
        12 => sp_primitive(3, 3),
        13 => spin7(&OctonionAlgebra::new(Signature::Compact)),
        14 => spin9(),
        20 => OctonionAlgebra::new(Signature::Split).derivations(),
        _ => unreachable!(),
    };
    let real = matches!(row, 1 | 7 | 13 | 14 | 20);
    Ok(Rep::new(name, mats, real))
}

/// `T2.<row>` or `T2.<row>(<n>)`.
pub fn parse_rep(text: &str) -> Result<Rep, RepError> {
    let t = text.trim();
    let bad = || RepError::Malformed(t.to_string());
    let rest = t.strip_prefix("T2.").ok_or_else(bad)?;
    let (row, n) = match rest.split_once('(') {
        Some((r, a)) => {
            let a = a.strip_suffix(')').ok_or_else(bad)?;
            (r, a.trim().parse::<usize>().map_err(|_| bad())?)
        }
        None => (rest, 0),
    };
    let row: usize = row.trim().parse().map_err(|_| bad())?;
    let r = table2_row(row).ok_or_else(|| RepError::Unknown(t.to_string()))?;
    if r.min_n > 0 && n == 0 {
        return Err(RepError::Malformed(format!("{t} needs a parameter")));
    }
    table2_rep(row, n)
}
