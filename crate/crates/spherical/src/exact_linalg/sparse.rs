use num_traits::{One, Zero};

use super::scalar::Rational;

/// Sparse rational vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn get(v: &SparseVec, idx: usize) -> Option<&Rational> {
    v.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|k| &v[k].1)
}

/// a - f * b
pub fn sub_scaled(a: &SparseVec, f: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map_or(usize::MAX, |e| e.0);
        let jb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ia < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ia {
            out.push((jb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, f: &Rational) -> SparseVec {
    if f.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * f)).collect()
}

pub fn add_scaled_into(acc: &mut Vec<Rational>, f: &Rational, b: &SparseVec) {
    if f.is_zero() {
        return;
    }
    for (i, x) in b {
        acc[*i] += f * x;
    }
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct SparseRref {
    pub ncols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_slot: std::collections::HashMap<usize, usize>,
}

impl SparseRref {
    pub fn new(ncols: usize) -> Self {
        SparseRref {
            ncols,
            ..Default::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remove all pivot-column components of `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_slot.get(c).map(|&s| (s, x.clone())))
            .collect();
        let mut out = v.clone();
        for (slot, f) in hits {
            out = sub_scaled(&out, &f, &self.rows[slot]);
        }
        out
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (pc, pv) = r[0].clone();
        let r = if pv.is_one() {
            r
        } else {
            scale(&r, &pv.recip())
        };
        for row in self.rows.iter_mut() {
            if let Some(f) = get(row, pc).cloned() {
                *row = sub_scaled(row, &f, &r);
            }
        }
        self.pivot_slot.insert(pc, self.rows.len());
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Rows and pivots sorted by pivot column.
    pub fn into_sorted(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&k| self.pivots[k]);
        let pivots = idx.iter().map(|&k| self.pivots[k]).collect();
        let mut rows = self.rows;
        let mut out = Vec::with_capacity(idx.len());
        for &k in &idx {
            out.push(std::mem::take(&mut rows[k]));
        }
        (out, pivots)
    }
}
