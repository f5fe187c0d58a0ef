//! Seeded rational sampling and the generic-rank estimator.
//!
//! A sample is a group element x = c · exp(Ȳ) with Ȳ a random rational point
//! of n̄ and c either the identity (cell 0) or a Cayley transform of a random
//! rational point of k (cells 1, 2, ...). A full rank at some sample is a
//! certificate: the witness is re-verified by exact elimination. A deficient
//! rank after all samples is evidence only.

pub mod rng;

use crate::exact_linalg::modp::{self, ModMat};
use crate::exact_linalg::{rank_rows, LinalgError, Mat, Rational, Subspace};
use std::sync::Arc;

use crate::lie_core::{minimal_parabolic_with, LieAlg, LieError, ParabolicData, Subalg};
use crate::real_forms::RealForm;
use rng::SplitMix64;

pub const DEFAULT_SEED: u64 = 0x5eed_5eed_5eed_5eed;

const CHUNK: usize = 4;
const CELL_TAG: u64 = 0xce11;
const PRIME_TAG: u64 = 0x9e1e;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenericityError {
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("conjugate leaves the ambient algebra")]
    LeavesAmbient,
    #[error("bad sampling configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    pub height: u64,
    /// Number of cells swept before a negative answer; cell 0 is the open N̄-cell.
    pub weyl_cells: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: DEFAULT_SEED,
            samples: 20,
            height: 7,
            weyl_cells: 2,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampleConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), GenericityError> {
        if self.samples == 0 {
            return Err(GenericityError::BadConfig(
                "samples must be at least 1".into(),
            ));
        }
        if self.height == 0 {
            return Err(GenericityError::BadConfig(
                "height must be at least 1".into(),
            ));
        }
        if self.weyl_cells == 0 {
            return Err(GenericityError::BadConfig(
                "weyl_cells must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn stream(&self, path: &[u64]) -> SplitMix64 {
        SplitMix64::derive(self.seed, path)
    }

    /// Random rational vector of length `n` at the configured height.
    pub fn rationals(&self, path: &[u64], n: usize) -> Vec<Rational> {
        let mut r = self.stream(path);
        (0..n).map(|_| r.rational(self.height)).collect()
    }
}

/// I + N + N²/2! + ..., exact.
pub fn exp_nilpotent(n: &Mat) -> Result<Mat, GenericityError> {
    if !n.is_square() || !n.is_nilpotent() {
        return Err(GenericityError::NotNilpotent);
    }
    let mut out = Mat::identity(n.rows());
    let mut term = Mat::identity(n.rows());
    for k in 1..=n.rows() {
        term = term
            .mul(n)
            .scale_q(&Rational::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Cayley transform (I + Z)(I − Z)⁻¹ and its inverse.
pub fn cayley(z: &Mat) -> Result<(Mat, Mat), GenericityError> {
    let id = Mat::identity(z.rows());
    let c = id.add(z).mul(&id.sub(z).inverse()?);
    let c_inv = id.sub(z).mul(&id.add(z).inverse()?);
    Ok((c, c_inv))
}

/// Span of x b x⁻¹ over the basis of `s`, in the coordinates of `s.parent`.
pub fn ad_conjugate(x: &Mat, s: &Subalg) -> Result<Subspace, GenericityError> {
    let x_inv = x.inverse()?;
    conjugate_space(&s.parent, x, &x_inv, &s.coords)
}

pub fn conjugate_space(
    g: &LieAlg,
    x: &Mat,
    x_inv: &Mat,
    s: &Subspace,
) -> Result<Subspace, GenericityError> {
    let rows = conjugate_rows(g, x, x_inv, s)?;
    Ok(Subspace::span(g.dim(), &rows))
}

fn conjugate_rows(
    g: &LieAlg,
    x: &Mat,
    x_inv: &Mat,
    s: &Subspace,
) -> Result<Vec<Vec<Rational>>, GenericityError> {
    s.basis()
        .iter()
        .map(|c| {
            let m = x.mul(&g.element(c)).mul(x_inv);
            g.coords(&m).ok_or(GenericityError::LeavesAmbient)
        })
        .collect()
}

/// Where samples come from: the open N̄-cell of a minimal parabolic (with
/// Cayley images of k as further cells), or Cayley transforms of random
/// points of the whole algebra when no rational split torus is at hand.
#[derive(Clone, Debug)]
pub enum Sampler {
    Open { nbar: Subspace, k: Subspace },
    Cayley,
}

/// A Lie algebra together with a way of drawing points of its group.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub alg: Arc<LieAlg>,
    pub sampler: Sampler,
}

impl Ambient {
    pub fn new(alg: Arc<LieAlg>, par: &ParabolicData) -> Self {
        Ambient {
            alg,
            sampler: Sampler::Open {
                nbar: par.nbar.clone(),
                k: par.k.clone(),
            },
        }
    }

    pub fn of_form(g: &RealForm) -> Self {
        Ambient::new(g.alg.clone(), &g.parabolic)
    }

    /// h as an algebra in its own right; uses its minimal parabolic when θ restricts to it.
    pub fn of_subalg(h: &Subalg) -> Result<Self, GenericityError> {
        let alg = Arc::new(h.to_lie_alg()?);
        let par = h
            .theta
            .as_ref()
            .and_then(|t| minimal_parabolic_with(&alg, t.clone()).ok());
        Ok(match par {
            Some(par) => Ambient::new(alg, &par),
            None => Ambient {
                alg,
                sampler: Sampler::Cayley,
            },
        })
    }

    /// Coordinates, in this ambient, of a subalgebra given by its matrices.
    pub fn coords_of(&self, s: &Subalg) -> Result<Subspace, GenericityError> {
        self.alg
            .span_of(&s.matrices())
            .map_err(|_| GenericityError::LeavesAmbient)
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn z_dim(&self) -> usize {
        match &self.sampler {
            Sampler::Open { k, .. } => k.dim(),
            Sampler::Cayley => 0,
        }
    }

    fn y_dim(&self) -> usize {
        match &self.sampler {
            Sampler::Open { nbar, .. } => nbar.dim(),
            Sampler::Cayley => self.alg.dim(),
        }
    }
}

/// The sample that produced a rank: cell, index in the cell, and the rational
/// coordinates of Z ∈ k (empty for cell 0) and Ȳ ∈ n̄ (or of W ∈ g for Cayley sampling).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub cell: usize,
    pub index: usize,
    pub z: Vec<Rational>,
    pub y: Vec<Rational>,
}

impl Witness {
    /// The group element x and its inverse.
    pub fn element(&self, amb: &Ambient) -> Result<(Mat, Mat), GenericityError> {
        let g = &amb.alg;
        let (nbar, k) = match &amb.sampler {
            Sampler::Open { nbar, k } => (nbar, k),
            Sampler::Cayley => return cayley(&g.element(&self.y)),
        };
        let y = g.element(&nbar.combination(&self.y));
        let e = exp_nilpotent(&y)?;
        let e_inv = exp_nilpotent(&y.neg())?;
        if self.z.is_empty() {
            return Ok((e, e_inv));
        }
        let z = g.element(&k.combination(&self.z));
        let (c, c_inv) = cayley(&z)?;
        Ok((c.mul(&e), e_inv.mul(&c_inv)))
    }
}

#[derive(Debug, Clone)]
pub struct GenericRankResult {
    pub max_rank: usize,
    pub target: usize,
    pub witness: Witness,
    pub full: bool,
    pub samples_used: usize,
    pub cells_used: usize,
}

impl GenericRankResult {
    pub fn defect(&self) -> usize {
        self.target - self.max_rank
    }
}

/// Exact dim(fixed + Ad(x) moving) at the witness.
pub fn verify_witness(
    amb: &Ambient,
    fixed: &Subspace,
    moving: &Subspace,
    w: &Witness,
) -> Result<usize, GenericityError> {
    let (x, x_inv) = w.element(amb)?;
    let mut rows = fixed.basis();
    rows.extend(conjugate_rows(&amb.alg, &x, &x_inv, moving)?);
    Ok(rank_rows(&rows))
}

struct Residues {
    p: u64,
    fixed: Vec<Vec<u64>>,
    moving: Vec<ModMat>,
}

impl Residues {
    fn new(g: &LieAlg, fixed: &Subspace, moving: &Subspace, p: u64) -> Result<Self, LinalgError> {
        let fixed = fixed
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| modp::reduce(x, p)).collect())
            .collect::<Result<_, _>>()?;
        let moving = moving
            .basis()
            .iter()
            .map(|c| ModMat::from_mat(&g.element(c), p))
            .collect::<Result<_, _>>()?;
        Ok(Residues { p, fixed, moving })
    }

    fn rank(&self, g: &LieAlg, x: &Mat, x_inv: &Mat) -> Result<usize, LinalgError> {
        let xm = ModMat::from_mat(x, self.p)?;
        let xi = ModMat::from_mat(x_inv, self.p)?;
        let mut rows = self.fixed.clone();
        for b in &self.moving {
            rows.push(xm.mul(b).mul(&xi).realified_at(g.pivots()));
        }
        Ok(modp::rank_residues(rows, self.p))
    }
}

fn primes(cfg: &SampleConfig, g: &LieAlg, fixed: &Subspace, moving: &Subspace) -> Vec<Residues> {
    let mut rng = cfg.stream(&[PRIME_TAG]);
    let mut out = Vec::new();
    for _ in 0..8 {
        if out.len() == 2 {
            break;
        }
        if let Ok(r) = Residues::new(g, fixed, moving, modp::random_prime(&mut rng)) {
            out.push(r);
        }
    }
    out
}

fn sample(amb: &Ambient, cfg: &SampleConfig, z: &[Rational], cell: usize, index: usize) -> Witness {
    Witness {
        cell,
        index,
        z: z.to_vec(),
        y: cfg.rationals(&[cell as u64, index as u64], amb.y_dim()),
    }
}

/// Lower bound for dim(fixed + Ad(x) moving) from modular ranks; exact rank when no prime applies.
fn sample_rank(
    amb: &Ambient,
    res: &[Residues],
    fixed: &Subspace,
    moving: &Subspace,
    w: &Witness,
    target: usize,
) -> Result<usize, GenericityError> {
    let (x, x_inv) = w.element(amb)?;
    let mut best = None;
    for r in res {
        if let Ok(k) = r.rank(&amb.alg, &x, &x_inv) {
            best = Some(best.map_or(k, |b: usize| b.max(k)));
            if k == target {
                break;
            }
        }
    }
    match best {
        Some(k) => Ok(k),
        None => verify_witness(amb, fixed, moving, w),
    }
}

/// Max over samples of dim(fixed + Ad(x) moving); `full` when it reaches dim g.
pub fn generic_sum_rank(
    amb: &Ambient,
    fixed: &Subspace,
    moving: &Subspace,
    cfg: &SampleConfig,
) -> Result<GenericRankResult, GenericityError> {
    cfg.validate()?;
    let g = &amb.alg;
    let target = g.dim();
    let res = primes(cfg, g, fixed, moving);
    let mut best: Option<(usize, Witness)> = None;
    let mut used = 0;
    let mut cells = 0;
    'cells: for cell in 0..cfg.weyl_cells {
        cells += 1;
        let z = if cell == 0 {
            Vec::new()
        } else {
            cfg.rationals(&[CELL_TAG, cell as u64], amb.z_dim())
        };
        let mut start = 0;
        while start < cfg.samples {
            let end = (start + CHUNK).min(cfg.samples);
            let ranks = crate::par::map_range(end - start, |o| {
                let w = sample(amb, cfg, &z, cell, start + o);
                sample_rank(amb, &res, fixed, moving, &w, target).map(|k| (k, w))
            });
            for r in ranks {
                let (k, w) = r?;
                used += 1;
                if best.as_ref().is_none_or(|(b, _)| k > *b) {
                    best = Some((k, w));
                }
                if k == target {
                    break 'cells;
                }
            }
            start = end;
        }
    }
    let (_, witness) = best.expect("at least one sample");
    let max_rank = verify_witness(amb, fixed, moving, &witness)?;
    Ok(GenericRankResult {
        max_rank,
        target,
        full: max_rank == target,
        witness,
        samples_used: used,
        cells_used: cells,
    })
}

/// Random rational element of the span of `s` (coordinates in the ambient).
pub fn random_element(s: &Subspace, cfg: &SampleConfig, path: &[u64]) -> Vec<Rational> {
    s.combination(&cfg.rationals(path, s.dim()))
}
