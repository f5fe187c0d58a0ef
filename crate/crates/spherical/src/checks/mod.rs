//! Verification operations: sphericity, factorization, prehomogeneity,
//! invariant forms, the dimension and rank bounds, adapted Levi data for
//! symmetric pairs, and the tower condition.
//!
//! Positive outcomes always carry a witness that is re-verified exactly.
//! Negative outcomes from sampling are labelled probable.

pub mod reps;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::embeddings::invariant_forms;
use crate::exact_linalg::{kernel_rows, rank, signature, LinalgError, Mat, Rational, Subspace};
use crate::genericity::{
    generic_sum_rank, random_element, Ambient, GenericRankResult, GenericityError, SampleConfig,
    Witness,
};
use crate::lie_core::{real_rank_with, LieAlg, LieError, Subalg, Theta};
use crate::real_forms::RealForm;
use reps::Rep;

const LEVI_TAG: u64 = 0x1e71;
const PREH_TAG: u64 = 0x9e4;
const FORM_TAG: u64 = 0xf0f;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("h is not certified θ-stable")]
    NotThetaStable,
    #[error("h is not a symmetric subalgebra")]
    NotSymmetric,
    #[error("minimal centralizer dimension {0} reached only once in {1} samples")]
    Unstable(usize, usize),
    #[error("subalgebra does not live in this ambient algebra")]
    WrongParent,
    #[error(transparent)]
    Genericity(#[from] GenericityError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Spherical,
    NotSphericalProbable,
    Factorization,
    NoFactorizationProbable,
    Prehomogeneous,
    NotPrehomogeneousProbable,
    Pass,
    Fail,
}

impl Outcome {
    pub fn is_positive(self) -> bool {
        matches!(
            self,
            Outcome::Spherical | Outcome::Factorization | Outcome::Prehomogeneous | Outcome::Pass
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Spherical => "SPHERICAL",
            Outcome::NotSphericalProbable => "NOT_SPHERICAL_PROBABLE",
            Outcome::Factorization => "FACTORIZATION",
            Outcome::NoFactorizationProbable => "NO_FACTORIZATION_PROBABLE",
            Outcome::Prehomogeneous => "PREHOMOGENEOUS",
            Outcome::NotPrehomogeneousProbable => "NOT_PREHOMOGENEOUS_PROBABLE",
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    None,
    /// A group element x given by its cell, sample index and rational coordinates.
    Witness {
        cell: usize,
        index: usize,
        z: Vec<String>,
        y: Vec<String>,
        exact_rank: usize,
    },
    /// A vector of V at which the orbit map has full rank.
    Vector {
        v: Vec<String>,
        exact_rank: usize,
    },
    Defect {
        defect: usize,
        samples: usize,
        cells: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Verdict {
    pub check: String,
    pub outcome: Outcome,
    pub numbers: BTreeMap<String, i64>,
    pub evidence: Evidence,
    pub notes: Vec<String>,
    pub also: Vec<Verdict>,
}

impl Verdict {
    fn new(check: &str, outcome: Outcome) -> Verdict {
        Verdict {
            check: check.to_string(),
            outcome,
            numbers: BTreeMap::new(),
            evidence: Evidence::None,
            notes: Vec::new(),
            also: Vec::new(),
        }
    }

    fn num(mut self, key: &str, v: usize) -> Verdict {
        self.numbers.insert(key.to_string(), v as i64);
        self
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        self.numbers.get(key).map(|&v| v as usize)
    }

    pub fn sub(&self, check: &str) -> Option<&Verdict> {
        self.also.iter().find(|v| v.check == check)
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn rank_evidence(r: &GenericRankResult) -> Evidence {
    if r.full {
        witness_evidence(&r.witness, r.max_rank)
    } else {
        Evidence::Defect {
            defect: r.defect(),
            samples: r.samples_used,
            cells: r.cells_used,
        }
    }
}

fn witness_evidence(w: &Witness, exact_rank: usize) -> Evidence {
    Evidence::Witness {
        cell: w.cell,
        index: w.index,
        z: strings(&w.z),
        y: strings(&w.y),
        exact_rank,
    }
}

fn same_parent(g: &RealForm, h: &Subalg) -> Result<(), CheckError> {
    if Arc::ptr_eq(&g.alg, &h.parent) || g.alg.space() == h.parent.space() {
        Ok(())
    } else {
        Err(CheckError::WrongParent)
    }
}

/// dim h ≥ dim n = dim(g/k) − rank_R g.
pub fn check_dimension_bound(g: &RealForm, h: &Subalg) -> Verdict {
    let par = &g.parabolic;
    let dim_n = par.dim_n();
    let ok = h.dim() >= dim_n;
    Verdict::new(
        "dimension_bound",
        if ok { Outcome::Pass } else { Outcome::Fail },
    )
    .num("dim_h", h.dim())
    .num("dim_n", dim_n)
    .num("dim_g_mod_k", par.s.dim())
    .num("rank_g", par.real_rank())
}

/// θ for h: its own recorded involution, or the ambient one when h is stable under it.
pub fn theta_for(g: &RealForm, h: &Subalg) -> Result<Theta, CheckError> {
    if let Some(t) = &h.theta {
        return Ok(t.clone());
    }
    if h.is_theta_stable(&g.parabolic.theta) {
        return Ok(g.parabolic.theta.clone());
    }
    Err(CheckError::NotThetaStable)
}

/// rank_R g ≥ rank_R h, with the rank of h computed from θ restricted to h.
pub fn check_rank_inequality(g: &RealForm, h: &Subalg) -> Result<Verdict, CheckError> {
    let theta = theta_for(g, h)?;
    let rank_h = real_rank_with(&h.to_lie_alg()?, &theta)?;
    Ok(rank_verdict(g.parabolic.real_rank(), rank_h))
}

/// The same inequality between two constructed forms, without an embedding.
pub fn check_rank_inequality_forms(g: &RealForm, h: &RealForm) -> Verdict {
    rank_verdict(g.parabolic.real_rank(), h.parabolic.real_rank())
}

fn rank_verdict(rank_g: usize, rank_h: usize) -> Verdict {
    let ok = rank_g >= rank_h;
    Verdict::new(
        "rank_inequality",
        if ok { Outcome::Pass } else { Outcome::Fail },
    )
    .num("rank_g", rank_g)
    .num("rank_h", rank_h)
}

/// g = h + Ad(x) p for some sampled x; also reports both bounds.
pub fn is_spherical(g: &RealForm, h: &Subalg, cfg: &SampleConfig) -> Result<Verdict, CheckError> {
    same_parent(g, h)?;
    let amb = Ambient::of_form(g);
    let r = generic_sum_rank(&amb, &h.coords, &g.parabolic.p, cfg)?;
    let outcome = if r.full {
        Outcome::Spherical
    } else {
        Outcome::NotSphericalProbable
    };
    let mut v = Verdict::new("spherical", outcome)
        .num("dim_g", g.alg.dim())
        .num("dim_h", h.dim())
        .num("dim_p", g.parabolic.p.dim())
        .num("max_rank", r.max_rank)
        .num("defect", r.defect())
        .num("samples_used", r.samples_used)
        .num("cells_used", r.cells_used);
    v.evidence = rank_evidence(&r);
    if !r.full {
        v.notes
            .push("evidence only: no sample reached dim g".to_string());
    }
    v.also.push(check_dimension_bound(g, h));
    match check_rank_inequality(g, h) {
        Ok(rv) => v.also.push(rv),
        Err(e) => v.notes.push(format!("rank inequality skipped: {e}")),
    }
    Ok(v)
}

/// h = h1 + Ad(x) h2 for some sampled x in H; reports dim(h1 ∩ Ad(x) h2) at the witness.
pub fn is_factorization(
    amb: &Ambient,
    h1: &Subspace,
    h2: &Subspace,
    cfg: &SampleConfig,
) -> Result<Verdict, CheckError> {
    let r = generic_sum_rank(amb, h1, h2, cfg)?;
    let outcome = if r.full {
        Outcome::Factorization
    } else {
        Outcome::NoFactorizationProbable
    };
    let mut v = Verdict::new("factorization", outcome)
        .num("dim_h", amb.dim())
        .num("dim_h1", h1.dim())
        .num("dim_h2", h2.dim())
        .num("max_rank", r.max_rank)
        .num("defect", r.defect())
        .num("intersection", h1.dim() + h2.dim() - r.max_rank)
        .num("samples_used", r.samples_used);
    if amb.alg.is_complexified() {
        v = v.num("dim_h_complex", amb.dim() / 2).num(
            "intersection_complex",
            (h1.dim() + h2.dim() - r.max_rank) / 2,
        );
    }
    v.evidence = rank_evidence(&r);
    Ok(v)
}

/// Factorization of a constructed form by two of its subalgebras.
pub fn is_factorization_in(
    h: &RealForm,
    h1: &Subalg,
    h2: &Subalg,
    cfg: &SampleConfig,
) -> Result<Verdict, CheckError> {
    same_parent(h, h1)?;
    same_parent(h, h2)?;
    is_factorization(&Ambient::of_form(h), &h1.coords, &h2.coords, cfg)
}

/// Orbit of G × GL(1) through v is open when {ρ(X_i) v} ∪ {v} spans V.
pub fn is_prehomogeneous(rep: &Rep, cfg: &SampleConfig) -> Result<Verdict, CheckError> {
    cfg.validate()?;
    let dv = rep.dim_v();
    let mut best: Option<(usize, Vec<Rational>)> = None;
    let mut used = 0;
    for i in 0..cfg.samples {
        used += 1;
        let v = cfg.rationals(&[PREH_TAG, i as u64], dv);
        let r = orbit_rank(rep, &v);
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, v));
        }
        if r == dv {
            break;
        }
    }
    let (r, v) = best.expect("samples >= 1");
    let full = r == dv;
    let mut out = Verdict::new(
        "prehomogeneous",
        if full {
            Outcome::Prehomogeneous
        } else {
            Outcome::NotPrehomogeneousProbable
        },
    )
    .num("dim_v", dv)
    .num("dim_g", rep.dim_g())
    .num("max_rank", r)
    .num("defect", dv - r)
    .num("samples_used", used);
    out.evidence = if full {
        Evidence::Vector {
            v: strings(&v),
            exact_rank: r,
        }
    } else {
        Evidence::Defect {
            defect: dv - r,
            samples: used,
            cells: 1,
        }
    };
    let dim_ok = rep.dim_g() + 1 >= dv;
    out.also.push(
        Verdict::new(
            "prehomogeneity_dimension",
            if dim_ok { Outcome::Pass } else { Outcome::Fail },
        )
        .num("dim_g", rep.dim_g())
        .num("dim_v", dv),
    );
    Ok(out)
}

fn orbit_rank(rep: &Rep, v: &[Rational]) -> usize {
    let vg: Vec<_> = v
        .iter()
        .map(|x| crate::exact_linalg::GaussRational::real(x.clone()))
        .collect();
    let mut cols: Vec<Vec<_>> = rep.mats.iter().map(|m| m.apply(&vg)).collect();
    cols.push(vg);
    rank(&Mat::from_columns(&cols))
}

/// 0: no nondegenerate invariant bilinear form; 1: symmetric; 2: skew.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FormType {
    pub kind: u8,
    pub dim_solutions: usize,
    /// (pos, neg) of a nondegenerate symmetric solution for real representations.
    pub signature: Option<(usize, usize)>,
}

pub fn invariant_form_type(rep: &Rep) -> FormType {
    // the solution space is closed under transpose, so it splits into symmetric and skew parts
    let sols = invariant_forms(&rep.mats, false);
    let n = rep.dim_v();
    let sym: Vec<Mat> = sols
        .iter()
        .map(|b| b.add(&b.transpose()))
        .filter(|b| !b.is_zero())
        .collect();
    let skew: Vec<Mat> = sols
        .iter()
        .map(|b| b.sub(&b.transpose()))
        .filter(|b| !b.is_zero())
        .collect();
    let cfg = SampleConfig::default();
    let generic = |parts: &[Mat], tag: u64| -> Option<Mat> {
        (0..4).find_map(|t| {
            let c = cfg.rationals(&[FORM_TAG, tag, t], parts.len());
            let mut m = Mat::zeros(n, n);
            for (ci, p) in c.iter().zip(parts) {
                m.add_scaled(p, &crate::exact_linalg::GaussRational::real(ci.clone()));
            }
            (rank(&m) == n).then_some(m)
        })
    };
    let real_parts = |parts: &[Mat]| -> Vec<Mat> {
        parts
            .iter()
            .map(|m| {
                Mat::from_fn(n, n, |i, j| {
                    crate::exact_linalg::GaussRational::real(m[(i, j)].re.clone())
                })
            })
            .filter(|m| !m.is_zero())
            .collect()
    };
    if !sym.is_empty() {
        if generic(&sym, 1).is_some() {
            let signature = rep
                .real
                .then(|| generic(&real_parts(&sym), 3))
                .flatten()
                .and_then(|m| signature(&m).ok())
                .map(|s| (s.pos.max(s.neg), s.pos.min(s.neg)));
            return FormType {
                kind: 1,
                dim_solutions: sols.len(),
                signature,
            };
        }
    }
    let kind = if !skew.is_empty() && generic(&skew, 2).is_some() {
        2
    } else {
        0
    };
    FormType {
        kind,
        dim_solutions: sols.len(),
        signature: None,
    }
}

pub fn check_invariant_form(rep: &Rep, expected: u8) -> Verdict {
    invariant_form_verdict(rep, Some(expected))
}

/// The invariant form type as a verdict; without an expectation the outcome is PASS.
pub fn invariant_form_verdict(rep: &Rep, expected: Option<u8>) -> Verdict {
    let t = invariant_form_type(rep);
    let ok = expected.is_none_or(|e| e == t.kind);
    let mut v = Verdict::new(
        "invariant_form",
        if ok { Outcome::Pass } else { Outcome::Fail },
    )
    .num("type", t.kind as usize)
    .num("dim_solutions", t.dim_solutions);
    if let Some(e) = expected {
        v = v.num("expected", e as usize);
    }
    if let Some((p, q)) = t.signature {
        v = v.num("sig_pos", p).num("sig_neg", q);
    }
    v
}

/// Killing-orthogonal complement of a subspace.
fn killing_perp(b: &Mat, s: &Subspace) -> Subspace {
    let d = b.rows();
    let rows: Vec<Vec<Rational>> = s
        .basis()
        .iter()
        .map(|x| {
            (0..d)
                .map(|j| {
                    x.iter()
                        .enumerate()
                        .fold(Rational::zero(), |acc, (i, xi)| acc + xi * &b[(i, j)].re)
                })
                .collect()
        })
        .collect();
    kernel_rows(&rows, d)
}

#[derive(Debug, Clone)]
pub struct LeviData {
    pub l: Subalg,
    pub l_cap_h: Subalg,
    pub q: Subspace,
    pub hits: usize,
    pub identity_holds: bool,
}

/// Centralizer l of a generic X ∈ h⊥ ∩ k⊥ and l ∩ h, for a symmetric subalgebra h.
pub fn adapted_levi_symmetric(
    g: &RealForm,
    h: &Subalg,
    cfg: &SampleConfig,
) -> Result<LeviData, CheckError> {
    same_parent(g, h)?;
    cfg.validate()?;
    let alg: &LieAlg = &g.alg;
    let b = alg.killing_form().matrix;
    let q = killing_perp(&b, &h.coords);
    if q.dim() + h.dim() != alg.dim() || q.intersect(&h.coords)?.dim() != 0 {
        return Err(CheckError::NotSymmetric);
    }
    if !q.contains_subspace(&alg.bracket_space(&h.coords, &q))
        || !h.coords.contains_subspace(&alg.bracket_space(&q, &q))
    {
        return Err(CheckError::NotSymmetric);
    }
    let w = killing_perp(&b, &h.coords.sum(&g.parabolic.k)?);
    let cents: Vec<Subspace> = crate::par::map_range(cfg.samples, |i| {
        let x = random_element(&w, cfg, &[LEVI_TAG, i as u64]);
        alg.centralizer(&[x])
    });
    let min = cents.iter().map(Subspace::dim).min().expect("samples >= 1");
    let hits = cents.iter().filter(|c| c.dim() == min).count();
    if hits < 2 && cfg.samples >= 2 {
        return Err(CheckError::Unstable(min, cfg.samples));
    }
    let l = cents
        .into_iter()
        .find(|c| c.dim() == min)
        .expect("minimum is attained");
    let l_cap_h = l.intersect(&h.coords)?;
    let identity_holds = 2 * (h.dim() - l_cap_h.dim()) == alg.dim() - l.dim();
    Ok(LeviData {
        l: Subalg::new(g.alg.clone(), l, "l")?,
        l_cap_h: Subalg::new(g.alg.clone(), l_cap_h, "l∩h")?,
        q,
        hits,
        identity_holds,
    })
}

pub fn check_adapted_levi(
    g: &RealForm,
    h: &Subalg,
    expected_l_cap_h: Option<usize>,
    cfg: &SampleConfig,
) -> Result<Verdict, CheckError> {
    let d = adapted_levi_symmetric(g, h, cfg)?;
    let ok = d.identity_holds && expected_l_cap_h.is_none_or(|e| e == d.l_cap_h.dim());
    let mut v = Verdict::new(
        "adapted_levi",
        if ok { Outcome::Pass } else { Outcome::Fail },
    )
    .num("dim_g", g.alg.dim())
    .num("dim_h", h.dim())
    .num("dim_l", d.l.dim())
    .num("dim_l_cap_h", d.l_cap_h.dim())
    .num("hits", d.hits);
    if let Some(e) = expected_l_cap_h {
        v = v.num("expected_l_cap_h", e);
    }
    Ok(v)
}

/// Necessary condition for (g, h') spherical when (g, h) is symmetric and h' ⊆ h:
/// h = h' + Ad(x)(l ∩ h) for some x in H.
pub fn tower_check(
    g: &RealForm,
    h: &Subalg,
    h_prime: &Subalg,
    cfg: &SampleConfig,
) -> Result<Verdict, CheckError> {
    let levi = adapted_levi_symmetric(g, h, cfg)?;
    let amb = Ambient::of_subalg(h)?;
    let c1 = amb.coords_of(h_prime)?;
    let c2 = amb.coords_of(&levi.l_cap_h)?;
    let f = is_factorization(&amb, &c1, &c2, cfg)?;
    let ok = f.outcome == Outcome::Factorization;
    let mut v = Verdict::new("tower", if ok { Outcome::Pass } else { Outcome::Fail })
        .num("dim_h", h.dim())
        .num("dim_h_prime", h_prime.dim())
        .num("dim_l_cap_h", levi.l_cap_h.dim())
        .num("dim_l", levi.l.dim());
    v.notes
        .push("necessary condition only: PASS does not prove (g, h') spherical".to_string());
    v.evidence = f.evidence.clone();
    v.also.push(f);
    Ok(v)
}
