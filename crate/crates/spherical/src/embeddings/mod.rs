//! Reductive subalgebras h of a constructed real form g.
//!
//! h is described by a list of terms. Each placed term contributes a matrix algebra acting on
//! its own defining space together with its invariant form. The spaces are carried into the
//! ambient field (R ⊂ C ⊂ H by inclusion, H → C → R by complex image and realification),
//! their forms are brought to normal form, and the result is matched against the normal form
//! of the ambient form. Unused ambient units are padding on which h acts by zero. The
//! subalgebra is the intersection of the span of the placed matrices with g, so trace
//! conditions such as s(u(p,q) + u(r,s)) come out of the ambient automatically. Center terms
//! are then taken from the centralizer of what was placed.

pub mod forms;
pub mod octonion;
mod pieces;

use std::fmt;

use crate::exact_linalg::{LinalgError, Mat, Rational, Subspace};
use crate::lie_core::{cartan_decomposition, LieError, Subalg, Theta};
use crate::real_forms::quaternion::{Quat, QuatMat};
use crate::real_forms::{construct, Field, FormError, FormFamily, RealForm};

pub use forms::{FormSpec, Kind, Unit};
pub use octonion::OctonionAlgebra;
pub use pieces::invariant_forms;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbError {
    #[error("degenerate form")]
    DegenerateForm,
    #[error("form incompatible: {0}")]
    FormIncompatible(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("bad target: {0}")]
    BadTarget(String),
    #[error("centralizer too small: wanted {wanted} more dimensions, found {found}")]
    CentralizerTooSmall { wanted: usize, found: usize },
    #[error("center choice is ambiguous among {0} candidates; select one with @center(i)")]
    Ambiguous(usize),
    #[error("unsupported signature: {0}")]
    UnsupportedSignature(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The abstract algebra named by a term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum TermAlg {
    Family(FormFamily),
    /// u(p,q) = su(p,q) + R·iI
    U(usize, usize),
    Gl(usize, Field),
    G2 {
        split: bool,
    },
    /// complex G2 regarded as a real algebra
    G2C,
    Spin(usize, usize),
    /// spin(n, C) regarded as a real algebra
    SpinC(usize),
    U1,
    Gl1,
}

impl fmt::Display for TermAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermAlg::Family(fam) => write!(f, "{fam}"),
            TermAlg::U(p, q) => write!(f, "u({p},{q})"),
            TermAlg::Gl(n, k) => write!(f, "gl({n},{k:?})"),
            TermAlg::G2 { split: false } => write!(f, "g2"),
            TermAlg::G2 { split: true } => write!(f, "g2split"),
            TermAlg::G2C => write!(f, "g2(C)"),
            TermAlg::Spin(p, 0) => write!(f, "spin({p})"),
            TermAlg::Spin(p, q) => write!(f, "spin({p},{q})"),
            TermAlg::SpinC(n) => write!(f, "spin({n},C)"),
            TermAlg::U1 => write!(f, "u1"),
            TermAlg::Gl1 => write!(f, "gl1"),
        }
    }
}

impl TermAlg {
    /// Real dimension of the abstract algebra.
    pub fn dim(&self) -> usize {
        match *self {
            TermAlg::Family(f) => f.expected_dim(),
            TermAlg::U(p, q) => (p + q) * (p + q),
            TermAlg::Gl(n, Field::R) => n * n,
            TermAlg::Gl(n, Field::C) => 2 * n * n,
            TermAlg::Gl(n, Field::H) => 4 * n * n,
            TermAlg::G2 { .. } => 14,
            TermAlg::G2C => 28,
            TermAlg::Spin(p, q) => (p + q) * (p + q - 1) / 2,
            TermAlg::SpinC(n) => n * (n - 1),
            TermAlg::U1 | TermAlg::Gl1 => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Emb {
    Block(usize),
    Tensor,
    Realify,
    Quaternionify,
    Diag(usize),
    /// 1 selects the second conjugacy class
    Spin(usize),
    DerOct,
    Center(Option<usize>),
    Dual,
}

impl fmt::Display for Emb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Emb::Block(i) => write!(f, "block({i})"),
            Emb::Tensor => write!(f, "tensor"),
            Emb::Realify => write!(f, "realify"),
            Emb::Quaternionify => write!(f, "quaternionify"),
            Emb::Diag(k) => write!(f, "diag({k})"),
            Emb::Spin(i) => write!(f, "spin({i})"),
            Emb::DerOct => write!(f, "der_oct"),
            Emb::Center(None) => write!(f, "center"),
            Emb::Center(Some(i)) => write!(f, "center({i})"),
            Emb::Dual => write!(f, "dual"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Term {
    pub alg: TermAlg,
    pub emb: Option<Emb>,
}

impl Term {
    pub fn new(alg: TermAlg, emb: Option<Emb>) -> Self {
        Term { alg, emb }
    }

    pub fn plain(alg: TermAlg) -> Self {
        Term { alg, emb: None }
    }

    pub fn is_center(&self) -> bool {
        matches!(self.alg, TermAlg::U1 | TermAlg::Gl1) || matches!(self.emb, Some(Emb::Center(_)))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.emb {
            Some(e) => write!(f, "{}@{}", self.alg, e),
            None => write!(f, "{}", self.alg),
        }
    }
}

pub fn terms_to_string(terms: &[Term]) -> String {
    terms
        .iter()
        .map(Term::to_string)
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Field, linearity and symmetry type of a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub field: Field,
    pub sesqui: bool,
    pub kind: Kind,
}

fn ambient_field(g: &RealForm) -> Field {
    match &g.model {
        crate::real_forms::FormModel::None(k) => *k,
        m => m.field(),
    }
}

fn ambient_dim(g: &RealForm, field: Field) -> usize {
    let n = g.family.ambient_size();
    if field == Field::H {
        n / 2
    } else {
        n
    }
}

fn to_ambient_mat(m: &QuatMat, field: Field) -> Mat {
    match field {
        Field::H => m.to_complex(),
        _ => m.to_mat().expect("ambient matrices have complex entries"),
    }
}

fn placement_key(t: &Term, pos: usize) -> usize {
    match t.emb {
        Some(Emb::Block(i)) => i,
        _ => pos,
    }
}

/// Build h ⊂ g from terms. The result carries a Cartan involution of g preserving h when one
/// was verified.
pub fn embed(g: &RealForm, terms: &[Term]) -> Result<Subalg, EmbError> {
    let field = ambient_field(g);
    let form = pieces::form_of_model(&g.model);
    let shape = form.as_ref().map(|f| Shape {
        field: f.field,
        sesqui: f.sesqui,
        kind: f.kind,
    });

    // native pieces in placement order, with all tensor terms fused at the first one
    let mut placed: Vec<(usize, pieces::Piece)> = Vec::new();
    let mut tensor_parts: Vec<pieces::Piece> = Vec::new();
    let mut tensor_key = None;
    for (pos, t) in terms.iter().enumerate() {
        if t.is_center() {
            continue;
        }
        let minus = matches!(t.emb, Some(Emb::Spin(1)));
        let p = pieces::term_piece(&t.alg, minus)?;
        match t.emb {
            Some(Emb::Tensor) => {
                tensor_key.get_or_insert(pos);
                tensor_parts.push(p);
            }
            Some(Emb::Dual) => placed.push((pos, pieces::dual(p, shape)?)),
            Some(Emb::Diag(k)) => placed.push((pos, pieces::diagonal(p, k.max(1)))),
            _ => placed.push((placement_key(t, pos), p)),
        }
    }
    if let Some(k) = tensor_key {
        placed.push((k, pieces::tensor(tensor_parts)?));
    }
    placed.sort_by_key(|(k, _)| *k);
    let converted: Vec<pieces::Piece> = placed
        .into_iter()
        .map(|(_, p)| pieces::convert(p, field, shape))
        .collect::<Result<_, _>>()?;

    let (mats, theta) = assemble(g, field, form.as_ref(), &converted)?;
    let space = intersect_with_g(g, &mats)?;
    let alg = g.alg.clone();
    let mut h = Subalg::new(alg.clone(), space, terms_to_string(terms))?;

    let centers: Vec<&Term> = terms.iter().filter(|t| t.is_center()).collect();
    if !centers.is_empty() {
        let base = h.coords.clone();
        let z = alg.centralizer_of(&base);
        let (k, s) = cartan_decomposition(&alg, &theta)?;
        let mut cur = base.clone();
        for t in centers {
            cur = add_center(&alg, &z, &k, &s, &cur, t)?;
        }
        h = Subalg::new(alg.clone(), cur, terms_to_string(terms))?;
    }
    let stable = theta_preserves(&g.alg, &theta) && h.is_theta_stable(&theta);
    Ok(if stable { h.with_theta(theta) } else { h })
}

fn theta_preserves(g: &crate::lie_core::LieAlg, theta: &Theta) -> bool {
    g.basis().iter().all(|b| g.contains(&theta.apply(b)))
}

fn complement_in(space: &Subspace, base: &Subspace) -> Vec<Vec<Rational>> {
    let mut cur = base.clone();
    let mut out = Vec::new();
    for v in space.basis() {
        if !cur.contains(&v) {
            cur = cur
                .sum(&Subspace::span(cur.ambient_dim(), std::slice::from_ref(&v)))
                .expect("same ambient");
            out.push(v);
        }
    }
    out
}

fn add_center(
    g: &crate::lie_core::LieAlg,
    z: &Subspace,
    k: &Subspace,
    s: &Subspace,
    cur: &Subspace,
    t: &Term,
) -> Result<Subspace, EmbError> {
    let pick = match t.emb {
        Some(Emb::Center(i)) => i,
        _ => None,
    };
    let pool = match t.alg {
        TermAlg::U1 => z.intersect(k)?,
        TermAlg::Gl1 => z.intersect(s)?,
        _ => z.clone(),
    };
    let cands = complement_in(&pool, cur);
    let d = g.dim();
    match t.alg {
        TermAlg::U1 | TermAlg::Gl1 => {
            let v = match (pick, cands.len()) {
                (_, 0) => {
                    return Err(EmbError::CentralizerTooSmall {
                        wanted: 1,
                        found: 0,
                    })
                }
                (Some(i), n) if i < n => cands[i].clone(),
                (Some(_), n) => {
                    return Err(EmbError::CentralizerTooSmall {
                        wanted: 1,
                        found: n,
                    })
                }
                (None, 1) => cands[0].clone(),
                (None, n) => return Err(EmbError::Ambiguous(n)),
            };
            Ok(cur.sum(&Subspace::span(d, &[v]))?)
        }
        _ => {
            let want = t.alg.dim();
            if cands.len() != want {
                return Err(EmbError::CentralizerTooSmall {
                    wanted: want,
                    found: cands.len(),
                });
            }
            Ok(cur.sum(&Subspace::span(d, &cands))?)
        }
    }
}

/// span(mats) ∩ g in coordinates of g.
fn intersect_with_g(g: &RealForm, mats: &[Mat]) -> Result<Subspace, EmbError> {
    let alg = &g.alg;
    let direct: Option<Vec<Vec<Rational>>> = mats.iter().map(|m| alg.coords(m)).collect();
    if let Some(c) = direct {
        return Ok(Subspace::span(alg.dim(), &c));
    }
    let n = alg.ambient_size();
    let span = Subspace::span(
        2 * n * n,
        &mats.iter().map(Mat::realified_entries).collect::<Vec<_>>(),
    );
    let both = span.intersect(&alg.space())?;
    let coords: Vec<Vec<Rational>> = both
        .basis()
        .iter()
        .map(|v| alg.coords_unchecked(&Mat::from_realified_entries(n, n, v)))
        .collect();
    Ok(Subspace::span(alg.dim(), &coords))
}

fn flip_orders(k: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << k.min(12)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

fn unit_counts(units: &[Unit]) -> [usize; 4] {
    let mut c = [0; 4];
    for u in units {
        c[*u as usize] += 1;
    }
    c
}

/// Matrices of the placed pieces in ambient coordinates, and the involution θ_{S S^*}.
fn assemble(
    g: &RealForm,
    field: Field,
    form: Option<&FormSpec>,
    pieces: &[pieces::Piece],
) -> Result<(Vec<Mat>, Theta), EmbError> {
    let n = ambient_dim(g, field);
    let total: usize = pieces.iter().map(|p| p.dim).sum();
    if total > n {
        return Err(EmbError::BadTarget(format!(
            "terms need dimension {total}, ambient has {n}"
        )));
    }
    let placed = |conj: &dyn Fn(&QuatMat) -> QuatMat| -> Vec<Mat> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in pieces {
            for x in &p.mats {
                let mut big = QuatMat::zeros(n, n);
                for i in 0..p.dim {
                    for j in 0..p.dim {
                        big.set(off + i, off + j, x.get(i, j).clone());
                    }
                }
                out.push(to_ambient_mat(&conj(&big), field));
            }
            off += p.dim;
        }
        out
    };
    let Some(gform) = form else {
        return Ok((placed(&|x| x.clone()), Theta::Standard));
    };

    let (tg, ug) = forms::normalize(gform)?;
    let tg_inv = forms::normalizer_inverse(gform, &tg, &ug);
    let blocks: Vec<&FormSpec> = pieces.iter().flat_map(|p| p.blocks.iter()).collect();
    let normalized: Vec<[(QuatMat, Vec<Unit>, FormSpec); 2]> = blocks
        .iter()
        .map(|b| {
            let neg = b.neg();
            let (t0, u0) = forms::normalize(b)?;
            let (t1, u1) = forms::normalize(&neg)?;
            Ok([(t0, u0, (*b).clone()), (t1, u1, neg)])
        })
        .collect::<Result<_, EmbError>>()?;
    let avail = unit_counts(&ug);
    let mask = flip_orders(blocks.len())
        .into_iter()
        .find(|m| {
            let mut c = [0; 4];
            for (i, nb) in normalized.iter().enumerate() {
                let u = unit_counts(&nb[((m >> i) & 1) as usize].1);
                for t in 0..4 {
                    c[t] += u[t];
                }
            }
            (0..4).all(|t| c[t] <= avail[t])
        })
        .ok_or_else(|| {
            EmbError::SignatureMismatch(format!(
                "no choice of signs fits the terms into the ambient form with units {:?}",
                avail
            ))
        })?;

    // h-side coordinates: the chosen units of every block, then padding
    let mut h_units: Vec<Unit> = Vec::new();
    let mut th_blocks: Vec<QuatMat> = Vec::new();
    let mut th_inv_blocks: Vec<QuatMat> = Vec::new();
    for (i, nb) in normalized.iter().enumerate() {
        let (t, u, spec) = &nb[((mask >> i) & 1) as usize];
        th_inv_blocks.push(forms::normalizer_inverse(spec, t, u));
        th_blocks.push(t.clone());
        h_units.extend(u.iter().copied());
    }
    let g_offsets: Vec<usize> = ug
        .iter()
        .scan(0, |o, u| {
            let cur = *o;
            *o += u.size();
            Some(cur)
        })
        .collect();
    let mut used = vec![false; ug.len()];
    let mut assignment: Vec<usize> = Vec::new();
    for u in &h_units {
        let k = (0..ug.len())
            .find(|&k| !used[k] && ug[k] == *u)
            .expect("counts were checked");
        used[k] = true;
        assignment.push(k);
    }
    for k in 0..ug.len() {
        if !used[k] {
            assignment.push(k);
        }
    }
    let side_units: Vec<Unit> = assignment.iter().map(|&k| ug[k]).collect();
    let mut perm = QuatMat::zeros(n, n);
    let mut off = 0;
    for (&k, u) in assignment.iter().zip(&side_units) {
        for t in 0..u.size() {
            perm.set(g_offsets[k] + t, off + t, Quat::one());
        }
        off += u.size();
    }
    let pad = n - total;
    let pad_id = QuatMat::identity(pad);
    let mut inv_parts: Vec<&QuatMat> = th_inv_blocks.iter().collect();
    inv_parts.push(&pad_id);
    let mut parts: Vec<&QuatMat> = th_blocks.iter().collect();
    parts.push(&pad_id);
    let s = tg.mul(&perm).mul(&QuatMat::block_diag(&inv_parts));
    let s_inv = QuatMat::block_diag(&parts)
        .mul(&perm.transpose())
        .mul(&tg_inv);
    debug_assert_eq!(s.mul(&s_inv), QuatMat::identity(n));
    let mats = placed(&|x| s.mul(x).mul(&s_inv));
    let m = to_ambient_mat(&s.mul(&s.adjoint()), field);
    Ok((mats, Theta::gram(m)))
}

// ---- constructors named after the classical embedding types ----

fn family_terms(fs: &[FormFamily], emb: impl Fn(usize) -> Option<Emb>) -> Vec<Term> {
    fs.iter()
        .enumerate()
        .map(|(i, f)| Term::new(TermAlg::Family(*f), emb(i)))
        .collect()
}

/// Direct sum of the factors in consecutive diagonal blocks.
pub fn block_embed(g: &RealForm, factors: &[FormFamily]) -> Result<Subalg, EmbError> {
    embed(g, &family_terms(factors, |i| Some(Emb::Block(i))))
}

/// f1 ⊗ 1 + 1 ⊗ f2 on the tensor product of the defining spaces.
pub fn tensor_embed(g: &RealForm, f1: FormFamily, f2: FormFamily) -> Result<Subalg, EmbError> {
    embed(g, &family_terms(&[f1, f2], |_| Some(Emb::Tensor)))
}

/// A complex or quaternionic algebra acting on its realified (or complexified) defining space.
pub fn realify_embed(g: &RealForm, sub: FormFamily) -> Result<Subalg, EmbError> {
    embed(g, &family_terms(&[sub], |_| Some(Emb::Realify)))
}

/// k copies of one factor acting diagonally on consecutive blocks.
pub fn diagonal_embed(g: &RealForm, factor: FormFamily, copies: usize) -> Result<Subalg, EmbError> {
    embed(g, &family_terms(&[factor], |_| Some(Emb::Diag(copies))))
}

/// Der(O) ⊂ so(7) (compact octonions) or so(3,4) (split octonions).
pub fn octonion_derivations(o: &OctonionAlgebra) -> Result<Subalg, EmbError> {
    let split = o.signature == octonion::Signature::Split;
    let g = construct(if split {
        FormFamily::So(3, 4)
    } else {
        FormFamily::SoCompact(7)
    })?;
    embed(&g, &[Term::new(TermAlg::G2 { split }, Some(Emb::DerOct))])
}

/// spin(p,q) through octonion left multiplications inside the orthogonal algebra `target`.
pub fn spin_clifford(p: usize, q: usize, target: FormFamily) -> Result<Subalg, EmbError> {
    let g = construct(target)?;
    embed(&g, &[Term::new(TermAlg::Spin(p, q), Some(Emb::Spin(0)))])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterKind {
    U1,
    Gl1,
    FullCentralizer,
}

/// Adjoin a piece of the centralizer of h in g. For `FullCentralizer` the whole centralizer is added.
pub fn center_piece(
    g: &RealForm,
    h: &Subalg,
    kind: CenterKind,
    index: Option<usize>,
) -> Result<Subalg, EmbError> {
    let alg = g.alg.clone();
    let theta = h.theta.clone().unwrap_or(Theta::Standard);
    let (k, s) = cartan_decomposition(&alg, &theta)?;
    let z = alg.centralizer_of(&h.coords);
    let cur = match kind {
        CenterKind::U1 | CenterKind::Gl1 => {
            let a = if kind == CenterKind::U1 {
                TermAlg::U1
            } else {
                TermAlg::Gl1
            };
            add_center(
                &alg,
                &z,
                &k,
                &s,
                &h.coords,
                &Term::new(a, Some(Emb::Center(index))),
            )?
        }
        CenterKind::FullCentralizer => h.coords.sum(&z)?,
    };
    let mut out = Subalg::new(alg, cur, format!("{} + center", h.provenance))?;
    if let Some(t) = h.theta.clone() {
        if out.is_theta_stable(&t) {
            out = out.with_theta(t);
        }
    }
    Ok(out)
}
