//! Native realizations of the terms of h, and the field and form conversions that carry them
//! into the ambient defining space.

use num_traits::Zero;

use super::forms::{FormSpec, Kind};
use super::octonion::{self, OctonionAlgebra, Signature};
use super::{EmbError, Shape, TermAlg};
use crate::exact_linalg::scalar::rational_sqrt;
use crate::exact_linalg::sparse::SparseVec;
use crate::exact_linalg::{kernel_sparse, qf, GaussRational, Mat, Rational};
use crate::real_forms::quaternion::{quaternionic_structure, Quat, QuatMat};
use crate::real_forms::{construct, Field, FormFamily, FormModel};

/// A Lie algebra acting on K^dim, with an optional invariant form split into independently
/// rescalable diagonal blocks.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub field: Field,
    pub dim: usize,
    pub mats: Vec<QuatMat>,
    pub blocks: Vec<FormSpec>,
}

impl Piece {
    fn new(field: Field, dim: usize, mats: Vec<QuatMat>, blocks: Vec<FormSpec>) -> Self {
        Piece {
            field,
            dim,
            mats,
            blocks,
        }
    }
}

pub(crate) fn form_of_model(model: &FormModel) -> Option<FormSpec> {
    let c = |m: &Mat| QuatMat::from_mat(m);
    Some(match model {
        FormModel::None(_) => return None,
        FormModel::Hermitian(h) => FormSpec::new(Field::C, true, Kind::Sym, c(h)),
        FormModel::RealSymmetric(s) => FormSpec::new(Field::R, true, Kind::Sym, c(s)),
        FormModel::ComplexSymmetric(s) => FormSpec::new(Field::C, false, Kind::Sym, c(s)),
        FormModel::Skew { omega, complex } => {
            let field = if *complex { Field::C } else { Field::R };
            FormSpec::new(field, false, Kind::Skew, c(omega))
        }
        FormModel::QuatHermitian(f) => FormSpec::new(Field::H, true, Kind::Sym, f.clone()),
        FormModel::QuatSkewHermitian(f) => FormSpec::new(Field::H, true, Kind::SkewHerm, f.clone()),
    })
}

fn family_field(f: FormFamily) -> Field {
    match f.model() {
        FormModel::None(k) => k,
        m => m.field(),
    }
}

/// Matrices of a native algebra, read in its own field.
fn native_mats(field: Field, mats: &[Mat]) -> Vec<QuatMat> {
    match field {
        Field::H => mats.iter().map(QuatMat::from_complex).collect(),
        _ => mats.iter().map(QuatMat::from_mat).collect(),
    }
}

pub(crate) fn family_piece(f: FormFamily) -> Result<Piece, EmbError> {
    let rf = construct(f)?;
    let field = family_field(f);
    let mats = native_mats(field, rf.alg.basis());
    let dim = if field == Field::H {
        f.ambient_size() / 2
    } else {
        f.ambient_size()
    };
    let blocks = form_of_model(&rf.model).into_iter().collect();
    Ok(Piece::new(field, dim, mats, blocks))
}

fn scalar_mat(n: usize, s: Quat) -> QuatMat {
    QuatMat::identity(n).scale_left(&s)
}

fn diag_form(field: Field, signs: &[i64]) -> FormSpec {
    let mut m = QuatMat::zeros(signs.len(), signs.len());
    for (i, s) in signs.iter().enumerate() {
        m.set(i, i, Quat::ints(*s, 0, 0, 0));
    }
    FormSpec::new(field, true, Kind::Sym, m)
}

fn real_piece(mats: Vec<Mat>, signs: &[i64]) -> Piece {
    let n = signs.len();
    Piece::new(
        Field::R,
        n,
        mats.iter().map(QuatMat::from_mat).collect(),
        vec![diag_form(Field::R, signs)],
    )
}

/// The complex span of a real piece with a symmetric form, as a complex piece with a bilinear form.
fn complexify(p: Piece) -> Piece {
    let i = Quat::i();
    let mut mats = p.mats.clone();
    mats.extend(p.mats.iter().map(|m| m.scale_left(&i)));
    let blocks = p
        .blocks
        .iter()
        .map(|b| FormSpec::new(Field::C, false, b.kind, b.matrix.clone()))
        .collect();
    Piece::new(Field::C, p.dim, mats, blocks)
}

fn reflection(n: usize) -> Mat {
    let mut d = vec![1; n];
    d[0] = -1;
    Mat::diag_ints(&d)
}

fn spin7_piece(split: bool, minus: bool) -> Piece {
    let o = OctonionAlgebra::new(if split {
        Signature::Split
    } else {
        Signature::Compact
    });
    let mut mats = octonion::spin7(&o);
    if minus {
        let r = reflection(8);
        mats = mats.iter().map(|m| r.mul(m).mul(&r)).collect();
    }
    real_piece(mats, &o.norm_diag())
}

fn g2_piece(split: bool) -> Piece {
    let o = OctonionAlgebra::new(if split {
        Signature::Split
    } else {
        Signature::Compact
    });
    real_piece(o.derivations(), &o.norm_diag()[1..])
}

pub(crate) fn term_piece(alg: &TermAlg, minus: bool) -> Result<Piece, EmbError> {
    match alg {
        TermAlg::Family(f) => family_piece(*f),
        TermAlg::U(p, q) => {
            let (p, q) = (*p, *q);
            if p + q == 0 {
                return Err(EmbError::BadTarget("u(0,0)".into()));
            }
            let mut piece = if p + q == 1 {
                Piece::new(
                    Field::C,
                    1,
                    vec![],
                    vec![diag_form(Field::C, &[if p == 1 { 1 } else { -1 }])],
                )
            } else {
                family_piece(FormFamily::Su(p, q))?
            };
            piece.mats.push(scalar_mat(p + q, Quat::i()));
            Ok(piece)
        }
        TermAlg::Gl(n, field) => {
            let n = *n;
            let mut piece = if n == 1 {
                Piece::new(*field, 1, vec![], vec![])
            } else {
                family_piece(match field {
                    Field::R => FormFamily::SlR(n),
                    Field::C => FormFamily::ComplexSl(n),
                    Field::H => FormFamily::SlH(n),
                })?
            };
            piece.mats.push(QuatMat::identity(n));
            match field {
                Field::R => {}
                Field::C => piece.mats.push(scalar_mat(n, Quat::i())),
                Field::H if n == 1 => piece
                    .mats
                    .extend([Quat::i(), Quat::j(), Quat::k()].map(|s| scalar_mat(1, s))),
                Field::H => {}
            }
            Ok(piece)
        }
        TermAlg::G2 { split } => Ok(g2_piece(*split)),
        TermAlg::G2C => Ok(complexify(g2_piece(false))),
        TermAlg::Spin(p, q) => match (*p, *q) {
            (7, 0) | (0, 7) => Ok(spin7_piece(false, minus)),
            (3, 4) | (4, 3) => Ok(spin7_piece(true, minus)),
            (9, 0) | (0, 9) => Ok(real_piece(octonion::spin9(), &[1; 16])),
            (6, 1) | (1, 6) => spin7_quaternionic(true),
            (5, 2) | (2, 5) => spin7_quaternionic(false),
            _ => Err(EmbError::UnsupportedSignature(format!("spin({p},{q})"))),
        },
        TermAlg::SpinC(7) => Ok(complexify(spin7_piece(false, minus))),
        TermAlg::SpinC(9) => Ok(complexify(real_piece(octonion::spin9(), &[1; 16]))),
        TermAlg::SpinC(n) => Err(EmbError::UnsupportedSignature(format!("spin({n},C)"))),
        TermAlg::U1 | TermAlg::Gl1 => {
            Err(EmbError::BadTarget("center terms are not placed".into()))
        }
    }
}

/// Entrywise Kronecker product of complex-valued quaternion matrices.
fn kron(a: &QuatMat, b: &QuatMat) -> QuatMat {
    QuatMat::from_mat(
        &a.to_mat()
            .expect("complex")
            .kron(&b.to_mat().expect("complex")),
    )
}

fn kron_sum(a: &QuatMat, b: &QuatMat) -> (QuatMat, QuatMat) {
    (
        kron(a, &QuatMat::identity(b.rows)),
        kron(&QuatMat::identity(a.rows), b),
    )
}

fn tensor_kind(a: Kind, b: Kind) -> Kind {
    if a == b {
        Kind::Sym
    } else {
        Kind::Skew
    }
}

/// Scale a form so that F F^* = I, when the required factor is rational.
fn make_unitary(f: &QuatMat) -> Option<QuatMat> {
    let g = f.mul(&f.adjoint());
    let mu = g.get(0, 0).a.clone();
    if g != QuatMat::identity(f.rows).scale_left(&Quat::real(mu.clone())) {
        return None;
    }
    let s = rational_sqrt(&mu)?;
    Some(f.scale_left(&Quat::real(s.recip())))
}

/// Invariant forms {C : X^• C + C X = 0 for all X} of a set of complex matrices, as complex matrices.
pub fn invariant_forms(mats: &[Mat], sesqui: bool) -> Vec<Mat> {
    let n = mats.first().map_or(0, Mat::rows);
    let nv = 2 * n * n;
    // unknown C[a][b] = x[2(an+b)] + i x[2(an+b)+1]
    let mut rows: Vec<SparseVec> = Vec::new();
    for m in mats {
        let md = if sesqui { m.adjoint() } else { m.transpose() };
        for a in 0..n {
            for b in 0..n {
                // (M^• C)_{ab} + (C M)_{ab} = Σ_c md[a][c] C[c][b] + C[a][c] M[c][b]
                let mut re: Vec<(usize, Rational)> = Vec::new();
                let mut im: Vec<(usize, Rational)> = Vec::new();
                let mut push = |coef: &GaussRational, idx: usize| {
                    if coef.is_zero() {
                        return;
                    }
                    // coef * (x + i y) = (re x - im y) + i (im x + re y)
                    re.push((2 * idx, coef.re.clone()));
                    re.push((2 * idx + 1, -coef.im.clone()));
                    im.push((2 * idx, coef.im.clone()));
                    im.push((2 * idx + 1, coef.re.clone()));
                };
                for c in 0..n {
                    push(&md[(a, c)], c * n + b);
                    push(&m[(c, b)], a * n + c);
                }
                for r in [re, im] {
                    let r = compact(r);
                    if !r.is_empty() {
                        rows.push(r);
                    }
                }
            }
        }
    }
    kernel_sparse(&rows, nv)
        .basis()
        .iter()
        .map(|v| Mat::from_realified_entries(n, n, v))
        .collect()
}

fn compact(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|p| p.0);
    let mut out: SparseVec = Vec::new();
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|p| !p.1.is_zero());
    out
}

/// Tensor product of pieces acting by Kronecker sums.
pub(crate) fn tensor(pieces: Vec<Piece>) -> Result<Piece, EmbError> {
    let mut it = pieces.into_iter();
    let mut acc = it
        .next()
        .ok_or_else(|| EmbError::BadTarget("empty tensor".into()))?;
    for p in it {
        acc = tensor2(acc, p)?;
    }
    Ok(acc)
}

fn single_block(p: &Piece) -> Result<Option<FormSpec>, EmbError> {
    match p.blocks.len() {
        0 => Ok(None),
        1 => Ok(Some(p.blocks[0].clone())),
        _ => Err(EmbError::FormIncompatible(
            "tensor factor with a split form".into(),
        )),
    }
}

fn tensor2(a: Piece, b: Piece) -> Result<Piece, EmbError> {
    if a.field == Field::H && b.field == Field::H {
        return tensor_hh(a, b);
    }
    if a.field == Field::H || b.field == Field::H {
        return Err(EmbError::BadTarget(
            "tensor of a quaternionic and a non-quaternionic factor".into(),
        ));
    }
    let (fa, fb) = (single_block(&a)?, single_block(&b)?);
    let field = if a.field == Field::C || b.field == Field::C {
        Field::C
    } else {
        Field::R
    };
    let mut mats = Vec::new();
    for x in &a.mats {
        mats.push(kron_sum(x, &QuatMat::identity(b.dim)).0);
    }
    for y in &b.mats {
        mats.push(kron_sum(&QuatMat::identity(a.dim), y).1);
    }
    let blocks = match (fa, fb) {
        (Some(fa), Some(fb)) => {
            let sesqui = match (a.field, b.field) {
                (Field::R, Field::R) => true,
                (Field::R, _) => fb.sesqui,
                (_, Field::R) => fa.sesqui,
                _ if fa.sesqui == fb.sesqui => fa.sesqui,
                _ => {
                    return Err(EmbError::FormIncompatible(
                        "bilinear and sesquilinear tensor factors".into(),
                    ))
                }
            };
            let m = kron(&fa.matrix, &fb.matrix);
            vec![FormSpec::new(
                field,
                sesqui,
                tensor_kind(fa.kind, fb.kind),
                m,
            )]
        }
        _ => vec![],
    };
    Ok(Piece::new(field, a.dim * b.dim, mats, blocks))
}

/// H^a ⊗_H H^b realized as the real points of C^{2a} ⊗ C^{2b} under (J_a ⊗ J_b) ∘ conj.
fn tensor_hh(a: Piece, b: Piece) -> Result<Piece, EmbError> {
    let (ja, jb) = (quaternionic_structure(a.dim), quaternionic_structure(b.dim));
    let k = ja.kron(&jb);
    let n = k.rows();
    let (ia, ib) = (Mat::identity(2 * a.dim), Mat::identity(2 * b.dim));
    let mut cmats: Vec<Mat> = a.mats.iter().map(|x| x.to_complex().kron(&ib)).collect();
    cmats.extend(b.mats.iter().map(|y| ia.kron(&y.to_complex())));
    // K is a real symmetric signed permutation with K^2 = I; real points are E+ ⊕ i E-
    let mut cols: Vec<Vec<GaussRational>> = Vec::new();
    let mut used = vec![false; n];
    for e in 0..n {
        if used[e] {
            continue;
        }
        let img = k.column(e);
        let f = img.iter().position(|x| !x.is_zero()).expect("permutation");
        used[e] = true;
        used[f] = true;
        let s = img[f].clone();
        let mut plus = vec![GaussRational::zero(); n];
        let mut minus = vec![GaussRational::zero(); n];
        if f == e {
            if s == GaussRational::one() {
                plus[e] = GaussRational::one();
                cols.push(plus);
            } else {
                minus[e] = GaussRational::i();
                cols.push(minus);
            }
            continue;
        }
        plus[e] = GaussRational::one();
        plus[f] = s.clone();
        minus[e] = GaussRational::i();
        minus[f] = -(s * GaussRational::i());
        cols.push(plus);
        cols.push(minus);
    }
    let p = Mat::from_columns(&cols);
    let p_inv = p.inverse()?;
    let mats: Vec<Mat> = cmats.iter().map(|x| p_inv.mul(x).mul(&p)).collect();
    if mats.iter().any(|m| !m.is_real()) {
        return Err(EmbError::FormIncompatible(
            "tensor factors do not commute with the real structure".into(),
        ));
    }
    let forms = invariant_forms(&mats, true);
    let real: Vec<Mat> = forms.into_iter().filter(Mat::is_real).collect();
    let f = real
        .iter()
        .find_map(|f| make_unitary(&QuatMat::from_mat(f)))
        .ok_or(EmbError::FormIncompatible(
            "no invariant form on the real tensor product".into(),
        ))?;
    let kind = if f == f.transpose() {
        Kind::Sym
    } else {
        Kind::Skew
    };
    let blocks = vec![FormSpec::new(Field::R, true, kind, f)];
    Ok(Piece::new(
        Field::R,
        n,
        mats.iter().map(QuatMat::from_mat).collect(),
        blocks,
    ))
}

/// The real forms spin(6,1) and spin(5,2) of spin(7,C) commuting with v ↦ J_ω v̄,
/// rewritten on H^4.
fn spin7_quaternionic(six_one: bool) -> Result<Piece, EmbError> {
    let o = OctonionAlgebra::new(Signature::Compact);
    let l: Vec<Mat> = (1..8).map(|i| o.left_mul(i)).collect();
    let span = if six_one { 6 } else { 2 };
    let mut jw = Mat::identity(8);
    for li in &l[..span] {
        jw = jw.mul(li);
    }
    let i = GaussRational::i();
    let mut mats = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            let x = l[a].mul(&l[b]);
            let inside = (a < span) == (b < span);
            mats.push(if inside { x } else { x.scale(&i) });
        }
    }
    debug_assert!(mats.iter().all(|x| x.mul(&jw) == jw.mul(&x.conj())));
    // columns q_1..q_4 from the standard basis, followed by J_ω q̄_k
    let mut firsts: Vec<Vec<GaussRational>> = Vec::new();
    let mut seconds: Vec<Vec<GaussRational>> = Vec::new();
    for e in 0..8 {
        let mut v = vec![GaussRational::zero(); 8];
        v[e] = GaussRational::one();
        let w = jw.apply(&v);
        let mut all: Vec<Vec<GaussRational>> = firsts.iter().chain(&seconds).cloned().collect();
        all.push(v.clone());
        all.push(w.clone());
        if crate::exact_linalg::rank(&Mat::from_columns(&all)) == all.len() {
            firsts.push(v);
            seconds.push(w);
        }
    }
    let q: Vec<Vec<GaussRational>> = firsts.into_iter().chain(seconds).collect();
    let qm = Mat::from_columns(&q);
    let q_inv = qm.inverse()?;
    let ys: Vec<Mat> = mats.iter().map(|x| q_inv.mul(x).mul(&qm)).collect();
    let js = quaternionic_structure(4);
    debug_assert!(ys.iter().all(|y| y.mul(&js) == js.mul(&y.conj())));
    let c = invariant_forms(&ys, true)
        .into_iter()
        .map(|c| {
            // project onto skew-Hermitian matrices with C = J C̄ J^{-1}
            let half = qf(1, 2);
            let c = c.sub(&c.adjoint()).scale_q(&half);
            c.add(&js.mul(&c.conj()).mul(&js.neg())).scale_q(&half)
        })
        .find(|c| !c.is_zero())
        .ok_or(EmbError::FormIncompatible(
            "no invariant form for the quaternionic spin representation".into(),
        ))?;
    let f = make_unitary(&QuatMat::from_complex(&c)).ok_or(EmbError::FormIncompatible(
        "invariant form is not a rational multiple of a unitary".into(),
    ))?;
    Ok(Piece::new(
        Field::H,
        4,
        ys.iter().map(QuatMat::from_complex).collect(),
        vec![FormSpec::new(Field::H, true, Kind::SkewHerm, f)],
    ))
}

/// X ↦ diag(X, -X^•) on K^n ⊕ K^n, with the hyperbolic form of the requested kind.
pub(crate) fn dual(p: Piece, shape: Option<Shape>) -> Result<Piece, EmbError> {
    let (sesqui, kind) = match shape {
        Some(s) if s.field != p.field => {
            return Err(EmbError::FormIncompatible(
                "dual pairing over a different field".into(),
            ))
        }
        Some(s) => (s.sesqui, s.kind),
        None => (false, Kind::Sym),
    };
    let n = p.dim;
    let mats = p
        .mats
        .iter()
        .map(|x| {
            let xd = if sesqui { x.adjoint() } else { x.transpose() };
            QuatMat::block_diag(&[x, &xd.neg()])
        })
        .collect();
    let eps = if kind == Kind::Sym {
        Quat::one()
    } else {
        Quat::ints(-1, 0, 0, 0)
    };
    let mut f = QuatMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        f.set(i, n + i, Quat::one());
        f.set(n + i, i, eps.clone());
    }
    let blocks = if shape.is_some() {
        vec![FormSpec::new(p.field, sesqui, kind, f)]
    } else {
        vec![]
    };
    Ok(Piece::new(p.field, 2 * n, mats, blocks))
}

/// k copies acting diagonally.
pub(crate) fn diagonal(p: Piece, k: usize) -> Piece {
    let mats = p
        .mats
        .iter()
        .map(|x| QuatMat::block_diag(&vec![x; k]))
        .collect();
    let blocks = (0..k).flat_map(|_| p.blocks.clone()).collect();
    Piece::new(p.field, k * p.dim, mats, blocks)
}

// ---- field and form conversions ----

fn lower_form(f: &FormSpec) -> Option<FormSpec> {
    match f.field {
        Field::H => {
            let c = QuatMat::from_mat(&f.matrix.to_complex());
            let m = match f.kind {
                Kind::Sym => c,
                Kind::SkewHerm => c.scale_left(&Quat::i()),
                Kind::Skew => return None,
            };
            Some(FormSpec::new(Field::C, true, Kind::Sym, m))
        }
        Field::C => {
            let (re, im) = split_complex(&f.matrix);
            let m = if f.sesqui {
                match f.kind {
                    Kind::Sym => block2(&re, &im.neg(), &im, &re),
                    _ => return None,
                }
            } else {
                block2(&re, &im.neg(), &im.neg(), &re.neg())
            };
            let kind = if f.sesqui { Kind::Sym } else { f.kind };
            Some(FormSpec::new(Field::R, true, kind, m))
        }
        Field::R => None,
    }
}

/// The imaginary part of a Hermitian form, as a real skew form.
fn lower_form_skew(f: &FormSpec) -> Option<FormSpec> {
    if f.field != Field::C || !f.sesqui || f.kind != Kind::Sym {
        return None;
    }
    let (re, im) = split_complex(&f.matrix);
    Some(FormSpec::new(
        Field::R,
        true,
        Kind::Skew,
        block2(&im, &re, &re.neg(), &im),
    ))
}

fn split_complex(m: &QuatMat) -> (QuatMat, QuatMat) {
    let re = QuatMat {
        rows: m.rows,
        cols: m.cols,
        data: m.data.iter().map(|x| Quat::real(x.a.clone())).collect(),
    };
    let im = QuatMat {
        rows: m.rows,
        cols: m.cols,
        data: m.data.iter().map(|x| Quat::real(x.b.clone())).collect(),
    };
    (re, im)
}

fn block2(a: &QuatMat, b: &QuatMat, c: &QuatMat, d: &QuatMat) -> QuatMat {
    let (r, k) = (a.rows, a.cols);
    let mut m = QuatMat::zeros(2 * r, 2 * k);
    for i in 0..r {
        for j in 0..k {
            m.set(i, j, a.get(i, j).clone());
            m.set(i, k + j, b.get(i, j).clone());
            m.set(r + i, j, c.get(i, j).clone());
            m.set(r + i, k + j, d.get(i, j).clone());
        }
    }
    m
}

/// One step up the chain R ⊂ C ⊂ H, landing on the requested shape when possible.
fn raise_form(f: &FormSpec, to: Shape) -> Option<FormSpec> {
    let (i, j) = (Quat::i(), Quat::j());
    let m = &f.matrix;
    let out = match (f.field, f.kind, to.field, to.sesqui, to.kind) {
        (Field::R, Kind::Sym, Field::C, s, Kind::Sym) => {
            FormSpec::new(Field::C, s, Kind::Sym, m.clone())
        }
        (Field::R, Kind::Skew, Field::C, false, Kind::Skew) => {
            FormSpec::new(Field::C, false, Kind::Skew, m.clone())
        }
        (Field::R, Kind::Skew, Field::C, true, Kind::Sym) => {
            FormSpec::new(Field::C, true, Kind::Sym, m.scale_left(&i))
        }
        (Field::C, Kind::Sym, Field::H, _, Kind::Sym) if f.sesqui => {
            FormSpec::new(Field::H, true, Kind::Sym, m.clone())
        }
        (Field::C, Kind::Skew, Field::H, _, Kind::Sym) => {
            FormSpec::new(Field::H, true, Kind::Sym, m.scale_left(&j))
        }
        (Field::C, Kind::Sym, Field::H, _, Kind::SkewHerm) if f.sesqui => {
            FormSpec::new(Field::H, true, Kind::SkewHerm, m.scale_left(&i))
        }
        (Field::C, Kind::Sym, Field::H, _, Kind::SkewHerm) => {
            FormSpec::new(Field::H, true, Kind::SkewHerm, m.scale_left(&j))
        }
        _ => return None,
    };
    Some(out)
}

fn convert_form(f: &FormSpec, to: Shape) -> Option<FormSpec> {
    if f.shape() == (to.field, to.sesqui, to.kind) {
        return Some(f.clone());
    }
    let rank = |k: Field| match k {
        Field::R => 0,
        Field::C => 1,
        Field::H => 2,
    };
    let (from, target) = (rank(f.field), rank(to.field));
    if from > target {
        if to.field == Field::R && to.kind == Kind::Skew && f.field == Field::C {
            if let Some(s) = lower_form_skew(f) {
                return Some(s);
            }
        }
        return convert_form(&lower_form(f)?, to);
    }
    if from == target {
        return None;
    }
    if let Some(x) = raise_form(f, to) {
        return Some(x);
    }
    // R to H passes through one of the complex shapes
    if f.field == Field::R && to.field == Field::H {
        for mid in [(true, Kind::Sym), (false, Kind::Sym), (false, Kind::Skew)] {
            let m = Shape {
                field: Field::C,
                sesqui: mid.0,
                kind: mid.1,
            };
            if let Some(x) = raise_form(f, m).and_then(|x| raise_form(&x, to)) {
                return Some(x);
            }
        }
    }
    None
}

fn lower_mat(m: &QuatMat, field: Field) -> QuatMat {
    match field {
        Field::H => QuatMat::from_mat(&m.to_complex()),
        Field::C => m.realify(),
        Field::R => m.clone(),
    }
}

fn lower_field(field: Field) -> Field {
    match field {
        Field::H => Field::C,
        _ => Field::R,
    }
}

/// Carry a piece into the ambient field, converting each form block to the ambient shape.
pub(crate) fn convert(p: Piece, field: Field, shape: Option<Shape>) -> Result<Piece, EmbError> {
    let rank = |k: Field| match k {
        Field::R => 0,
        Field::C => 1,
        Field::H => 2,
    };
    let mut mats = p.mats;
    let mut dim = p.dim;
    let mut f = p.field;
    while rank(f) > rank(field) {
        mats = mats.iter().map(|m| lower_mat(m, f)).collect();
        dim *= 2;
        f = lower_field(f);
    }
    let blocks = match shape {
        None => vec![],
        Some(s) => {
            if p.blocks.is_empty() {
                return Err(EmbError::FormIncompatible(
                    "a term without an invariant form".into(),
                ));
            }
            p.blocks
                .iter()
                .map(|b| {
                    convert_form(b, s).ok_or_else(|| {
                        EmbError::FormIncompatible(format!(
                            "{:?} {} form cannot be carried to {:?} {} form",
                            b.field,
                            kind_name(b.sesqui, b.kind),
                            s.field,
                            kind_name(s.sesqui, s.kind)
                        ))
                    })
                })
                .collect::<Result<_, _>>()?
        }
    };
    Ok(Piece::new(field, dim, mats, blocks))
}

fn kind_name(sesqui: bool, kind: Kind) -> &'static str {
    match (sesqui, kind) {
        (true, Kind::Sym) => "hermitian",
        (false, Kind::Sym) => "symmetric",
        (_, Kind::Skew) => "skew",
        (_, Kind::SkewHerm) => "skew-hermitian",
    }
}
