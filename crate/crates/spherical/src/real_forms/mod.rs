//! Classical real forms in the block coordinates of their minimal parabolics.

pub mod constraints;
pub mod quaternion;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use constraints::Cond;
use quaternion::{quaternionic_structure, Quat, QuatMat};

use crate::exact_linalg::{GaussRational, Mat};
use crate::lie_core::{
    minimal_parabolic, BilinearFormData, FormKind, LieAlg, LieError, ParabolicData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum FormFamily {
    Su(usize, usize),
    SlR(usize),
    SlH(usize),
    So(usize, usize),
    /// so*(2n)
    SoStar(usize),
    SpR(usize),
    Sp(usize, usize),
    SuCompact(usize),
    SoCompact(usize),
    SpCompact(usize),
    ComplexSl(usize),
    ComplexSo(usize),
    ComplexSp(usize),
}

use FormFamily::*;

impl fmt::Display for FormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Su(p, q) => write!(f, "su({p},{q})"),
            SlR(n) => write!(f, "sl({n},R)"),
            SlH(n) => write!(f, "sl({n},H)"),
            So(p, q) => write!(f, "so({p},{q})"),
            SoStar(n) => write!(f, "so*({})", 2 * n),
            SpR(n) => write!(f, "sp({n},R)"),
            Sp(p, q) => write!(f, "sp({p},{q})"),
            SuCompact(n) => write!(f, "su({n})"),
            SoCompact(n) => write!(f, "so({n})"),
            SpCompact(n) => write!(f, "sp({n})"),
            ComplexSl(n) => write!(f, "sl({n},C)"),
            ComplexSo(n) => write!(f, "so({n},C)"),
            ComplexSp(n) => write!(f, "sp({n},C)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("bad parameters for {0}")]
    BadParams(String),
    #[error("already complex: {0}")]
    AlreadyComplex(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Field {
    R,
    C,
    H,
}

/// The defining form as it enters embedding constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormModel {
    None(Field),
    /// X^* H + H X = 0, H Hermitian
    Hermitian(Mat),
    /// real X, X^T S + S X = 0
    RealSymmetric(Mat),
    /// complex X, X^T S + S X = 0
    ComplexSymmetric(Mat),
    /// X^T Ω + Ω X = 0; real or complex X
    Skew {
        omega: Mat,
        complex: bool,
    },
    /// quaternionic X preserving a quaternionic Hermitian form
    QuatHermitian(QuatMat),
    /// quaternionic X preserving a quaternionic skew-Hermitian form
    QuatSkewHermitian(QuatMat),
}

impl FormModel {
    /// Dimension over R, C or H of the defining module, in "units".
    pub fn field(&self) -> Field {
        match self {
            FormModel::None(f) => *f,
            FormModel::Hermitian(_) | FormModel::ComplexSymmetric(_) => Field::C,
            FormModel::RealSymmetric(_) => Field::R,
            FormModel::Skew { complex, .. } => {
                if *complex {
                    Field::C
                } else {
                    Field::R
                }
            }
            FormModel::QuatHermitian(_) | FormModel::QuatSkewHermitian(_) => Field::H,
        }
    }
}

pub struct RealForm {
    pub family: FormFamily,
    pub alg: Arc<LieAlg>,
    pub model: FormModel,
    pub form: Option<BilinearFormData>,
    pub parabolic: ParabolicData,
}

impl fmt::Debug for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealForm({}, dim {})", self.family, self.alg.dim())
    }
}

/// The split-friendly form [[0, I_p, 0], [I_p, 0, 0], [0, 0, I_{q-p}]] for p <= q.
pub fn paper_j(p: usize, q: usize) -> Mat {
    let (p, q) = (p.min(q), p.max(q));
    let n = p + q;
    let mut j = Mat::zeros(n, n);
    for i in 0..p {
        j[(i, p + i)] = GaussRational::one();
        j[(p + i, i)] = GaussRational::one();
    }
    for i in 2 * p..n {
        j[(i, i)] = GaussRational::one();
    }
    j
}

/// paper_j with its sign chosen so that its inertia is (p, q) as written.
pub fn signed_j(p: usize, q: usize) -> Mat {
    if p >= q {
        paper_j(p, q)
    } else {
        paper_j(p, q).neg()
    }
}

/// [[0, I], [-I, 0]]
pub fn omega(n: usize) -> Mat {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = GaussRational::one();
        m[(n + i, i)] = GaussRational::int(-1);
    }
    m
}

pub fn antidiagonal(n: usize) -> Mat {
    Mat::from_fn(n, n, |i, j| {
        if i + j + 1 == n {
            GaussRational::one()
        } else {
            GaussRational::zero()
        }
    })
}

/// Quaternionic Hermitian form of inertia (p, q): min(p,q) hyperbolic pairs plus a definite block.
pub fn quat_hermitian_form(p: usize, q: usize) -> QuatMat {
    let (r, n) = (p.min(q), p + q);
    let mut f = QuatMat::zeros(n, n);
    for i in 0..r {
        f.set(i, r + i, Quat::one());
        f.set(r + i, i, Quat::one());
    }
    let sign = if p >= q { 1 } else { -1 };
    for i in 2 * r..n {
        f.set(i, i, Quat::ints(sign, 0, 0, 0));
    }
    f
}

/// Quaternionic skew-Hermitian form: floor(n/2) pairs [[0, I], [-I, 0]] plus j on a last odd coordinate.
pub fn quat_skew_form(n: usize) -> QuatMat {
    let r = n / 2;
    let mut f = QuatMat::zeros(n, n);
    for i in 0..r {
        f.set(i, r + i, Quat::one());
        f.set(r + i, i, Quat::ints(-1, 0, 0, 0));
    }
    if n % 2 == 1 {
        f.set(n - 1, n - 1, Quat::j());
    }
    f
}

impl FormFamily {
    pub fn ambient_size(&self) -> usize {
        match *self {
            Su(p, q) | So(p, q) => p + q,
            Sp(p, q) => 2 * (p + q),
            SlR(n) | SuCompact(n) | SoCompact(n) | ComplexSl(n) | ComplexSo(n) => n,
            SlH(n) | SoStar(n) | SpR(n) | SpCompact(n) | ComplexSp(n) => 2 * n,
        }
    }

    pub fn expected_dim(&self) -> usize {
        match *self {
            Su(p, q) => (p + q) * (p + q) - 1,
            SuCompact(n) => n * n - 1,
            SlR(n) => n * n - 1,
            SlH(n) => 4 * n * n - 1,
            So(p, q) => (p + q) * (p + q - 1) / 2,
            SoCompact(n) => n * (n - 1) / 2,
            SoStar(n) => n * (2 * n - 1),
            SpR(n) | SpCompact(n) => n * (2 * n + 1),
            Sp(p, q) => (p + q) * (2 * (p + q) + 1),
            ComplexSl(n) => 2 * (n * n - 1),
            ComplexSo(n) => n * (n - 1),
            ComplexSp(n) => 2 * n * (2 * n + 1),
        }
    }

    /// Helgason's closed forms for the real rank.
    pub fn expected_real_rank(&self) -> usize {
        match *self {
            Su(p, q) | So(p, q) | Sp(p, q) => p.min(q),
            SlR(n) | SlH(n) | ComplexSl(n) => n - 1,
            SoStar(n) => n / 2,
            SpR(n) | ComplexSp(n) => n,
            ComplexSo(n) => n / 2,
            SuCompact(_) | SoCompact(_) | SpCompact(_) => 0,
        }
    }

    /// Whether m is abelian.
    pub fn expected_quasi_split(&self) -> bool {
        match *self {
            SlR(_) | SpR(_) | ComplexSl(_) | ComplexSo(_) | ComplexSp(_) => true,
            Su(p, q) => p.abs_diff(q) <= 1,
            So(p, q) => p.abs_diff(q) <= 2,
            SlH(_) | Sp(..) | SoStar(_) | SuCompact(_) | SpCompact(_) => false,
            SoCompact(n) => n == 2,
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, ComplexSl(_) | ComplexSo(_) | ComplexSp(_))
    }

    pub fn validate(&self) -> Result<(), FormError> {
        let ok = match *self {
            Su(p, q) => p + q >= 2,
            So(p, q) => p + q >= 2,
            Sp(p, q) => p + q >= 1,
            SlR(n) | SlH(n) | ComplexSl(n) | SuCompact(n) => n >= 2 || matches!(self, SlH(1)),
            SoStar(n) => n >= 1,
            SpR(n) | SpCompact(n) | ComplexSp(n) => n >= 1,
            SoCompact(n) | ComplexSo(n) => n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(FormError::BadParams(self.to_string()))
        }
    }

    pub fn model(&self) -> FormModel {
        match *self {
            Su(p, q) => FormModel::Hermitian(signed_j(p, q)),
            SuCompact(n) => FormModel::Hermitian(Mat::identity(n)),
            So(p, q) => FormModel::RealSymmetric(signed_j(p, q)),
            SoCompact(n) => FormModel::RealSymmetric(Mat::identity(n)),
            SlR(_) => FormModel::None(Field::R),
            ComplexSl(_) => FormModel::None(Field::C),
            SlH(_) => FormModel::None(Field::H),
            SpR(n) => FormModel::Skew {
                omega: omega(n),
                complex: false,
            },
            ComplexSp(n) => FormModel::Skew {
                omega: omega(n),
                complex: true,
            },
            ComplexSo(n) => FormModel::ComplexSymmetric(antidiagonal(n)),
            Sp(p, q) => FormModel::QuatHermitian(quat_hermitian_form(p, q)),
            SpCompact(n) => FormModel::QuatHermitian(QuatMat::identity(n)),
            SoStar(n) => FormModel::QuatSkewHermitian(quat_skew_form(n)),
        }
    }

    fn traceless(&self) -> bool {
        matches!(self, Su(..) | SuCompact(_) | SlR(_) | SlH(_) | ComplexSl(_))
    }
}

/// Linear conditions defining the algebra of a form model (gl-type when `traceless` is false).
pub fn model_conditions(model: &FormModel, n: usize, traceless: bool) -> Vec<Cond> {
    let mut c = match model {
        FormModel::None(Field::R) => vec![Cond::Real],
        FormModel::None(Field::C) => vec![],
        FormModel::None(Field::H) => vec![Cond::Quaternionic(quaternionic_structure(n / 2))],
        FormModel::Hermitian(h) => vec![Cond::Hermitian(h.clone())],
        FormModel::RealSymmetric(s) => vec![Cond::Real, Cond::Bilinear(s.clone())],
        FormModel::ComplexSymmetric(s) => vec![Cond::Bilinear(s.clone())],
        FormModel::Skew { omega, complex } => {
            let mut v = vec![Cond::Bilinear(omega.clone())];
            if !complex {
                v.push(Cond::Real);
            }
            v
        }
        FormModel::QuatHermitian(f) | FormModel::QuatSkewHermitian(f) => vec![
            Cond::Quaternionic(quaternionic_structure(f.rows)),
            Cond::Hermitian(f.to_complex()),
        ],
    };
    if traceless {
        c.push(Cond::Traceless);
    }
    c
}

fn form_data(model: &FormModel) -> Option<BilinearFormData> {
    match model {
        FormModel::None(_) => None,
        FormModel::Hermitian(h) => Some(BilinearFormData::new(h.clone(), FormKind::Hermitian)),
        FormModel::RealSymmetric(s) | FormModel::ComplexSymmetric(s) => {
            Some(BilinearFormData::new(s.clone(), FormKind::Symmetric))
        }
        FormModel::Skew { omega, .. } => Some(BilinearFormData::new(omega.clone(), FormKind::Skew)),
        FormModel::QuatHermitian(f) => {
            Some(BilinearFormData::new(f.to_complex(), FormKind::Hermitian))
        }
        FormModel::QuatSkewHermitian(f) => Some(BilinearFormData::new(
            f.to_complex(),
            FormKind::SkewHermitian,
        )),
    }
}

fn cache() -> &'static Mutex<HashMap<FormFamily, Arc<RealForm>>> {
    static CACHE: OnceLock<Mutex<HashMap<FormFamily, Arc<RealForm>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build g, its defining form and its minimal parabolic. Results are memoized.
pub fn construct(f: FormFamily) -> Result<Arc<RealForm>, FormError> {
    if let Some(rf) = cache().lock().unwrap().get(&f) {
        return Ok(rf.clone());
    }
    f.validate()?;
    let n = f.ambient_size();
    let model = f.model();
    let space = constraints::solve(n, &model_conditions(&model, n, f.traceless()));
    let mut alg = LieAlg::from_subspace(n, space, f.to_string())?;
    if f.is_complex() {
        alg = alg.mark_complexified();
    }
    let parabolic = minimal_parabolic(&alg)?;
    let rf = Arc::new(RealForm {
        family: f,
        alg: Arc::new(alg),
        form: form_data(&model),
        model,
        parabolic,
    });
    cache().lock().unwrap().insert(f, rf.clone());
    Ok(rf)
}

/// g ⊗ C regarded as a real algebra: basis ∪ i·basis.
pub fn complexify_as_real(g: &LieAlg) -> Result<LieAlg, FormError> {
    if g.is_complexified() {
        return Err(FormError::AlreadyComplex(g.label().to_string()));
    }
    let i = GaussRational::i();
    let mut mats: Vec<Mat> = g.basis().to_vec();
    mats.extend(g.basis().iter().map(|b| b.scale(&i)));
    let c = LieAlg::new(g.ambient_size(), &mats, format!("{}_C", g.label()))?;
    if c.dim() != 2 * g.dim() {
        return Err(FormError::AlreadyComplex(g.label().to_string()));
    }
    Ok(c.mark_complexified())
}
