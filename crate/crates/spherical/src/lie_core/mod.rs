//! Matrix Lie algebras over R with exact bases.

mod algebra;
mod parabolic;

pub use algebra::{BilinearFormData, FormKind, LieAlg, Subalg, Theta};
pub use parabolic::{
    cartan_decomposition, find_split_torus, minimal_parabolic, minimal_parabolic_with, real_rank,
    real_rank_with, restricted_roots, ParabolicData, RestrictedRoot,
};

use crate::exact_linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("bracket leaves the span: [{0}, {1}]")]
    NotClosed(usize, usize),
    #[error("matrix is not in the algebra")]
    NotInAlgebra,
    #[error("theta is not an involutive automorphism of the algebra")]
    ThetaNotInvolutive,
    #[error("supplied torus is not abelian")]
    NotAbelian,
    #[error("ad(a) is not diagonalizable with rational eigenvalues")]
    IrrationalSpectrum,
    #[error("a is not maximal abelian in s (centralizer has dim {0}, a has dim {1})")]
    NotMaximalAbelian(usize, usize),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
