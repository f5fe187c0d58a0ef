//! Exact linear algebra over Q and Q(i).

pub mod elim;
pub mod mat;
pub mod modp;
pub mod scalar;
pub mod signature;
pub mod sparse;
pub mod subspace;

pub use elim::{kernel, kernel_rows, kernel_sparse, rank, rank_rows};
pub use mat::Mat;
pub use modp::rank_mod_p;
pub use scalar::{q, qf, GaussRational, Rational};
pub use signature::{signature, Signature};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is not real symmetric")]
    NotSymmetric,
    #[error("matrix has non-real entries")]
    NotReal,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
}

pub fn subspace_sum(u: &Subspace, w: &Subspace) -> Result<Subspace, LinalgError> {
    u.sum(w)
}

pub fn subspace_intersect(u: &Subspace, w: &Subspace) -> Result<Subspace, LinalgError> {
    u.intersect(w)
}
