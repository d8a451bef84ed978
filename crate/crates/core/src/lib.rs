//! Exact algebra for overdetermined systems.
//!
//! * [`poly`]: sparse multivariate polynomials over the rationals.
//! * [`reduction`]: degree-lowering reduction of polynomial pairs, variable
//!   elimination and a solver for systems with more equations than unknowns.
//! * [`jet`]: first-order PDE systems in jet variables and their prolongation
//!   into polynomial systems.
//! * [`rank`]: Jacobian rank at a point and certification of candidates.
//! * [`oracle`]: gcd, resultant and brute-force root search for
//!   cross-checking.
//!
//! Batch loops run on rayon when the `parallel` feature is enabled (the
//! default); see [`exec`].

pub mod exec;
pub mod io;
pub mod jet;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod rank;
pub mod reduction;

use thiserror::Error;

pub use exec::Execution;
pub use poly::{Point, Polynomial, Scalar, VarTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Reduction(#[from] reduction::ReductionError),
    #[error(transparent)]
    Jet(#[from] jet::JetError),
    #[error(transparent)]
    Rank(#[from] rank::RankError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}
