//! Exact truncated power-series calculus: holomorphic germs, Hermitian
//! series, polarization, truncated log/exp and the Taylor-matrix rank test.

pub mod germ;
pub mod hermitian;
pub mod index;
pub mod rank;
pub mod scalar;

pub use germ::{SignedGermSystem, TruncatedGerm};
pub use hermitian::{norm_square_system, norm_square_system_in, BiSeries, HermitianSeries};
pub use index::MultiIndex;
pub use rank::{exact_rank, taylor_matrix_rank, TaylorRank};
pub use scalar::{Coeff, Gaussian, Rational};
