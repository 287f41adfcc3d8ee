//! Brute-force oracle for the curve identity: exact verification of witness
//! curves and a seeded numeric least-squares search. Numeric results are
//! evidence only, never proofs of non-existence.

pub mod exact;
pub mod lm;
pub mod numeric;
pub mod problem;

pub use exact::{identity_sides, residual, verify_witness_exact, Mismatch, WitnessCheck};
pub use lm::{search_isometry, SearchOptions, SearchReport};
pub use numeric::NumericProblem;
pub use problem::{Candidate, SearchProblem};
