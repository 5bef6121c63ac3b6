//! Coset-meets-power problems over finite abelian groups.
//!
//! Given a finite abelian group `G`, a subset `S`, a point `x*` of `G^t` and
//! a subgroup `H` of `G^t` given by generators, decide whether `(x* + H)`
//! meets `S^t`. This crate classifies the pairs `(G, S)` for which that is
//! polynomial, solves those cases, and for the remaining ones compiles an
//! explicit reduction pipeline from graph 3-colouring.

pub mod abelian;
pub mod classifier;
pub mod compiler;
pub mod error;
pub mod format;
pub mod oracle;
pub mod poly;
pub mod problem;
pub mod reductions;
pub mod random;
pub mod scalar;
pub mod selftest;

pub use abelian::{FiniteAbelianGroup, GroupElement, Homomorphism, SubgroupGens};
pub use classifier::{classify_p, classify_pi, is_coset, theta, Classification, Reason, Verdict};
pub use error::{Error, Result};
pub use oracle::{oracle_solve, OracleAnswer};
pub use poly::{solve_p_coset, solve_pi_theta, Decision};
pub use problem::{verify_certificate, Certificate, ProblemInstance, SubsetS};
pub use scalar::IntScalar;

/// Matrices of group data and homomorphisms.
pub type Matrix = abelian::IntMatrix<i64>;
/// Wide matrices for unimodular transforms.
pub type WideMatrix = abelian::IntMatrix<i128>;
/// Smith form over the default scalar.
pub type SmithForm = abelian::Snf<i64>;
