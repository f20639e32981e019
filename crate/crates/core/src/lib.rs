//! Operator norms, tensor norms and rank bounds for the matrix multiplication
//! tensor.
//!
//! The library computes matrix (p,q)-operator norms (exact closed forms where
//! they exist, certified lower-bound heuristics otherwise), certified lower
//! bounds on the (p,q,r)-norms of the matrix multiplication tensor
//! mu_{l,m,n}, the analytic sandwich bounds around them, the divergence
//! sequences separating the bounded exponent class, and the fast-multiplication
//! side: Strassen's 7-multiplication scheme, the mu hypermatrix and rank
//! decomposition checks.
//!
//! Core numerics are generic over the entry scalar ([`scalar::Entry`]:
//! f32/f64 and their complex extensions); exponents are exact extended
//! rationals so every branch test is decided exactly. Concrete aliases for the
//! common instantiations live at the crate root.

pub mod bounds;
pub mod error;
pub mod exponent;
pub mod io;
pub mod matnorm;
pub mod matrix;
pub mod scalar;
pub mod seeding;
pub mod strassen;
pub mod tensornorm;
pub mod witness;

pub use error::{Error, Result};
pub use exponent::{Exponent, ExponentTriple};
pub use matrix::Matrix;

/// Real double-precision matrix, the default working type.
pub type RealMatrix = Matrix<f64>;
/// Complex double-precision matrix.
pub type ComplexMatrix = Matrix<num_complex::Complex64>;
/// Integer matrix for exact constructions (witnesses, Hadamard, Strassen).
pub type IntMatrix = Matrix<i64>;
