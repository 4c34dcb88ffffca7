//! Generalized q,t-Catalan polynomials for length-3 vectors `(k1, k2, k3)` and
//! for `(k, k, k, k)`.
//!
//! - [`polynomial`]: exact sparse Laurent polynomials over named variables.
//! - [`dyck`]: path models, enumeration, area and bounce.
//! - [`catalan`]: `C_k(q,t)`, `C_λ(q,t)`, `C_{k^4}(q,t)` and y-refined sums.
//! - [`involution`]: the area/bounce-swapping involutions and their checker.
//! - [`omega`]: truncated partition analysis, crude and closed generating
//!   functions.
//! - [`verify`]: range-scan suites shared by the CLI and the tests.

pub mod catalan;
pub mod dyck;
pub mod involution;
pub mod omega;
pub mod polynomial;
pub mod verify;

pub use catalan::{catalan_poly3, catalan_poly_k4, catalan_poly_lambda3};
pub use dyck::{KVec3, ParamPath3, Path3, Path4};
pub use polynomial::{SparsePoly, VarTable};
