//! Exact integer and rational arithmetic substrate: polynomials, integer
//! matrices with Hermite/Smith normal forms, quadratic irrationals, Sturm
//! chains, integer factorization, and linear algebra over prime fields.

pub mod factor;
pub mod fp;
pub mod mat;
pub mod num;
pub mod poly;
pub mod quad;
pub mod ratmat;
pub mod sturm;

pub use factor::{factor_integer, is_prime};
pub use mat::IntMat;
pub use poly::{IntPoly, RatPoly};
pub use quad::QuadIrr;
pub use ratmat::RatMat;
pub use sturm::{count_real_roots, count_real_roots_everywhere};
