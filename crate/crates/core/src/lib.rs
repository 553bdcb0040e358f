//! Exact computer algebra for squarefree isogeny classes of abelian varieties
//! over finite fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] — arbitrary-precision integers/rationals, integer polynomials
//!   and matrices (Hermite and Smith normal forms), quadratic irrationals,
//!   Sturm root counting, integer factorization, and linear algebra over
//!   prime fields.
//! * [`etale`] — the algebra `K = Q[x]/(h)` for squarefree `h`: element
//!   arithmetic, characteristic polynomials, traces, norms, and the
//!   conjugation involution `x -> q/x`.
//! * [`lattice`] / [`order`] — full-rank Z-lattices in `K` in canonical
//!   Hermite form, fractional ideals, colon ideals, trace duals, orders,
//!   maximal-order computation, primes, local invariants (Cohen-Macaulay
//!   type), and overorder enumeration.
//! * [`group`] — finite abelian groups as invariant-factor chains.
//! * [`weil`] — Weil polynomial validation, point counts, Newton/Hodge
//!   polygons, admissible group enumeration, cyclicity and richness
//!   classification with independent cross-checking criteria.
//! * [`points`] — group structures of ideal quotients, groups of rational
//!   points per endomorphism order, duality, and the self-duality
//!   obstruction.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod arith;
pub mod etale;
pub mod group;
pub mod lattice;
pub mod order;
pub mod points;
pub mod weil;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer scalar used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar (always stored in lowest terms, positive denominator).
pub type Rat = num_rational::BigRational;
