//! Graded Betti tables of monomial ideals and complete intersections, exact
//! evaluation of shift-based bounds on total Betti numbers, and
//! Boij-Söderberg decompositions of Betti diagrams.
//!
//! All arithmetic is exact: multiplicities are integers and every bound is a
//! [`Rational`]. The base field is the rationals.

pub mod boij_soederberg;
pub mod bounds;
pub mod diagram;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod resolution;
pub mod table;

pub use error::{Error, Result};
pub use ideal::{ring_invariants, Monomial, MonomialIdeal, RingInvariants};
pub use table::GradedBettiTable;

/// Exact rational number.
pub type Rational = num_rational::BigRational;
