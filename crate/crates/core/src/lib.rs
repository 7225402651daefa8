//! Minimal periods of principally polarized abelian varieties and the
//! Seshadri-constant bounds they feed.
//!
//! - [`period`] and [`lattice`]: the quadratic form of a period matrix and its
//!   exact minimum `m(A)` by LLL and Fincke-Pohst enumeration.
//! - [`bounds`]: lower and upper Seshadri bounds and their consistency checks.
//! - [`surface`]: exact intersection numbers on `C x C`.
//! - [`symplectic`]: the radial blow-up map and seeded checks of its form.
//! - [`experiments`]: random sampling and a hill-climb for large `m(A)`.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod io;
pub mod lattice;
pub mod period;
pub mod rational;
pub mod surface;
pub mod symplectic;

pub use error::{Error, Result};
pub use lattice::{brute_force_shortest, min_period_length, shortest_vector, ShortestResult};
pub use period::{gram_from_period, validate_period_matrix, GramForm, LatticeVector, PeriodMatrix};
