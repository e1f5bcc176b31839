//! Finite-scale machinery for the metric-functional (horofunction) boundary
//! of finitely generated groups.
//!
//! The crate builds exact word-metric balls in Cayley graphs, restricts
//! Busemann functions to finite balls, detects annihilator elements,
//! runs the convex-geometry construction that certifies infinitely many
//! Busemann points for virtually abelian groups of rank at least two, and
//! builds integer-valued ball-system metrics.
//!
//! ```
//! use horofunc::{catalog, cayley::Ball};
//!
//! let (group, gens) = catalog::z2_standard();
//! let ball = Ball::grow(&group, &gens, 2).unwrap();
//! assert_eq!(ball.len(), 13);
//! ```

pub mod annihilator;
pub mod boundary;
pub mod catalog;
pub mod cayley;
pub mod cli;
pub mod config;
pub mod convex;
pub mod group;
pub mod metrics;
pub mod vabelian;

pub use group::{Element, GeneratingSet, Group, GroupError, GroupSpec};
