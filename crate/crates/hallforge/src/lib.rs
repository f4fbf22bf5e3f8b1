//! Exact Hall-algebra engine for nilpotent quiver representations over F_q.
//!
//! The crate builds, for a loop-free quiver and a prime q, the full table of
//! isomorphism classes of nilpotent F_q-representations up to a dimension
//! bound, and on top of it three algebra structures with coefficients in
//! Q(sqrt(q)):
//!
//! * the twisted Ringel-Hall algebra of the representation category,
//! * the semi-derived Hall algebra of 1-periodic complexes, presented on the
//!   basis of (representation class, torus class) pairs,
//! * the 1-periodic derived Hall algebra, with structure constants computed
//!   both by a closed formula over Hall numbers and by an independent
//!   triangle-counting oracle.
//!
//! All arithmetic is exact; every division is checked. Enumeration routines
//! refuse inputs whose state space exceeds fixed desk-scale budgets instead
//! of degrading silently.

pub mod dhall;
pub mod error;
pub mod export;
pub mod gflinalg;
pub mod hallalg;
mod orbits;
pub mod percomplex;
pub mod quiver;
pub mod repcat;
pub mod scalars;
pub mod session;
pub mod verify;

pub use error::{Error, Result};
