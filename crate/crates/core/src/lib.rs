//! Correlation dynamics of two atoms held in two isolated thermal cavities.
//!
//! Each atom is resonantly coupled to its own single-mode cavity; the cavities
//! start in thermal states and the atoms in `(|ee> + |gg>)/sqrt(2)`.  The
//! reduced two-atom state stays an X state, and this crate evaluates its
//! trace-norm geometric discord and concurrence along the evolution.
//!
//! - [`xstate`]: X states, Bloch form, both correlation measures.
//! - [`variational`]: direct minimization oracle for the discord.
//! - [`thermal`]: analytic reduced state from the thermal series.
//! - [`oracle`]: brute-force Fock-space evolution for cross-checks.
//! - [`sweep`]: parameter grids, sudden-death intervals, robust revival time.

pub mod error;
pub mod oracle;
pub mod sweep;
pub mod thermal;
pub mod variational;
pub mod xstate;

pub use error::{Error, Result};
pub use thermal::{atomic_xstate, measures_at, Measures, ModelParams, TruncationSpec};
pub use xstate::{DensityMatrix4, XState};
