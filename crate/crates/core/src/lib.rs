//! Quantum cohomology of the Lagrangian Grassmannian `LG(n)` and the odd
//! orthogonal Grassmannian `OG(n)`, specialized at `q = 1`.
//!
//! The crate evaluates the Pragacz–Ratajski `Q̃`/`P̃` polynomials, enumerates
//! the finite point sets of the `q = 1` Peterson varieties, recovers exact
//! Gromov–Witten structure constants by interpolating through those points,
//! writes down the simultaneous eigenbases of all quantum multiplication
//! operators, and checks the three conditions of Conjecture O for `[c₁]`.
//!
//! Module map:
//!
//! * [`partition`]: strict partitions `D(n)`, the Schubert basis order.
//! * [`symfun`]: numeric symmetric-function kernels (E, H, Schur, Q̃, P̃, Pfaffians).
//! * [`peterson`]: exclusive tuples and the `q = 1` Peterson points.
//! * [`ring`]: the Schubert-basis rings `qH*(OG(n))`, `qH*(LG(n))`.
//! * [`spectral`]: eigenpairs, `c₁` spectra, Conjecture O reports.
//! * [`cli`]: request routing and report serialization behind the `qcoh` binary.

pub mod cli;
pub mod error;
pub mod partition;
pub mod peterson;
pub mod ring;
pub mod spectral;
pub mod symfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use partition::StrictPartition;
pub use peterson::{ExclusiveTuple, Kind, Parity, PetersonPoint};
pub use ring::{EvaluationTables, RingElement, Term};
pub use spectral::{ConjectureOReport, EigenPair, OperatorMatrix};

/// Largest `n` accepted by default. Integer recovery of structure constants
/// is reliable in double precision up to here.
pub const DEFAULT_MAX_N: usize = 8;

/// Hard ceiling when the caller opts into larger ranks.
pub const UNSAFE_MAX_N: usize = 10;
