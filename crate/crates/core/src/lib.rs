//! Exact finite-mode workbench for point-split commutators of a free
//! fermion field in 1+1 dimensions.
//!
//! The model lives on a periodic box with `2·n_max + 1` momentum modes per
//! species. Operators are kept as normal-ordered polynomials in the mode
//! ladder operators, states as sparse Fock vectors, and every spatial
//! integral is evaluated exactly over box harmonics.

pub mod anomaly;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod modeops;
pub mod quadrature;
pub mod symbolic;
pub mod trig;
pub mod vacuum;
pub mod verify;

pub use anomaly::AnomalyReport;
pub use error::{Error, Result};
pub use fock::{FockVector, SlotIndex, Species};
pub use lattice::{dispersion, LatticeConfig, ModeSpinor, Sign};
pub use modeops::{ModeOperator, Signature};
pub use trig::TrigPoly;
pub use vacuum::{EnergyReport, SplitSpectrum};
