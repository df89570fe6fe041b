//! Orthoplex-bound-achieving Grassmannian frames built from Singer difference
//! sets and relative difference sets, together with the tooling that
//! certifies them: coherence against the Welch and orthoplex bounds,
//! tightness, modulation-operator identities and weighted complex projective
//! 2-design sums.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf`]: finite-field arithmetic and the relative trace.
//! - [`designsets`]: trace-constructed and searched difference sets.
//! - [`framegen`]: cyclic frames, basis adjunction, discrete chirps.
//! - [`analysis`]: Gramians, bounds and structural certificates.
//! - [`design2`]: closed-form weights and 2-design certificates.
//! - [`cli`]: the `framekit` command-line front end.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod design2;
pub mod designsets;
pub mod framegen;
pub mod gf;
pub mod tolerance;

pub use analysis::AnalysisReport;
pub use design2::{DesignCertificate, WeightedFrame};
pub use designsets::DesignSet;
pub use framegen::{Frame, GeneratingSequence, Label};
pub use tolerance::Tolerances;
