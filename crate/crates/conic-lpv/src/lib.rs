//! Certification of interior-conic bounds for polytopic (LPV) systems,
//! conic controller synthesis, and closed-loop validation tooling.
//!
//! The crate is organized as a stack:
//!
//! - [`matcore`] — dense matrix primitives and control-numerics kernels
//! - [`sdp`] — a small dense log-barrier semidefinite-programming solver
//! - [`lmi`] — symbolic block-LMI modeling that compiles into [`sdp`] problems
//! - [`lpvsys`] — polytopic state-space models and scheduling signals
//! - [`conic`] — conic-sector certificates and tight-bound searches
//! - [`synthesis`] — vertex H-infinity design and the conic projection step
//! - [`heatx`] — the heat-exchanger study plant builder
//! - [`sim`] — fixed-step closed-loop simulation and tracking metrics
//! - [`cli`] — file-based commands used by the `conic-lpv` binary
//!
//! See the `examples/` directory for one runnable walkthrough per capability.

pub mod conic;
pub mod heatx;
pub mod lmi;
pub mod synthesis;
pub mod lpvsys;
pub mod matcore;
pub mod sdp;
pub mod sim;

pub use matcore::{ComplexMatrix, Matrix};
