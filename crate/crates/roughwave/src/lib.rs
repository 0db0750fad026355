//! Frequency-localized wave propagation on periodic domains with metrics of
//! limited smoothness.
//!
//! The crate builds the first-order wave group `exp(-itP)` for a
//! paradifferential square root `P` of a Laplace–Beltrami operator: dyadic
//! frequency windows, scale-matched metric mollification, Hamiltonian ray
//! tracing and flow-map inversion for the phase functions, oscillatory
//! integral propagators with a convergent iterated-correction series, a
//! parabolic wave-packet frame, and an experiment harness that measures
//! dispersive decay, space-time norms, and spectral projector growth against
//! brute-force dense oracles.

pub mod error;
pub mod util;

pub mod spectral;
pub mod metric;
pub mod hamflow;
pub mod eikonal;
pub mod propagator;
pub mod wavepacket;
pub mod verify;

pub use error::{Error, Result};
