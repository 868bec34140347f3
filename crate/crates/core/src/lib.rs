//! Solvers for the Higgs oscillator and the nonpolynomial oscillator with position-dependent
//! mass m(x) = (1 + kx²)⁻²: classical trajectories, semiclassical quantization, exact quantum
//! spectra under general operator ordering, a Bethe-ansatz quasi-exact solver, and a finite
//! difference eigenvalue oracle.

pub mod bethe;
pub mod classical;
pub mod error;
pub mod io;
pub mod oracle;
pub mod params;
pub mod quantum_higgs;
pub mod semiclassical;
pub mod specfn;
pub mod spectrum;

pub use error::{Error, Result};
pub use params::{Dim, Potential, SystemParams};
