//! Special functions: Jacobi elliptic functions, complete elliptic integrals, Γ and erf,
//! terminating ₂F₁, Ferrers functions of real degree and order, Jacobi polynomials and
//! adaptive quadrature.

pub mod diff;
pub mod elliptic;
pub mod gamma;
pub mod hyper;
pub mod quad;

pub use diff::central_derivatives;
pub use elliptic::{complete_elliptic, complete_elliptic_e, jacobi_elliptic, EllipticTriple};
pub use gamma::{erf, erf_gamma, gamma, ln_gamma, rgamma};
pub use hyper::{assoc_legendre, hyp2f1_terminating, jacobi_polynomial, spherical_harmonic_real};
pub use quad::{integrate, QuadOptions};
