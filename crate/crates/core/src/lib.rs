//! Spectra of large-n Toeplitz matrices with Fisher-Hartwig symbols.
//!
//! The crate builds finite-n eigenvalues and eigenvectors from the
//! semi-infinite (Wiener-Hopf) solution: the kernel `a(z) - eps` is split
//! into causal/anticausal factors, the coupled boundary corrections are
//! iterated to convergence in the small parameter `lambda = n^{-(1+2 alpha)}`,
//! and candidate eigenvalues are located as roots of the resulting
//! eigenvalue condition. A self-contained dense complex eigensolver serves
//! as the ground-truth oracle at desk scale.

pub mod eigen;
pub mod expansion;
mod fft;
pub mod oracle;
pub mod report;
pub mod series;
pub mod symbol;
pub mod wiener_hopf;

pub use symbol::{Symbol, SymbolParams};
