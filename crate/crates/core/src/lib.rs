//! Numerical spectral theory for CMV operators: Verblunsky coefficient
//! families, exactly unitary finite sections via lattice splitting, Szegő
//! and transfer-matrix recursions, Weyl–Titchmarsh and Schur functions,
//! Herglotz measure calculus, trace formulas, Floquet band structure, and
//! both directions of the Borg-type uniqueness theorem for arc spectra.

pub mod arc;
pub mod borg;
pub mod cmv;
pub mod config;
pub mod error;
pub mod floquet;
pub mod herglotz;
pub mod laurent;
pub mod linalg;
pub mod measure;
pub mod szego;
pub mod trace;
pub mod util;
pub mod verblunsky;
pub mod weyl;

pub use arc::CircleArc;
pub use cmv::{CmvSection, SectionSpectrum, ThetaFactor};
pub use config::GeneratorSpec;
pub use error::{Error, Result};
pub use linalg::{Banded, Mat2, C64};
pub use measure::{Atom, MatrixSpectralMeasure, SpectralMeasure};
pub use verblunsky::{GaugeTransform, Generator, VerblunskySequence};
