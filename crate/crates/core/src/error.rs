use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "coefficient modulus {modulus} is not strictly inside the unit disk (limit 1 - 1e-12)"
    )]
    CoefficientOutsideDisk { modulus: f64 },

    #[error("expected a unimodular number, got modulus {modulus}")]
    NotUnimodular { modulus: f64 },

    #[error("coefficient index {k} is outside the stored range [{lo}, {hi}]")]
    IndexOutOfRange { k: i64, lo: i64, hi: i64 },

    #[error("invalid window: k_lo {k_lo} > k_hi {k_hi}")]
    InvalidWindow { k_lo: i64, k_hi: i64 },

    #[error("arc endpoints violate theta0 < theta1 <= theta0 + 2*pi (theta0 = {theta0}, theta1 = {theta1})")]
    ArcOrdering { theta0: f64, theta1: f64 },

    #[error("spectral parameter z = 0 is outside the domain")]
    ZeroSpectralParameter,

    #[error("evaluation point lies on the unit circle (|z| = {modulus})")]
    OnUnitCircle { modulus: f64 },

    #[error("section is too small: need at least {need} sites, got {got}")]
    SectionTooSmall { need: usize, got: usize },

    #[error("matrix is not unitary: max residual {residual}")]
    NotUnitary { residual: f64 },

    #[error("eigenbasis is numerically defective: residual {residual} after re-orthogonalization")]
    DefectiveEigenbasis { residual: f64 },

    #[error("linear solve failed or z is too close to a section eigenvalue (residual {residual})")]
    ResolventSingular { residual: f64 },

    #[error("Moebius denominator below 1e-12 while mapping the half-lattice m-function")]
    MoebiusDegenerate,

    #[error("Schur iterate left the closed unit disk (|phi| = {modulus}); contraction hypothesis violated")]
    NonContraction { modulus: f64 },

    #[error("Weyl functions degenerate: M_+ = M_- at the requested point")]
    DegenerateWeylPair,

    #[error("branch tracking failed: phase jump {jump} exceeds pi on the radial path; refine the schedule")]
    BranchTracking { jump: f64 },

    #[error("function vanishes at z = 0; exponential representation undefined")]
    VanishingAtOrigin,

    #[error("sequence is not periodic (or carries a gauge twist incompatible with its period)")]
    NotPeriodic,

    #[error("sequence is not a geometric generator")]
    NotGeometric,

    #[error("arc interior is empty after excluding the edge margin")]
    EmptyArcInterior,

    #[error("numerical procedure failed to converge: {what}")]
    Unconverged { what: String },

    #[error("invalid configuration: {what}")]
    Config { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
