//! Binary hypothesis detectors over a two-outcome event space, in two flavors:
//! a set-based detector that thresholds outcome frequencies (the classical
//! Neyman-Pearson picture) and a subspace-based detector that thresholds the
//! spectrum of a density-matrix difference (the Helstrom measurement). The
//! point of the crate is to rank information units with both and expose where
//! the subspace detector strictly dominates the set detector.
//!
//! Layout: [`qspace`] holds the 2x2 quantum-probability algebra (kets,
//! Hermitian matrices, projectors, densities, Born probabilities),
//! [`detection`] builds both detectors on top of it (spectra, regions of
//! acceptance, operating points, ROC curves), [`ranker`] estimates parameters
//! from labeled records and scores units under either detector, and
//! [`selftest`] bundles the randomized invariant sweeps the CLI exposes.

#![forbid(unsafe_code)]

pub mod detection;
pub mod qspace;
pub mod ranker;
pub mod selftest;

/// Unified error type for the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A probability argument left [0, 1].
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    /// Threshold must be a positive finite real.
    #[error("lambda = {0} must be positive and finite")]
    BadLambda(f64),
    /// A ket must have unit norm.
    #[error("vector with squared norm {norm_sq} is not a unit vector")]
    NotUnit { norm_sq: f64 },
    /// A density must have unit trace and be positive semidefinite.
    #[error("not a density matrix: trace = {trace}, smallest eigenvalue = {min_eig}")]
    NotDensity { trace: f64, min_eig: f64 },
    /// A projector must be idempotent with integer trace.
    #[error("not a projector: idempotency defect = {defect}, trace = {trace}")]
    NotProjector { defect: f64, trace: f64 },
    /// The two hypothesis states coincide and the threshold is 1, so the
    /// detector matrix vanishes and no spectrum-based quantity is defined.
    #[error("degenerate detector at p0 = {p0}, p1 = {p1}, lambda = {lambda}")]
    Degenerate { p0: f64, p1: f64, lambda: f64 },
    /// Relative-frequency estimation needs at least one record per
    /// conditioning class unless smoothing is positive.
    #[error("cannot estimate from zero {side} records with smoothing 0")]
    EmptyClass { side: &'static str },
    /// A training set must contain records.
    #[error("empty training set")]
    EmptyTrainingSet,
    /// Training records must all carry labels.
    #[error("record {unit_id:?} has no label")]
    MissingLabel { unit_id: String },
    /// Record-level input problem, with the 1-based line it came from.
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    /// ROC curves require strictly increasing sizes and monotone power.
    #[error("invalid ROC data: {0}")]
    BadRoc(String),
}

pub type Result<T> = std::result::Result<T, Error>;
