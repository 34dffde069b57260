use std::fmt;

use thiserror::Error;

/// Pipeline stage that produced an error, used to annotate reconstruction
/// and conformance failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    MapBasis,
    FixPhases,
    Classify,
    Probe,
    CrossConsistency,
    Verify,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::MapBasis => "map_basis",
            Stage::FixPhases => "fix_phases",
            Stage::Classify => "classify_automorphism",
            Stage::Probe => "probe_automorphism",
            Stage::CrossConsistency => "cross_consistency",
            Stage::Verify => "verify_reproduction",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors raised by ray primitives, oracle construction and reconstruction.
///
/// Numeric payloads are carried as `f64` regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WignerError {
    #[error("vector norm {norm:e} is too small to generate a ray")]
    ZeroVector { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least {min}, got {dim}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("non-finite component at index {index}")]
    NonFinite { index: usize },

    #[error("invalid tolerance {name} = {value:e}: must lie in (0, 1e-2)")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular or ill-conditioned (condition number {condition:e})")]
    SingularMatrix { condition: f64 },

    #[error("matrix is not unitary: max |U^H U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("basis images {i} and {j} are not orthogonal (u = {u:e})")]
    ImagesNotOrthogonal { i: usize, j: usize, u: f64 },

    #[error(
        "basis images are incomplete (Gram deviation {gram_deviation:e}, smallest singular value {min_singular:e})"
    )]
    IncompleteImage {
        gram_deviation: f64,
        min_singular: f64,
    },

    #[error("slice probe on index {index} is degenerate: |b_1| = {b1:e}")]
    SliceDegenerate { index: usize, b1: f64 },

    #[error("slice probe on index {index} leaks into coordinate {leak} (|b| = {magnitude:e})")]
    CrossTalk {
        index: usize,
        leak: usize,
        magnitude: f64,
    },

    #[error("phase probe on index {index} is degenerate: |c| = {modulus:e}")]
    DegenerateProbe { index: usize, modulus: f64 },

    #[error(
        "probe of the imaginary unit gave f(i) = {re:e}{im:+e}i, neither i nor -i (residual {residual:e})"
    )]
    NotWignerLike { re: f64, im: f64, residual: f64 },

    #[error(
        "index {index} is invalid for dimension {dim} (must differ from the distinguished index 0)"
    )]
    InvalidIndex { index: usize, dim: usize },

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<WignerError>,
    },
}

impl WignerError {
    pub(crate) fn at(self, stage: Stage) -> Self {
        WignerError::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The stage annotation, if any.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            WignerError::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// The innermost error with stage annotations stripped.
    pub fn root(&self) -> &WignerError {
        match self {
            WignerError::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = WignerError> = std::result::Result<T, E>;
