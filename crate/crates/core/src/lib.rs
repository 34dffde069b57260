//! Reconstruction of quantum symmetry operators from ray mappings.
//!
//! Given a black-box map between the rays of `C^n` that preserves
//! orthogonality, [`reconstruct`] rebuilds a matrix `U` and decides whether the
//! map is induced by `x -> U x` (unitary) or `x -> U conj(x)` (antiunitary).
//! When the map also preserves the ray function (transition probability) the
//! result agrees with the generating operator up to one global phase;
//! otherwise the result is flagged diagnostic-only and carries the measured
//! coordinate scales.
//!
//! The numerics are generic over [`Real`] (`f32`, `f64`); the aliases below
//! fix the scalar to `f64`, which is what the default tolerances target.

// Threshold checks are written `!(x <= tol)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conformance;
pub mod error;
pub mod linalg;
pub mod ray;
pub mod ray_map;
pub mod reconstruct;
pub mod scalar;

pub use conformance::{
    automorphism_sample_grid, check_ray_function_invariance, check_round_trip, run_conformance,
    run_full_conformance, CheckEntry, ConformanceConfig, ConformanceReport,
};
pub use error::{Result, Stage, WignerError};
pub use linalg::ComplexMatrix;
pub use ray::{
    canonical_ray, is_orthogonal, random_state, ray_function, Ray, StateVector, Tolerances,
};
pub use ray_map::{
    check_orthogonality_preservation, general_induced_map, induced_map, FnOracle, MatrixOracle,
    PreservationReport, RayMapOracle, SymmetryOperator,
};
pub use reconstruct::{
    apply_symmetry, classify_automorphism, fix_phases, gauge_residual, map_basis,
    probe_automorphism, reconstruct, reconstruct_with, slice_coordinates, slice_map,
    verify_reproduction, AutomorphismKind, BasisImages, ProbeTable, ReconstructOptions,
    ReconstructionResult,
};
pub use scalar::{ComplexScalar, Real};

pub type Complex64 = ComplexScalar<f64>;
pub type StateVector64 = StateVector<f64>;
pub type Ray64 = Ray<f64>;
pub type Tolerances64 = Tolerances<f64>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type SymmetryOperator64 = SymmetryOperator<f64>;
pub type MatrixOracle64 = MatrixOracle<f64>;
pub type ReconstructionResult64 = ReconstructionResult<f64>;
pub type ConformanceReport64 = ConformanceReport<f64>;

pub type Complex32 = ComplexScalar<f32>;
pub type StateVector32 = StateVector<f32>;
pub type Ray32 = Ray<f32>;
pub type Tolerances32 = Tolerances<f32>;
pub type SymmetryOperator32 = SymmetryOperator<f32>;
