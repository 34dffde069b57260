//! Theorem-level checks bundled into a single report.
//!
//! Each entry of a [`ConformanceReport`] corresponds to one hypothesis or one
//! assertion about the reconstructed operator. Failures of the reconstruction
//! pipeline become failed entries (with the error text in `detail`) rather
//! than errors, so that a report is produced for invalid oracles too. Only
//! usage errors (bad dimensions or tolerances) are returned as `Err`.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, Stage, WignerError};
use crate::ray::{check_dims, ray_function, sample_ray, Tolerances};
use crate::ray_map::{
    check_orthogonality_preservation, induced_map, RayMapOracle, SymmetryOperator,
};
use crate::reconstruct::{
    gauge_residual, map_basis, probe_automorphism, reconstruct, verify_reproduction,
    AutomorphismKind, ReconstructionResult,
};
use crate::scalar::{ComplexScalar, Real};

pub const ORTHOGONALITY: &str = "hypothesis.orthogonality";
pub const RAY_FUNCTION: &str = "hypothesis.ray_function";
pub const COMPLETENESS: &str = "assertion_a.completeness";
pub const AUTOMORPHISM: &str = "assertion_b.automorphism";
pub const SCALES: &str = "assertion_c.scales";
pub const CLASSIFICATION: &str = "assertion_c.classification";
pub const ROUND_TRIP: &str = "assertion_c.round_trip";
pub const REPRODUCTION: &str = "assertion_d.reproduction";

#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry<T: Real> {
    pub name: &'static str,
    pub passed: bool,
    pub worst_residual: T,
    pub trials: usize,
    pub seed: u64,
    pub detail: Option<String>,
}

impl<T: Real> CheckEntry<T> {
    fn failed(name: &'static str, seed: u64, err: &WignerError) -> Self {
        Self {
            name,
            passed: false,
            worst_residual: T::infinity(),
            trials: 0,
            seed,
            detail: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformanceReport<T: Real> {
    pub entries: Vec<CheckEntry<T>>,
    pub overall: bool,
}

impl<T: Real> ConformanceReport<T> {
    fn from_entries(entries: Vec<CheckEntry<T>>) -> Self {
        let overall = entries.iter().all(|e| e.passed);
        Self { entries, overall }
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry<T>> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckEntry<T>> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformanceConfig<T: Real> {
    /// Random ray pairs for the two hypothesis checks.
    pub invariance_trials: usize,
    /// Random rays for the reproduction check.
    pub reproduction_trials: usize,
    /// Points at which the coordinate automorphism is probed.
    pub samples: Vec<ComplexScalar<T>>,
}

impl<T: Real> Default for ConformanceConfig<T> {
    fn default() -> Self {
        Self {
            invariance_trials: 200,
            reproduction_trials: 100,
            samples: automorphism_sample_grid(),
        }
    }
}

/// Twelve probe points: `0, 1, -1, i, 1+i` and seven fixed scattered points.
pub fn automorphism_sample_grid<T: Real>() -> Vec<ComplexScalar<T>> {
    [
        (0.0, 0.0),
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (1.0, 1.0),
        (0.5, -0.25),
        (-1.3, 0.7),
        (2.1, 1.9),
        (-0.8, -1.6),
        (0.3, 2.4),
        (1.7, -0.9),
        (-2.2, -0.4),
    ]
    .iter()
    .map(|&(re, im)| Complex::new(T::lit(re), T::lit(im)))
    .collect()
}

/// Largest `|u(σr, σs) - u(r, s)|` over random ray pairs; passes at `orth_tol`.
pub fn check_ray_function_invariance<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    trials: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<CheckEntry<T>> {
    let dim = oracle.dim_in();
    let trials = trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = T::zero();
    for _ in 0..trials {
        let r = sample_ray::<T, _>(dim, &mut rng);
        let s = sample_ray::<T, _>(dim, &mut rng);
        let before = ray_function(&r, &s)?;
        let after = ray_function(&oracle.image(&r)?, &oracle.image(&s)?)?;
        worst = worst.max((after - before).abs());
    }
    Ok(CheckEntry {
        name: RAY_FUNCTION,
        passed: worst <= tol.orth_tol,
        worst_residual: worst,
        trials,
        seed,
        detail: None,
    })
}

/// Compare a reconstruction against the operator that generated the oracle:
/// the kinds must agree and the gauge residual must be within `recon_tol`.
pub fn check_round_trip<T: Real>(
    true_op: &SymmetryOperator<T>,
    recon: &ReconstructionResult<T>,
    tol: &Tolerances<T>,
) -> Result<CheckEntry<T>> {
    check_dims(true_op.dim(), recon.operator.dim())?;
    let residual = gauge_residual(true_op, &recon.operator)?;
    let kind_matches = recon.kind.is_antiunitary() == true_op.is_antiunitary();
    Ok(CheckEntry {
        name: ROUND_TRIP,
        passed: kind_matches && residual <= tol.recon_tol,
        worst_residual: residual,
        trials: 1,
        seed: 0,
        detail: (!kind_matches).then(|| {
            format!(
                "expected {}, reconstructed {}",
                if true_op.is_antiunitary() {
                    "antiunitary"
                } else {
                    "unitary"
                },
                recon.kind.name()
            )
        }),
    })
}

/// Induce the oracle of `true_op` and run every check, including the
/// round-trip comparison against `true_op`.
pub fn run_full_conformance<T: Real>(
    true_op: &SymmetryOperator<T>,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<ConformanceReport<T>> {
    let oracle = induced_map(true_op)?;
    run_conformance(
        &oracle,
        Some(true_op),
        seed,
        tol,
        &ConformanceConfig::default(),
    )
}

/// Run all checks against an arbitrary oracle. With `reference` the
/// classification entry is the round-trip comparison; without it, the
/// classification residual of the reconstruction is reported instead.
pub fn run_conformance<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    reference: Option<&SymmetryOperator<T>>,
    seed: u64,
    tol: &Tolerances<T>,
    config: &ConformanceConfig<T>,
) -> Result<ConformanceReport<T>> {
    tol.validate()?;
    let dim = oracle.dim_in();
    if dim < 2 {
        return Err(WignerError::DimensionTooSmall { dim, min: 2 });
    }
    check_dims(dim, oracle.dim_out())?;
    if let Some(op) = reference {
        check_dims(dim, op.dim())?;
    }

    let mut entries = Vec::with_capacity(7);

    let preservation =
        check_orthogonality_preservation(oracle, config.invariance_trials, seed, tol)?;
    entries.push(CheckEntry {
        name: ORTHOGONALITY,
        passed: preservation.max_orth_violation <= tol.orth_tol,
        worst_residual: preservation.max_orth_violation,
        trials: preservation.trials,
        seed,
        detail: None,
    });
    entries.push(check_ray_function_invariance(
        oracle,
        config.invariance_trials,
        seed,
        tol,
    )?);

    entries.push(match map_basis(oracle, dim, tol) {
        Ok(basis) => CheckEntry {
            name: COMPLETENESS,
            passed: true,
            worst_residual: basis.gram_deviation(),
            trials: dim,
            seed,
            detail: None,
        },
        Err(e) => CheckEntry::failed(COMPLETENESS, seed, &e.at(Stage::MapBasis)),
    });

    let recon = match reconstruct(oracle, dim, tol) {
        Ok(r) => r,
        Err(e) => {
            for name in [AUTOMORPHISM, SCALES, CLASSIFICATION, REPRODUCTION] {
                entries.push(CheckEntry::failed(name, seed, &e));
            }
            return Ok(ConformanceReport::from_entries(entries));
        }
    };

    entries.push(automorphism_entry(oracle, &recon, config, seed, tol));

    entries.push(CheckEntry {
        name: SCALES,
        passed: recon.unitary_valid,
        worst_residual: recon.max_scale_deviation,
        trials: dim,
        seed,
        detail: recon
            .is_diagnostic_only()
            .then(|| "scales differ from 1: diagnostic-only reconstruction".to_string()),
    });

    entries.push(match reference {
        Some(op) => CheckEntry {
            seed,
            ..check_round_trip(op, &recon, tol)?
        },
        None => CheckEntry {
            name: CLASSIFICATION,
            passed: recon.classification_residual <= tol.recon_tol,
            worst_residual: recon.classification_residual,
            trials: 1,
            seed,
            detail: Some(recon.kind.name().to_string()),
        },
    });

    entries.push(
        match verify_reproduction(&recon.operator, oracle, config.reproduction_trials, seed) {
            Ok(d) => CheckEntry {
                name: REPRODUCTION,
                passed: d <= tol.recon_tol,
                worst_residual: d,
                trials: config.reproduction_trials,
                seed,
                detail: None,
            },
            Err(e) => CheckEntry::failed(REPRODUCTION, seed, &e.at(Stage::Verify)),
        },
    );

    Ok(ConformanceReport::from_entries(entries))
}

/// Additivity, multiplicativity and pointwise agreement with the classified
/// automorphism, over every non-distinguished index. Passes at `phase_tol`.
fn automorphism_entry<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    recon: &ReconstructionResult<T>,
    config: &ConformanceConfig<T>,
    seed: u64,
    tol: &Tolerances<T>,
) -> CheckEntry<T> {
    let mut worst = T::zero();
    let mut trials = 0;
    for index in 1..recon.basis.dim() {
        match probe_automorphism(
            oracle,
            &recon.basis,
            &recon.scales,
            &config.samples,
            index,
            tol,
        ) {
            Ok(table) => {
                worst = worst
                    .max(table.max_residual())
                    .max(table.deviation_from(recon.kind));
                trials += table.pairs;
            }
            Err(e) => return CheckEntry::failed(AUTOMORPHISM, seed, &e.at(Stage::Probe)),
        }
    }
    CheckEntry {
        name: AUTOMORPHISM,
        passed: worst <= tol.phase_tol,
        worst_residual: worst,
        trials,
        seed,
        detail: Some(recon.kind.name().to_string()),
    }
}

/// Convenience for callers that only need to know which automorphism a
/// report's reconstruction found.
pub fn kind_of<T: Real>(report: &ConformanceReport<T>) -> Option<AutomorphismKind> {
    report
        .entry(AUTOMORPHISM)
        .and_then(|e| e.detail.as_deref())
        .and_then(|d| match d {
            "identity-automorphism" => Some(AutomorphismKind::Identity),
            "conjugation-automorphism" => Some(AutomorphismKind::Conjugation),
            _ => None,
        })
}
