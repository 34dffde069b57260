//! Reconstruction of a symmetry operator from a ray-map oracle.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`map_basis`]: image the coordinate axes and check that the images form
//!    a complete orthonormal system.
//! 2. [`fix_phases`]: probe `ray(e_0 + e_i)` for every `i >= 1`. The slice
//!    coordinate of the image is `c_i = r_i w_i`; rotating column `i` by the
//!    unit phase `w_i` makes later probes read `r_i f(z)` with `r_i > 0`.
//! 3. [`classify_automorphism`]: one probe with `z = i` decides whether the
//!    coordinate automorphism `f` is the identity or complex conjugation.
//! 4. Assemble the operator from the phase-fixed columns.
//!
//! Index 0 is the distinguished index throughout (the slice is `x_0 = 1`).
//! All indices in this module are 0-based.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, Stage, WignerError};
use crate::linalg::{inner, ComplexMatrix};
use crate::ray::{
    canonicalize, check_dims, ray_function, sample_ray, Ray, StateVector, Tolerances,
};
use crate::ray_map::{RayMapOracle, SymmetryOperator};
use crate::scalar::{ComplexScalar, Real};

/// Index whose coordinate is fixed to 1 on the slice.
pub const DISTINGUISHED_INDEX: usize = 0;

/// Images of the coordinate axes.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisImages<T: Real> {
    columns: Vec<StateVector<T>>,
    raw_reps: Vec<StateVector<T>>,
}

impl<T: Real> BasisImages<T> {
    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// Current (possibly phase-fixed) images of the basis vectors.
    pub fn columns(&self) -> &[StateVector<T>] {
        &self.columns
    }

    /// Canonical representatives of the axis images, before phase fixing.
    pub fn raw_reps(&self) -> &[StateVector<T>] {
        &self.raw_reps
    }

    /// Coefficients `b_j = <column_j, w>` of `w` in the image basis.
    pub fn expand(&self, w: &[ComplexScalar<T>]) -> Result<Vec<ComplexScalar<T>>> {
        check_dims(self.dim(), w.len())?;
        Ok(self
            .columns
            .iter()
            .map(|col| inner(col.components(), w))
            .collect())
    }

    /// `max |<c_i, c_j> - delta_ij|`.
    pub fn gram_deviation(&self) -> T {
        let mut worst = T::zero();
        for (i, a) in self.columns.iter().enumerate() {
            for (j, b) in self.columns.iter().enumerate() {
                let g = inner(a.components(), b.components());
                let target = if i == j {
                    Complex::one()
                } else {
                    Complex::zero()
                };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    fn matrix(&self, scales: Option<&[T]>) -> ComplexMatrix<T> {
        let cols: Vec<Vec<Complex<T>>> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| match scales {
                Some(s) => c.scale(Complex::new(s[i], T::zero())).into_components(),
                None => c.components().to_vec(),
            })
            .collect();
        ComplexMatrix::from_columns(&cols).expect("columns share the dimension")
    }
}

/// The two continuous field automorphisms of the complex numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutomorphismKind {
    Identity,
    Conjugation,
}

impl AutomorphismKind {
    pub fn apply<T: Real>(self, z: ComplexScalar<T>) -> ComplexScalar<T> {
        match self {
            AutomorphismKind::Identity => z,
            AutomorphismKind::Conjugation => z.conj(),
        }
    }

    pub fn is_antiunitary(self) -> bool {
        self == AutomorphismKind::Conjugation
    }

    pub fn name(self) -> &'static str {
        match self {
            AutomorphismKind::Identity => "identity-automorphism",
            AutomorphismKind::Conjugation => "conjugation-automorphism",
        }
    }
}

/// One oracle probe: the ray `e_0 + input e_index` and its slice coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeEntry<T: Real> {
    pub index: usize,
    pub input: ComplexScalar<T>,
    pub coordinate: ComplexScalar<T>,
}

/// Outcome of the optional check that all coordinate functions agree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossConsistency<T: Real> {
    NotRequested,
    /// Dimension 2 has a single coordinate function; nothing to compare.
    NotApplicable,
    Checked {
        max_residual: T,
        passed: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult<T: Real> {
    /// Columns `u_i` when unitary-valid, `r_i u_i` otherwise.
    pub operator: SymmetryOperator<T>,
    /// Phase-fixed basis images.
    pub basis: BasisImages<T>,
    /// `r_0 = 1`, `r_i = |c_i|`.
    pub scales: Vec<T>,
    pub kind: AutomorphismKind,
    pub probe_log: Vec<ProbeEntry<T>>,
    /// `max |r_i - 1|`.
    pub max_scale_deviation: T,
    /// Distance of the probed `f(i)` from `i` (identity) or `-i` (conjugation).
    pub classification_residual: T,
    /// Scales are 1 within `recon_tol`: the operator is unitary or
    /// antiunitary. Otherwise the result is diagnostic only.
    pub unitary_valid: bool,
    pub cross_consistency: CrossConsistency<T>,
}

impl<T: Real> ReconstructionResult<T> {
    pub fn is_diagnostic_only(&self) -> bool {
        !self.unitary_valid
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReconstructOptions {
    /// Spend extra probes confirming `f_i = f_j` for neighbouring indices.
    pub cross_consistency: bool,
}

fn require_dims<T: Real, O: RayMapOracle<T> + ?Sized>(oracle: &O, dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(WignerError::DimensionTooSmall { dim, min: 2 });
    }
    check_dims(dim, oracle.dim_in())?;
    check_dims(dim, oracle.dim_out())
}

/// Image every coordinate axis and check the images are orthonormal and complete.
pub fn map_basis<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    dim: usize,
    tol: &Tolerances<T>,
) -> Result<BasisImages<T>> {
    require_dims(oracle, dim)?;
    let images = (0..dim)
        .map(|i| {
            let img = oracle.image(&Ray::axis(dim, i))?;
            check_dims(dim, img.dim())?;
            Ok(img)
        })
        .collect::<Result<Vec<Ray<T>>>>()?;
    for i in 0..dim {
        for j in i + 1..dim {
            let u = ray_function(&images[i], &images[j])?;
            if u > tol.orth_tol {
                return Err(WignerError::ImagesNotOrthogonal {
                    i,
                    j,
                    u: u.as_f64(),
                });
            }
        }
    }
    let raw_reps: Vec<StateVector<T>> = images.into_iter().map(|r| r.rep().clone()).collect();
    let basis = BasisImages {
        columns: raw_reps.clone(),
        raw_reps,
    };
    let gram_deviation = basis.gram_deviation();
    let min_singular = basis
        .matrix(None)
        .singular_values()
        .last()
        .copied()
        .unwrap_or(T::zero());
    if !(gram_deviation <= tol.recon_tol) || !(min_singular > tol.orth_tol) {
        return Err(WignerError::IncompleteImage {
            gram_deviation: gram_deviation.as_f64(),
            min_singular: min_singular.as_f64(),
        });
    }
    Ok(basis)
}

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index == DISTINGUISHED_INDEX || index >= dim {
        Err(WignerError::InvalidIndex { index, dim })
    } else {
        Ok(())
    }
}

/// Coefficients of the oracle image of `ray(e_0 + sum tail_k e_k)`.
fn probe_coefficients<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    basis: &BasisImages<T>,
    tail: &[(usize, ComplexScalar<T>)],
) -> Result<(Vec<ComplexScalar<T>>, T)> {
    let dim = basis.dim();
    let mut x = vec![Complex::zero(); dim];
    x[DISTINGUISHED_INDEX] = Complex::one();
    for &(k, z) in tail {
        x[k] = z;
    }
    let w = oracle.image(&canonicalize(&x)?)?;
    let norm = w.rep().norm();
    Ok((basis.expand(w.components())?, norm))
}

/// The slice map: send the point `(1, y_1, .., y_{n-1})` to the point where
/// its image ray meets the target slice `x_0' = 1`. Returns the tail
/// coordinates of that point.
pub fn slice_map<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    basis: &BasisImages<T>,
    tail: &[ComplexScalar<T>],
    tol: &Tolerances<T>,
) -> Result<Vec<ComplexScalar<T>>> {
    check_dims(basis.dim() - 1, tail.len())?;
    let entries: Vec<_> = tail.iter().enumerate().map(|(k, z)| (k + 1, *z)).collect();
    let (b, _) = probe_coefficients(oracle, basis, &entries)?;
    let b0 = b[DISTINGUISHED_INDEX];
    if !(b0.norm() > tol.orth_tol) {
        return Err(WignerError::SliceDegenerate {
            index: DISTINGUISHED_INDEX,
            b1: b0.norm().as_f64(),
        });
    }
    Ok(b[1..].iter().map(|bj| bj / b0).collect())
}

/// Slice coordinate `i` of the image of `ray(e_0 + z e_i)`.
///
/// The image must lie in the span of columns 0 and `i`; any other
/// coefficient above `orth_tol` is reported as [`WignerError::CrossTalk`].
pub fn slice_coordinates<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    basis: &BasisImages<T>,
    z: ComplexScalar<T>,
    index: usize,
    tol: &Tolerances<T>,
) -> Result<ComplexScalar<T>> {
    check_index(index, basis.dim())?;
    let (b, norm) = probe_coefficients(oracle, basis, &[(index, z)])?;
    let b0 = b[DISTINGUISHED_INDEX];
    if !(b0.norm() > tol.orth_tol) {
        return Err(WignerError::SliceDegenerate {
            index,
            b1: b0.norm().as_f64(),
        });
    }
    for (leak, bj) in b.iter().enumerate() {
        if leak != DISTINGUISHED_INDEX && leak != index && bj.norm() > tol.orth_tol * norm {
            return Err(WignerError::CrossTalk {
                index,
                leak,
                magnitude: bj.norm().as_f64(),
            });
        }
    }
    Ok(b[index] / b0)
}

/// Phase-fixed basis together with the scales and the probes that fixed them.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPhases<T: Real> {
    pub basis: BasisImages<T>,
    pub scales: Vec<T>,
    pub probes: Vec<ProbeEntry<T>>,
}

/// Probe `ray(e_0 + e_i)` for each `i >= 1`, split `c_i = r_i w_i` and rotate
/// column `i` by `w_i`, so that the re-probed coordinate becomes `r_i`.
pub fn fix_phases<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    basis: &BasisImages<T>,
    tol: &Tolerances<T>,
) -> Result<FixedPhases<T>> {
    let dim = basis.dim();
    let one = Complex::one();
    let mut fixed = basis.clone();
    let mut scales = Vec::with_capacity(dim);
    scales.push(T::one());
    let mut probes = Vec::with_capacity(dim - 1);
    for i in 1..dim {
        let c = slice_coordinates(oracle, basis, one, i, tol)?;
        let r = c.norm();
        if !(r > tol.orth_tol) {
            return Err(WignerError::DegenerateProbe {
                index: i,
                modulus: r.as_f64(),
            });
        }
        let w = c / r;
        fixed.columns[i] = basis.columns[i].scale(w);
        scales.push(r);
        probes.push(ProbeEntry {
            index: i,
            input: one,
            coordinate: c,
        });
    }
    Ok(FixedPhases {
        basis: fixed,
        scales,
        probes,
    })
}

/// Re-probe `ray(e_0 + e_i)` against a phase-fixed basis and return the
/// largest `|coordinate - r_i|`. Costs `n - 1` extra oracle calls.
pub fn verify_phases<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    fixed: &BasisImages<T>,
    scales: &[T],
    tol: &Tolerances<T>,
) -> Result<T> {
    check_dims(fixed.dim(), scales.len())?;
    let mut worst = T::zero();
    for (i, &r) in scales.iter().enumerate().skip(1) {
        let c = slice_coordinates(oracle, fixed, Complex::one(), i, tol)?;
        worst = worst.max((c - Complex::new(r, T::zero())).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification<T: Real> {
    pub kind: AutomorphismKind,
    /// Probed `f(i) = c / r_1`.
    pub f_value: ComplexScalar<T>,
    pub residual: T,
    pub probe: ProbeEntry<T>,
}

/// Probe `z = i` on index 1 and decide between identity and conjugation.
pub fn classify_automorphism<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    fixed: &BasisImages<T>,
    scales: &[T],
    tol: &Tolerances<T>,
) -> Result<Classification<T>> {
    check_dims(fixed.dim(), scales.len())?;
    let index = 1;
    let i = Complex::i();
    let c = slice_coordinates(oracle, fixed, i, index, tol)?;
    let f_value = c / scales[index];
    let to_identity = (f_value - i).norm();
    let to_conjugation = (f_value + i).norm();
    let (kind, residual) = if to_identity <= to_conjugation {
        (AutomorphismKind::Identity, to_identity)
    } else {
        (AutomorphismKind::Conjugation, to_conjugation)
    };
    if !(residual <= tol.recon_tol) {
        return Err(WignerError::NotWignerLike {
            re: f_value.re.as_f64(),
            im: f_value.im.as_f64(),
            residual: residual.as_f64(),
        });
    }
    Ok(Classification {
        kind,
        f_value,
        residual,
        probe: ProbeEntry {
            index,
            input: i,
            coordinate: c,
        },
    })
}

/// Pointwise values of the coordinate function `f_i` and the residuals of
/// its additivity and multiplicativity over all sample pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeTable<T: Real> {
    pub index: usize,
    /// `(z, f(z))`.
    pub rows: Vec<(ComplexScalar<T>, ComplexScalar<T>)>,
    /// `max |f(a + b) - f(a) - f(b)|`.
    pub max_additivity: T,
    /// `max |f(ab) - f(a) f(b)|`.
    pub max_multiplicativity: T,
    pub pairs: usize,
}

impl<T: Real> ProbeTable<T> {
    /// `max |f(z) - kind(z)|` over the sampled points.
    pub fn deviation_from(&self, kind: AutomorphismKind) -> T {
        self.rows.iter().fold(T::zero(), |acc, (z, fz)| {
            acc.max((*fz - kind.apply(*z)).norm())
        })
    }

    pub fn max_residual(&self) -> T {
        self.max_additivity.max(self.max_multiplicativity)
    }
}

/// Probe the coordinate function on index `index` at every sample and at the
/// sums and products of every unordered sample pair.
pub fn probe_automorphism<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    fixed: &BasisImages<T>,
    scales: &[T],
    samples: &[ComplexScalar<T>],
    index: usize,
    tol: &Tolerances<T>,
) -> Result<ProbeTable<T>> {
    check_dims(fixed.dim(), scales.len())?;
    check_index(index, fixed.dim())?;
    let r = scales[index];
    let f = |z: ComplexScalar<T>| -> Result<ComplexScalar<T>> {
        Ok(slice_coordinates(oracle, fixed, z, index, tol)? / r)
    };
    let values = samples.iter().map(|&z| f(z)).collect::<Result<Vec<_>>>()?;
    let mut max_additivity = T::zero();
    let mut max_multiplicativity = T::zero();
    let mut pairs = 0;
    for a in 0..samples.len() {
        for b in a..samples.len() {
            let (za, zb) = (samples[a], samples[b]);
            let sum = f(za + zb)?;
            let product = f(za * zb)?;
            max_additivity = max_additivity.max((sum - values[a] - values[b]).norm());
            max_multiplicativity =
                max_multiplicativity.max((product - values[a] * values[b]).norm());
            pairs += 1;
        }
    }
    Ok(ProbeTable {
        index,
        rows: samples.iter().copied().zip(values).collect(),
        max_additivity,
        max_multiplicativity,
        pairs,
    })
}

/// Fixed sample points used for cross-consistency probes.
fn cross_samples<T: Real>() -> Vec<ComplexScalar<T>> {
    [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-0.5, 2.0)]
        .iter()
        .map(|&(re, im)| Complex::new(T::lit(re), T::lit(im)))
        .collect()
}

/// Probe `ray(e_0 + z e_i + z e_{i+1})` and compare the two rescaled slice
/// coordinates; they agree when every index shares one coordinate function.
/// Returns the largest disagreement. Requires `dim >= 3`.
pub fn check_cross_consistency<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    fixed: &BasisImages<T>,
    scales: &[T],
    tol: &Tolerances<T>,
) -> Result<T> {
    let dim = fixed.dim();
    check_dims(dim, scales.len())?;
    if dim < 3 {
        return Err(WignerError::DimensionTooSmall { dim, min: 3 });
    }
    let mut worst = T::zero();
    for i in 1..dim - 1 {
        for z in cross_samples::<T>() {
            let mut tail = vec![Complex::zero(); dim - 1];
            tail[i - 1] = z;
            tail[i] = z;
            let y = slice_map(oracle, fixed, &tail, tol)?;
            let fi = y[i - 1] / scales[i];
            let fj = y[i] / scales[i + 1];
            worst = worst.max((fi - fj).norm());
        }
    }
    Ok(worst)
}

/// Run the full pipeline with default options.
pub fn reconstruct<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    dim: usize,
    tol: &Tolerances<T>,
) -> Result<ReconstructionResult<T>> {
    reconstruct_with(oracle, dim, tol, &ReconstructOptions::default())
}

/// Run the pipeline. Uses exactly `2n` oracle calls, plus
/// `4 (n - 2)` when cross-consistency is requested.
pub fn reconstruct_with<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    dim: usize,
    tol: &Tolerances<T>,
    options: &ReconstructOptions,
) -> Result<ReconstructionResult<T>> {
    tol.validate()?;
    let basis = map_basis(oracle, dim, tol).map_err(|e| e.at(Stage::MapBasis))?;
    let FixedPhases {
        basis,
        scales,
        mut probes,
    } = fix_phases(oracle, &basis, tol).map_err(|e| e.at(Stage::FixPhases))?;
    let classification =
        classify_automorphism(oracle, &basis, &scales, tol).map_err(|e| e.at(Stage::Classify))?;
    probes.push(classification.probe);

    let cross_consistency = if !options.cross_consistency {
        CrossConsistency::NotRequested
    } else if dim < 3 {
        CrossConsistency::NotApplicable
    } else {
        let max_residual = check_cross_consistency(oracle, &basis, &scales, tol)
            .map_err(|e| e.at(Stage::CrossConsistency))?;
        CrossConsistency::Checked {
            max_residual,
            passed: max_residual <= tol.recon_tol,
        }
    };

    let max_scale_deviation = scales
        .iter()
        .fold(T::zero(), |acc, r| acc.max((*r - T::one()).abs()));
    let unitary_valid = max_scale_deviation <= tol.recon_tol;
    let matrix = if unitary_valid {
        basis.matrix(None)
    } else {
        basis.matrix(Some(&scales))
    };
    let operator = SymmetryOperator::new(matrix, classification.kind.is_antiunitary())?;
    Ok(ReconstructionResult {
        operator,
        basis,
        scales,
        kind: classification.kind,
        probe_log: probes,
        max_scale_deviation,
        classification_residual: classification.residual,
        unitary_valid,
        cross_consistency,
    })
}

/// `U x` or `U conj(x)`.
pub fn apply_symmetry<T: Real>(
    op: &SymmetryOperator<T>,
    x: &StateVector<T>,
) -> Result<StateVector<T>> {
    op.apply(x)
}

/// Largest `1 - u(ray(op x), oracle(ray(x)))` over random rays.
pub fn verify_reproduction<T: Real, O: RayMapOracle<T> + ?Sized>(
    op: &SymmetryOperator<T>,
    oracle: &O,
    trials: usize,
    seed: u64,
) -> Result<T> {
    check_dims(op.dim(), oracle.dim_in())?;
    check_dims(op.dim(), oracle.dim_out())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = T::zero();
    for _ in 0..trials {
        let s = sample_ray::<T, _>(op.dim(), &mut rng);
        let expected = oracle.image(&s)?;
        let d = match canonicalize(op.apply(s.rep())?.components()) {
            Ok(ray) => T::one() - ray_function(&ray, &expected)?,
            Err(_) => T::one(),
        };
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Distance of `V = recon^H true` from `e^{i theta} I`, with `theta` the
/// phase of the largest-modulus diagonal entry of `V`.
pub fn gauge_residual<T: Real>(
    true_op: &SymmetryOperator<T>,
    recon: &SymmetryOperator<T>,
) -> Result<T> {
    check_dims(true_op.dim(), recon.dim())?;
    let v = recon.matrix().adjoint().matmul(true_op.matrix())?;
    let n = v.nrows();
    let k = (0..n)
        .max_by(|&a, &b| {
            v[(a, a)]
                .norm()
                .partial_cmp(&v[(b, b)].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("dimension >= 1");
    let d = v[(k, k)];
    let phase = if d.norm() > T::zero() {
        d / d.norm()
    } else {
        Complex::one()
    };
    Ok(v.max_abs_diff(&ComplexMatrix::identity(n).scale(phase)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ray_map::{general_induced_map, induced_map, FnOracle, MatrixOracle};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn oracle(op: &SymmetryOperator<f64>) -> MatrixOracle<f64> {
        induced_map(op).unwrap()
    }

    fn diag121() -> MatrixOracle<f64> {
        general_induced_map(
            ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]),
            false,
        )
        .unwrap()
    }

    fn swap_op() -> SymmetryOperator<f64> {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        SymmetryOperator::new(m, false).unwrap()
    }

    #[test]
    fn map_basis_identity_and_swap() {
        let basis = map_basis(&oracle(&SymmetryOperator::identity(3, false)), 3, &tol()).unwrap();
        for i in 0..3 {
            assert_eq!(basis.raw_reps()[i], StateVector::basis(3, i));
        }
        assert_eq!(basis.columns(), basis.raw_reps());

        let basis = map_basis(&oracle(&swap_op()), 2, &tol()).unwrap();
        assert_eq!(basis.raw_reps()[0], StateVector::basis(2, 1));
        assert_eq!(basis.raw_reps()[1], StateVector::basis(2, 0));
    }

    #[test]
    fn map_basis_diagonal_keeps_axes() {
        let basis = map_basis(&diag121(), 3, &tol()).unwrap();
        for i in 0..3 {
            assert_eq!(basis.raw_reps()[i], StateVector::basis(3, i));
        }
    }

    #[test]
    fn map_basis_rejects_sheared_axes() {
        // shear sends e_1 to e_0 + e_1, which overlaps the image of e_0
        let shear = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let err = map_basis(&general_induced_map(shear, false).unwrap(), 2, &tol()).unwrap_err();
        match err {
            WignerError::ImagesNotOrthogonal { i: 0, j: 1, u } => assert!((u - 0.2).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn map_basis_rejects_small_or_mismatched_dims() {
        let o = oracle(&SymmetryOperator::identity(1, false));
        assert!(matches!(
            map_basis(&o, 1, &tol()),
            Err(WignerError::DimensionTooSmall { dim: 1, min: 2 })
        ));
        let o = oracle(&SymmetryOperator::identity(3, false));
        assert!(matches!(
            map_basis(&o, 2, &tol()),
            Err(WignerError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn slice_coordinate_examples() {
        let id = oracle(&SymmetryOperator::identity(3, false));
        let basis = map_basis(&id, 3, &tol()).unwrap();
        for i in 1..3 {
            let y = slice_coordinates(&id, &basis, c(0.7, 0.0), i, &tol()).unwrap();
            assert!((y - c(0.7, 0.0)).norm() < 1e-15);
        }

        let conj = oracle(&SymmetryOperator::identity(2, true));
        let basis = map_basis(&conj, 2, &tol()).unwrap();
        let y = slice_coordinates(&conj, &basis, c(0.0, 1.0), 1, &tol()).unwrap();
        assert!((y - c(0.0, -1.0)).norm() < 1e-15);

        let d = diag121();
        let basis = map_basis(&d, 3, &tol()).unwrap();
        let y = slice_coordinates(&d, &basis, c(1.0, 0.0), 1, &tol()).unwrap();
        assert!((y - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn slice_coordinates_rejects_distinguished_index() {
        let id = oracle(&SymmetryOperator::identity(3, false));
        let basis = map_basis(&id, 3, &tol()).unwrap();
        assert!(matches!(
            slice_coordinates(&id, &basis, c(1.0, 0.0), 0, &tol()),
            Err(WignerError::InvalidIndex { .. })
        ));
        assert!(slice_coordinates(&id, &basis, c(1.0, 0.0), 3, &tol()).is_err());
    }

    #[test]
    fn slice_coordinates_detects_degenerate_image() {
        // axes map to themselves, but every other ray goes to the axis e_1
        let o = FnOracle::new(2, 2, |r: &Ray<f64>| {
            if r.components()[0].norm() == 1.0 || r.components()[1].norm() == 1.0 {
                Ok(r.clone())
            } else {
                Ok(Ray::axis(2, 1))
            }
        });
        let basis = map_basis(&o, 2, &tol()).unwrap();
        assert!(matches!(
            slice_coordinates(&o, &basis, c(1.0, 0.0), 1, &tol()),
            Err(WignerError::SliceDegenerate { index: 1, .. })
        ));
    }

    #[test]
    fn slice_coordinates_detects_cross_talk() {
        // probe rays leak into the third axis
        let o = FnOracle::new(3, 3, |r: &Ray<f64>| {
            let x = r.components();
            let is_axis = x.iter().filter(|z| z.norm() > 0.0).count() == 1;
            if is_axis {
                Ok(r.clone())
            } else {
                canonicalize(&[x[0], x[1], x[0] * 0.1 + x[2]])
            }
        });
        let basis = map_basis(&o, 3, &tol()).unwrap();
        assert!(matches!(
            slice_coordinates(&o, &basis, c(1.0, 0.0), 1, &tol()),
            Err(WignerError::CrossTalk {
                index: 1,
                leak: 2,
                ..
            })
        ));
    }

    #[test]
    fn fix_phases_examples() {
        let id = oracle(&SymmetryOperator::identity(3, false));
        let basis = map_basis(&id, 3, &tol()).unwrap();
        let fixed = fix_phases(&id, &basis, &tol()).unwrap();
        assert_eq!(fixed.scales, vec![1.0, 1.0, 1.0]);
        assert_eq!(fixed.basis.columns(), basis.columns());

        let w = Complex::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let op =
            SymmetryOperator::new(ComplexMatrix::from_diagonal(&[c(1.0, 0.0), w]), false).unwrap();
        let o = oracle(&op);
        let basis = map_basis(&o, 2, &tol()).unwrap();
        let fixed = fix_phases(&o, &basis, &tol()).unwrap();
        assert!((fixed.scales[1] - 1.0).abs() < 1e-15);
        let re = slice_coordinates(&o, &fixed.basis, c(1.0, 0.0), 1, &tol()).unwrap();
        assert!(re.im.abs() <= tol().phase_tol && re.re > 0.0);
        assert!(verify_phases(&o, &fixed.basis, &fixed.scales, &tol()).unwrap() < 1e-15);

        let d = diag121();
        let basis = map_basis(&d, 3, &tol()).unwrap();
        let fixed = fix_phases(&d, &basis, &tol()).unwrap();
        assert!((fixed.scales[1] - 2.0).abs() < 1e-15);
        assert!((fixed.scales[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fix_phases_detects_degenerate_probe() {
        // e_0 + e_1 is sent to e_0, so c_1 = 0
        let o = FnOracle::new(2, 2, |r: &Ray<f64>| {
            let x = r.components();
            if x[0].norm() > 0.0 && x[1].norm() > 0.0 && (x[0] - x[1]).norm() < 1e-12 {
                Ok(Ray::axis(2, 0))
            } else {
                Ok(r.clone())
            }
        });
        let basis = map_basis(&o, 2, &tol()).unwrap();
        assert!(matches!(
            fix_phases(&o, &basis, &tol()),
            Err(WignerError::DegenerateProbe { index: 1, .. })
        ));
    }

    #[test]
    fn classify_examples() {
        for (op, kind) in [
            (
                SymmetryOperator::identity(3, false),
                AutomorphismKind::Identity,
            ),
            (
                SymmetryOperator::identity(3, true),
                AutomorphismKind::Conjugation,
            ),
            (
                SymmetryOperator::haar_random(5, true, 4),
                AutomorphismKind::Conjugation,
            ),
            (
                SymmetryOperator::haar_random(5, false, 4),
                AutomorphismKind::Identity,
            ),
        ] {
            let o = oracle(&op);
            let basis = map_basis(&o, op.dim(), &tol()).unwrap();
            let fixed = fix_phases(&o, &basis, &tol()).unwrap();
            let cls = classify_automorphism(&o, &fixed.basis, &fixed.scales, &tol()).unwrap();
            assert_eq!(cls.kind, kind);
            assert!(cls.residual < 1e-12);
        }
    }

    #[test]
    fn classify_rejects_non_wigner_oracle() {
        // second coordinate replaced by its modulus: f(z) = |z| is no automorphism
        let o = FnOracle::new(2, 2, |r: &Ray<f64>| {
            let y = r.components();
            canonicalize(&[y[0], c(y[1].norm(), 0.0)])
        });
        let basis = map_basis(&o, 2, &tol()).unwrap();
        let fixed = fix_phases(&o, &basis, &tol()).unwrap();
        assert!(matches!(
            classify_automorphism(&o, &fixed.basis, &fixed.scales, &tol()),
            Err(WignerError::NotWignerLike { .. })
        ));
    }

    fn samples(values: &[(f64, f64)]) -> Vec<Complex<f64>> {
        values.iter().map(|&(re, im)| c(re, im)).collect()
    }

    #[test]
    fn probe_examples() {
        let id = oracle(&SymmetryOperator::identity(3, false));
        let basis = map_basis(&id, 3, &tol()).unwrap();
        let fixed = fix_phases(&id, &basis, &tol()).unwrap();
        let table = probe_automorphism(
            &id,
            &fixed.basis,
            &fixed.scales,
            &samples(&[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]),
            1,
            &tol(),
        )
        .unwrap();
        assert_eq!(table.pairs, 6);
        assert!(table.max_residual() <= 1e-12);
        assert!(table.deviation_from(AutomorphismKind::Identity) <= 1e-12);

        let conj = oracle(&SymmetryOperator::identity(2, true));
        let basis = map_basis(&conj, 2, &tol()).unwrap();
        let fixed = fix_phases(&conj, &basis, &tol()).unwrap();
        let table = probe_automorphism(
            &conj,
            &fixed.basis,
            &fixed.scales,
            &samples(&[(2.0, 0.0), (0.0, 1.0)]),
            1,
            &tol(),
        )
        .unwrap();
        assert!((table.rows[0].1 - c(2.0, 0.0)).norm() < 1e-15);
        assert!((table.rows[1].1 - c(0.0, -1.0)).norm() < 1e-15);
        let f2i = slice_coordinates(&conj, &fixed.basis, c(0.0, 2.0), 1, &tol()).unwrap();
        assert!((f2i - c(0.0, -2.0)).norm() < 1e-15);
        assert!(table.max_multiplicativity <= 1e-12);

        let d = diag121();
        let basis = map_basis(&d, 3, &tol()).unwrap();
        let fixed = fix_phases(&d, &basis, &tol()).unwrap();
        let table = probe_automorphism(
            &d,
            &fixed.basis,
            &fixed.scales,
            &samples(&[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-0.5, 2.0)]),
            1,
            &tol(),
        )
        .unwrap();
        assert!(table.deviation_from(AutomorphismKind::Identity) <= 1e-12);
        assert!(table.max_residual() <= 1e-12);
    }

    #[test]
    fn reconstruct_identity() {
        let r = reconstruct(&oracle(&SymmetryOperator::identity(3, false)), 3, &tol()).unwrap();
        assert_eq!(r.operator, SymmetryOperator::identity(3, false));
        assert_eq!(r.scales, vec![1.0; 3]);
        assert_eq!(r.kind, AutomorphismKind::Identity);
        assert!(r.unitary_valid);
        assert_eq!(r.probe_log.len(), 3);
        assert_eq!(r.cross_consistency, CrossConsistency::NotRequested);
    }

    #[test]
    fn reconstruct_swap_round_trips() {
        let op = swap_op();
        let o = oracle(&op);
        let r = reconstruct(&o, 2, &tol()).unwrap();
        assert_eq!(r.kind, AutomorphismKind::Identity);
        assert!(r.unitary_valid);
        assert!(gauge_residual(&op, &r.operator).unwrap() < 1e-15);
        assert!(verify_reproduction(&r.operator, &o, 50, 0).unwrap() < 1e-12);
    }

    #[test]
    fn reconstruct_antiunitary_identity() {
        let op = SymmetryOperator::identity(4, true);
        let r = reconstruct(&oracle(&op), 4, &tol()).unwrap();
        assert_eq!(r.kind, AutomorphismKind::Conjugation);
        assert!(r.operator.is_antiunitary());
        assert!(gauge_residual(&op, &r.operator).unwrap() < 1e-15);
    }

    #[test]
    fn reconstruct_diagonal_is_diagnostic_only() {
        let d = diag121();
        let r = reconstruct(&d, 3, &tol()).unwrap();
        assert!(r.is_diagnostic_only());
        assert!((r.max_scale_deviation - 1.0).abs() < 1e-15);
        // scaled columns still reproduce the ray map
        assert!(verify_reproduction(&r.operator, &d, 50, 1).unwrap() < 1e-12);
    }

    #[test]
    fn reconstruct_errors_carry_stage() {
        let shear = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let err = reconstruct(&general_induced_map(shear, false).unwrap(), 2, &tol()).unwrap_err();
        assert_eq!(err.stage(), Some(Stage::MapBasis));
        assert!(matches!(
            err.root(),
            WignerError::ImagesNotOrthogonal { .. }
        ));
    }

    #[test]
    fn cross_consistency_option() {
        let opts = ReconstructOptions {
            cross_consistency: true,
        };
        let op = SymmetryOperator::haar_random(4, true, 2);
        let r = reconstruct_with(&oracle(&op), 4, &tol(), &opts).unwrap();
        match r.cross_consistency {
            CrossConsistency::Checked {
                max_residual,
                passed,
            } => {
                assert!(passed);
                assert!(max_residual < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let op = SymmetryOperator::haar_random(2, false, 2);
        let r = reconstruct_with(&oracle(&op), 2, &tol(), &opts).unwrap();
        assert_eq!(r.cross_consistency, CrossConsistency::NotApplicable);
    }

    #[test]
    fn apply_and_verify_examples() {
        let id = SymmetryOperator::<f64>::identity(2, false);
        assert_eq!(verify_reproduction(&id, &oracle(&id), 100, 3).unwrap(), 0.0);
        let swap = swap_op();
        let d = verify_reproduction(&id, &oracle(&swap), 100, 3).unwrap();
        assert!(d > 0.5, "d = {d}");
        let x = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(apply_symmetry(&swap, &x).unwrap(), StateVector::basis(2, 1));
    }
}
