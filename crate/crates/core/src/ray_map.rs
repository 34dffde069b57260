//! Ray mappings as black-box oracles, and oracles induced by matrices.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, WignerError};
use crate::linalg::ComplexMatrix;
use crate::ray::{
    canonicalize, check_dims, ray_function, sample_orthogonal_ray, sample_ray, Ray, StateVector,
    Tolerances,
};
use crate::scalar::Real;

/// Invertible map from the rays of `C^dim_in` to the rays of `C^dim_out`.
///
/// Implementations receive and return canonical rays only, so no phase
/// information can leak through the interface. `image` must be deterministic
/// and safe to call concurrently.
pub trait RayMapOracle<T: Real>: Send + Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn image(&self, ray: &Ray<T>) -> Result<Ray<T>>;
}

impl<T: Real, O: RayMapOracle<T> + ?Sized> RayMapOracle<T> for &O {
    fn dim_in(&self) -> usize {
        (**self).dim_in()
    }
    fn dim_out(&self) -> usize {
        (**self).dim_out()
    }
    fn image(&self, ray: &Ray<T>) -> Result<Ray<T>> {
        (**self).image(ray)
    }
}

impl<T: Real, O: RayMapOracle<T> + ?Sized> RayMapOracle<T> for Box<O> {
    fn dim_in(&self) -> usize {
        (**self).dim_in()
    }
    fn dim_out(&self) -> usize {
        (**self).dim_out()
    }
    fn image(&self, ray: &Ray<T>) -> Result<Ray<T>> {
        (**self).image(ray)
    }
}

/// Square matrix with an antiunitary flag, acting as `x -> U x` or
/// `x -> U conj(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryOperator<T: Real> {
    matrix: ComplexMatrix<T>,
    antiunitary: bool,
}

impl<T: Real> SymmetryOperator<T> {
    /// Wrap a square matrix. No unitarity requirement; see [`Self::unitary`].
    pub fn new(matrix: ComplexMatrix<T>, antiunitary: bool) -> Result<Self> {
        if !matrix.is_square() {
            return Err(WignerError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(WignerError::DimensionTooSmall { dim: 0, min: 1 });
        }
        Ok(Self {
            matrix,
            antiunitary,
        })
    }

    /// Like [`Self::new`] but rejects matrices with `max |U^H U - I| > max_deviation`.
    pub fn unitary(matrix: ComplexMatrix<T>, antiunitary: bool, max_deviation: T) -> Result<Self> {
        let op = Self::new(matrix, antiunitary)?;
        let deviation = op.unitarity_deviation();
        if !(deviation <= max_deviation) {
            return Err(WignerError::NotUnitary {
                deviation: deviation.as_f64(),
            });
        }
        Ok(op)
    }

    pub fn identity(dim: usize, antiunitary: bool) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
            antiunitary,
        }
    }

    /// Haar-random unitary, deterministic in `seed`.
    pub fn haar_random(dim: usize, antiunitary: bool, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self {
            matrix: ComplexMatrix::haar_unitary(dim, &mut rng),
            antiunitary,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn is_antiunitary(&self) -> bool {
        self.antiunitary
    }

    pub fn unitarity_deviation(&self) -> T {
        self.matrix.unitarity_deviation()
    }

    /// `U x` or `U conj(x)`.
    pub fn apply(&self, x: &StateVector<T>) -> Result<StateVector<T>> {
        check_dims(self.dim(), x.dim())?;
        let y = if self.antiunitary {
            self.matrix.mul_vec(x.conj().components())?
        } else {
            self.matrix.mul_vec(x.components())?
        };
        Ok(StateVector::from_vec_unchecked(y))
    }
}

/// Oracle induced by an invertible matrix: `ray(x) -> ray(A x)` or
/// `ray(A conj(x))`.
#[derive(Debug, Clone)]
pub struct MatrixOracle<T: Real> {
    matrix: ComplexMatrix<T>,
    conjugate_first: bool,
}

impl<T: Real> MatrixOracle<T> {
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn conjugate_first(&self) -> bool {
        self.conjugate_first
    }
}

impl<T: Real> RayMapOracle<T> for MatrixOracle<T> {
    fn dim_in(&self) -> usize {
        self.matrix.ncols()
    }

    fn dim_out(&self) -> usize {
        self.matrix.nrows()
    }

    fn image(&self, ray: &Ray<T>) -> Result<Ray<T>> {
        check_dims(self.dim_in(), ray.dim())?;
        let y = if self.conjugate_first {
            let x: Vec<Complex<T>> = ray.components().iter().map(|z| z.conj()).collect();
            self.matrix.mul_vec(&x)?
        } else {
            self.matrix.mul_vec(ray.components())?
        };
        canonicalize(&y)
    }
}

/// Oracle backed by a closure, for hand-built (possibly invalid) ray maps.
pub struct FnOracle<F> {
    dim_in: usize,
    dim_out: usize,
    map: F,
}

impl<F> FnOracle<F> {
    pub fn new(dim_in: usize, dim_out: usize, map: F) -> Self {
        Self {
            dim_in,
            dim_out,
            map,
        }
    }
}

impl<T, F> RayMapOracle<T> for FnOracle<F>
where
    T: Real,
    F: Fn(&Ray<T>) -> Result<Ray<T>> + Send + Sync,
{
    fn dim_in(&self) -> usize {
        self.dim_in
    }
    fn dim_out(&self) -> usize {
        self.dim_out
    }
    fn image(&self, ray: &Ray<T>) -> Result<Ray<T>> {
        check_dims(self.dim_in, ray.dim())?;
        (self.map)(ray)
    }
}

fn checked_oracle<T: Real>(
    matrix: ComplexMatrix<T>,
    conjugate_first: bool,
) -> Result<MatrixOracle<T>> {
    if !matrix.is_square() {
        return Err(WignerError::NotSquare {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    let condition = matrix.condition_number();
    if !(condition < T::max_condition()) {
        return Err(WignerError::SingularMatrix {
            condition: condition.as_f64(),
        });
    }
    Ok(MatrixOracle {
        matrix,
        conjugate_first,
    })
}

/// Ray map induced by a symmetry operator.
pub fn induced_map<T: Real>(op: &SymmetryOperator<T>) -> Result<MatrixOracle<T>> {
    checked_oracle(op.matrix.clone(), op.antiunitary)
}

/// Ray map induced by an arbitrary invertible matrix. The result carries no
/// preservation guarantee; it exists to exercise the diagnostic paths.
pub fn general_induced_map<T: Real>(
    matrix: ComplexMatrix<T>,
    conjugate_first: bool,
) -> Result<MatrixOracle<T>> {
    checked_oracle(matrix, conjugate_first)
}

/// Evidence for the hypotheses: orthogonality and ray-function preservation.
#[derive(Debug, Clone, PartialEq)]
pub struct PreservationReport<T: Real> {
    pub trials: usize,
    /// Largest ray function between images of orthogonal pairs.
    pub max_orth_violation: T,
    /// Largest `|u(σr, σs) - u(r, s)|` over generic pairs.
    pub max_u_violation: T,
    pub passed: bool,
}

/// Sample orthogonal and generic ray pairs and measure how well the oracle
/// preserves orthogonality and the ray function. Both violations are judged
/// against `tol.orth_tol`.
///
/// In dimension 1 there are no orthogonal pairs; the orthogonality part is
/// vacuous and reported as zero.
pub fn check_orthogonality_preservation<T: Real, O: RayMapOracle<T> + ?Sized>(
    oracle: &O,
    trials: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<PreservationReport<T>> {
    let dim = oracle.dim_in();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_orth = T::zero();
    let mut max_u = T::zero();
    for _ in 0..trials.max(1) {
        let r = sample_ray::<T, _>(dim, &mut rng);
        let (sr, s_img);
        if dim >= 2 {
            let s = sample_orthogonal_ray(&r, &mut rng);
            sr = oracle.image(&r)?;
            s_img = oracle.image(&s)?;
            max_orth = max_orth.max(ray_function(&sr, &s_img)?);
        } else {
            sr = oracle.image(&r)?;
        }
        let t = sample_ray::<T, _>(dim, &mut rng);
        let t_img = oracle.image(&t)?;
        let delta = (ray_function(&sr, &t_img)? - ray_function(&r, &t)?).abs();
        max_u = max_u.max(delta);
    }
    Ok(PreservationReport {
        trials: trials.max(1),
        max_orth_violation: max_orth,
        max_u_violation: max_u,
        passed: max_orth <= tol.orth_tol && max_u <= tol.orth_tol,
    })
}
