//! Vectors, rays and the ray function.
//!
//! A [`Ray`] is a one-dimensional subspace of `C^n`, stored as a canonical
//! unit representative: normalized, with the first component of modulus above
//! [`Real::phase_anchor_threshold`] rotated to be real and positive. Two rays
//! are equal exactly when their representatives agree componentwise.

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, WignerError};
use crate::linalg::{inner, norm, norm_sqr};
use crate::scalar::{is_finite, sample_complex_normal, ComplexScalar, Real};

/// Element of `C^n`, `n >= 1`, with finite components.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    components: Vec<ComplexScalar<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(components: Vec<ComplexScalar<T>>) -> Result<Self> {
        if components.is_empty() {
            return Err(WignerError::DimensionTooSmall { dim: 0, min: 1 });
        }
        if let Some(index) = components.iter().position(|z| !is_finite(*z)) {
            return Err(WignerError::NonFinite { index });
        }
        Ok(Self { components })
    }

    /// Real-valued components, for convenience in tests and fixtures.
    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&x| Complex::new(T::lit(x), T::zero()))
                .collect(),
        )
    }

    /// The `i`-th standard basis vector of `C^dim` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        let mut components = vec![Complex::zero(); dim];
        components[i] = Complex::new(T::one(), T::zero());
        Self { components }
    }

    pub(crate) fn from_vec_unchecked(components: Vec<ComplexScalar<T>>) -> Self {
        debug_assert!(!components.is_empty());
        Self { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ComplexScalar<T>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<ComplexScalar<T>> {
        self.components
    }

    pub fn norm(&self) -> T {
        norm(&self.components)
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<ComplexScalar<T>> {
        check_dims(self.dim(), other.dim())?;
        Ok(inner(&self.components, &other.components))
    }

    pub fn scale(&self, c: ComplexScalar<T>) -> Self {
        Self::from_vec_unchecked(self.components.iter().map(|z| z * c).collect())
    }

    pub fn conj(&self) -> Self {
        Self::from_vec_unchecked(self.components.iter().map(|z| z.conj()).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self::from_vec_unchecked(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }
}

impl<T: Real> std::ops::Index<usize> for StateVector<T> {
    type Output = ComplexScalar<T>;

    fn index(&self, i: usize) -> &ComplexScalar<T> {
        &self.components[i]
    }
}

/// One-dimensional subspace of `C^n`, held as its canonical representative.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray<T: Real> {
    rep: StateVector<T>,
}

impl<T: Real> Ray<T> {
    /// Same as [`canonical_ray`].
    pub fn new(v: &StateVector<T>) -> Result<Self> {
        canonical_ray(v)
    }

    /// Ray spanned by the `i`-th coordinate axis.
    pub fn axis(dim: usize, i: usize) -> Self {
        Self {
            rep: StateVector::basis(dim, i),
        }
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Canonical unit representative.
    pub fn rep(&self) -> &StateVector<T> {
        &self.rep
    }

    pub fn components(&self) -> &[ComplexScalar<T>] {
        self.rep.components()
    }

    /// Componentwise comparison of representatives.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.rep
            .max_abs_diff(&other.rep)
            .map(|d| d <= tol)
            .unwrap_or(false)
    }
}

/// Tolerances used by orthogonality tests, reconstruction and phase fixing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T: Real> {
    /// Rays with ray function at or below this count as orthogonal.
    pub orth_tol: T,
    /// Acceptance threshold for reconstructed quantities (scales, classification).
    pub recon_tol: T,
    /// Allowed imaginary drift of phase-fixed probe coordinates.
    pub phase_tol: T,
}

impl<T: Real> Tolerances<T> {
    pub fn new(orth_tol: T, recon_tol: T, phase_tol: T) -> Result<Self> {
        let tol = Self {
            orth_tol,
            recon_tol,
            phase_tol,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// All tolerances must be strictly positive and below `1e-2`.
    pub fn validate(&self) -> Result<()> {
        let upper = T::lit(1e-2);
        for (name, value) in [
            ("orth_tol", self.orth_tol),
            ("recon_tol", self.recon_tol),
            ("phase_tol", self.phase_tol),
        ] {
            if !(value > T::zero() && value < upper) {
                return Err(WignerError::InvalidTolerance {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        Ok(())
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            orth_tol: T::default_orth_tol(),
            recon_tol: T::default_recon_tol(),
            phase_tol: T::default_phase_tol(),
        }
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(WignerError::DimensionMismatch { expected, found })
    }
}

/// Normalize `v` and rotate its first significant component onto the positive
/// real axis.
pub fn canonical_ray<T: Real>(v: &StateVector<T>) -> Result<Ray<T>> {
    canonicalize(v.components())
}

pub(crate) fn canonicalize<T: Real>(components: &[ComplexScalar<T>]) -> Result<Ray<T>> {
    let n = norm(components);
    if !(n > T::zero_norm_threshold()) {
        return Err(WignerError::ZeroVector { norm: n.as_f64() });
    }
    let inv = T::one() / n;
    let anchor = components
        .iter()
        .map(|z| z * inv)
        .find(|z| z.norm() > T::phase_anchor_threshold())
        .expect("a unit vector has a component of modulus >= 1/sqrt(n)");
    // multiply by conj(anchor)/|anchor| so the anchor becomes |anchor|
    let phase = anchor.conj() / anchor.norm();
    let factor = phase * inv;
    let mut rep: Vec<_> = components.iter().map(|z| z * factor).collect();
    // remove the rounding residue on the anchor's imaginary part
    if let Some(z) = rep
        .iter_mut()
        .find(|z| z.norm() > T::phase_anchor_threshold())
    {
        *z = Complex::new(z.norm(), T::zero());
    }
    Ok(Ray {
        rep: StateVector::from_vec_unchecked(rep),
    })
}

/// Transition probability `|<e,f>|^2 / (<e,e><f,f>)` between two rays.
pub fn ray_function<T: Real>(r: &Ray<T>, s: &Ray<T>) -> Result<T> {
    check_dims(r.dim(), s.dim())?;
    Ok(vector_ray_function(r.components(), s.components()))
}

/// Ray function evaluated on arbitrary (nonzero) generators.
///
/// Symmetric by construction: `|<e,f>|^2 = |<f,e>|^2` is computed from the same
/// inner product regardless of argument order, then clamped to `[0, 1]`.
pub(crate) fn vector_ray_function<T: Real>(e: &[ComplexScalar<T>], f: &[ComplexScalar<T>]) -> T {
    let ef = inner(e, f);
    let denom = norm_sqr(e) * norm_sqr(f);
    let u = ef.norm_sqr() / denom;
    u.max(T::zero()).min(T::one())
}

/// `true` iff `ray_function(r, s) <= tol.orth_tol`.
pub fn is_orthogonal<T: Real>(r: &Ray<T>, s: &Ray<T>, tol: &Tolerances<T>) -> Result<bool> {
    Ok(ray_function(r, s)? <= tol.orth_tol)
}

/// Vector with i.i.d. standard complex normal components, deterministic in `seed`.
pub fn random_state<T: Real>(dim: usize, seed: u64) -> Result<StateVector<T>> {
    if dim == 0 {
        return Err(WignerError::DimensionTooSmall { dim, min: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_state(dim, &mut rng))
}

/// Draw a random state from an existing generator. `dim` must be positive.
pub fn sample_state<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector<T> {
    assert!(dim >= 1);
    StateVector::from_vec_unchecked((0..dim).map(|_| sample_complex_normal(rng)).collect())
}

/// Haar-uniform random ray.
pub fn sample_ray<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Ray<T> {
    loop {
        if let Ok(ray) = canonical_ray(&sample_state(dim, rng)) {
            return ray;
        }
    }
}

/// Random ray orthogonal to `r`. Requires `r.dim() >= 2`.
pub fn sample_orthogonal_ray<T: Real, R: Rng + ?Sized>(r: &Ray<T>, rng: &mut R) -> Ray<T> {
    assert!(r.dim() >= 2, "no orthogonal complement in dimension 1");
    let q = r.components();
    loop {
        let mut v = sample_state::<T, _>(r.dim(), rng).into_components();
        for _ in 0..2 {
            let c = inner(q, &v);
            for (vk, qk) in v.iter_mut().zip(q) {
                *vk = *vk - qk * c;
            }
        }
        if let Ok(ray) = canonicalize(&v) {
            return ray;
        }
    }
}
