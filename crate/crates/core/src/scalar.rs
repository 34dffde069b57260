//! Real scalar abstraction shared by the whole crate.
//!
//! Everything numeric is generic over [`Real`], implemented for `f32` and
//! `f64`. Thresholds that depend on the working precision (zero-norm cutoff,
//! canonical phase anchor, default tolerances) live on the trait so that the
//! algorithms never hard-code double-precision constants.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rand::Rng;
use rand_distr::StandardNormal;

/// Complex number over a [`Real`] scalar.
pub type ComplexScalar<T> = Complex<T>;

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Norms at or below this are treated as the zero vector.
    fn zero_norm_threshold() -> Self;

    /// The first component with modulus above this anchors the canonical phase.
    fn phase_anchor_threshold() -> Self;

    /// Largest condition number accepted for an operator matrix.
    fn max_condition() -> Self;

    fn default_orth_tol() -> Self;
    fn default_recon_tol() -> Self;
    fn default_phase_tol() -> Self;

    /// Draw one sample from the standard normal distribution.
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn zero_norm_threshold() -> Self {
        1e-12
    }
    fn phase_anchor_threshold() -> Self {
        1e-9
    }
    fn max_condition() -> Self {
        1e12
    }
    fn default_orth_tol() -> Self {
        1e-9
    }
    fn default_recon_tol() -> Self {
        1e-8
    }
    fn default_phase_tol() -> Self {
        1e-9
    }
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Real for f32 {
    fn zero_norm_threshold() -> Self {
        1e-6
    }
    fn phase_anchor_threshold() -> Self {
        1e-4
    }
    fn max_condition() -> Self {
        1e6
    }
    fn default_orth_tol() -> Self {
        1e-5
    }
    fn default_recon_tol() -> Self {
        1e-4
    }
    fn default_phase_tol() -> Self {
        1e-5
    }
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

/// Standard complex normal sample: real and imaginary parts i.i.d. N(0, 1/2).
pub fn sample_complex_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let scale = T::FRAC_1_SQRT_2();
    Complex::new(
        T::sample_standard_normal(rng) * scale,
        T::sample_standard_normal(rng) * scale,
    )
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
