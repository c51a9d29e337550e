//! Closed-form Gaussian measurement model and its discretization onto ADC
//! bins.
//!
//! A homodyne output driven by a thermal input with mean photon number `n`
//! and detection gain `g` is Gaussian with variance `g^2 (1 + 2n)`;
//! independent electronic noise adds its own variance on top. The ADC maps
//! the continuous value onto `M = 2^b` left-closed bins covering
//! `[-R, R)`, saturating out-of-range samples to the extreme codes, so the
//! two edge bins absorb the clamped tail mass.

use crate::erf::normal_cdf;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("gain must be positive and finite, got {0}")]
    InvalidGain(f64),
    #[error("mean photon number must be nonnegative and finite, got {0}")]
    InvalidPhotonNumber(f64),
    #[error("electronic variance must be nonnegative and finite, got {0}")]
    InvalidElectronicVariance(f64),
    #[error("mean must be finite, got {0}")]
    InvalidMean(f64),
    #[error("variance must be positive and finite, got {0}")]
    InvalidVariance(f64),
    #[error("ADC range must be positive and finite, got {0}")]
    InvalidRange(f64),
    #[error("ADC bit depth must be in 2..=16, got {0}")]
    InvalidBits(u8),
    #[error("evaluation point must be finite")]
    NonFiniteInput,
}

/// Gaussian source parameters of one measurement channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    gain: f64,
    mean_photon_number: f64,
    electronic_variance: f64,
}

impl NoiseModel {
    pub fn new(
        gain: f64,
        mean_photon_number: f64,
        electronic_variance: f64,
    ) -> Result<Self, ModelError> {
        if !(gain.is_finite() && gain > 0.0) {
            return Err(ModelError::InvalidGain(gain));
        }
        if !(mean_photon_number.is_finite() && mean_photon_number >= 0.0) {
            return Err(ModelError::InvalidPhotonNumber(mean_photon_number));
        }
        if !(electronic_variance.is_finite() && electronic_variance >= 0.0) {
            return Err(ModelError::InvalidElectronicVariance(electronic_variance));
        }
        Ok(Self {
            gain,
            mean_photon_number,
            electronic_variance,
        })
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.mean_photon_number
    }

    pub fn electronic_variance(&self) -> f64 {
        self.electronic_variance
    }

    /// Variance of the optical contribution alone: `g^2 (1 + 2n)`.
    pub fn shot_noise_variance(&self) -> f64 {
        self.gain * self.gain * (1.0 + 2.0 * self.mean_photon_number)
    }

    /// Total output variance `g^2 (1 + 2n) + v_el^2`.
    pub fn output_variance(&self) -> f64 {
        self.shot_noise_variance() + self.electronic_variance
    }
}

/// Free-function form of [`NoiseModel::output_variance`].
pub fn output_variance(model: &NoiseModel) -> f64 {
    model.output_variance()
}

/// ADC transfer description: full-scale half-width `R` and bit depth `b`.
///
/// Derived quantities: cardinality `M = 2^b` and bin width `dx = 2R / M`
/// (exact in binary floating point since `M` is a power of two).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizerSpec {
    range: f64,
    bits: u8,
}

impl QuantizerSpec {
    pub fn new(range: f64, bits: u8) -> Result<Self, ModelError> {
        if !(range.is_finite() && range > 0.0) {
            return Err(ModelError::InvalidRange(range));
        }
        if !(2..=16).contains(&bits) {
            return Err(ModelError::InvalidBits(bits));
        }
        Ok(Self { range, bits })
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    /// Number of codes `M = 2^b`.
    pub fn cardinality(&self) -> usize {
        1usize << self.bits
    }

    /// Bin width `dx = 2R / M`.
    pub fn bin_width(&self) -> f64 {
        2.0 * self.range / self.cardinality() as f64
    }

    /// Left edge of bin `j`, i.e. `-R + j*dx`. Valid for `j` in `0..=M`.
    pub fn bin_left_edge(&self, j: usize) -> f64 {
        debug_assert!(j <= self.cardinality());
        -self.range + j as f64 * self.bin_width()
    }

    /// Reconstruction point (bin center) of code `j`.
    pub fn bin_center(&self, j: usize) -> f64 {
        debug_assert!(j < self.cardinality());
        -self.range + (j as f64 + 0.5) * self.bin_width()
    }
}

/// Mean and variance of a one-dimensional Gaussian density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianSpec {
    mean: f64,
    variance: f64,
}

impl GaussianSpec {
    pub fn new(mean: f64, variance: f64) -> Result<Self, ModelError> {
        if !mean.is_finite() {
            return Err(ModelError::InvalidMean(mean));
        }
        if !(variance.is_finite() && variance > 0.0) {
            return Err(ModelError::InvalidVariance(variance));
        }
        Ok(Self { mean, variance })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Gaussian density `G(x; mu, v) = exp(-(x-mu)^2 / 2v) / sqrt(2 pi v)`.
pub fn gaussian_pdf(x: f64, spec: &GaussianSpec) -> Result<f64, ModelError> {
    if !x.is_finite() {
        return Err(ModelError::NonFiniteInput);
    }
    let d = x - spec.mean;
    let v = spec.variance;
    Ok((-d * d / (2.0 * v)).exp() / (2.0 * std::f64::consts::PI * v).sqrt())
}

/// Probability mass of each ADC code under a Gaussian input.
///
/// Interior bins integrate the density over `[-R + j*dx, -R + (j+1)*dx)`;
/// the two edge bins additionally absorb the whole tail mass beyond the
/// range, matching ADC saturation. The result is nonnegative and sums to 1
/// up to floating-point rounding.
pub fn bin_probabilities(spec: &GaussianSpec, q: &QuantizerSpec) -> Vec<f64> {
    let m = q.cardinality();
    let sd = spec.std_dev();
    let mut out = vec![0.0; m];
    let mut prev = normal_cdf((q.bin_left_edge(1) - spec.mean) / sd);
    out[0] = prev;
    for (j, slot) in out.iter_mut().enumerate().take(m - 1).skip(1) {
        let c = normal_cdf((q.bin_left_edge(j + 1) - spec.mean) / sd);
        // Guard against ~1 ulp non-monotonicity of the cdf deep in the tails.
        *slot = (c - prev).max(0.0);
        prev = c;
    }
    out[m - 1] = (1.0 - prev).max(0.0);
    out
}
