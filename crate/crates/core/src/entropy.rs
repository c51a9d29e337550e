//! Entropy accounting and certification.
//!
//! Given empirical histograms of the shot-noise (LO on) and electronic-noise
//! (LO off) channels, this module computes Shannon, min- and
//! side-information-conditioned min-entropy figures, applies the ADC
//! code-collapse penalty, and derives the certified extractable length for a
//! two-universal hash at a chosen hashing security parameter.
//!
//! Negative intermediate values are carried through unchanged; clamping to
//! zero happens only at the reporting boundary (extractable length, quantum
//! surplus), each occurrence adding a warning to the report.

use crate::acquisition::SampleHistogram;
use crate::erf::erf;
use crate::model::{bin_probabilities, GaussianSpec, NoiseModel, QuantizerSpec};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error("distribution entries must sum to 1 within 1e-9, got {0}")]
    NotNormalized(f64),
    #[error("distribution entry {index} is negative or non-finite: {value}")]
    BadEntry { index: usize, value: f64 },
    #[error("distribution must be non-empty")]
    EmptyDistribution,
    #[error("entropy inputs must be nonnegative and finite, got {0}")]
    NegativeEntropy(f64),
    #[error("mean photon number must be nonnegative and finite, got {0}")]
    InvalidPhotonNumber(f64),
    #[error("bin width must be positive and finite, got {0}")]
    InvalidBinWidth(f64),
    #[error("effective width must be positive and finite, got {0}")]
    InvalidEffectiveWidth(f64),
    #[error("code-collapse bound sup|J_f| must be at least 1")]
    InvalidCollapseBound,
    #[error("security parameter must be in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("hashing security parameter must be in (0, 1), got {0}")]
    InvalidEpsilonHash(f64),
    #[error("sample count must be positive")]
    NoSamples,
    #[error("per-sample min-entropy must be nonnegative and finite, got {0}")]
    InvalidRate(f64),
    #[error("histograms use different quantizers: {0:?} vs {1:?}")]
    QuantizerMismatch(QuantizerSpec, QuantizerSpec),
    #[error("target entropy {target} is not reachable for this quantizer (max {max})")]
    UnreachableTarget { target: f64, max: f64 },
}

fn validate_distribution(p: &[f64]) -> Result<(), EntropyError> {
    if p.is_empty() {
        return Err(EntropyError::EmptyDistribution);
    }
    let mut sum = 0.0;
    for (index, &value) in p.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(EntropyError::BadEntry { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(EntropyError::NotNormalized(sum));
    }
    Ok(())
}

/// Shannon entropy `-sum p_i log2 p_i` in bits, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64, EntropyError> {
    validate_distribution(p)?;
    let h = -p
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.log2())
        .sum::<f64>();
    Ok(h.max(0.0))
}

/// Quantum entropy surplus: total minus the labelled classical components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumShannon {
    /// Surplus clamped at zero.
    pub bits: f64,
    /// Surplus before clamping; negative means no quantum surplus.
    pub raw_bits: f64,
    /// True when the raw surplus was negative.
    pub clamped: bool,
}

pub fn quantum_shannon(total: f64, classical: &[f64]) -> Result<QuantumShannon, EntropyError> {
    if !total.is_finite() || total < 0.0 {
        return Err(EntropyError::NegativeEntropy(total));
    }
    for &c in classical {
        if !c.is_finite() || c < 0.0 {
            return Err(EntropyError::NegativeEntropy(c));
        }
    }
    let raw_bits = total - classical.iter().sum::<f64>();
    Ok(QuantumShannon {
        bits: raw_bits.max(0.0),
        raw_bits,
        clamped: raw_bits < 0.0,
    })
}

/// Min-entropy `-log2 max_j p_j` in bits.
pub fn min_entropy(p: &[f64]) -> Result<f64, EntropyError> {
    validate_distribution(p)?;
    let max = p.iter().cloned().fold(0.0_f64, f64::max);
    Ok(-max.log2())
}

/// Conjugate-quadrature max-entropy `2 log2 sum_k sqrt(p_k)` in bits.
///
/// Equals `log2 M` for the uniform distribution and 0 for a point mass.
pub fn max_entropy_conjugate(p: &[f64]) -> Result<f64, EntropyError> {
    validate_distribution(p)?;
    let s: f64 = p.iter().map(|&v| v.sqrt()).sum();
    Ok(2.0 * s.log2())
}

/// Effective Gaussian half-width scale entering the conditional min-entropy
/// bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveWidth(f64);

impl EffectiveWidth {
    pub fn new(g: f64) -> Result<Self, EntropyError> {
        if !(g.is_finite() && g > 0.0) {
            return Err(EntropyError::InvalidEffectiveWidth(g));
        }
        Ok(Self(g))
    }

    pub fn get(&self) -> f64 {
        self.0
    }

    /// Default choice: the standard deviation of the optical contribution,
    /// `g * sqrt(1 + 2n)`.
    pub fn from_noise_model(model: &NoiseModel) -> Self {
        Self(model.shot_noise_variance().sqrt())
    }
}

/// Side-information-conditioned min-entropy bound per sample:
/// `-log2 (sqrt(n) + sqrt(n+1))^2 - log2 erf(dx / 2 g')`.
///
/// May be negative for large photon numbers; callers decide usability.
/// Monotone nonincreasing in both `n` and `dx`.
pub fn conditional_min_entropy(
    mean_photon_number: f64,
    bin_width: f64,
    effective_width: EffectiveWidth,
) -> Result<f64, EntropyError> {
    if !(mean_photon_number.is_finite() && mean_photon_number >= 0.0) {
        return Err(EntropyError::InvalidPhotonNumber(mean_photon_number));
    }
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(EntropyError::InvalidBinWidth(bin_width));
    }
    let n = mean_photon_number;
    let thermal = (n.sqrt() + (n + 1.0).sqrt()).powi(2);
    let ratio = bin_width / (2.0 * effective_width.get());
    Ok(-thermal.log2() - erf(ratio).log2())
}

/// ADC digitization penalty `log2 sup|J_f|` in bits, where `sup|J_f|` bounds
/// how many true codes collapse onto a single output value.
pub fn adc_penalty(code_collapse_bound: u64) -> Result<f64, EntropyError> {
    if code_collapse_bound < 1 {
        return Err(EntropyError::InvalidCollapseBound);
    }
    Ok((code_collapse_bound as f64).log2())
}

/// Single-shot secure rate `h - 2 log2(1/eps)`; may be negative.
pub fn secure_rate_single_shot(h_min_cond: f64, epsilon: f64) -> Result<f64, EntropyError> {
    if !(epsilon.is_finite() && epsilon > 0.0 && epsilon <= 1.0) {
        return Err(EntropyError::InvalidEpsilon(epsilon));
    }
    Ok(h_min_cond + 2.0 * epsilon.log2())
}

/// Leftover-hash subtraction term `log2(1 / (2 eps_hash^2))` in bits.
pub fn hash_penalty_bits(epsilon_hash: f64) -> Result<f64, EntropyError> {
    if !(epsilon_hash.is_finite() && epsilon_hash > 0.0 && epsilon_hash < 1.0) {
        return Err(EntropyError::InvalidEpsilonHash(epsilon_hash));
    }
    Ok(-1.0 - 2.0 * epsilon_hash.log2())
}

/// Certified extractable length `k = floor(l h - log2(1/(2 eps_hash^2)))`,
/// clamped at zero.
pub fn extractable_length(
    samples: u64,
    h_min_cond_per_sample: f64,
    epsilon_hash: f64,
) -> Result<u64, EntropyError> {
    if samples == 0 {
        return Err(EntropyError::NoSamples);
    }
    if !(h_min_cond_per_sample.is_finite() && h_min_cond_per_sample >= 0.0) {
        return Err(EntropyError::InvalidRate(h_min_cond_per_sample));
    }
    let k = samples as f64 * h_min_cond_per_sample - hash_penalty_bits(epsilon_hash)?;
    if k <= 0.0 {
        Ok(0)
    } else {
        Ok(k.floor() as u64)
    }
}

/// One labelled classical entropy contribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalComponent {
    pub label: String,
    pub bits: f64,
}

/// Parameter echo stored alongside the certified figures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyParamsEcho {
    pub epsilon: f64,
    pub epsilon_hash: f64,
    pub sample_count: u64,
    pub mean_photon_number: f64,
    pub bin_width: f64,
    pub effective_width: f64,
    pub cardinality: u64,
    pub code_collapse_bound: u64,
}

/// Full output of [`certify`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub shannon_total: f64,
    pub shannon_classical: Vec<ClassicalComponent>,
    pub shannon_quantum: f64,
    pub shannon_quantum_raw: f64,
    pub quantum_clamped: bool,
    pub min_entropy_unconditional: f64,
    pub conditional_min_entropy_ideal: f64,
    pub adc_penalty_bits: f64,
    pub conditional_min_entropy_final: f64,
    pub secure_rate_single_shot: f64,
    pub extractable_length_bits: u64,
    pub params: CertifyParamsEcho,
    pub warnings: Vec<String>,
}

/// Inputs to [`certify`] besides the two histograms.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyParams {
    pub noise: NoiseModel,
    /// Extraction security parameter, conventionally 1e-10.
    pub epsilon: f64,
    /// Hashing security parameter, conventionally 1e-20.
    pub epsilon_hash: f64,
    /// Bound on ADC code collapse; 1 means an ideal bijective ADC.
    pub code_collapse_bound: u64,
    /// Constant classical entropy attributed to homodyne imbalance.
    pub imbalance_entropy: f64,
    /// Overrides the default effective width `g sqrt(1+2n)`.
    pub effective_width_override: Option<f64>,
}

impl CertifyParams {
    pub fn new(noise: NoiseModel) -> Self {
        Self {
            noise,
            epsilon: 1e-10,
            epsilon_hash: 1e-20,
            code_collapse_bound: 1,
            imbalance_entropy: 0.0,
            effective_width_override: None,
        }
    }
}

/// Composes every entropy figure into one report.
///
/// Both histograms must be over the same quantizer. Deterministic: identical
/// inputs produce identical reports.
pub fn certify(
    lo_on: &SampleHistogram,
    lo_off: &SampleHistogram,
    params: &CertifyParams,
) -> Result<EntropyReport, EntropyError> {
    if lo_on.quantizer() != lo_off.quantizer() {
        return Err(EntropyError::QuantizerMismatch(
            *lo_on.quantizer(),
            *lo_off.quantizer(),
        ));
    }
    if !(params.imbalance_entropy.is_finite() && params.imbalance_entropy >= 0.0) {
        return Err(EntropyError::NegativeEntropy(params.imbalance_entropy));
    }
    let q = lo_on.quantizer();
    let mut warnings = Vec::new();

    let p_on = lo_on.probabilities();
    let p_off = lo_off.probabilities();
    let shannon_total = shannon_entropy(&p_on)?;
    let h_c1 = params.imbalance_entropy;
    let h_c2 = shannon_entropy(&p_off)?;
    let quantum = quantum_shannon(shannon_total, &[h_c1, h_c2])?;
    if quantum.clamped {
        warnings.push(format!(
            "quantum entropy surplus {:.6} bits is negative; reported as 0",
            quantum.raw_bits
        ));
    }

    let min_entropy_unconditional = min_entropy(&p_on)?;

    let effective_width = match params.effective_width_override {
        Some(g) => EffectiveWidth::new(g)?,
        None => EffectiveWidth::from_noise_model(&params.noise),
    };
    let n = params.noise.mean_photon_number();
    let ideal = conditional_min_entropy(n, q.bin_width(), effective_width)?;
    let penalty = adc_penalty(params.code_collapse_bound)?;
    let final_rate = ideal - penalty;
    let secure_rate = secure_rate_single_shot(final_rate, params.epsilon)?;
    if secure_rate < 0.0 {
        warnings.push(format!(
            "single-shot secure rate {secure_rate:.6} bits is negative; no single-shot extraction possible"
        ));
    }

    let sample_count = lo_on.total();
    let extractable_length_bits = if quantum.raw_bits <= 0.0 {
        warnings.push(
            "no quantum entropy surplus over the classical components; certified length is 0"
                .to_string(),
        );
        0
    } else {
        let usable_rate = if final_rate < 0.0 {
            warnings.push(format!(
                "conditional min-entropy {final_rate:.6} bits/sample is negative; certified length is 0"
            ));
            0.0
        } else {
            final_rate
        };
        extractable_length(sample_count, usable_rate, params.epsilon_hash)?
    };

    Ok(EntropyReport {
        shannon_total,
        shannon_classical: vec![
            ClassicalComponent {
                label: "homodyne_imbalance".to_string(),
                bits: h_c1,
            },
            ClassicalComponent {
                label: "electronic_noise".to_string(),
                bits: h_c2,
            },
        ],
        shannon_quantum: quantum.bits,
        shannon_quantum_raw: quantum.raw_bits,
        quantum_clamped: quantum.clamped,
        min_entropy_unconditional,
        conditional_min_entropy_ideal: ideal,
        adc_penalty_bits: penalty,
        conditional_min_entropy_final: final_rate,
        secure_rate_single_shot: secure_rate,
        extractable_length_bits,
        params: CertifyParamsEcho {
            epsilon: params.epsilon,
            epsilon_hash: params.epsilon_hash,
            sample_count,
            mean_photon_number: n,
            bin_width: q.bin_width(),
            effective_width: effective_width.get(),
            cardinality: q.cardinality() as u64,
            code_collapse_bound: params.code_collapse_bound,
        },
        warnings,
    })
}

/// Finds the Gaussian variance whose discretized distribution over `q` has
/// the requested Shannon entropy, by bisection on the standard deviation.
///
/// Valid for targets reachable with the distribution well inside the range
/// (standard deviation up to R/4).
pub fn variance_for_discrete_entropy(
    target_bits: f64,
    q: &QuantizerSpec,
) -> Result<f64, EntropyError> {
    let entropy_at = |sd: f64| -> f64 {
        let spec = GaussianSpec::new(0.0, sd * sd).expect("positive variance");
        shannon_entropy(&bin_probabilities(&spec, q)).expect("normalized by construction")
    };
    let mut lo = q.range() * 1e-12;
    let mut hi = q.range() / 4.0;
    let max = entropy_at(hi);
    if !(target_bits > 0.0 && target_bits < max) {
        return Err(EntropyError::UnreachableTarget {
            target: target_bits,
            max,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entropy_at(mid) < target_bits {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let sd = 0.5 * (lo + hi);
    Ok(sd * sd)
}
