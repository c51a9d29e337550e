//! Modeling, entropy certification, randomness extraction and statistical
//! validation for a homodyne-detection quantum random number generator.
//!
//! The pipeline this crate supports: simulate (or ingest) quantized
//! homodyne measurements under shot-noise and electronic-noise
//! configurations, build histograms, certify the extractable entropy
//! (Shannon, min-, and side-information-conditioned min-entropy with ADC
//! penalties), extract bits with a seeded Toeplitz two-universal hash, and
//! validate the output with a battery of statistical tests.

pub mod acquisition;
pub mod bits;
pub mod entropy;
pub mod erf;
pub mod model;
pub mod stattests;
pub mod toeplitz;

mod splitmix;

pub use acquisition::{
    dequantize, load_raw, quantize, simulate_session, store_raw, Configuration, ConfigurationTag,
    SampleBlock, SampleHistogram, SessionConfig, DEFAULT_SAMPLE_RATE_HZ,
};
pub use bits::BitBlock;
pub use entropy::{
    adc_penalty, certify, conditional_min_entropy, extractable_length, hash_penalty_bits,
    max_entropy_conjugate, min_entropy, quantum_shannon, secure_rate_single_shot,
    shannon_entropy, variance_for_discrete_entropy, CertifyParams, EffectiveWidth, EntropyReport,
};
pub use model::{
    bin_probabilities, gaussian_pdf, output_variance, GaussianSpec, NoiseModel, QuantizerSpec,
};
pub use stattests::{
    apply_test, run_battery, BatteryParams, BatteryReport, TestId, TestResult,
};
pub use toeplitz::{extract_stream, StreamExtraction, ToeplitzOperator, ToeplitzSpec};
