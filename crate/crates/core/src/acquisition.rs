//! Measurement-session simulation, ADC quantization, raw sample files and
//! empirical histograms.
//!
//! Three session configurations are supported: local oscillator on (shot
//! noise plus electronic noise), off (electronic noise only), and a gain
//! sweep producing one block per gain value. Sampling is counter-based
//! (every sample index is derived independently from the seed), so a
//! session can be split across threads without changing its output.

use crate::model::{ModelError, NoiseModel, QuantizerSpec};
use crate::splitmix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AcquisitionError {
    #[error("sample count must be positive")]
    EmptyBlock,
    #[error("sample rate must be positive and finite, got {0}")]
    InvalidSampleRate(f64),
    #[error("gain sweep needs at least 2 gain values, got {0}")]
    SweepTooShort(usize),
    #[error("sweep gain {index} must be positive and finite, got {value}")]
    InvalidSweepGain { index: usize, value: f64 },
    #[error("code {code} at sample {index} exceeds the {bits}-bit range")]
    CodeOutOfRange { index: usize, code: u16, bits: u8 },
    #[error("bad magic bytes; not a raw sample file")]
    BadMagic,
    #[error("unsupported raw file version {0}")]
    UnsupportedVersion(u8),
    #[error("invalid configuration tag {0}")]
    InvalidTag(u8),
    #[error("raw file header invalid: {0}")]
    InvalidHeader(#[from] ModelError),
    #[error("file truncated: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("{0} trailing bytes after the declared payload")]
    TrailingData(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Nominal acquisition rate of the homodyne output.
pub const DEFAULT_SAMPLE_RATE_HZ: f64 = 500_000.0;

const RAW_MAGIC: &[u8; 4] = b"QRNG";
const RAW_VERSION: u8 = 1;

/// Which acquisition configuration produced a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigurationTag {
    LoSweep,
    LoOff,
    LoOn,
}

impl ConfigurationTag {
    pub fn as_u8(self) -> u8 {
        match self {
            ConfigurationTag::LoSweep => 0,
            ConfigurationTag::LoOff => 1,
            ConfigurationTag::LoOn => 2,
        }
    }

    pub fn from_u8(v: u8) -> Result<Self, AcquisitionError> {
        match v {
            0 => Ok(ConfigurationTag::LoSweep),
            1 => Ok(ConfigurationTag::LoOff),
            2 => Ok(ConfigurationTag::LoOn),
            other => Err(AcquisitionError::InvalidTag(other)),
        }
    }
}

/// Acquisition configuration. The sweep carries its list of gain values.
#[derive(Debug, Clone, PartialEq)]
pub enum Configuration {
    /// Local oscillator power sweep; one block per gain value.
    LoSweep { gains: Vec<f64> },
    /// Local oscillator blocked: electronic noise only.
    LoOff,
    /// Local oscillator on: shot noise plus electronic noise.
    LoOn,
}

impl Configuration {
    pub fn tag(&self) -> ConfigurationTag {
        match self {
            Configuration::LoSweep { .. } => ConfigurationTag::LoSweep,
            Configuration::LoOff => ConfigurationTag::LoOff,
            Configuration::LoOn => ConfigurationTag::LoOn,
        }
    }
}

/// One simulated measurement session.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    configuration: Configuration,
    noise: NoiseModel,
    quantizer: QuantizerSpec,
    sample_count: u64,
    sample_rate_hz: f64,
    rng_seed: u64,
}

impl SessionConfig {
    pub fn new(
        configuration: Configuration,
        noise: NoiseModel,
        quantizer: QuantizerSpec,
        sample_count: u64,
        sample_rate_hz: f64,
        rng_seed: u64,
    ) -> Result<Self, AcquisitionError> {
        if sample_count == 0 {
            return Err(AcquisitionError::EmptyBlock);
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(AcquisitionError::InvalidSampleRate(sample_rate_hz));
        }
        if let Configuration::LoSweep { gains } = &configuration {
            if gains.len() < 2 {
                return Err(AcquisitionError::SweepTooShort(gains.len()));
            }
            for (index, &value) in gains.iter().enumerate() {
                if !(value.is_finite() && value > 0.0) {
                    return Err(AcquisitionError::InvalidSweepGain { index, value });
                }
            }
        }
        Ok(Self {
            configuration,
            noise,
            quantizer,
            sample_count,
            sample_rate_hz,
            rng_seed,
        })
    }

    pub fn configuration(&self) -> &Configuration {
        &self.configuration
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    pub fn quantizer(&self) -> &QuantizerSpec {
        &self.quantizer
    }

    pub fn sample_count(&self) -> u64 {
        self.sample_count
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }
}

/// A quantized acquisition: ADC codes plus the quantizer that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBlock {
    codes: Vec<u16>,
    quantizer: QuantizerSpec,
    tag: ConfigurationTag,
}

impl SampleBlock {
    pub fn new(
        codes: Vec<u16>,
        quantizer: QuantizerSpec,
        tag: ConfigurationTag,
    ) -> Result<Self, AcquisitionError> {
        if codes.is_empty() {
            return Err(AcquisitionError::EmptyBlock);
        }
        let max = (quantizer.cardinality() - 1) as u16;
        for (index, &code) in codes.iter().enumerate() {
            if code > max {
                return Err(AcquisitionError::CodeOutOfRange {
                    index,
                    code,
                    bits: quantizer.bits(),
                });
            }
        }
        Ok(Self {
            codes,
            quantizer,
            tag,
        })
    }

    pub fn codes(&self) -> &[u16] {
        &self.codes
    }

    pub fn quantizer(&self) -> &QuantizerSpec {
        &self.quantizer
    }

    pub fn tag(&self) -> ConfigurationTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Per-code occurrence counts and derived probabilities.
    pub fn histogram(&self) -> SampleHistogram {
        let mut counts = vec![0u64; self.quantizer.cardinality()];
        for &c in &self.codes {
            counts[usize::from(c)] += 1;
        }
        SampleHistogram {
            counts,
            total: self.codes.len() as u64,
            quantizer: self.quantizer,
            tag: self.tag,
        }
    }

    /// Binary encoding: magic, version, bit depth, range, tag, count, codes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(22 + self.codes.len() * 2);
        out.extend_from_slice(RAW_MAGIC);
        out.push(RAW_VERSION);
        out.push(self.quantizer.bits());
        out.extend_from_slice(&self.quantizer.range().to_le_bytes());
        out.push(self.tag.as_u8());
        out.extend_from_slice(&(self.codes.len() as u64).to_le_bytes());
        for &c in &self.codes {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, AcquisitionError> {
        const HEADER: usize = 4 + 1 + 1 + 8 + 1 + 8;
        if bytes.len() < 4 {
            return Err(AcquisitionError::Truncated {
                expected: HEADER,
                got: bytes.len(),
            });
        }
        if &bytes[0..4] != RAW_MAGIC {
            return Err(AcquisitionError::BadMagic);
        }
        if bytes.len() < HEADER {
            return Err(AcquisitionError::Truncated {
                expected: HEADER,
                got: bytes.len(),
            });
        }
        let version = bytes[4];
        if version != RAW_VERSION {
            return Err(AcquisitionError::UnsupportedVersion(version));
        }
        let bits = bytes[5];
        let range = f64::from_le_bytes(bytes[6..14].try_into().expect("8 bytes"));
        let quantizer = QuantizerSpec::new(range, bits)?;
        let tag = ConfigurationTag::from_u8(bytes[14])?;
        let count = u64::from_le_bytes(bytes[15..23].try_into().expect("8 bytes"));
        if count == 0 {
            return Err(AcquisitionError::EmptyBlock);
        }
        let payload = count as usize * 2;
        if bytes.len() < HEADER + payload {
            return Err(AcquisitionError::Truncated {
                expected: HEADER + payload,
                got: bytes.len(),
            });
        }
        if bytes.len() > HEADER + payload {
            return Err(AcquisitionError::TrailingData(
                bytes.len() - HEADER - payload,
            ));
        }
        let codes: Vec<u16> = bytes[HEADER..]
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]))
            .collect();
        SampleBlock::new(codes, quantizer, tag)
    }
}

/// Writes a block to a raw sample file.
pub fn store_raw(block: &SampleBlock, path: &Path) -> Result<(), AcquisitionError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&block.to_bytes())?;
    Ok(())
}

/// Reads a block back; the round trip is bit-exact.
pub fn load_raw(path: &Path) -> Result<SampleBlock, AcquisitionError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    SampleBlock::from_bytes(&bytes)
}

/// Empirical distribution over ADC codes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleHistogram {
    counts: Vec<u64>,
    total: u64,
    quantizer: QuantizerSpec,
    tag: ConfigurationTag,
}

impl SampleHistogram {
    /// Builds a histogram from raw counts (length must equal the quantizer
    /// cardinality, total must be positive).
    pub fn from_counts(
        quantizer: QuantizerSpec,
        counts: Vec<u64>,
        tag: ConfigurationTag,
    ) -> Result<Self, AcquisitionError> {
        if counts.len() != quantizer.cardinality() {
            return Err(AcquisitionError::CodeOutOfRange {
                index: counts.len(),
                code: 0,
                bits: quantizer.bits(),
            });
        }
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(AcquisitionError::EmptyBlock);
        }
        Ok(Self {
            counts,
            total,
            quantizer,
            tag,
        })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn quantizer(&self) -> &QuantizerSpec {
        &self.quantizer
    }

    pub fn tag(&self) -> ConfigurationTag {
        self.tag
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let t = self.total as f64;
        self.counts.iter().map(|&c| c as f64 / t).collect()
    }
}

/// ADC transfer function: `clamp(floor((x + R) / dx), 0, M-1)`.
///
/// Saturates out-of-range inputs to the extreme codes. `x` must be finite.
pub fn quantize(x: f64, q: &QuantizerSpec) -> u16 {
    let idx = ((x + q.range()) / q.bin_width()).floor();
    let max = (q.cardinality() - 1) as f64;
    idx.clamp(0.0, max) as u16
}

/// Reconstruction point of a code (bin center).
pub fn dequantize(code: u16, q: &QuantizerSpec) -> f64 {
    q.bin_center(usize::from(code))
}

/// Gaussian sample for index `index` of stream `stream` under `seed`,
/// via Box-Muller over two counter-derived uniforms.
fn gaussian_sample(seed: u64, stream: u64, index: u64, sd: f64) -> f64 {
    if sd == 0.0 {
        return 0.0;
    }
    let base = splitmix::mix(seed).wrapping_add(splitmix::mix(stream ^ 0x6A09_E667_F3BC_C909));
    let z1 = splitmix::nth(base, 2 * index);
    let z2 = splitmix::nth(base, 2 * index + 1);
    let u1 = splitmix::unit_f64_open(z1);
    let u2 = splitmix::unit_f64(z2);
    sd * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn simulate_block(
    cfg: &SessionConfig,
    stream: u64,
    sd: f64,
    tag: ConfigurationTag,
) -> SampleBlock {
    let q = cfg.quantizer;
    let codes: Vec<u16> = (0..cfg.sample_count)
        .into_par_iter()
        .map(|i| quantize(gaussian_sample(cfg.rng_seed, stream, i, sd), &q))
        .collect();
    SampleBlock {
        codes,
        quantizer: q,
        tag,
    }
}

/// Draws and quantizes a full session.
///
/// LO on and LO off produce exactly one block; a sweep produces one block
/// per gain value. Deterministic given the seed, independent of thread
/// count.
pub fn simulate_session(cfg: &SessionConfig) -> Result<Vec<SampleBlock>, AcquisitionError> {
    match &cfg.configuration {
        Configuration::LoOff => {
            let sd = cfg.noise.electronic_variance().sqrt();
            Ok(vec![simulate_block(cfg, 0, sd, ConfigurationTag::LoOff)])
        }
        Configuration::LoOn => {
            let sd = cfg.noise.output_variance().sqrt();
            Ok(vec![simulate_block(cfg, 0, sd, ConfigurationTag::LoOn)])
        }
        Configuration::LoSweep { gains } => Ok(gains
            .iter()
            .enumerate()
            .map(|(i, &g)| {
                let var = g * g * (1.0 + 2.0 * cfg.noise.mean_photon_number())
                    + cfg.noise.electronic_variance();
                simulate_block(cfg, i as u64, var.sqrt(), ConfigurationTag::LoSweep)
            })
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q12() -> QuantizerSpec {
        QuantizerSpec::new(4.0, 12).unwrap()
    }

    #[test]
    fn quantize_examples() {
        let q = q12();
        assert_eq!(quantize(0.0, &q), 2048);
        assert_eq!(quantize(-10.0, &q), 0);
        // (3.999 + 4) / dx = 4095.488
        assert_eq!(quantize(3.999, &q), 4095);
        assert_eq!(quantize(4.0, &q), 4095);
        assert_eq!(quantize(-4.0, &q), 0);
    }

    #[test]
    fn quantize_monotone_and_dequantize_close() {
        let q = q12();
        let mut prev = 0u16;
        let mut x = -5.0;
        while x < 5.0 {
            let c = quantize(x, &q);
            assert!(c >= prev);
            prev = c;
            if (-4.0..4.0 - q.bin_width()).contains(&x) {
                assert!((dequantize(c, &q) - x).abs() <= q.bin_width() / 2.0 + 1e-15);
            }
            x += 0.00113;
        }
    }

    #[test]
    fn zero_variance_lo_off_hits_center_code() {
        let noise = NoiseModel::new(1.0, 0.0, 0.0).unwrap();
        let cfg = SessionConfig::new(
            Configuration::LoOff,
            noise,
            q12(),
            100,
            DEFAULT_SAMPLE_RATE_HZ,
            9,
        )
        .unwrap();
        let blocks = simulate_session(&cfg).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].codes().iter().all(|&c| c == 2048));
        assert_eq!(blocks[0].tag(), ConfigurationTag::LoOff);
    }

    #[test]
    fn simulation_is_deterministic() {
        let noise = NoiseModel::new(1.0, 0.0, 0.1).unwrap();
        let cfg = SessionConfig::new(
            Configuration::LoOn,
            noise,
            q12(),
            10_000,
            DEFAULT_SAMPLE_RATE_HZ,
            1234,
        )
        .unwrap();
        let a = simulate_session(&cfg).unwrap();
        let b = simulate_session(&cfg).unwrap();
        assert_eq!(a, b);
        let cfg2 = SessionConfig::new(
            Configuration::LoOn,
            noise,
            q12(),
            10_000,
            DEFAULT_SAMPLE_RATE_HZ,
            1235,
        )
        .unwrap();
        assert_ne!(simulate_session(&cfg2).unwrap(), a);
    }

    #[test]
    fn sweep_emits_one_block_per_gain() {
        let noise = NoiseModel::new(1.0, 0.0, 0.05).unwrap();
        let cfg = SessionConfig::new(
            Configuration::LoSweep {
                gains: vec![0.5, 1.0, 2.0],
            },
            noise,
            q12(),
            1000,
            DEFAULT_SAMPLE_RATE_HZ,
            7,
        )
        .unwrap();
        let blocks = simulate_session(&cfg).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.tag() == ConfigurationTag::LoSweep));
        assert!(blocks.iter().all(|b| b.len() == 1000));
        // gain sweep changes the spread
        let spread = |b: &SampleBlock| {
            let mean: f64 =
                b.codes().iter().map(|&c| f64::from(c)).sum::<f64>() / b.len() as f64;
            b.codes()
                .iter()
                .map(|&c| (f64::from(c) - mean).powi(2))
                .sum::<f64>()
                / b.len() as f64
        };
        assert!(spread(&blocks[0]) < spread(&blocks[2]));
    }

    #[test]
    fn sweep_validation() {
        let noise = NoiseModel::new(1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            SessionConfig::new(
                Configuration::LoSweep { gains: vec![1.0] },
                noise,
                q12(),
                10,
                DEFAULT_SAMPLE_RATE_HZ,
                0,
            ),
            Err(AcquisitionError::SweepTooShort(1))
        ));
        assert!(matches!(
            SessionConfig::new(
                Configuration::LoSweep {
                    gains: vec![1.0, -2.0]
                },
                noise,
                q12(),
                10,
                DEFAULT_SAMPLE_RATE_HZ,
                0,
            ),
            Err(AcquisitionError::InvalidSweepGain { index: 1, .. })
        ));
    }

    #[test]
    fn histogram_counts_and_order_invariance() {
        let q = QuantizerSpec::new(1.0, 2).unwrap();
        let b = SampleBlock::new(vec![0, 0, 1], q, ConfigurationTag::LoOn).unwrap();
        let h = b.histogram();
        assert_eq!(h.counts(), &[2, 1, 0, 0]);
        let p = h.probabilities();
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p[1] - 1.0 / 3.0).abs() < 1e-15);

        let b2 = SampleBlock::new(vec![1, 0, 0], q, ConfigurationTag::LoOn).unwrap();
        assert_eq!(b2.histogram().counts(), h.counts());
    }

    #[test]
    fn block_validation() {
        let q = QuantizerSpec::new(1.0, 2).unwrap();
        assert!(matches!(
            SampleBlock::new(vec![], q, ConfigurationTag::LoOn),
            Err(AcquisitionError::EmptyBlock)
        ));
        assert!(matches!(
            SampleBlock::new(vec![4], q, ConfigurationTag::LoOn),
            Err(AcquisitionError::CodeOutOfRange { code: 4, .. })
        ));
    }

    #[test]
    fn raw_roundtrip_smoke() {
        let q = q12();
        let b = SampleBlock::new(vec![0, 2048, 4095], q, ConfigurationTag::LoOn).unwrap();
        let parsed = SampleBlock::from_bytes(&b.to_bytes()).unwrap();
        assert_eq!(parsed, b);
    }

    #[test]
    fn raw_parse_errors_are_distinct() {
        let q = q12();
        let b = SampleBlock::new(vec![1, 2, 3], q, ConfigurationTag::LoOff).unwrap();
        let bytes = b.to_bytes();

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::BadMagic)
        ));

        let mut bad = bytes.clone();
        bad[4] = 9;
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::UnsupportedVersion(9))
        ));

        // declared 12-bit file carrying code 5000
        let mut bad = bytes.clone();
        bad[23] = (5000u16 & 0xff) as u8;
        bad[24] = (5000u16 >> 8) as u8;
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::CodeOutOfRange { code: 5000, .. })
        ));

        // zero-count header
        let mut bad = bytes.clone();
        for i in 15..23 {
            bad[i] = 0;
        }
        bad.truncate(23);
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::EmptyBlock)
        ));

        let mut bad = bytes.clone();
        bad.truncate(bytes.len() - 2);
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::Truncated { .. })
        ));

        let mut bad = bytes.clone();
        bad.push(0);
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::TrailingData(1))
        ));

        let mut bad = bytes;
        bad[14] = 7;
        assert!(matches!(
            SampleBlock::from_bytes(&bad),
            Err(AcquisitionError::InvalidTag(7))
        ));
    }

    #[test]
    fn raw_file_roundtrip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("block.qrng");
        let q = QuantizerSpec::new(2.0, 8).unwrap();
        let b = SampleBlock::new(vec![7, 0, 255, 128], q, ConfigurationTag::LoSweep).unwrap();
        store_raw(&b, &path).unwrap();
        assert_eq!(load_raw(&path).unwrap(), b);
    }

    #[test]
    fn histogram_from_counts_validation() {
        let q = QuantizerSpec::new(1.0, 2).unwrap();
        assert!(SampleHistogram::from_counts(q, vec![0; 3], ConfigurationTag::LoOn).is_err());
        assert!(matches!(
            SampleHistogram::from_counts(q, vec![0; 4], ConfigurationTag::LoOn),
            Err(AcquisitionError::EmptyBlock)
        ));
        let h = SampleHistogram::from_counts(q, vec![1, 2, 3, 4], ConfigurationTag::LoOn).unwrap();
        assert_eq!(h.total(), 10);
        let s: f64 = h.probabilities().iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}
