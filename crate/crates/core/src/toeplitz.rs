//! Seeded two-universal randomness extraction by Toeplitz matrix
//! multiplication over GF(2).
//!
//! The operator with input length `n`, output length `m` and seed `s` of
//! length `n + m - 1` has entries `T[i][j] = s[i - j + n - 1]`. It is never
//! expanded into a dense matrix: `T x` equals bits `n-1 .. n-1+m` of the
//! carryless (GF(2)) convolution of the seed and input polynomials, which
//! is computed with word-level shift/XOR accumulation.

use crate::acquisition::SampleBlock;
use crate::bits::BitBlock;
use crate::entropy::{self, EntropyError};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExtractError {
    #[error("output length {output} exceeds input length {input}")]
    OutputTooLong { input: usize, output: usize },
    #[error("lengths must be positive")]
    ZeroLength,
    #[error("seed must be {expected} bits, got {got}")]
    SeedLengthMismatch { expected: usize, got: usize },
    #[error("input must be {expected} bits, got {got}")]
    InputLengthMismatch { expected: usize, got: usize },
    #[error("need at least {needed} input bits for one block, got {got}")]
    InsufficientInput { needed: u64, got: u64 },
    #[error(transparent)]
    Budget(#[from] EntropyError),
}

/// Extractor geometry plus its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec {
    input_len: usize,
    output_len: usize,
    seed: BitBlock,
}

impl ToeplitzSpec {
    pub fn new(input_len: usize, output_len: usize, seed: BitBlock) -> Result<Self, ExtractError> {
        if input_len == 0 || output_len == 0 {
            return Err(ExtractError::ZeroLength);
        }
        if output_len > input_len {
            return Err(ExtractError::OutputTooLong {
                input: input_len,
                output: output_len,
            });
        }
        let expected = input_len + output_len - 1;
        if seed.len() != expected {
            return Err(ExtractError::SeedLengthMismatch {
                expected,
                got: seed.len(),
            });
        }
        Ok(Self {
            input_len,
            output_len,
            seed,
        })
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    pub fn seed(&self) -> &BitBlock {
        &self.seed
    }
}

/// The implicit Toeplitz operator; shareable across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzOperator {
    spec: ToeplitzSpec,
}

impl ToeplitzOperator {
    pub fn new(spec: ToeplitzSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> &ToeplitzSpec {
        &self.spec
    }

    /// Matrix entry `T[i][j] = seed[i - j + n - 1]`.
    pub fn entry(&self, row: usize, col: usize) -> bool {
        assert!(row < self.spec.output_len && col < self.spec.input_len);
        self.spec.seed.get(row + self.spec.input_len - 1 - col)
    }

    /// Applies the operator to one input block over GF(2).
    pub fn extract(&self, input: &BitBlock) -> Result<BitBlock, ExtractError> {
        if input.len() != self.spec.input_len {
            return Err(ExtractError::InputLengthMismatch {
                expected: self.spec.input_len,
                got: input.len(),
            });
        }
        let conv = carryless_mul(
            self.spec.seed.words(),
            self.spec.seed.len(),
            input.words(),
            input.len(),
        );
        Ok(BitBlock::from_word_range(
            &conv,
            self.spec.input_len - 1,
            self.spec.output_len,
        ))
    }
}

/// GF(2) polynomial product of `a` and `b` (bit i = coefficient of x^i).
fn carryless_mul(a: &[u64], a_bits: usize, b: &[u64], b_bits: usize) -> Vec<u64> {
    let out_bits = a_bits + b_bits - 1;
    let mut acc = vec![0u64; out_bits.div_ceil(64) + 1];
    for (wi, &word) in b.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            xor_shifted(&mut acc, a, wi * 64 + bit);
        }
    }
    acc
}

/// XORs `src` shifted left by `shift` bits into `acc`.
fn xor_shifted(acc: &mut [u64], src: &[u64], shift: usize) {
    let wo = shift >> 6;
    let bo = shift & 63;
    if bo == 0 {
        for (k, &v) in src.iter().enumerate() {
            acc[wo + k] ^= v;
        }
    } else {
        let mut carry = 0u64;
        for (k, &v) in src.iter().enumerate() {
            acc[wo + k] ^= (v << bo) | carry;
            carry = v >> (64 - bo);
        }
        if carry != 0 {
            acc[wo + src.len()] ^= carry;
        }
    }
}

/// Result of streaming extraction over a sample block.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamExtraction {
    /// Concatenated extractor output, truncated to the certified budget.
    pub bits: BitBlock,
    /// Serialized input size: sample count times bit depth.
    pub raw_bits: u64,
    /// Certified budget from the leftover-hash bound.
    pub budget_bits: u64,
    /// Block-aligned extractor capacity: `floor(raw/n) * m`.
    pub block_output_bits: u64,
    /// Number of whole input blocks available.
    pub blocks_available: u64,
    /// True when the budget cut the output short of the block-aligned
    /// capacity (including a zero budget).
    pub budget_limited: bool,
}

/// Serializes a sample block to bits (fixed-width codes, most significant
/// bit first), splits it into operator-sized blocks, extracts each, and
/// concatenates the outputs, truncating to the certified extractable
/// length.
///
/// Blocks are independent, so they are processed in parallel; concatenation
/// preserves block order.
pub fn extract_stream(
    op: &ToeplitzOperator,
    samples: &SampleBlock,
    h_min_per_sample: f64,
    epsilon_hash: f64,
) -> Result<StreamExtraction, ExtractError> {
    let bits_per_code = u64::from(samples.quantizer().bits());
    let sample_count = samples.len() as u64;
    let raw_bits = sample_count * bits_per_code;
    let n_in = op.spec.input_len as u64;
    let m_out = op.spec.output_len as u64;
    if raw_bits < n_in {
        return Err(ExtractError::InsufficientInput {
            needed: n_in,
            got: raw_bits,
        });
    }
    let budget_bits = entropy::extractable_length(sample_count, h_min_per_sample, epsilon_hash)?;
    let blocks_available = raw_bits / n_in;
    let block_output_bits = blocks_available * m_out;

    if budget_bits == 0 {
        return Ok(StreamExtraction {
            bits: BitBlock::zeros(0),
            raw_bits,
            budget_bits,
            block_output_bits,
            blocks_available,
            budget_limited: true,
        });
    }

    let stream = BitBlock::from_codes_msb(samples.codes(), samples.quantizer().bits());
    let blocks_needed = blocks_available.min(budget_bits.div_ceil(m_out));
    let outputs: Vec<BitBlock> = (0..blocks_needed)
        .into_par_iter()
        .map(|i| {
            let input = BitBlock::from_word_range(
                stream.words(),
                (i * n_in) as usize,
                n_in as usize,
            );
            op.extract(&input).expect("block length fixed by construction")
        })
        .collect();
    let mut bits = BitBlock::zeros(0);
    for out in &outputs {
        bits.extend(out);
    }
    bits.truncate(budget_bits.min(block_output_bits) as usize);
    Ok(StreamExtraction {
        bits,
        raw_bits,
        budget_bits,
        block_output_bits,
        blocks_available,
        budget_limited: budget_bits < block_output_bits,
    })
}
