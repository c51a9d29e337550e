//! Packed bit sequences.
//!
//! Bit `i` of a [`BitBlock`] lives in word `i / 64` at position `i % 64`
//! (LSB-first inside a word), which makes shift-based GF(2) convolution
//! straightforward. Byte-level serialization is most-significant-bit-first:
//! bit `i` maps to byte `i / 8`, mask `0x80 >> (i % 8)`. Unused trailing
//! bits of the last word are always zero.

use crate::splitmix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BitsError {
    #[error("bit length {len} does not fit in {bytes} bytes")]
    LengthMismatch { len: usize, bytes: usize },
    #[error("padding bits beyond the declared length are not zero")]
    NonZeroPadding,
    #[error("length mismatch: {left} vs {right} bits")]
    UnequalLengths { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBlock {
    words: Vec<u64>,
    len: usize,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BitBlock {
    /// All-zero block of `len` bits.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = Self::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            b.set(i, v);
        }
        b
    }

    /// Deterministic pseudo-random block; each 64-bit SplitMix64 word is
    /// consumed most-significant-bit-first. Test and seeding utility only.
    pub fn pseudo_random(len: usize, seed: u64) -> Self {
        let mut words = Vec::with_capacity(words_for(len));
        for k in 0..words_for(len) as u64 {
            // MSB-first consumption means bit (64k + i) is source bit 63-i,
            // which is a plain bit reversal in our LSB-first word layout.
            words.push(splitmix::nth(seed, k).reverse_bits());
        }
        let mut b = Self { words, len };
        b.mask_tail();
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i & 63);
        if v {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn mask_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        // words vector never holds more than the required count
        self.words.truncate(words_for(self.len));
    }

    /// Copies `len` bits starting at `start` out of a raw word slice.
    pub(crate) fn from_word_range(src: &[u64], start: usize, len: usize) -> Self {
        let mut words = Vec::with_capacity(words_for(len));
        let wo = start >> 6;
        let bo = start & 63;
        for k in 0..words_for(len) {
            let lo = src.get(wo + k).copied().unwrap_or(0) >> bo;
            let hi = if bo == 0 {
                0
            } else {
                src.get(wo + k + 1).copied().unwrap_or(0) << (64 - bo)
            };
            words.push(lo | hi);
        }
        let mut b = Self { words, len };
        b.mask_tail();
        b
    }

    /// MSB-first packed bytes, `ceil(len/8)` of them.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = vec![0u8; nbytes];
        for i in 0..self.len {
            if self.get(i) {
                out[i >> 3] |= 0x80 >> (i & 7);
            }
        }
        out
    }

    /// Parses MSB-first packed bytes; padding bits must be zero.
    pub fn from_bytes_msb(bytes: &[u8], len: usize) -> Result<Self, BitsError> {
        if bytes.len() != len.div_ceil(8) {
            return Err(BitsError::LengthMismatch {
                len,
                bytes: bytes.len(),
            });
        }
        let mut b = Self::zeros(len);
        for i in 0..len {
            if bytes[i >> 3] & (0x80 >> (i & 7)) != 0 {
                b.set(i, true);
            }
        }
        // verify the pad region
        for (i, &byte) in bytes.iter().enumerate() {
            let first_bit = i * 8;
            for j in 0..8 {
                if first_bit + j >= len && byte & (0x80 >> j) != 0 {
                    return Err(BitsError::NonZeroPadding);
                }
            }
        }
        Ok(b)
    }

    /// Serializes ADC codes as fixed-width big-endian bit fields,
    /// most significant bit first.
    pub fn from_codes_msb(codes: &[u16], bits_per_code: u8) -> Self {
        let w = usize::from(bits_per_code);
        let mut b = Self::zeros(codes.len() * w);
        for (k, &code) in codes.iter().enumerate() {
            for j in 0..w {
                let bit = (code >> (w - 1 - j)) & 1 == 1;
                if bit {
                    b.set(k * w + j, true);
                }
            }
        }
        b
    }

    pub fn xor(&self, other: &Self) -> Result<Self, BitsError> {
        if self.len != other.len {
            return Err(BitsError::UnequalLengths {
                left: self.len,
                right: other.len,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self {
            words,
            len: self.len,
        })
    }

    /// Appends another block's bits after this one's.
    pub fn extend(&mut self, other: &Self) {
        let old = self.len;
        self.len += other.len;
        self.words.resize(words_for(self.len), 0);
        if old & 63 == 0 {
            // word-aligned fast path
            let wo = old >> 6;
            for (k, &w) in other.words.iter().enumerate() {
                self.words[wo + k] = w;
            }
        } else {
            for i in 0..other.len {
                let v = other.get(i);
                if v {
                    self.set(old + i, true);
                }
            }
        }
        self.mask_tail();
    }

    /// Shortens the block to at most `len` bits.
    pub fn truncate(&mut self, len: usize) {
        if len < self.len {
            self.len = len;
            self.mask_tail();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut b = BitBlock::zeros(130);
        b.set(0, true);
        b.set(64, true);
        b.set(129, true);
        assert!(b.get(0) && b.get(64) && b.get(129));
        assert!(!b.get(1) && !b.get(128));
        assert_eq!(b.count_ones(), 3);
    }

    #[test]
    fn bytes_msb_convention() {
        // bits 1,0,1,1 -> byte 1011_0000
        let b = BitBlock::from_bools(&[true, false, true, true]);
        assert_eq!(b.to_bytes_msb(), vec![0b1011_0000]);
        let back = BitBlock::from_bytes_msb(&[0b1011_0000], 4).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn nonzero_padding_rejected() {
        assert_eq!(
            BitBlock::from_bytes_msb(&[0b1011_1000], 4),
            Err(BitsError::NonZeroPadding)
        );
        assert!(BitBlock::from_bytes_msb(&[0xFF], 4).is_err());
        assert_eq!(
            BitBlock::from_bytes_msb(&[0, 0], 4),
            Err(BitsError::LengthMismatch { len: 4, bytes: 2 })
        );
    }

    #[test]
    fn codes_serialize_msb_first() {
        // code 0b1011 over 4 bits -> bits 1,0,1,1
        let b = BitBlock::from_codes_msb(&[0b1011], 4);
        assert_eq!(b.len(), 4);
        assert!(b.get(0) && !b.get(1) && b.get(2) && b.get(3));
        // 12-bit code: the most significant bit comes first
        let b = BitBlock::from_codes_msb(&[0x800, 0x001], 12);
        assert_eq!(b.len(), 24);
        assert!(b.get(0));
        assert!(!b.get(11));
        assert!(!b.get(12));
        assert!(b.get(23));
    }

    #[test]
    fn extend_and_truncate() {
        let mut a = BitBlock::from_bools(&[true, false, true]);
        let b = BitBlock::from_bools(&[false, true]);
        a.extend(&b);
        assert_eq!(a.len(), 5);
        assert_eq!(
            (0..5).map(|i| a.get(i)).collect::<Vec<_>>(),
            vec![true, false, true, false, true]
        );
        a.truncate(2);
        assert_eq!(a.len(), 2);
        assert_eq!(a.count_ones(), 1);
        // truncation zeroes the dropped bits so equality stays structural
        assert_eq!(a, BitBlock::from_bools(&[true, false]));
    }

    #[test]
    fn word_range_extraction() {
        let b = BitBlock::pseudo_random(300, 99);
        let sub = BitBlock::from_word_range(b.words(), 70, 150);
        for i in 0..150 {
            assert_eq!(sub.get(i), b.get(70 + i), "bit {i}");
        }
    }

    #[test]
    fn pseudo_random_is_deterministic_and_masked() {
        let a = BitBlock::pseudo_random(100, 7);
        let b = BitBlock::pseudo_random(100, 7);
        assert_eq!(a, b);
        assert_ne!(a, BitBlock::pseudo_random(100, 8));
        // tail beyond bit 100 must be zero
        assert_eq!(a.words().last().unwrap() >> (100 - 64), 0);
    }

    #[test]
    fn pseudo_random_word_is_msb_first() {
        let b = BitBlock::pseudo_random(64, 3);
        let word = crate::splitmix::nth(3, 0);
        for i in 0..64 {
            assert_eq!(b.get(i), (word >> (63 - i)) & 1 == 1);
        }
    }
}
