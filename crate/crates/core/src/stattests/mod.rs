//! Statistical validation battery.
//!
//! Eight hypothesis tests in the style of the standard randomness test
//! suites, each producing a p-value under the null hypothesis that the
//! input is uniform random: monobit frequency, block frequency, runs,
//! longest run of ones, cumulative sums, approximate entropy, serial, and
//! the discrete Fourier (spectral) test. Inputs shorter than a test's
//! documented minimum are rejected by [`apply_test`] and skipped (not
//! failed) by [`run_battery`].
//!
//! The cumulative-sums and serial statistics each define a pair of
//! p-values; the battery reports the forward mode and the first serial
//! p-value, with both members of each pair available through
//! [`cumulative_sums_p_values`] and [`serial_p_values`].

mod special;

use crate::bits::BitBlock;
use crate::erf::{erfc, normal_cdf};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use special::igamc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatTestError {
    #[error("{test} requires at least {minimum} bits, got {got}")]
    InputTooShort {
        test: TestId,
        minimum: usize,
        got: usize,
    },
    #[error("battery input must be non-empty")]
    EmptyInput,
    #[error("significance level must be in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("{test} block length {value} is out of range {min}..={max}")]
    InvalidBlockLen {
        test: TestId,
        value: usize,
        min: usize,
        max: usize,
    },
}

/// Identifiers of the supported tests, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestId {
    MonobitFrequency,
    BlockFrequency,
    Runs,
    LongestRunOfOnes,
    CumulativeSums,
    ApproximateEntropy,
    Serial,
    DiscreteFourier,
}

impl TestId {
    pub const ALL: [TestId; 8] = [
        TestId::MonobitFrequency,
        TestId::BlockFrequency,
        TestId::Runs,
        TestId::LongestRunOfOnes,
        TestId::CumulativeSums,
        TestId::ApproximateEntropy,
        TestId::Serial,
        TestId::DiscreteFourier,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TestId::MonobitFrequency => "monobit_frequency",
            TestId::BlockFrequency => "block_frequency",
            TestId::Runs => "runs",
            TestId::LongestRunOfOnes => "longest_run_of_ones",
            TestId::CumulativeSums => "cumulative_sums",
            TestId::ApproximateEntropy => "approximate_entropy",
            TestId::Serial => "serial",
            TestId::DiscreteFourier => "discrete_fourier",
        }
    }
}

impl std::fmt::Display for TestId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tunable knobs of the battery; the defaults suit megabit inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryParams {
    /// Pass threshold: a test passes when its p-value is >= alpha.
    pub alpha: f64,
    /// Block length of the block-frequency test.
    pub block_frequency_block_len: usize,
    /// Pattern length m of the approximate-entropy test.
    pub approximate_entropy_block_len: usize,
    /// Pattern length m of the serial test.
    pub serial_block_len: usize,
    /// Run the cumulative-sums test in backward mode.
    pub cusum_backward: bool,
}

impl Default for BatteryParams {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            block_frequency_block_len: 128,
            approximate_entropy_block_len: 10,
            serial_block_len: 16,
            cusum_backward: false,
        }
    }
}

/// Outcome of one test on one input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    pub test_id: TestId,
    pub p_value: f64,
    pub pass: bool,
    pub statistic: f64,
    pub bits_evaluated: u64,
}

/// A test the battery could not run on this input length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedTest {
    pub test_id: TestId,
    pub minimum_bits: u64,
    pub got_bits: u64,
}

/// Battery output: per-test results in fixed order plus the verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub alpha: f64,
    pub results: Vec<TestResult>,
    pub skipped: Vec<SkippedTest>,
    pub overall_pass: bool,
    pub input_bits: u64,
    pub input_digest_sha256: String,
}

/// Documented minimum input length of each test under `params`.
pub fn minimum_bits(test: TestId, params: &BatteryParams) -> usize {
    match test {
        TestId::MonobitFrequency | TestId::Runs | TestId::CumulativeSums => 100,
        TestId::BlockFrequency => 100.max(20 * params.block_frequency_block_len),
        TestId::LongestRunOfOnes => 128,
        TestId::ApproximateEntropy => 1usize << (params.approximate_entropy_block_len + 5),
        TestId::Serial => 1usize << (params.serial_block_len + 2),
        TestId::DiscreteFourier => 1000,
    }
}

fn check_len(test: TestId, bits: &BitBlock, params: &BatteryParams) -> Result<(), StatTestError> {
    let minimum = minimum_bits(test, params);
    if bits.len() < minimum {
        return Err(StatTestError::InputTooShort {
            test,
            minimum,
            got: bits.len(),
        });
    }
    Ok(())
}

fn result(test_id: TestId, p_value: f64, statistic: f64, n: usize, alpha: f64) -> TestResult {
    TestResult {
        test_id,
        p_value,
        pass: p_value >= alpha,
        statistic,
        bits_evaluated: n as u64,
    }
}

/// Runs one named test with explicit parameters.
pub fn apply_test(
    test_id: TestId,
    bits: &BitBlock,
    params: &BatteryParams,
) -> Result<TestResult, StatTestError> {
    if !(params.alpha.is_finite() && params.alpha > 0.0 && params.alpha < 1.0) {
        return Err(StatTestError::InvalidAlpha(params.alpha));
    }
    check_len(test_id, bits, params)?;
    let n = bits.len();
    let alpha = params.alpha;
    let r = match test_id {
        TestId::MonobitFrequency => {
            let (p, stat) = monobit_frequency(bits);
            result(test_id, p, stat, n, alpha)
        }
        TestId::BlockFrequency => {
            let m = params.block_frequency_block_len;
            if m < 2 {
                return Err(StatTestError::InvalidBlockLen {
                    test: test_id,
                    value: m,
                    min: 2,
                    max: n,
                });
            }
            let (p, stat) = block_frequency(bits, m);
            result(test_id, p, stat, n, alpha)
        }
        TestId::Runs => {
            let (p, stat) = runs(bits);
            result(test_id, p, stat, n, alpha)
        }
        TestId::LongestRunOfOnes => {
            let (p, stat) = longest_run_of_ones(bits);
            result(test_id, p, stat, n, alpha)
        }
        TestId::CumulativeSums => {
            let (fwd, bwd, z_f, z_b) = cumulative_sums_detail(bits);
            let (p, stat) = if params.cusum_backward {
                (bwd, z_b)
            } else {
                (fwd, z_f)
            };
            result(test_id, p, stat, n, alpha)
        }
        TestId::ApproximateEntropy => {
            let m = params.approximate_entropy_block_len;
            if !(1..=24).contains(&m) {
                return Err(StatTestError::InvalidBlockLen {
                    test: test_id,
                    value: m,
                    min: 1,
                    max: 24,
                });
            }
            let (p, stat) = approximate_entropy(bits, m);
            result(test_id, p, stat, n, alpha)
        }
        TestId::Serial => {
            let m = params.serial_block_len;
            if !(3..=24).contains(&m) {
                return Err(StatTestError::InvalidBlockLen {
                    test: test_id,
                    value: m,
                    min: 3,
                    max: 24,
                });
            }
            let (p1, _p2, d1, _d2) = serial_detail(bits, m);
            result(test_id, p1, d1, n, alpha)
        }
        TestId::DiscreteFourier => {
            let (p, stat) = discrete_fourier(bits);
            result(test_id, p, stat, n, alpha)
        }
    };
    Ok(r)
}

/// Runs every supported test; too-short tests are recorded as skipped.
/// Deterministic, independent of thread scheduling.
pub fn run_battery(bits: &BitBlock, params: &BatteryParams) -> Result<BatteryReport, StatTestError> {
    if bits.is_empty() {
        return Err(StatTestError::EmptyInput);
    }
    if !(params.alpha.is_finite() && params.alpha > 0.0 && params.alpha < 1.0) {
        return Err(StatTestError::InvalidAlpha(params.alpha));
    }
    let outcomes: Vec<Result<TestResult, SkippedTest>> = TestId::ALL
        .par_iter()
        .map(|&id| {
            let minimum = minimum_bits(id, params);
            if bits.len() < minimum {
                Err(SkippedTest {
                    test_id: id,
                    minimum_bits: minimum as u64,
                    got_bits: bits.len() as u64,
                })
            } else {
                Ok(apply_test(id, bits, params).expect("length pre-checked"))
            }
        })
        .collect();
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => results.push(r),
            Err(s) => skipped.push(s),
        }
    }
    let overall_pass = results.iter().all(|r| r.pass);
    let mut hasher = Sha256::new();
    hasher.update(bits.to_bytes_msb());
    hasher.update((bits.len() as u64).to_le_bytes());
    let digest = hasher.finalize();
    let input_digest_sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(BatteryReport {
        alpha: params.alpha,
        results,
        skipped,
        overall_pass,
        input_bits: bits.len() as u64,
        input_digest_sha256,
    })
}

// ------------------------------------------------------------------ tests

fn monobit_frequency(bits: &BitBlock) -> (f64, f64) {
    let n = bits.len() as f64;
    let ones = bits.count_ones() as f64;
    let s = 2.0 * ones - n;
    let s_obs = s.abs() / n.sqrt();
    (erfc(s_obs / std::f64::consts::SQRT_2), s_obs)
}

fn block_frequency(bits: &BitBlock, m: usize) -> (f64, f64) {
    let nblocks = bits.len() / m;
    let mut chi2 = 0.0;
    for b in 0..nblocks {
        let mut ones = 0usize;
        for i in 0..m {
            ones += usize::from(bits.get(b * m + i));
        }
        let pi = ones as f64 / m as f64;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * m as f64;
    (igamc(nblocks as f64 / 2.0, chi2 / 2.0), chi2)
}

fn runs(bits: &BitBlock) -> (f64, f64) {
    let n = bits.len();
    let nf = n as f64;
    let pi = bits.count_ones() as f64 / nf;
    let mut v = 1u64;
    for i in 1..n {
        if bits.get(i) != bits.get(i - 1) {
            v += 1;
        }
    }
    // frequency prerequisite: grossly biased inputs fail outright
    if (pi - 0.5).abs() >= 2.0 / nf.sqrt() {
        return (0.0, v as f64);
    }
    let num = (v as f64 - 2.0 * nf * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi);
    (erfc(num / den), v as f64)
}

struct LongestRunTable {
    block_len: usize,
    degrees: usize,
    lowest: u32,
    highest: u32,
    probs: &'static [f64],
}

const LONGEST_RUN_TABLES: [LongestRunTable; 3] = [
    LongestRunTable {
        block_len: 8,
        degrees: 3,
        lowest: 1,
        highest: 4,
        probs: &[0.2148, 0.3672, 0.2305, 0.1875],
    },
    LongestRunTable {
        block_len: 128,
        degrees: 5,
        lowest: 4,
        highest: 9,
        probs: &[0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124],
    },
    LongestRunTable {
        block_len: 10_000,
        degrees: 6,
        lowest: 10,
        highest: 16,
        probs: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
    },
];

fn longest_run_of_ones(bits: &BitBlock) -> (f64, f64) {
    let n = bits.len();
    let table = if n >= 750_000 {
        &LONGEST_RUN_TABLES[2]
    } else if n >= 6272 {
        &LONGEST_RUN_TABLES[1]
    } else {
        &LONGEST_RUN_TABLES[0]
    };
    let m = table.block_len;
    let nblocks = n / m;
    let mut nu = vec![0u64; table.degrees + 1];
    for b in 0..nblocks {
        let mut longest = 0u32;
        let mut cur = 0u32;
        for i in 0..m {
            if bits.get(b * m + i) {
                cur += 1;
                longest = longest.max(cur);
            } else {
                cur = 0;
            }
        }
        let class = longest.clamp(table.lowest, table.highest) - table.lowest;
        nu[class as usize] += 1;
    }
    let nb = nblocks as f64;
    let chi2: f64 = nu
        .iter()
        .zip(table.probs)
        .map(|(&count, &p)| {
            let e = nb * p;
            (count as f64 - e) * (count as f64 - e) / e
        })
        .sum();
    (igamc(table.degrees as f64 / 2.0, chi2 / 2.0), chi2)
}

fn cusum_p(n: usize, z: i64) -> f64 {
    let nf = n as f64;
    let zf = z as f64;
    let sq = nf.sqrt();
    let lo1 = ((-nf / zf + 1.0) / 4.0).floor() as i64;
    let hi = ((nf / zf - 1.0) / 4.0).floor() as i64;
    let mut a = 0.0;
    for k in lo1..=hi {
        let kf = k as f64;
        a += normal_cdf((4.0 * kf + 1.0) * zf / sq) - normal_cdf((4.0 * kf - 1.0) * zf / sq);
    }
    let lo2 = ((-nf / zf - 3.0) / 4.0).floor() as i64;
    let mut b = 0.0;
    for k in lo2..=hi {
        let kf = k as f64;
        b += normal_cdf((4.0 * kf + 3.0) * zf / sq) - normal_cdf((4.0 * kf + 1.0) * zf / sq);
    }
    (1.0 - a + b).clamp(0.0, 1.0)
}

fn cumulative_sums_detail(bits: &BitBlock) -> (f64, f64, f64, f64) {
    let n = bits.len();
    let mut s = 0i64;
    let mut z_fwd = 0i64;
    for i in 0..n {
        s += if bits.get(i) { 1 } else { -1 };
        z_fwd = z_fwd.max(s.abs());
    }
    let total = s;
    // backward mode: partial sums of the reversed sequence are S_n - S_k
    let mut s = 0i64;
    let mut z_bwd = total.abs();
    for i in 0..n {
        s += if bits.get(i) { 1 } else { -1 };
        z_bwd = z_bwd.max((total - s).abs());
    }
    (
        cusum_p(n, z_fwd),
        cusum_p(n, z_bwd),
        z_fwd as f64,
        z_bwd as f64,
    )
}

/// Both cumulative-sums p-values: (forward, backward).
pub fn cumulative_sums_p_values(bits: &BitBlock) -> Result<(f64, f64), StatTestError> {
    check_len(TestId::CumulativeSums, bits, &BatteryParams::default())?;
    let (f, b, _, _) = cumulative_sums_detail(bits);
    Ok((f, b))
}

/// Occurrence counts of every m-bit pattern over the circularly extended
/// input (n windows).
fn pattern_counts(bits: &BitBlock, m: usize) -> Vec<u64> {
    let n = bits.len();
    let mut counts = vec![0u64; 1 << m];
    let mask = (1usize << m) - 1;
    let mut idx = 0usize;
    for i in 0..m {
        idx = (idx << 1) | usize::from(bits.get(i % n));
    }
    counts[idx] += 1;
    for w in 1..n {
        idx = ((idx << 1) | usize::from(bits.get((w + m - 1) % n))) & mask;
        counts[idx] += 1;
    }
    counts
}

fn psi_sq(bits: &BitBlock, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    let counts = pattern_counts(bits, m);
    let sum: f64 = counts.iter().map(|&c| c as f64 * c as f64).sum();
    (1u64 << m) as f64 / n * sum - n
}

fn serial_detail(bits: &BitBlock, m: usize) -> (f64, f64, f64, f64) {
    let p_m = psi_sq(bits, m);
    let p_m1 = psi_sq(bits, m - 1);
    let p_m2 = psi_sq(bits, m - 2);
    let d1 = p_m - p_m1;
    let d2 = p_m - 2.0 * p_m1 + p_m2;
    let p1 = igamc((1u64 << (m - 2)) as f64, d1 / 2.0);
    let p2 = igamc((1u64 << (m - 3)) as f64, d2 / 2.0);
    (p1, p2, d1, d2)
}

/// Both serial p-values for pattern length m: (del-psi^2, del^2-psi^2).
pub fn serial_p_values(bits: &BitBlock, m: usize) -> Result<(f64, f64), StatTestError> {
    let params = BatteryParams {
        serial_block_len: m,
        ..BatteryParams::default()
    };
    if !(3..=24).contains(&m) {
        return Err(StatTestError::InvalidBlockLen {
            test: TestId::Serial,
            value: m,
            min: 3,
            max: 24,
        });
    }
    check_len(TestId::Serial, bits, &params)?;
    let (p1, p2, _, _) = serial_detail(bits, m);
    Ok((p1, p2))
}

fn approximate_entropy(bits: &BitBlock, m: usize) -> (f64, f64) {
    let n = bits.len() as f64;
    let phi = |mm: usize| -> f64 {
        pattern_counts(bits, mm)
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let f = c as f64 / n;
                f * f.ln()
            })
            .sum()
    };
    let apen = phi(m) - phi(m + 1);
    let chi2 = 2.0 * n * (std::f64::consts::LN_2 - apen);
    (igamc((1u64 << (m - 1)) as f64, chi2 / 2.0), chi2)
}

fn discrete_fourier(bits: &BitBlock) -> (f64, f64) {
    use rustfft::{num_complex::Complex, FftPlanner};
    let n = bits.len();
    let mut buf: Vec<Complex<f64>> = (0..n)
        .map(|i| Complex::new(if bits.get(i) { 1.0 } else { -1.0 }, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let threshold = (n as f64 * (1.0 / 0.05_f64).ln()).sqrt();
    let below = buf[..n / 2]
        .iter()
        .filter(|c| c.norm() < threshold)
        .count() as f64;
    let expected = 0.95 * n as f64 / 2.0;
    let d = (below - expected) / (n as f64 * 0.95 * 0.05 / 4.0).sqrt();
    (erfc(d.abs() / std::f64::consts::SQRT_2), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_from_str(s: &str) -> BitBlock {
        BitBlock::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    fn alternating(n: usize) -> BitBlock {
        BitBlock::from_bools(&(0..n).map(|i| i % 2 == 0).collect::<Vec<_>>())
    }

    #[test]
    fn monobit_alternating_is_perfect() {
        let r = apply_test(
            TestId::MonobitFrequency,
            &alternating(1000),
            &BatteryParams::default(),
        )
        .unwrap();
        assert_eq!(r.p_value, 1.0);
        assert!(r.pass);
        assert_eq!(r.bits_evaluated, 1000);
    }

    #[test]
    fn monobit_all_ones_fails_hard() {
        let ones = BitBlock::from_bools(&vec![true; 1000]);
        let r = apply_test(TestId::MonobitFrequency, &ones, &BatteryParams::default()).unwrap();
        assert!(r.p_value < 1e-15);
        assert!(!r.pass);
    }

    #[test]
    fn runs_rejects_heavy_bias() {
        let ones = BitBlock::from_bools(&vec![true; 1000]);
        let r = apply_test(TestId::Runs, &ones, &BatteryParams::default()).unwrap();
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn too_short_inputs_name_the_test() {
        let short = alternating(50);
        let err = apply_test(TestId::MonobitFrequency, &short, &BatteryParams::default());
        assert_eq!(
            err,
            Err(StatTestError::InputTooShort {
                test: TestId::MonobitFrequency,
                minimum: 100,
                got: 50
            })
        );
        let err = apply_test(TestId::DiscreteFourier, &alternating(500), &BatteryParams::default());
        assert!(matches!(
            err,
            Err(StatTestError::InputTooShort {
                test: TestId::DiscreteFourier,
                minimum: 1000,
                ..
            })
        ));
    }

    #[test]
    fn complement_invariance_monobit_and_runs() {
        let bits = BitBlock::pseudo_random(5000, 33);
        let complement =
            BitBlock::from_bools(&(0..5000).map(|i| !bits.get(i)).collect::<Vec<_>>());
        let p = BatteryParams::default();
        let a = apply_test(TestId::MonobitFrequency, &bits, &p).unwrap();
        let b = apply_test(TestId::MonobitFrequency, &complement, &p).unwrap();
        assert!((a.p_value - b.p_value).abs() < 1e-12);
        let a = apply_test(TestId::Runs, &bits, &p).unwrap();
        let b = apply_test(TestId::Runs, &complement, &p).unwrap();
        assert!((a.p_value - b.p_value).abs() < 1e-12);
    }

    #[test]
    fn battery_order_and_idempotence() {
        let bits = BitBlock::pseudo_random(400_000, 9);
        let params = BatteryParams::default();
        let a = run_battery(&bits, &params).unwrap();
        let b = run_battery(&bits, &params).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let ids: Vec<TestId> = a.results.iter().map(|r| r.test_id).collect();
        assert_eq!(ids, TestId::ALL.to_vec());
        assert!(a.skipped.is_empty());
        assert_eq!(a.overall_pass, a.results.iter().all(|r| r.pass));
    }

    #[test]
    fn battery_skips_short_tests_without_failing() {
        // 2000 bits: serial (needs 2^18) and approximate entropy (2^15)
        // cannot run at default parameters, block frequency needs 2560.
        let bits = BitBlock::pseudo_random(2000, 12);
        let report = run_battery(&bits, &BatteryParams::default()).unwrap();
        let skipped: Vec<TestId> = report.skipped.iter().map(|s| s.test_id).collect();
        assert!(skipped.contains(&TestId::Serial));
        assert!(skipped.contains(&TestId::ApproximateEntropy));
        assert!(skipped.contains(&TestId::BlockFrequency));
        assert_eq!(report.results.len() + report.skipped.len(), 8);
    }

    #[test]
    fn battery_rejects_empty_and_bad_alpha() {
        assert_eq!(
            run_battery(&BitBlock::zeros(0), &BatteryParams::default()),
            Err(StatTestError::EmptyInput)
        );
        let params = BatteryParams {
            alpha: 0.0,
            ..BatteryParams::default()
        };
        assert!(matches!(
            run_battery(&BitBlock::pseudo_random(100, 1), &params),
            Err(StatTestError::InvalidAlpha(_))
        ));
    }

    #[test]
    fn doc_worked_examples_small() {
        // worked examples published with the standard test suite
        let p = BatteryParams::default();
        let r = apply_test(
            TestId::MonobitFrequency,
            &bits_from_str(&"1011010101".repeat(10)),
            &p,
        );
        assert!(r.is_ok());
        let freq = monobit_frequency(&bits_from_str("1011010101"));
        assert!((freq.0 - 0.527089).abs() < 1e-6);

        let bf = block_frequency(&bits_from_str("0110011010"), 3);
        assert!((bf.0 - 0.801252).abs() < 1e-6);

        let rn = runs(&bits_from_str("1001101011"));
        assert!((rn.0 - 0.147232).abs() < 1e-6);

        let (s1, s2, _, _) = serial_detail(&bits_from_str("0011011101"), 3);
        assert!((s1 - 0.808792).abs() < 1e-6);
        assert!((s2 - 0.670320).abs() < 1e-6);

        let (ae, _) = approximate_entropy(&bits_from_str("0100110101"), 3);
        assert!((ae - 0.261961).abs() < 1e-6);
    }

    #[test]
    fn serial_and_cusum_pairs_exposed() {
        let bits = BitBlock::pseudo_random(300_000, 14);
        let (p1, p2) = serial_p_values(&bits, 16).unwrap();
        assert!((0.0..=1.0).contains(&p1) && (0.0..=1.0).contains(&p2));
        let (f, b) = cumulative_sums_p_values(&bits).unwrap();
        assert!((0.0..=1.0).contains(&f) && (0.0..=1.0).contains(&b));
        assert!(serial_p_values(&bits, 2).is_err());
    }
}
