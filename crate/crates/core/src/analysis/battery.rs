use std::fmt::Write as _;

use crate::error::Result;
use crate::par::{self, Execution};

use super::source::BitSource;
use super::stats::{
    autocorrelation_test, chi_square_uniformity, monobit_test, runs_test, serial_test, TestReport,
};

/// Number of tests in [`run_battery`].
pub const BATTERY_SIZE: usize = 5;

/// The chi-square member buckets bytes into 256 bins and needs 100 per bin.
pub const MIN_BATTERY_BITS: usize = 8 * 100 * 256;

type Job<'a> = Box<dyn Fn() -> Result<TestReport> + Sync + 'a>;

/// Draws `n_bits` from `source` once and runs monobit, runs, serial (m = 2),
/// autocorrelation (lag 1) and byte-level chi-square over the same stream.
pub fn run_battery(
    source: &mut dyn BitSource,
    n_bits: usize,
    exec: Execution,
) -> Result<Vec<TestReport>> {
    let bits = source.take_bits(n_bits);
    battery_over(&bits, exec)
}

pub(crate) fn battery_over(bits: &[bool], exec: Execution) -> Result<Vec<TestReport>> {
    let bytes: Vec<u64> = bits
        .chunks_exact(8)
        .map(|c| c.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
        .collect();
    let jobs: Vec<Job> = vec![
        Box::new(|| monobit_test(bits)),
        Box::new(|| runs_test(bits)),
        Box::new(|| serial_test(bits, 2)),
        Box::new(|| autocorrelation_test(bits, 1)),
        Box::new(|| chi_square_uniformity(&bytes, 8, 8)),
    ];
    debug_assert_eq!(jobs.len(), BATTERY_SIZE);
    par::run_all(exec, &jobs).into_iter().collect()
}

/// One line per test: name, statistic, p-value, PASS/FAIL.
pub fn format_report(reports: &[TestReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "{:<26} {:>16.6} {:>12.6e} {}",
            r.test_name,
            r.statistic,
            r.p_value,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    out
}
