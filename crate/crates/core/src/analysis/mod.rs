//! Evaluation of generator output: statistical battery, key sensitivity,
//! point clouds, stream export and throughput.

mod battery;
mod bench;
mod cloud;
mod export;
mod sensitivity;
mod source;
mod stats;

pub use battery::{format_report, run_battery, BATTERY_SIZE, MIN_BATTERY_BITS};
pub use bench::{throughput_bench, Throughput, MIN_BENCH_BYTES};
pub use cloud::{point_cloud, write_cloud_csv};
pub use export::{export_stream, parse_ascii, write_bits, StreamFormat};
pub use sensitivity::{
    sensitivity_sweep, sweep_mean, variance_ratio, PairResult, SensitivityResult, SweepConfig,
};
pub use source::{Alternating, BitSource, WordBits, Zeros};
pub use stats::{
    autocorrelation_test, chi_square_uniformity, monobit_test, runs_test, serial_test, TestReport,
    PASS_BAND,
};
