use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cirng",
    version,
    about = "CI(ISAAC, XORshift) generator, analysis and watermarking"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a bit stream to a file (or stdout).
    Generate(GenerateArgs),
    /// Run the built-in statistical battery; exit code 3 if any test fails.
    Test(TestArgs),
    /// Key-sensitivity sweep: variance ratio per key pair, as CSV.
    Sensitivity(SensitivityArgs),
    /// Overlapping output-word triples scaled to [0, 1), as CSV.
    Cloud(CloudArgs),
    /// Throughput of the composite generator and its two inputs.
    Bench(BenchArgs),
    /// Encrypt (or decrypt) a PBM watermark with chaotic iterations.
    WmEncrypt(WmEncryptArgs),
    /// Embed a PBM watermark into the low bit planes of a PGM carrier.
    WmEmbed(WmEmbedArgs),
    /// Extract a watermark from a marked PGM.
    WmExtract(WmExtractArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Raw,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// The composite generator.
    Ci,
    /// Raw ISAAC words, MSB-first.
    Isaac,
    /// Raw XORshift words, MSB-first.
    Xorshift,
    Zeros,
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// The N = 5 worked example with injected iteration counts and strategy.
    Table2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    Mixed,
    Direct,
}

/// Generator parameters.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Number of cells N (output word width).
    #[arg(long = "n", default_value_t = 32)]
    pub n_cells: usize,
    /// Base iteration count per round; defaults to 3N.
    #[arg(long)]
    pub c: Option<u32>,
    /// Do not emit the initial state as the first output.
    #[arg(long)]
    pub no_emit_initial: bool,
    /// Allow c < 3N.
    #[arg(long)]
    pub unsafe_params: bool,
    /// Unbiased cell selection by rejection sampling instead of b mod N.
    #[arg(long)]
    pub rejection: bool,
    #[arg(long, value_enum, default_value_t = Schedule::Mixed)]
    pub key_schedule: Schedule,
}

/// Key material.
#[derive(Debug, Clone, Args)]
pub struct KeyArgs {
    /// Initial state as hex; cell 1 is the most significant bit.
    #[arg(long, default_value = "0")]
    pub x0: String,
    /// ISAAC key bytes as hex.
    #[arg(
        long,
        env = "CIRNG_ISAAC_KEY",
        default_value = "",
        hide_env_values = true
    )]
    pub isaac_key: String,
    /// Nonzero XORshift seed, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "2463534242")]
    pub xorshift_seed: String,
    /// Derive the key from the current time (recorded in the metadata).
    #[arg(long)]
    pub time_seed: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Replay a built-in fixture instead of keyed generators.
    #[arg(long, value_enum)]
    pub inject_fixture: Option<Fixture>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Metadata sidecar path; defaults to `<output>.meta`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub gen: GeneratorArgs,
    #[arg(long, default_value_t = Source::Ci, value_enum)]
    pub source: Source,
    #[arg(long, default_value_t = 1_000_000)]
    pub bits: usize,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub gen: GeneratorArgs,
    #[arg(long, default_value_t = Source::Ci, value_enum)]
    pub source: Source,
    #[arg(long, default_value_t = 1_000_000)]
    pub bits: usize,
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
    #[arg(long, default_value_t = 100_000)]
    pub bits: usize,
    /// Seed for choosing base keys and flipped bits.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CloudArgs {
    #[command(flatten)]
    pub gen: GeneratorArgs,
    /// Number of output words (triples = words - 2).
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub gen: GeneratorArgs,
    #[arg(long, default_value_t = 4 << 20)]
    pub bytes: usize,
}

#[derive(Debug, Args)]
pub struct WmKeyArgs {
    #[command(flatten)]
    pub key: KeyArgs,
    /// Key width N in bits.
    #[arg(long = "n", default_value_t = 32)]
    pub n_cells: usize,
    #[arg(long, default_value_t = 5000)]
    pub iterations: usize,
}

#[derive(Debug, Args)]
pub struct WmEncryptArgs {
    #[command(flatten)]
    pub wm: WmKeyArgs,
    /// Input watermark (PBM P4 or P1).
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct WmEmbedArgs {
    #[command(flatten)]
    pub wm: WmKeyArgs,
    /// Carrier image (PGM P5, maxval 255).
    #[arg(long)]
    pub carrier: PathBuf,
    /// Watermark (PBM P4 or P1).
    #[arg(long)]
    pub watermark: PathBuf,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct WmExtractArgs {
    #[command(flatten)]
    pub wm: WmKeyArgs,
    /// Marked image (PGM P5).
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub width: usize,
    #[arg(long, default_value_t = 64)]
    pub height: usize,
}
