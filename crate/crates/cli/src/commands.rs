use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use cirng::analysis::{
    export_stream, format_report, point_cloud, run_battery, sensitivity_sweep, throughput_bench,
    write_cloud_csv, Alternating, BitSource, StreamFormat, SweepConfig, WordBits, Zeros,
};
use cirng::prng::{TABLE2_BITS, TABLE2_M, TABLE2_S};
use cirng::watermark::{self, pnm};
use cirng::{
    table2_fixture, BitState, CiPrng, CiPrngParams, Execution, IndexReduction, Isaac, KeySchedule,
    SeedKey, Xorshift,
};

use crate::args::*;
use crate::error::CliError;
use crate::meta::{sidecar_path, Metadata};

type Result<T> = std::result::Result<T, CliError>;

fn build_params(p: &ParamArgs) -> Result<CiPrngParams> {
    let params = CiPrngParams {
        c: p.c.unwrap_or(3 * p.n_cells as u32),
        emit_initial: !p.no_emit_initial,
        allow_unsafe: p.unsafe_params,
        reduction: if p.rejection {
            IndexReduction::Rejection
        } else {
            IndexReduction::Modulo
        },
        schedule: match p.key_schedule {
            Schedule::Mixed => KeySchedule::Mixed,
            Schedule::Direct => KeySchedule::Direct,
        },
        ..CiPrngParams::with_cells(p.n_cells)
    };
    params.validate()?;
    Ok(params)
}

fn parse_u32(s: &str) -> Result<u32> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| CliError::config(format!("invalid key: xorshift seed {s:?}: {e}")))
}

fn build_key(k: &KeyArgs, n_cells: usize) -> Result<SeedKey> {
    if k.time_seed {
        return Ok(SeedKey::from_time(n_cells)?);
    }
    let hex_x0 = k.x0.trim_start_matches("0x");
    let x0 = u64::from_str_radix(if hex_x0.is_empty() { "0" } else { hex_x0 }, 16)
        .map_err(|e| CliError::config(format!("invalid key: x0 {:?}: {e}", k.x0)))?;
    let x0 = BitState::from_word(x0, n_cells).map_err(|e| {
        CliError::config(format!(
            "invalid key: x0 does not fit {n_cells} cells ({e})"
        ))
    })?;
    let isaac_key = hex::decode(k.isaac_key.trim_start_matches("0x"))
        .map_err(|e| CliError::config(format!("invalid key: ISAAC key hex: {e}")))?;
    Ok(SeedKey::new(x0, isaac_key, parse_u32(&k.xorshift_seed)?)?)
}

fn record_key(meta: &mut Metadata, key: &SeedKey) {
    meta.push("x0", format!("{:x}", key.x0.pack()));
    meta.push("isaac_key", hex::encode(&key.isaac_key));
    meta.push("xorshift_seed", key.xorshift_seed);
}

fn record_params(meta: &mut Metadata, p: &CiPrngParams) {
    meta.push("n_cells", p.n_cells);
    meta.push("c", p.c);
    meta.push("emit_initial", p.emit_initial);
    meta.push("unsafe_params", p.allow_unsafe);
    meta.push("index_reduction", p.reduction.name());
    meta.push("key_schedule", p.schedule.name());
}

fn fixture_meta(meta: &mut Metadata) {
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    meta.push("fixture", "table2");
    meta.push("fixture_m", list(&TABLE2_M));
    meta.push("fixture_s", list(&TABLE2_S));
}

/// Builds the requested bit source and records how to rebuild it.
fn build_source(
    gen: &GeneratorArgs,
    source: Source,
    bits: usize,
    meta: &mut Metadata,
) -> Result<Box<dyn BitSource>> {
    if let Some(Fixture::Table2) = gen.inject_fixture {
        if source != Source::Ci {
            return Err(CliError::config(
                "--inject-fixture only applies to --source ci",
            ));
        }
        if bits > TABLE2_BITS {
            return Err(CliError::config(format!(
                "the table2 fixture covers only {TABLE2_BITS} bits, {bits} requested"
            )));
        }
        let g = table2_fixture();
        fixture_meta(meta);
        meta.extend(g.describe());
        return Ok(Box::new(g));
    }
    meta.push("source", format!("{source:?}").to_lowercase());
    Ok(match source {
        Source::Zeros => Box::new(Zeros),
        Source::Alternating => Box::new(Alternating::default()),
        Source::Ci => {
            let params = build_params(&gen.params)?;
            let key = build_key(&gen.key, params.n_cells)?;
            record_key(meta, &key);
            record_params(meta, &params);
            let g = CiPrng::new(&key, params)?;
            meta.extend(g.describe());
            Box::new(g)
        }
        Source::Isaac => {
            let key = build_key(&gen.key, gen.params.n_cells)?;
            record_key(meta, &key);
            meta.push("variant", Isaac::VARIANT);
            Box::new(WordBits::isaac(Isaac::from_key_bytes(&key.isaac_key)?))
        }
        Source::Xorshift => {
            let key = build_key(&gen.key, gen.params.n_cells)?;
            record_key(meta, &key);
            meta.push("variant", Xorshift::VARIANT);
            Box::new(WordBits::xorshift(Xorshift::new(key.xorshift_seed)?))
        }
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::io(p, e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(meta: &Metadata, out: &OutputArgs) -> Result<()> {
    if let Some(path) = sidecar_path(out.output.as_deref(), out.meta.as_deref()) {
        meta.write(&path)?;
    }
    Ok(())
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

pub fn generate(args: &GenerateArgs) -> Result<()> {
    let format = match args.format {
        Format::Raw => StreamFormat::Raw,
        Format::Ascii => StreamFormat::Ascii,
    };
    if format == StreamFormat::Raw && !args.bits.is_multiple_of(8) {
        return Err(CliError::config(format!(
            "raw format needs a multiple of 8 bits, got {}",
            args.bits
        )));
    }
    let mut meta = Metadata::new("generate");
    let mut src = build_source(&args.gen, args.source, args.bits, &mut meta)?;
    meta.push("bits", args.bits);
    meta.push("format", format!("{:?}", args.format).to_lowercase());
    let out = open_output(args.out.output.as_deref())?;
    export_stream(&mut *src, args.bits, format, out).map_err(|e| match (e, &args.out.output) {
        (cirng::Error::Io(io), Some(p)) => CliError::io(p, io),
        (e, _) => e.into(),
    })?;
    finish(&meta, &args.out)
}

pub fn test(args: &TestArgs) -> Result<()> {
    let mut meta = Metadata::new("test");
    let mut src = build_source(&args.gen, args.source, args.bits, &mut meta)?;
    meta.push("bits", args.bits);
    let reports = run_battery(&mut *src, args.bits, exec(args.sequential))?;
    let text = format_report(&reports);
    let mut out = open_output(args.out.output.as_deref())?;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io(e.to_string()))?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    meta.push("failed", failed);
    finish(&meta, &args.out)?;
    if failed > 0 {
        return Err(CliError::TestFailed(failed));
    }
    Ok(())
}

pub fn sensitivity(args: &SensitivityArgs) -> Result<()> {
    let params = build_params(&args.params)?;
    let mut meta = Metadata::new("sensitivity");
    record_params(&mut meta, &params);
    meta.push("pairs", args.pairs);
    meta.push("bits", args.bits);
    meta.push("seed", args.seed);
    let cfg = SweepConfig {
        pairs: args.pairs,
        n_bits: args.bits,
        params,
        seed: args.seed,
    };
    let results = sensitivity_sweep(&cfg, exec(args.sequential))?;
    let mut out = open_output(args.out.output.as_deref())?;
    let mut csv = String::from("pair,flipped_cell,n,h,p,running_mean\n");
    let mut sum = 0.0;
    for (i, r) in results.iter().enumerate() {
        sum += r.result.p;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.pair,
            r.flipped_cell,
            r.result.n,
            r.result.h,
            r.result.p,
            sum / (i + 1) as f64
        ));
    }
    out.write_all(csv.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io(e.to_string()))?;
    let mean = if results.is_empty() {
        f64::NAN
    } else {
        sum / results.len() as f64
    };
    meta.push("mean_p", mean);
    eprintln!("mean P over {} pairs: {mean:.6}", results.len());
    finish(&meta, &args.out)
}

pub fn cloud(args: &CloudArgs) -> Result<()> {
    let mut meta = Metadata::new("cloud");
    meta.push("count", args.count);
    let (words, n_bits) = if let Some(Fixture::Table2) = args.gen.inject_fixture {
        if args.count > 4 {
            return Err(CliError::config("the table2 fixture provides only 4 words"));
        }
        fixture_meta(&mut meta);
        let mut g = table2_fixture();
        (
            (0..args.count).map(|_| g.next_word()).collect::<Vec<_>>(),
            5,
        )
    } else {
        let params = build_params(&args.gen.params)?;
        let key = build_key(&args.gen.key, params.n_cells)?;
        record_key(&mut meta, &key);
        record_params(&mut meta, &params);
        let mut g = CiPrng::new(&key, params)?;
        meta.extend(g.describe());
        let n = g.n_cells() as u32;
        ((0..args.count).map(|_| g.next_word()).collect(), n)
    };
    let points = point_cloud(&words, n_bits)?;
    write_cloud_csv(open_output(args.out.output.as_deref())?, &points)
        .map_err(|e| CliError::Io(e.to_string()))?;
    finish(&meta, &args.out)
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let params = build_params(&args.gen.params)?;
    let key = build_key(&args.gen.key, params.n_cells)?;
    let rows = throughput_bench(&key, params, args.bytes)?;
    println!(
        "{:<20} {:>12} {:>10} {:>12}",
        "generator", "bytes", "seconds", "MB/s"
    );
    for r in rows {
        println!(
            "{:<20} {:>12} {:>10.4} {:>12.2}",
            r.generator,
            r.bytes,
            r.seconds,
            r.bytes_per_second() / 1e6
        );
    }
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn wm_key(args: &WmKeyArgs, meta: &mut Metadata) -> Result<SeedKey> {
    let key = build_key(&args.key, args.n_cells)?;
    record_key(meta, &key);
    meta.push("n_cells", args.n_cells);
    meta.push("iterations", args.iterations);
    meta.push("key_fingerprint", key.fingerprint());
    Ok(key)
}

fn sidecar(output: &Path) -> std::path::PathBuf {
    sidecar_path(Some(output), None).expect("output given")
}

pub fn wm_encrypt(args: &WmEncryptArgs) -> Result<()> {
    let mut meta = Metadata::new("wm-encrypt");
    let key = wm_key(&args.wm, &mut meta)?;
    let w = pnm::read_pbm(&read(&args.input)?)?;
    let enc = watermark::encrypt_watermark(&w, &key, args.wm.iterations)?;
    write(&args.output, &pnm::write_pbm(&enc))?;
    meta.write(&sidecar(&args.output))
}

pub fn wm_embed(args: &WmEmbedArgs) -> Result<()> {
    let mut meta = Metadata::new("wm-embed");
    let key = wm_key(&args.wm, &mut meta)?;
    let carrier = pnm::read_pgm(&read(&args.carrier)?)?;
    let w = pnm::read_pbm(&read(&args.watermark)?)?;
    let marked = watermark::embed_with(&carrier, &w, &key, args.wm.iterations)?;
    let quality = watermark::psnr(&carrier, &marked)?;
    write(&args.output, &pnm::write_pgm(&marked))?;
    meta.push("watermark_width", w.width());
    meta.push("watermark_height", w.height());
    meta.push("psnr_db", quality);
    meta.write(&sidecar(&args.output))
}

pub fn wm_extract(args: &WmExtractArgs) -> Result<()> {
    let mut meta = Metadata::new("wm-extract");
    let key = wm_key(&args.wm, &mut meta)?;
    let marked = pnm::read_pgm(&read(&args.input)?)?;
    let w = watermark::extract_with(&marked, &key, args.width, args.height, args.wm.iterations)?;
    write(&args.output, &pnm::write_pbm(&w))?;
    meta.push("watermark_width", args.width);
    meta.push("watermark_height", args.height);
    meta.write(&sidecar(&args.output))
}
