use std::io::Write;

use crate::error::{Error, Result};

use super::source::BitSource;

/// On-disk stream formats for external test suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamFormat {
    /// Bytes packed MSB-first in emission order.
    Raw,
    /// '0'/'1' characters, a newline after every 64th bit.
    Ascii,
}

pub const ASCII_LINE_BITS: usize = 64;

pub fn write_bits<W: Write>(out: &mut W, bits: &[bool], format: StreamFormat) -> Result<()> {
    match format {
        StreamFormat::Raw => {
            if !bits.len().is_multiple_of(8) {
                return Err(Error::InvalidParams(format!(
                    "raw export needs a multiple of 8 bits, got {}",
                    bits.len()
                )));
            }
            let bytes: Vec<u8> = bits
                .chunks_exact(8)
                .map(|c| c.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8))
                .collect();
            out.write_all(&bytes)?;
        }
        StreamFormat::Ascii => {
            let mut line = Vec::with_capacity(ASCII_LINE_BITS + 1);
            for chunk in bits.chunks(ASCII_LINE_BITS) {
                line.clear();
                line.extend(chunk.iter().map(|&b| if b { b'1' } else { b'0' }));
                if chunk.len() == ASCII_LINE_BITS {
                    line.push(b'\n');
                }
                out.write_all(&line)?;
            }
        }
    }
    Ok(())
}

/// Streams `n_bits` from the source in bounded chunks.
pub fn export_stream<W: Write>(
    source: &mut dyn BitSource,
    n_bits: usize,
    format: StreamFormat,
    mut out: W,
) -> Result<()> {
    if format == StreamFormat::Raw && !n_bits.is_multiple_of(8) {
        return Err(Error::InvalidParams(format!(
            "raw export needs a multiple of 8 bits, got {n_bits}"
        )));
    }
    // multiple of 64 so ascii lines never straddle chunks
    const CHUNK: usize = 1 << 20;
    let mut left = n_bits;
    let mut buf = Vec::with_capacity(CHUNK.min(n_bits));
    while left > 0 {
        let take = left.min(CHUNK);
        buf.clear();
        source.extend_bits(&mut buf, take);
        write_bits(&mut out, &buf, format)?;
        left -= take;
    }
    out.flush()?;
    Ok(())
}

/// Parses an ascii-01 stream; whitespace is ignored.
pub fn parse_ascii(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Format(format!(
                "unexpected character {other:?} in bit stream"
            ))),
        })
        .collect()
}
