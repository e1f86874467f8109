//! Minimal netpbm support: PGM P5 (maxval 255) for carriers, PBM P4 for
//! watermarks, with plain P1 accepted on read.

use crate::error::{Error, Result};

use super::image::{BitImage, GrayImage};

/// Comment line written into every header.
pub const COMMENT: &str = concat!("# cirng ", env!("CARGO_PKG_VERSION"));

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn new(data: &'a [u8]) -> Self {
        Header { data, pos: 0 }
    }

    fn skip_space_and_comments(&mut self) {
        while let Some(&c) = self.data.get(self.pos) {
            if c == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn magic(&mut self) -> Result<&'a [u8]> {
        let m = self
            .data
            .get(..2)
            .ok_or_else(|| Error::Format("file too short for a netpbm header".into()))?;
        self.pos = 2;
        Ok(m)
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("expected {what} at byte {start}")))
    }

    /// Consumes the single whitespace byte separating header and raster.
    fn raster(&mut self) -> Result<&'a [u8]> {
        match self.data.get(self.pos) {
            Some(c) if c.is_ascii_whitespace() => Ok(&self.data[self.pos + 1..]),
            _ => Err(Error::Format("missing whitespace before raster".into())),
        }
    }
}

pub fn read_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut h = Header::new(data);
    if h.magic()? != b"P5" {
        return Err(Error::Format("not a binary PGM (P5) file".into()));
    }
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if maxval != 255 {
        return Err(Error::Format(format!(
            "maxval {maxval} unsupported, expected 255"
        )));
    }
    let raster = h.raster()?;
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::Format("image dimensions overflow".into()))?;
    if raster.len() < n {
        return Err(Error::Format(format!(
            "raster has {} bytes, expected {n}",
            raster.len()
        )));
    }
    GrayImage::new(width, height, raster[..n].to_vec())
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{COMMENT}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pbm(data: &[u8]) -> Result<BitImage> {
    let mut h = Header::new(data);
    let magic = h.magic()?;
    let plain = match magic {
        b"P4" => false,
        b"P1" => true,
        _ => return Err(Error::Format("not a PBM (P1/P4) file".into())),
    };
    let width = h.number("width")?;
    let height = h.number("height")?;
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::Format("image dimensions overflow".into()))?;
    let bits = if plain {
        let mut bits = Vec::with_capacity(n);
        while bits.len() < n {
            h.skip_space_and_comments();
            match h.data.get(h.pos) {
                Some(b'0') => bits.push(false),
                Some(b'1') => bits.push(true),
                Some(&c) => {
                    return Err(Error::Format(format!(
                        "unexpected byte {c:#04x} in P1 raster"
                    )))
                }
                None => return Err(Error::Format("P1 raster truncated".into())),
            }
            h.pos += 1;
        }
        bits
    } else {
        let raster = h.raster()?;
        let row_bytes = width.div_ceil(8);
        if raster.len() < row_bytes * height {
            return Err(Error::Format("P4 raster truncated".into()));
        }
        raster
            .chunks_exact(row_bytes)
            .take(height)
            .flat_map(|row| (0..width).map(move |x| (row[x / 8] >> (7 - x % 8)) & 1 == 1))
            .collect()
    };
    BitImage::new(width, height, bits)
}

pub fn write_pbm(img: &BitImage) -> Vec<u8> {
    let mut out = format!("P4\n{COMMENT}\n{} {}\n", img.width(), img.height()).into_bytes();
    for row in img.bits().chunks_exact(img.width()) {
        for byte in row.chunks(8) {
            let v = byte
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (b as u8) << (7 - i));
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_roundtrip_with_comment() {
        let img = GrayImage::new(3, 2, vec![0, 1, 2, 250, 254, 255]).unwrap();
        let bytes = write_pgm(&img);
        assert!(bytes.starts_with(b"P5\n# cirng "));
        assert_eq!(read_pgm(&bytes).unwrap(), img);
    }

    #[test]
    fn pgm_foreign_header() {
        let mut data = b"P5 # a comment\n2 # w\n 1\n255\n".to_vec();
        data.extend([7, 200]);
        let img = read_pgm(&data).unwrap();
        assert_eq!(
            (img.width(), img.height(), img.pixels()),
            (2, 1, &[7u8, 200][..])
        );
    }

    #[test]
    fn pgm_rejects_bad_input() {
        assert!(read_pgm(b"P2\n1 1\n255\n0").is_err());
        assert!(read_pgm(b"P5\n1 1\n65535\n\0\0").is_err());
        assert!(read_pgm(b"P5\n2 2\n255\n\0").is_err());
        assert!(read_pgm(b"P").is_err());
    }

    #[test]
    fn pbm_p4_row_padding() {
        let bits: Vec<bool> = (0..10 * 3).map(|i| i % 3 == 0).collect();
        let img = BitImage::new(10, 3, bits).unwrap();
        let bytes = write_pbm(&img);
        // header + 3 rows of 2 bytes
        let header_len = bytes.len() - 6;
        assert_eq!(
            &bytes[header_len..header_len + 2],
            &[0b1001_0010, 0b0100_0000]
        );
        assert_eq!(read_pbm(&bytes).unwrap(), img);
    }

    #[test]
    fn pbm_plain_accepted() {
        let img = read_pbm(b"P1\n# plain\n3 2\n1 0 1\n011").unwrap();
        assert_eq!(img.bits(), [true, false, true, false, true, true]);
        assert!(read_pbm(b"P1\n2 2\n1 0 1").is_err());
        assert!(read_pbm(b"P1\n2 1\n1 2").is_err());
    }
}
