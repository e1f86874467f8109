use crate::error::{Error, Result};

use super::image::GrayImage;

/// The three low bits of every pixel, concatenated in row-major order with
/// bit 2 first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsbPlane {
    pub bits: Vec<bool>,
}

impl LsbPlane {
    pub fn modulus(&self) -> usize {
        self.bits.len()
    }
}

pub fn lsb_plane(img: &GrayImage) -> LsbPlane {
    let bits = img
        .pixels()
        .iter()
        .flat_map(|&p| [(p >> 2) & 1 == 1, (p >> 1) & 1 == 1, p & 1 == 1])
        .collect();
    LsbPlane { bits }
}

/// Replaces the three low bits of every pixel of `img` with the plane.
pub fn write_plane(img: &GrayImage, plane: &LsbPlane) -> Result<GrayImage> {
    if plane.modulus() != 3 * img.pixels().len() {
        return Err(Error::Dimensions(format!(
            "plane of {} bits does not fit a {}x{} image",
            plane.modulus(),
            img.width(),
            img.height()
        )));
    }
    let pixels = img
        .pixels()
        .iter()
        .zip(plane.bits.chunks_exact(3))
        .map(|(&p, b)| (p & !0b111) | (b[0] as u8) << 2 | (b[1] as u8) << 1 | b[2] as u8)
        .collect();
    GrayImage::new(img.width(), img.height(), pixels)
}
