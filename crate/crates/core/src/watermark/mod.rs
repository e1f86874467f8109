//! Chaotic watermarking of grayscale images.
//!
//! A binary watermark is encrypted by chaotic iterations whose initial state
//! is the watermark itself and whose strategy comes from a keyed [`CiPrng`].
//! The encrypted bits are then written into the three least significant bit
//! planes of the carrier at positions given by the U recurrence
//! `U(0) = S(0)`, `U(n+1) = S(n+1) + 2 U(n) + n (mod 3 W H)`.
//! Extraction needs only the marked image and the key.
//!
//! [`CiPrng`]: crate::CiPrng

mod image;
mod lsb;
pub mod pnm;
mod scheme;

pub use image::{BitImage, GrayImage};
pub use lsb::{lsb_plane, write_plane, LsbPlane};
pub use scheme::{
    bit_error_rate, embed, embed_with, embedding_positions, encrypt_watermark, extract,
    extract_with, psnr, u_sequence, URecurrence, DEFAULT_ITERATIONS, WATERMARK_SIDE,
};
