use std::io::Write;

use crate::error::{Error, Result};

/// Overlapping triples (w_i, w_i+1, w_i+2) / 2^N.
pub fn point_cloud(words: &[u64], n_bits: u32) -> Result<Vec<[f64; 3]>> {
    if n_bits == 0 || n_bits > 64 {
        return Err(Error::InvalidParams(format!(
            "word width {n_bits} not in [1, 64]"
        )));
    }
    if words.len() < 3 {
        return Err(Error::InsufficientData {
            test: "point cloud",
            needed: 3,
            got: words.len(),
        });
    }
    if let Some(&w) = words.iter().find(|&&w| n_bits < 64 && w >> n_bits != 0) {
        return Err(Error::OutOfRange {
            value: w,
            bits: n_bits,
        });
    }
    let scale = (n_bits as f64).exp2();
    Ok(words
        .windows(3)
        .map(|t| {
            [
                t[0] as f64 / scale,
                t[1] as f64 / scale,
                t[2] as f64 / scale,
            ]
        })
        .collect())
}

/// CSV with header `x,y,z`.
pub fn write_cloud_csv<W: Write>(mut out: W, points: &[[f64; 3]]) -> std::io::Result<()> {
    writeln!(out, "x,y,z")?;
    for [x, y, z] in points {
        writeln!(out, "{x},{y},{z}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_words() {
        let pts = point_cloud(&[20, 30, 31, 19], 5).unwrap();
        assert_eq!(
            pts,
            vec![[0.625, 0.9375, 0.96875], [0.9375, 0.96875, 0.59375]]
        );
        let mut csv = Vec::new();
        write_cloud_csv(&mut csv, &pts).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "x,y,z\n0.625,0.9375,0.96875\n0.9375,0.96875,0.59375\n"
        );
    }

    #[test]
    fn three_words_one_triple() {
        assert_eq!(point_cloud(&[1, 2, 3], 8).unwrap().len(), 1);
        assert!(point_cloud(&[1, 2], 8).is_err());
        assert!(point_cloud(&[1, 2, 256], 8).is_err());
    }

    proptest::proptest! {
        #[test]
        fn coordinates_in_unit_interval(words in proptest::collection::vec(0u64..1 << 32, 3..200)) {
            for p in point_cloud(&words, 32).unwrap() {
                proptest::prop_assert!(p.iter().all(|c| (0.0..1.0).contains(c)));
            }
        }
    }
}
