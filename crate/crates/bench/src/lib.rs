//! Input builders shared by the benchmarks.

use homred_cli::image::ImageGrid;
use homred_core::matrix::IntMatrix;
use homred_core::sample::SampleRng;

/// A sparse random matrix with entries in {-max..max}.
pub fn random_sparse_matrix(rows: usize, cols: usize, density: f64, max: i64) -> IntMatrix {
    let mut rng = SampleRng::new(1234);
    let mut m = IntMatrix::zero(rows, cols);
    let per_mille = (density * 1000.0) as i64;
    for r in 0..rows {
        for c in 0..cols {
            if rng.range_i64(0, 999) < per_mille {
                let v = rng.range_i64(1, max);
                let v = if rng.range_i64(0, 1) == 0 { v } else { -v };
                m.set(r, c, v);
            }
        }
    }
    m
}

/// A filled grid with a sparse sprinkling of rectangular holes.
pub fn big_image(width: usize, height: usize) -> ImageGrid {
    let mut rng = SampleRng::new(99);
    let mut pixels = vec![true; width * height];
    for _ in 0..(width * height / 40) {
        let x = rng.range(0, width - 1);
        let y = rng.range(0, height - 1);
        pixels[y * width + x] = false;
    }
    ImageGrid::new(width, height, pixels)
}
