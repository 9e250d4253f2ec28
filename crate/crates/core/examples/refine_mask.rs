//! Cleans a noisy segmentation: speckle, a detached blob, pinholes and a
//! ragged edge go in, one smooth hole-free component comes out.

use maskmeasure::mask::{self, MaskConfig};
use maskmeasure::BinaryMask;
use rand::{Rng, SeedableRng};

fn main() -> maskmeasure::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let raw = BinaryMask::from_fn(200, 200, |x, y| {
        let (dx, dy) = (x as f64 - 90.0, y as f64 - 100.0);
        let body = (dx / 40.0).powi(2) + (dy / 70.0).powi(2) <= 1.0;
        let blob = (x as f64 - 175.0).hypot(y as f64 - 20.0) < 8.0;
        let jitter = (dx / 40.0).powi(2) + (dy / 70.0).powi(2) <= 1.08;
        (body && !(x % 17 == 0 && y % 13 == 0))
            || blob
            || (jitter && rng.random_bool(0.5))
            || rng.random_bool(0.003)
    });
    let cfg = MaskConfig::default();
    let refined = mask::refine(&raw, &cfg)?;
    println!("config: {cfg:?}");
    println!(
        "raw:     area {:6}, components {}",
        raw.area(),
        mask::label_components(&raw).len()
    );
    println!(
        "refined: area {:6}, components {}",
        refined.area(),
        mask::label_components(&refined).len()
    );
    println!(
        "ideal ellipse area {:.0}",
        std::f64::consts::PI * 40.0 * 70.0
    );
    Ok(())
}
