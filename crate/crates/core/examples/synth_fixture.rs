//! Writes a synthetic fixture directory that the `maskmeasure` binary can
//! read back: mask, depth, intrinsics and ground truth.
//!
//! `cargo run --example synth_fixture -- /tmp/fixture`

use maskmeasure::synth::{self, RevolutionProfile};
use maskmeasure::{io, CameraIntrinsics};

fn main() -> maskmeasure::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixture".into());
    let dir = std::path::Path::new(&dir);
    let intr = CameraIntrinsics::new(800.0, 800.0, 320.0, 240.0);
    let profile = RevolutionProfile::new(
        vec![(0.0, 0.03), (0.15, 0.03), (0.25, 0.018), (0.3, 0.018)],
        1.0,
        (640, 480),
    )
    .with_tilt(0.2)
    .with_offset(0.02, -0.01);
    let render = synth::render(&profile, &intr)?;
    let depth = synth::perturb(&render.depth, 0.002, 1, 42)?;
    std::fs::create_dir_all(dir)?;
    io::write_mask(dir.join("mask.png"), &render.mask)?;
    io::write_depth(dir.join("depth.png"), &depth)?;
    io::write_json(dir.join("intrinsics.json"), &intr)?;
    io::write_json(dir.join("truth.json"), &render.truth)?;
    println!("wrote {}", dir.display());
    println!(
        "maskmeasure measure --mask {0}/mask.png --depth {0}/depth.png --intrinsics {0}/intrinsics.json",
        dir.display()
    );
    Ok(())
}
