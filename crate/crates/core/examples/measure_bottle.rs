//! Bottle measured from several noisy poses, with length and volume error
//! per frame.

use maskmeasure::pipeline::{self, GeometryMode, RunConfig};
use maskmeasure::synth::{self, RevolutionProfile};
use maskmeasure::CameraIntrinsics;

fn main() -> maskmeasure::Result<()> {
    let intr = CameraIntrinsics::new(1400.0, 1400.0, 320.0, 240.0);
    let shape = synth::bottle_profile(synth::BOTTLE_LENGTH, synth::BOTTLE_VOLUME);
    let cfg = RunConfig {
        geometry: GeometryMode::General,
        ..Default::default()
    };
    for (i, (z, tilt)) in [
        (2.0, -12.0),
        (2.1, -4.0),
        (2.2, 0.0),
        (2.3, 6.0),
        (2.45, 14.0),
    ]
    .into_iter()
    .enumerate()
    {
        let profile =
            RevolutionProfile::new(shape.clone(), z, (640, 480)).with_tilt(f64::to_radians(tilt));
        let render = synth::render(&profile, &intr)?;
        let depth = synth::perturb(&render.depth, 0.005, 2, i as u64)?;
        let m = pipeline::measure(&render.mask, &depth, &intr, &cfg)?;
        println!(
            "z {z:.2} m tilt {tilt:+5.1}: length {:.4} m ({:+.1}%), volume {:.0} ml ({:+.1}%)",
            m.report.length,
            100.0 * (m.report.length / render.truth.length - 1.0),
            m.report.volume_ml,
            100.0 * (m.report.volume / render.truth.volume - 1.0)
        );
    }
    Ok(())
}
