//! Perpendicular chords with gated endpoint depths. A few depth spikes are
//! planted to show they never reach the medians.

use maskmeasure::io;
use maskmeasure::segments::{self, SamplingConfig};
use maskmeasure::skeleton;
use maskmeasure::synth::{self, RevolutionProfile};
use maskmeasure::CameraIntrinsics;

fn main() -> maskmeasure::Result<()> {
    let intr = CameraIntrinsics::new(900.0, 900.0, 320.0, 240.0);
    let profile =
        RevolutionProfile::new(synth::cylinder(0.025, 0.35), 1.0, (640, 480)).with_tilt(0.3);
    let render = synth::render(&profile, &intr)?;
    let skel = skeleton::construct_rod(&render.mask)?;
    let mut depth = render.depth.clone();
    for (x, y) in [(300, 200), (330, 260), (350, 300)] {
        if render.mask.get(x, y) {
            depth.set(x, y, 3.0);
        }
    }
    let cfg = SamplingConfig {
        stride: 20,
        ..Default::default()
    };
    let out = segments::segment_skeleton(&skel, &render.mask, &depth, &cfg)?;
    print!("{}", io::segments_csv(&out.segments));
    println!("skipped stations: {:?}", out.skipped_stations);
    Ok(())
}
