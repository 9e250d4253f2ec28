//! Symmetry-axis skeleton for a non rod-like object: a rendered bottle,
//! tilted, whose medial axis would branch at the shoulders.

use maskmeasure::skeleton::{self, select_axis};
use maskmeasure::synth::{self, RevolutionProfile};
use maskmeasure::CameraIntrinsics;

fn main() -> maskmeasure::Result<()> {
    let intr = CameraIntrinsics::new(1400.0, 1400.0, 320.0, 240.0);
    let profile = RevolutionProfile::new(
        synth::bottle_profile(synth::BOTTLE_LENGTH, synth::BOTTLE_VOLUME),
        1.2,
        (640, 480),
    )
    .with_tilt(20f64.to_radians());
    let render = synth::render(&profile, &intr)?;
    let sel = select_axis(&render.mask)?;
    println!("centroid        {:?}", sel.axis_origin);
    println!("principal axes  {:?}", sel.principal_axes);
    println!("DS scores       {:?}", sel.ds_scores);
    println!("forced first    {}", sel.forced_first_axis);
    let angle = sel
        .axis_direction
        .x
        .atan2(-sel.axis_direction.y)
        .to_degrees();
    println!("axis tilt       {angle:.2} deg (rendered at 20)");
    let skel = skeleton::construct_general(&render.mask)?;
    println!("skeleton points {}", skel.len());
    Ok(())
}
