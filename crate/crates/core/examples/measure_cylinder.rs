//! Measures a rendered cylinder and compares with the analytic ground truth.
//!
//! `cargo run --example measure_cylinder -- 0.02 15` for radius 2 cm at a
//! 15 degree tilt.

use maskmeasure::pipeline::{self, RunConfig};
use maskmeasure::synth::{self, RevolutionProfile};
use maskmeasure::CameraIntrinsics;

fn main() -> maskmeasure::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let radius = args.first().copied().unwrap_or(0.02);
    let tilt = args.get(1).copied().unwrap_or(10.0);
    let intr = CameraIntrinsics::new(2000.0, 2000.0, 400.0, 400.0);
    let profile = RevolutionProfile::new(synth::cylinder(radius, 0.25), 1.0, (800, 800))
        .with_tilt(tilt.to_radians());
    let render = synth::render(&profile, &intr)?;
    let m = pipeline::measure(&render.mask, &render.depth, &intr, &RunConfig::default())?;
    let r = &m.report;
    let mean = r.diameters.iter().sum::<f64>() / r.len() as f64;
    println!("stations {:3}  dropped {:?}", r.len(), r.dropped_stations);
    println!("diameter {:.4} m (mean)  truth {:.4} m", mean, 2.0 * radius);
    println!(
        "length   {:.4} m         truth {:.4} m",
        r.length, render.truth.length
    );
    println!(
        "volume   {:.1} ml        truth {:.1} ml",
        r.volume_ml,
        render.truth.volume * 1e6
    );
    Ok(())
}
