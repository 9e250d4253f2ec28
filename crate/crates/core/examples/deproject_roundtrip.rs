//! Projects points through a distorted camera and lifts them back with
//! their depth.

use maskmeasure::geom::Point3;
use maskmeasure::CameraIntrinsics;

fn main() -> maskmeasure::Result<()> {
    let intr = CameraIntrinsics::new(615.0, 615.0, 320.0, 240.0)
        .with_distortion([-0.28, 0.07, 0.0008, -0.0004, 0.0]);
    let mut worst = 0.0f64;
    for i in 0..9 {
        for j in 0..7 {
            let z = 0.5 + 0.25 * ((i + j) % 4) as f64;
            let p = Point3::new((i as f64 - 4.0) * 0.1 * z, (j as f64 - 3.0) * 0.1 * z, z);
            let px = intr.project(&p)?;
            let back = intr.deproject(&px, z)?;
            worst = worst.max((p - back).norm());
            if i == 8 && j == 6 {
                println!("{p:?} -> pixel ({:.2}, {:.2}) -> {back:?}", px.x, px.y);
            }
        }
    }
    println!("worst round-trip error {worst:.3e} m");
    Ok(())
}
