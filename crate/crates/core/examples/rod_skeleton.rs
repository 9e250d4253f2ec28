//! Builds the rod skeleton of a curved tube and reports each intermediate
//! product: medial axis, topology, pruning, trunk and augmented centerline.

use maskmeasure::skeleton;
use maskmeasure::synth;

fn main() -> maskmeasure::Result<()> {
    let rod = synth::curved_rod(240, 320, 120.0, 30.0, 260.0, (30.0, 290.0), 12.0, 1.0);
    let c = skeleton::construct_rod_detailed(&rod.mask)?;
    println!("medial axis pixels   {}", c.medial_axis.skeleton.area());
    println!("max medial radius    {:.2} px", c.medial_axis.max_radius());
    println!("endpoints            {}", c.topology.endpoints.len());
    println!("junction clusters    {}", c.junctions.len());
    println!("prune length         {:.2} px", c.prune_length);
    println!("trunk pixels         {}", c.trunk.len());
    println!("augmented points     {}", c.skeleton.len());
    let worst = c
        .skeleton
        .points
        .iter()
        .filter(|p| (30.0..=290.0).contains(&p.y))
        .map(|p| rod.distance_to_centerline(p))
        .fold(0.0, f64::max);
    println!("max distance to generating curve {worst:.2} px (between the caps)");
    println!(
        "first {:?} last {:?}",
        c.skeleton.points[0],
        c.skeleton.points[c.skeleton.len() - 1]
    );
    Ok(())
}
