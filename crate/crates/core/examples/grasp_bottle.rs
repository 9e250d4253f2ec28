//! Ranks grasp candidates on a bottle. The neck is the concave region, so it
//! should come out on top with the default weights.

use maskmeasure::grasp::GraspWeights;
use maskmeasure::pipeline::{self, GeometryMode, RunConfig};
use maskmeasure::synth::{self, RevolutionProfile};
use maskmeasure::CameraIntrinsics;

fn main() -> maskmeasure::Result<()> {
    let weights: GraspWeights = std::env::args()
        .nth(1)
        .map(|w| w.parse())
        .transpose()?
        .unwrap_or_default();
    let intr = CameraIntrinsics::new(1400.0, 1400.0, 320.0, 240.0);
    let profile = RevolutionProfile::new(
        synth::bottle_profile(synth::BOTTLE_LENGTH, synth::BOTTLE_VOLUME),
        2.2,
        (640, 480),
    );
    let render = synth::render(&profile, &intr)?;
    let depth = synth::perturb(&render.depth, 0.005, 2, 0)?;
    let cfg = RunConfig {
        geometry: GeometryMode::General,
        weights,
        ..Default::default()
    };
    let (m, ranking) = pipeline::grasp(&render.mask, &depth, &intr, &cfg)?;
    println!("weights {weights:?}");
    println!("cog {:?}", ranking.cog);
    println!("station  score   d_hat  p_hat  cond  diameter(mm)");
    for c in ranking.candidates.iter().take(cfg.top_k) {
        println!(
            "{:7}  {:.3}  {:.3}  {:.3}  {:4}  {:.1}",
            c.station_index,
            c.score,
            c.d_hat,
            c.p_hat,
            c.cond,
            1e3 * c.diameter
        );
    }
    println!("{} stations scored", m.report.len());
    Ok(())
}
