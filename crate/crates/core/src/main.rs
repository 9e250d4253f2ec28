use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maskmeasure::camera::CameraIntrinsics;
use maskmeasure::grasp::GraspWeights;
use maskmeasure::pipeline::{self, GeometryMode, Inputs, RunConfig};
use maskmeasure::{io, synth};

#[derive(Parser)]
#[command(
    name = "maskmeasure",
    version,
    about = "Object dimensions and grasp candidates from a mask, depth map and intrinsics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diameter profile, length and volume.
    Measure(RunArgs),
    /// Measure, then rank parallel-gripper grasp candidates.
    Grasp(RunArgs),
    /// Write a synthetic fixture with ground truth.
    Synth(SynthArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Mask PNG. Repeat together with --depth and --intrinsics for a batch.
    #[arg(long, required = true)]
    mask: Vec<PathBuf>,
    /// Depth map (16-bit PNG in mm, or raw f32).
    #[arg(long, required = true)]
    depth: Vec<PathBuf>,
    /// Intrinsics JSON.
    #[arg(long, required = true)]
    intrinsics: Vec<PathBuf>,
    /// Output directory. Batch runs write one numbered subdirectory per input.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    geometry: Option<GeometryMode>,
    #[arg(long)]
    stride: Option<usize>,
    #[arg(long)]
    slope_offset: Option<usize>,
    #[arg(long)]
    depth_gate: Option<f64>,
    /// Grasp weights as w1,w2,w3.
    #[arg(long)]
    weights: Option<GraspWeights>,
    #[arg(long)]
    top_k: Option<usize>,
    /// Also write overlay.png.
    #[arg(long)]
    overlay: bool,
    /// Worker threads for batch runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct SynthArgs {
    /// Output fixture directory.
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, value_parser = ["cylinder", "bottle"], default_value = "cylinder")]
    shape: String,
    /// Cylinder radius, meters.
    #[arg(long, default_value_t = 0.02)]
    radius: f64,
    /// Object length, meters.
    #[arg(long, default_value_t = 0.5)]
    length: f64,
    /// Camera distance to the axis, meters.
    #[arg(long, default_value_t = 1.0)]
    distance: f64,
    /// Axis tilt in the image plane, degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    tilt: f64,
    #[arg(long, default_value_t = 700.0)]
    fx: f64,
    #[arg(long, default_value_t = 640)]
    width: usize,
    #[arg(long, default_value_t = 480)]
    height: usize,
    /// Depth noise standard deviation, meters.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Boundary band without depth, pixels.
    #[arg(long, default_value_t = 0)]
    dropout: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write depth as raw f32 instead of PNG.
    #[arg(long)]
    raw_depth: bool,
}

impl RunArgs {
    fn config(&self) -> maskmeasure::Result<RunConfig> {
        let mut cfg: RunConfig = match &self.config {
            Some(p) => io::read_json(p)?,
            None => RunConfig::default(),
        };
        if let Some(g) = self.geometry {
            cfg.geometry = g;
        }
        if let Some(s) = self.stride {
            cfg.sampling.stride = s;
        }
        if let Some(s) = self.slope_offset {
            cfg.sampling.slope_offset = s;
        }
        if let Some(g) = self.depth_gate {
            cfg.sampling.depth_gate = g;
        }
        if let Some(w) = self.weights {
            cfg.weights = w;
        }
        if let Some(k) = self.top_k {
            cfg.top_k = k;
        }
        cfg.overlay |= self.overlay;
        if self.out.is_some() {
            cfg.output_dir = self.out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn inputs(&self) -> maskmeasure::Result<Vec<Inputs>> {
        let n = self.mask.len();
        if self.depth.len() != n || self.intrinsics.len() != n {
            return Err(maskmeasure::Error::Config(
                "--mask, --depth and --intrinsics must be given the same number of times".into(),
            ));
        }
        Ok((0..n)
            .map(|i| Inputs {
                mask: self.mask[i].clone(),
                depth: self.depth[i].clone(),
                intrinsics: self.intrinsics[i].clone(),
            })
            .collect())
    }
}

fn run(args: &RunArgs, grasp: bool) -> maskmeasure::Result<bool> {
    let cfg = args.config()?;
    let inputs = args.inputs()?;
    let batch = inputs.len() > 1;
    let jobs: Vec<(usize, &Inputs)> = inputs.iter().enumerate().collect();
    let results = pipeline::run_batch(&jobs, args.jobs, |&(i, inp)| {
        let mut cfg = cfg.clone();
        if batch {
            cfg.output_dir = cfg.output_dir.map(|d| d.join(format!("{i:03}")));
        }
        if grasp {
            pipeline::grasp_files(inp, &cfg)
                .and_then(|(_, top)| Ok(serde_json::to_string_pretty(&top)?))
        } else {
            pipeline::measure_files(inp, &cfg)
                .and_then(|m| Ok(serde_json::to_string_pretty(&m.report)?))
        }
    })?;
    let mut ok = true;
    for (inp, r) in inputs.iter().zip(results) {
        match r {
            Ok(json) => println!("{json}"),
            Err(e) => {
                eprintln!("error: {}: {e}", inp.mask.display());
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn synth_fixture(a: &SynthArgs) -> maskmeasure::Result<()> {
    let axis = match a.shape.as_str() {
        "bottle" => synth::bottle_profile(
            a.length,
            synth::BOTTLE_VOLUME * (a.length / synth::BOTTLE_LENGTH).powi(3),
        ),
        _ => synth::cylinder(a.radius, a.length),
    };
    let intr = CameraIntrinsics::new(a.fx, a.fx, a.width as f64 / 2.0, a.height as f64 / 2.0);
    let profile = synth::RevolutionProfile::new(axis, a.distance, (a.width, a.height))
        .with_tilt(a.tilt.to_radians());
    let r = synth::render(&profile, &intr)?;
    let depth = synth::perturb(&r.depth, a.noise, a.dropout, a.seed)?;
    std::fs::create_dir_all(&a.out)?;
    io::write_mask(a.out.join("mask.png"), &r.mask)?;
    io::write_depth(
        a.out.join(if a.raw_depth {
            "depth.bin"
        } else {
            "depth.png"
        }),
        &depth,
    )?;
    io::write_json(a.out.join("intrinsics.json"), &intr)?;
    io::write_json(a.out.join("truth.json"), &r.truth)?;
    io::write_json(a.out.join("profile.json"), &profile)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Measure(a) => run(a, false),
        Command::Grasp(a) => run(a, true),
        Command::Synth(a) => synth_fixture(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
