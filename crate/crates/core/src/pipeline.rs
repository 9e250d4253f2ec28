//! End-to-end composition: refine → skeleton → chords → measurement →
//! grasp ranking, plus file-level wrappers and a batch runner.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::camera::CameraIntrinsics;
use crate::depth::DepthMap;
use crate::error::{Error, Result};
use crate::grasp::{self, GraspCandidate, GraspRanking, GraspWeights};
use crate::io;
use crate::mask::{self, BinaryMask, MaskConfig};
use crate::measure::{self, MeasurementReport};
use crate::overlay;
use crate::segments::{self, LineDepthOutput, SamplingConfig};
use crate::skeleton::{self, Skeleton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryMode {
    /// Thin elongated objects: thinned medial axis, pruned and extended.
    #[default]
    Rod,
    /// Everything else: straight axis through the centroid.
    General,
}

impl FromStr for GeometryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rod" => Ok(Self::Rod),
            "general" => Ok(Self::General),
            _ => Err(Error::Config(format!("unknown geometry mode {s:?}"))),
        }
    }
}

impl fmt::Display for GeometryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rod => "rod",
            Self::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub geometry: GeometryMode,
    pub mask: MaskConfig,
    pub sampling: SamplingConfig,
    pub weights: GraspWeights,
    /// Smoothing window for the concavity term, in stations.
    pub window: usize,
    pub top_k: usize,
    pub output_dir: Option<PathBuf>,
    pub overlay: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            geometry: GeometryMode::Rod,
            mask: MaskConfig::default(),
            sampling: SamplingConfig::default(),
            weights: GraspWeights::default(),
            window: grasp::DEFAULT_WINDOW,
            top_k: 7,
            output_dir: None,
            overlay: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.mask.validate()?;
        self.sampling.validate()?;
        self.weights.validate()?;
        if self.window < 3 || self.window.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "window must be odd and at least 3, got {}",
                self.window
            )));
        }
        if self.top_k < 1 {
            return Err(Error::Config("top_k must be at least 1".into()));
        }
        Ok(())
    }
}

/// Everything the measurement stages produce.
#[derive(Debug, Clone)]
pub struct Measured {
    pub refined: BinaryMask,
    pub skeleton: Skeleton,
    pub line_depth: LineDepthOutput,
    pub report: MeasurementReport,
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.in_stage(name))
}

pub fn construct_skeleton(mask: &BinaryMask, mode: GeometryMode) -> Result<Skeleton> {
    match mode {
        GeometryMode::Rod => skeleton::construct_rod(mask),
        GeometryMode::General => skeleton::construct_general(mask),
    }
}

pub fn measure(
    mask: &BinaryMask,
    depth: &DepthMap,
    intr: &CameraIntrinsics,
    cfg: &RunConfig,
) -> Result<Measured> {
    stage("config", cfg.validate())?;
    stage("input", depth.check_matches(mask))?;
    stage("input", intr.validate(mask.width(), mask.height()))?;
    let refined = stage("mask", mask::refine(mask, &cfg.mask))?;
    let skeleton = stage("skeleton", construct_skeleton(&refined, cfg.geometry))?;
    let line_depth = stage(
        "segments",
        segments::segment_skeleton(&skeleton, &refined, depth, &cfg.sampling),
    )?;
    let report = stage("measure", measure::measure(&line_depth.segments, intr))?;
    Ok(Measured {
        refined,
        skeleton,
        line_depth,
        report,
    })
}

pub fn grasp(
    mask: &BinaryMask,
    depth: &DepthMap,
    intr: &CameraIntrinsics,
    cfg: &RunConfig,
) -> Result<(Measured, GraspRanking)> {
    let m = measure(mask, depth, intr, cfg)?;
    let ranking = stage(
        "grasp",
        grasp::stability_scores(&m.report, &cfg.weights, cfg.window),
    )?;
    Ok((m, ranking))
}

/// Paths of one mask/depth/intrinsics triplet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub mask: PathBuf,
    pub depth: PathBuf,
    pub intrinsics: PathBuf,
}

impl Inputs {
    pub fn load(&self) -> Result<(BinaryMask, DepthMap, CameraIntrinsics)> {
        let mask = stage("input", io::read_mask(&self.mask))?;
        let depth = stage("input", io::read_depth(&self.depth))?;
        let intr = stage("input", io::read_json(&self.intrinsics))?;
        Ok((mask, depth, intr))
    }
}

fn write_measurement(dir: &Path, m: &Measured, overlay_on: bool) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    io::write_json(dir.join("report.json"), &m.report)?;
    std::fs::write(dir.join("report.csv"), io::report_csv(&m.report))?;
    std::fs::write(
        dir.join("segments.csv"),
        io::segments_csv(&m.line_depth.segments),
    )?;
    std::fs::write(dir.join("skeleton.csv"), io::skeleton_csv(&m.skeleton))?;
    if overlay_on {
        overlay::measurement_overlay(&m.refined, &m.skeleton, &m.line_depth.segments, &m.report)
            .save(dir.join("overlay.png"))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct GraspOutput<'a> {
    pub cog: crate::geom::Point3,
    pub degenerate_diameter: bool,
    pub degenerate_distance: bool,
    pub candidates: &'a [GraspCandidate],
}

pub fn measure_files(inputs: &Inputs, cfg: &RunConfig) -> Result<Measured> {
    let (mask, depth, intr) = inputs.load()?;
    let m = measure(&mask, &depth, &intr, cfg)?;
    if let Some(dir) = &cfg.output_dir {
        stage("output", write_measurement(dir, &m, cfg.overlay))?;
    }
    Ok(m)
}

pub fn grasp_files(inputs: &Inputs, cfg: &RunConfig) -> Result<(Measured, Vec<GraspCandidate>)> {
    let (mask, depth, intr) = inputs.load()?;
    let (m, ranking) = grasp(&mask, &depth, &intr, cfg)?;
    let top = grasp::top_k(&ranking.candidates, cfg.top_k);
    if let Some(dir) = &cfg.output_dir {
        stage("output", write_measurement(dir, &m, false))?;
        let out = GraspOutput {
            cog: ranking.cog,
            degenerate_diameter: ranking.degenerate_diameter,
            degenerate_distance: ranking.degenerate_distance,
            candidates: &top,
        };
        stage("output", io::write_json(dir.join("grasp.json"), &out))?;
        if cfg.overlay {
            let o = overlay::grasp_overlay(&m.refined, &m.skeleton, &m.line_depth.segments, &top);
            stage("output", o.save(dir.join("overlay.png")))?;
        }
    }
    Ok((m, top))
}

/// Runs `f` over every item on a pool of `jobs` threads, keeping input
/// order. Each item sees its own state.
pub fn run_batch<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}
