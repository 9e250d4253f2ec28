//! Perpendicular chords at sampled skeleton stations, with endpoint depths
//! recovered from gated samples along each half-chord.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::depth::DepthMap;
use crate::error::{Error, Result};
use crate::geom::{Pixel, Point2, Vector2};
use crate::mask::BinaryMask;
use crate::skeleton::Skeleton;

/// How far along the skeleton (in indices) to look for a station depth when
/// the station pixel itself has none.
pub const STATION_DEPTH_WINDOW: usize = 5;

const BOUNDARY_BISECTIONS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplingConfig {
    /// Skeleton indices between consecutive stations.
    pub stride: usize,
    /// Index offset on either side used for the central-difference slope.
    pub slope_offset: usize,
    /// Relative depth gate: samples must satisfy `|d - d0| < gate * d0`.
    pub depth_gate: f64,
    /// March step along the chord, pixels.
    pub march_step: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            stride: 5,
            slope_offset: 5,
            depth_gate: 0.1,
            march_step: 0.5,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.stride < 1 {
            return Err(Error::Config("stride must be at least 1".into()));
        }
        if self.slope_offset < 1 {
            return Err(Error::Config("slope_offset must be at least 1".into()));
        }
        if !(self.depth_gate > 0.0 && self.depth_gate < 1.0) {
            return Err(Error::Config(format!(
                "depth_gate must lie in (0, 1), got {}",
                self.depth_gate
            )));
        }
        if !(self.march_step > 0.0 && self.march_step.is_finite()) {
            return Err(Error::Config(format!(
                "march_step must be positive, got {}",
                self.march_step
            )));
        }
        Ok(())
    }
}

/// One chord: endpoints on opposite sides of the station, with the median
/// gated depth of each half (`None` when a half collected nothing).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationSegment {
    pub station_index: usize,
    pub station: Point2,
    pub p1: Point2,
    pub p2: Point2,
    pub d1: Option<f64>,
    pub d2: Option<f64>,
    /// Local skeleton slope, radians in (-pi/2, pi/2].
    pub theta: f64,
}

impl StationSegment {
    pub fn pixel_length(&self) -> f64 {
        (self.p2 - self.p1).norm()
    }
}

/// Chords plus the stations that had to be skipped for lack of any depth.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LineDepthOutput {
    pub segments: Vec<StationSegment>,
    pub skipped_stations: Vec<usize>,
}

/// Indices `0, stride, 2·stride, …` plus the last index.
pub fn sample_stations(skel: &Skeleton, stride: usize) -> Vec<usize> {
    let stride = stride.max(1);
    if skel.is_empty() {
        return Vec::new();
    }
    let last = skel.len() - 1;
    let mut out: Vec<usize> = (0..=last).step_by(stride).collect();
    if out.last() != Some(&last) {
        out.push(last);
    }
    out
}

/// Skeleton slope at index `k`: central difference over `±offset`, one-sided
/// where the offset would run off either end. Vertical runs map to `π/2`.
pub fn local_slope(skel: &Skeleton, k: usize, offset: usize) -> Result<f64> {
    if k >= skel.len() {
        return Err(Error::InvalidInput(format!(
            "index {k} outside skeleton of length {}",
            skel.len()
        )));
    }
    let lo = k.saturating_sub(offset);
    let hi = (k + offset).min(skel.len() - 1);
    let d = skel.points[hi] - skel.points[lo];
    if d.x == 0.0 && d.y == 0.0 {
        return Err(Error::DegenerateSlope(k));
    }
    if d.x == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    let theta = (d.y / d.x).atan();
    // atan already lies in (-pi/2, pi/2); keep the vertical end closed
    Ok(if theta <= -std::f64::consts::FRAC_PI_2 {
        std::f64::consts::FRAC_PI_2
    } else {
        theta
    })
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    })
}

/// Depth at the station, falling back to the nearest skeleton neighbor
/// (within [`STATION_DEPTH_WINDOW`] indices) that has one.
fn station_depth(skel: &Skeleton, k: usize, depth: &DepthMap) -> Option<f64> {
    if let Some(d) = depth.get(skel.pixel(k)) {
        return Some(d);
    }
    (1..=STATION_DEPTH_WINDOW).find_map(|offset| {
        let before = k.checked_sub(offset).and_then(|i| depth.get(skel.pixel(i)));
        let after = (k + offset < skel.len())
            .then(|| depth.get(skel.pixel(k + offset)))
            .flatten();
        before.or(after)
    })
}

struct Ray {
    endpoint: Point2,
    samples: Vec<f64>,
}

/// Marches from `origin` along `dir` while the nearest pixel stays in the
/// mask, collecting each newly visited pixel's depth when it passes the
/// gate. The endpoint is the last in-mask position, refined by bisection
/// onto the pixel boundary the ray crosses when it leaves the mask.
fn march_ray(
    mask: &BinaryMask,
    depth: &DepthMap,
    origin: Point2,
    dir: Vector2,
    step: f64,
    d0: f64,
    gate: f64,
) -> Ray {
    let inside = |p: &Point2| mask.contains(Pixel::nearest(p));
    let mut visited: Vec<Pixel> = Vec::new();
    let mut samples = Vec::new();
    let mut last_in = origin;
    let limit = ((mask.width() + mask.height()) as f64 / step).ceil() as usize + 1;
    let mut first_out = None;
    for k in 1..=limit {
        let p = origin + dir * (step * k as f64);
        if !inside(&p) {
            first_out = Some(p);
            break;
        }
        last_in = p;
        let px = Pixel::nearest(&p);
        if !visited.contains(&px) {
            visited.push(px);
            if let Some(d) = depth.get(px) {
                if (d - d0).abs() < gate * d0 {
                    samples.push(d);
                }
            }
        }
    }
    let mut endpoint = last_in;
    if let Some(mut out) = first_out {
        for _ in 0..BOUNDARY_BISECTIONS {
            let mid = Point2::from((endpoint.coords + out.coords) * 0.5);
            if inside(&mid) {
                endpoint = mid;
            } else {
                out = mid;
            }
        }
    }
    Ray { endpoint, samples }
}

fn station_segment(
    skel: &Skeleton,
    k: usize,
    theta: f64,
    mask: &BinaryMask,
    depth: &DepthMap,
    cfg: &SamplingConfig,
) -> Option<StationSegment> {
    let d0 = station_depth(skel, k, depth)?;
    let origin = skel.points[k];
    let dir = Vector2::new(-theta.sin(), theta.cos());
    let mut rays = [-1.0, 1.0].map(|sign| {
        march_ray(
            mask,
            depth,
            origin,
            dir * sign,
            cfg.march_step,
            d0,
            cfg.depth_gate,
        )
    });
    let [r1, r2] = &mut rays;
    Some(StationSegment {
        station_index: k,
        station: origin,
        p1: r1.endpoint,
        p2: r2.endpoint,
        d1: median(&mut r1.samples),
        d2: median(&mut r2.samples),
        theta,
    })
}

/// Chords and gated endpoint depths for the given stations. `slopes[i]` is
/// the slope at `stations[i]`. Stations without any recoverable station
/// depth are skipped and reported.
pub fn line_depth(
    skel: &Skeleton,
    stations: &[usize],
    slopes: &[f64],
    mask: &BinaryMask,
    depth: &DepthMap,
    cfg: &SamplingConfig,
) -> Result<LineDepthOutput> {
    cfg.validate()?;
    depth.check_matches(mask)?;
    if stations.len() != slopes.len() {
        return Err(Error::InvalidInput(format!(
            "{} stations but {} slopes",
            stations.len(),
            slopes.len()
        )));
    }
    if let Some(&bad) = stations.iter().find(|&&k| k >= skel.len()) {
        return Err(Error::InvalidInput(format!(
            "station {bad} outside the skeleton"
        )));
    }
    let results: Vec<(usize, Option<StationSegment>)> = stations
        .par_iter()
        .zip(slopes.par_iter())
        .map(|(&k, &theta)| (k, station_segment(skel, k, theta, mask, depth, cfg)))
        .collect();
    let mut out = LineDepthOutput::default();
    for (k, seg) in results {
        match seg {
            Some(s) => out.segments.push(s),
            None => out.skipped_stations.push(k),
        }
    }
    Ok(out)
}

/// Samples stations, computes their slopes and runs [`line_depth`].
pub fn segment_skeleton(
    skel: &Skeleton,
    mask: &BinaryMask,
    depth: &DepthMap,
    cfg: &SamplingConfig,
) -> Result<LineDepthOutput> {
    cfg.validate()?;
    let stations = sample_stations(skel, cfg.stride);
    let slopes = stations
        .iter()
        .map(|&k| local_slope(skel, k, cfg.slope_offset))
        .collect::<Result<Vec<_>>>()?;
    line_depth(skel, &stations, &slopes, mask, depth, cfg)
}
