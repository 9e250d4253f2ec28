//! Parallel-gripper grasp scoring over measured stations.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::measure::{frustum_volume, MeasurementReport};

pub const DEFAULT_WINDOW: usize = 5;

/// Diameter profiles whose relative spread `(max - min) / max` is below this
/// are treated as uniform when normalizing.
pub const UNIFORM_DIAMETER_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraspWeights {
    /// Weight of the diameter term.
    pub w1: f64,
    /// Weight of the CoG distance term.
    pub w2: f64,
    /// Weight of the concavity term.
    pub w3: f64,
}

impl Default for GraspWeights {
    fn default() -> Self {
        Self {
            w1: 0.35,
            w2: 0.35,
            w3: 0.30,
        }
    }
}

impl GraspWeights {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Result<Self> {
        let w = Self { w1, w2, w3 };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let ws = [self.w1, self.w2, self.w3];
        if ws.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Config(format!(
                "weights must be non-negative, got {ws:?}"
            )));
        }
        let sum: f64 = ws.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("weights must sum to 1, got {sum}")));
        }
        Ok(())
    }
}

impl FromStr for GraspWeights {
    type Err = Error;

    /// Parses `w1,w2,w3`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Config(format!("bad weights {s:?}: {e}")))?;
        match parts[..] {
            [w1, w2, w3] => Self::new(w1, w2, w3),
            _ => Err(Error::Config(format!("expected three weights, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraspCandidate {
    pub station_index: usize,
    pub score: f64,
    pub d_hat: f64,
    pub p_hat: f64,
    pub cond: u8,
    /// Meters.
    pub diameter: f64,
    /// Distance from the grip segment to the CoG, meters.
    pub cog_distance: f64,
    pub grip_points3d: [Point3; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraspRanking {
    pub cog: Point3,
    /// Sorted best first.
    pub candidates: Vec<GraspCandidate>,
    /// Set when the diameters were too uniform to normalize (`d_hat = 0`).
    pub degenerate_diameter: bool,
    /// Set when every station is equally far from the CoG (`p_hat = 0`).
    pub degenerate_distance: bool,
}

/// Volume-weighted centroid of the frustum stack.
pub fn center_of_gravity(report: &MeasurementReport) -> Result<Point3> {
    let n = report.len();
    if n < 2 {
        return Err(Error::TooFewStations { needed: 2, have: n });
    }
    let (d, m) = (&report.diameters, &report.midpoints3d);
    let mut total = 0.0;
    let mut acc = nalgebra::Vector3::zeros();
    for k in 0..n - 1 {
        let v = frustum_volume(d[k], d[k + 1], (m[k + 1] - m[k]).norm());
        total += v;
        acc += (m[k].coords + m[k + 1].coords) * (0.5 * v);
    }
    if total > 0.0 {
        Ok(Point3::from(acc / total))
    } else {
        let mean = m
            .iter()
            .fold(nalgebra::Vector3::zeros(), |a, p| a + p.coords)
            / n as f64;
        Ok(Point3::from(mean))
    }
}

/// Centered moving average; the window shrinks near the ends.
pub fn smooth(values: &[f64], window: usize) -> Vec<f64> {
    let h = window / 2;
    (0..values.len())
        .map(|k| {
            let lo = k.saturating_sub(h);
            let hi = (k + h).min(values.len() - 1);
            values[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// 1 at stations that sit at a strict local minimum of the smoothed profile
/// within `window`, 0 elsewhere. A flat valley marks only the station
/// nearest its center. Stations within half a window of either end are 0.
pub fn concavity_condition(diameters: &[f64], window: usize) -> Vec<u8> {
    let n = diameters.len();
    let mut cond = vec![0u8; n];
    if n < 3 {
        return cond;
    }
    let h = (window / 2).max(1);
    let s = smooth(diameters, window);
    let scale = s.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * scale;
    let mut a = 0;
    while a < n {
        let mut b = a;
        while b + 1 < n && same(s[b + 1], s[a]) {
            b += 1;
        }
        let left = a.saturating_sub(h)..a;
        let right = (b + 1)..(b + 1 + h).min(n);
        let is_min =
            !left.is_empty() && !right.is_empty() && left.chain(right).all(|j| s[j] > s[a]);
        let center = (a + b) / 2;
        if is_min && center >= h && center + h < n {
            cond[center] = 1;
        }
        a = b + 1;
    }
    cond
}

/// Distance from `p` to the segment `a`–`b`.
pub fn segment_distance(p: &Point3, a: &Point3, b: &Point3) -> f64 {
    let u = b - a;
    let len2 = u.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (p - a).dot(&u) / len2;
    if t <= 0.0 {
        (p - a).norm()
    } else if t >= 1.0 {
        (p - b).norm()
    } else {
        (p - (a + u * t)).norm()
    }
}

fn min_max(values: &[f64], uniform: impl Fn(f64, f64) -> bool) -> (Vec<f64>, bool) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if uniform(lo, hi) {
        (vec![0.0; values.len()], true)
    } else {
        (values.iter().map(|v| (v - lo) / (hi - lo)).collect(), false)
    }
}

/// Scores every station and returns them best first. Ties go to the
/// smaller `p_hat`, then the smaller station index.
pub fn stability_scores(
    report: &MeasurementReport,
    weights: &GraspWeights,
    window: usize,
) -> Result<GraspRanking> {
    weights.validate()?;
    if window < 3 || window.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "window must be odd and at least 3, got {window}"
        )));
    }
    let n = report.len();
    if n < 3 {
        return Err(Error::TooFewStations { needed: 3, have: n });
    }
    let cog = center_of_gravity(report)?;
    let dist: Vec<f64> = report
        .endpoints3d
        .iter()
        .map(|[a, b]| segment_distance(&cog, a, b))
        .collect();
    let (d_hat, degenerate_diameter) = min_max(&report.diameters, |lo, hi| {
        hi <= 0.0 || (hi - lo) / hi < UNIFORM_DIAMETER_TOLERANCE
    });
    let (p_hat, degenerate_distance) =
        min_max(&dist, |lo, hi| hi - lo <= 1e-12 * hi.max(f64::MIN_POSITIVE));
    let cond = concavity_condition(&report.diameters, window);
    let mut candidates: Vec<GraspCandidate> = (0..n)
        .map(|k| GraspCandidate {
            station_index: report.station_indices[k],
            score: weights.w1 * (1.0 - d_hat[k])
                + weights.w2 * (1.0 - p_hat[k])
                + weights.w3 * f64::from(cond[k]),
            d_hat: d_hat[k],
            p_hat: p_hat[k],
            cond: cond[k],
            diameter: report.diameters[k],
            cog_distance: dist[k],
            grip_points3d: report.endpoints3d[k],
        })
        .collect();
    candidates.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then(a.p_hat.total_cmp(&b.p_hat))
            .then(a.station_index.cmp(&b.station_index))
    });
    Ok(GraspRanking {
        cog,
        candidates,
        degenerate_diameter,
        degenerate_distance,
    })
}

pub fn top_k(candidates: &[GraspCandidate], k: usize) -> Vec<GraspCandidate> {
    candidates[..k.min(candidates.len())].to_vec()
}
