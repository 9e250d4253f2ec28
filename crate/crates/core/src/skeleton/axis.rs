//! Symmetry-axis selection for general (non rod-like) objects.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Pixel, Point2, Vector2};
use crate::mask::BinaryMask;

use super::augment::march;
use super::Skeleton;

/// Above this min/max dissimilarity ratio both axes are considered equally
/// symmetric and the axis of greatest variance wins.
pub const FORCE_FIRST_AXIS_RATIO: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSelection {
    /// Mask centroid.
    pub axis_origin: Point2,
    /// Selected unit direction.
    pub axis_direction: Vector2,
    /// Principal directions, greatest variance first.
    pub principal_axes: [Vector2; 2],
    /// Dissimilarity of the mask to its half-mask reflections, per
    /// principal axis.
    pub ds_scores: (f64, f64),
    pub forced_first_axis: bool,
}

/// Principal axes of the foreground pixel coordinates, greatest variance
/// first, plus the centroid and both variances.
pub fn principal_axes(mask: &BinaryMask) -> Result<(Point2, [Vector2; 2], [f64; 2])> {
    let n = mask.area();
    if n == 0 {
        return Err(Error::EmptyMask);
    }
    let (mut sx, mut sy) = (0.0, 0.0);
    for p in mask.pixels() {
        sx += p.x as f64;
        sy += p.y as f64;
    }
    let centroid = Point2::new(sx / n as f64, sy / n as f64);
    let (mut cxx, mut cxy, mut cyy) = (0.0, 0.0, 0.0);
    for p in mask.pixels() {
        let (dx, dy) = (p.x as f64 - centroid.x, p.y as f64 - centroid.y);
        cxx += dx * dx;
        cxy += dx * dy;
        cyy += dy * dy;
    }
    let (cxx, cxy, cyy) = (cxx / n as f64, cxy / n as f64, cyy / n as f64);
    let half_trace = 0.5 * (cxx + cyy);
    let spread = (0.25 * (cxx - cyy).powi(2) + cxy * cxy).sqrt();
    let variances = [half_trace + spread, half_trace - spread];
    // orientation in (-pi/2, pi/2]
    let angle = 0.5 * (2.0 * cxy).atan2(cxx - cyy);
    let first = Vector2::new(angle.cos(), angle.sin());
    let second = Vector2::new(-angle.sin(), angle.cos());
    Ok((centroid, [first, second], variances))
}

/// Pixel count of `mask` XOR (half ∪ reflection of half), for both halves
/// cut by the line through `origin` along `direction`.
pub fn dissimilarity(mask: &BinaryMask, origin: Point2, direction: Vector2) -> f64 {
    let normal = Vector2::new(-direction.y, direction.x);
    let mut halves: [HashSet<Pixel>; 2] = Default::default();
    for p in mask.pixels() {
        let offset = (p.to_point() - origin).dot(&normal);
        let reflected = Pixel::nearest(&(p.to_point() - normal * (2.0 * offset)));
        let sides: &[usize] = if offset.abs() < 1e-9 {
            &[0, 1]
        } else if offset > 0.0 {
            &[0]
        } else {
            &[1]
        };
        for &side in sides {
            halves[side].insert(p);
            halves[side].insert(reflected);
        }
    }
    halves
        .iter()
        .map(|combined| {
            let extra = combined.iter().filter(|&&q| !mask.contains(q)).count();
            let missing = mask.pixels().filter(|p| !combined.contains(p)).count();
            (extra + missing) as f64
        })
        .sum()
}

/// Chooses between the two principal axes the one closer to a mirror
/// symmetry axis; near-ties go to the axis of greatest variance.
pub fn select_axis(mask: &BinaryMask) -> Result<AxisSelection> {
    let (centroid, axes, variances) = principal_axes(mask)?;
    if variances[1] < 1e-9 {
        return Err(Error::DegenerateMask("foreground pixels are collinear"));
    }
    let ds = (
        dissimilarity(mask, centroid, axes[0]),
        dissimilarity(mask, centroid, axes[1]),
    );
    let (lo, hi) = (ds.0.min(ds.1), ds.0.max(ds.1));
    let ratio = if hi == 0.0 { 1.0 } else { lo / hi };
    let forced = ratio > FORCE_FIRST_AXIS_RATIO;
    let direction = if forced || ds.0 <= ds.1 {
        axes[0]
    } else {
        axes[1]
    };
    Ok(AxisSelection {
        axis_origin: centroid,
        axis_direction: direction,
        principal_axes: axes,
        ds_scores: ds,
        forced_first_axis: forced,
    })
}

/// Straight skeleton through the centroid along the selected symmetry axis,
/// spanning the mask, ordered bottommost to topmost.
pub fn construct_general(mask: &BinaryMask) -> Result<Skeleton> {
    let axis = select_axis(mask)?;
    let origin = axis.axis_origin;
    if !mask.contains(Pixel::nearest(&origin)) {
        return Err(Error::DegenerateMask("centroid lies outside the mask"));
    }
    let forward = march(mask, origin, axis.axis_direction);
    let backward = march(mask, origin, -axis.axis_direction);
    let mut points: Vec<Point2> = backward.into_iter().rev().collect();
    points.push(origin);
    points.extend(forward);
    let (first, last) = (points[0], points[points.len() - 1]);
    if first.y < last.y || (first.y == last.y && first.x > last.x) {
        points.reverse();
    }
    Ok(Skeleton::new(points))
}
