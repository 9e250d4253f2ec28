use crate::geom::{Pixel, Point2, Vector2};
use crate::mask::BinaryMask;

use super::Skeleton;

/// Unit steps from `origin` along `direction` (excluding the origin), kept
/// while the nearest pixel is inside the mask.
pub(crate) fn march(mask: &BinaryMask, origin: Point2, direction: Vector2) -> Vec<Point2> {
    let limit = mask.width() + mask.height();
    (1..=limit)
        .map(|k| origin + direction * k as f64)
        .take_while(|p| mask.contains(Pixel::nearest(p)))
        .collect()
}

/// Total-least-squares direction through `points`, oriented from the first
/// point towards the last.
pub(crate) fn fit_direction(points: &[Point2]) -> Option<Vector2> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.x).sum::<f64>() / n;
    let my = points.iter().map(|p| p.y).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p.x - mx, p.y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx + syy == 0.0 {
        return None;
    }
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let mut dir = Vector2::new(angle.cos(), angle.sin());
    let span = points[points.len() - 1] - points[0];
    if dir.dot(&span) < 0.0 {
        dir = -dir;
    }
    Some(dir)
}

/// Number of terminal points used for the end slope.
fn slope_window(len: usize) -> usize {
    (len / 4).clamp(2, 10).min(len)
}

/// Extends an ordered trunk beyond both ends along the local end slope until
/// the next unit step would leave the mask, then orders the result from
/// bottommost to topmost.
pub fn augment(path: &[Pixel], mask: &BinaryMask) -> Skeleton {
    let trunk: Vec<Point2> = path.iter().map(|p| p.to_point()).collect();
    if trunk.len() < 2 {
        return Skeleton::new(trunk);
    }
    let n = slope_window(trunk.len());
    let tail = &trunk[trunk.len() - n..];
    let head: Vec<Point2> = trunk[..n].iter().rev().copied().collect();
    let forward = fit_direction(tail)
        .map(|d| march(mask, trunk[trunk.len() - 1], d))
        .unwrap_or_default();
    let backward = fit_direction(&head)
        .map(|d| march(mask, trunk[0], d))
        .unwrap_or_default();
    let mut points: Vec<Point2> = backward.into_iter().rev().collect();
    points.extend(trunk);
    points.extend(forward);
    Skeleton::new(points)
}
