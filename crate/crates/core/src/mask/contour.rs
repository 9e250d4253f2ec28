//! Outer-contour tracing, Ramer–Douglas–Peucker simplification and polygon
//! filling.

use super::{fill_holes, largest_component, BinaryMask};
use crate::error::{Error, Result};
use crate::geom::Pixel;

// Clockwise on screen (y down), starting west.
const RING: [(i64, i64); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

fn ring_index(dx: i64, dy: i64) -> usize {
    RING.iter()
        .position(|&d| d == (dx, dy))
        .expect("offset is a unit neighbor")
}

/// Moore-neighbor trace of the outer boundary of the 8-connected component
/// containing the topmost-leftmost foreground pixel. The returned loop is
/// clockwise on screen and does not repeat its first pixel.
pub fn trace_outer_contour(mask: &BinaryMask) -> Result<Vec<Pixel>> {
    let start = mask.pixels().next().ok_or(Error::EmptyMask)?;
    let mut contour = vec![start];
    let mut current = start;
    // The pixel west of the raster-first pixel is background.
    let mut backtrack = 0usize;
    let limit = 4 * mask.area() + 8;
    loop {
        let mut next = None;
        for i in 1..=8 {
            let d = (backtrack + i) % 8;
            let q = Pixel::new(current.x + RING[d].0, current.y + RING[d].1);
            if mask.contains(q) {
                let prev = (backtrack + i - 1) % 8;
                let b = Pixel::new(current.x + RING[prev].0, current.y + RING[prev].1);
                next = Some((q, ring_index(b.x - q.x, b.y - q.y)));
                break;
            }
        }
        let Some((q, new_backtrack)) = next else {
            // isolated pixel
            return Ok(contour);
        };
        if current == start && contour.len() > 1 && q == contour[1] {
            contour.pop();
            return Ok(contour);
        }
        contour.push(q);
        current = q;
        backtrack = new_backtrack;
        if contour.len() > limit {
            // should be unreachable for a finite component
            return Ok(contour);
        }
    }
}

fn segment_distance(p: Pixel, a: Pixel, b: Pixel) -> f64 {
    let (px, py) = (p.x as f64, p.y as f64);
    let (ax, ay) = (a.x as f64, a.y as f64);
    let (bx, by) = (b.x as f64, b.y as f64);
    let (vx, vy) = (bx - ax, by - ay);
    let len2 = vx * vx + vy * vy;
    if len2 == 0.0 {
        return ((px - ax).powi(2) + (py - ay).powi(2)).sqrt();
    }
    let t = (((px - ax) * vx + (py - ay) * vy) / len2).clamp(0.0, 1.0);
    ((px - ax - t * vx).powi(2) + (py - ay - t * vy).powi(2)).sqrt()
}

/// Ramer–Douglas–Peucker on an open polyline; both ends are always kept.
pub fn rdp_open(points: &[Pixel], epsilon: f64) -> Vec<Pixel> {
    if points.len() < 3 {
        return points.to_vec();
    }
    let mut keep = vec![false; points.len()];
    keep[0] = true;
    keep[points.len() - 1] = true;
    let mut stack = vec![(0usize, points.len() - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi <= lo + 1 {
            continue;
        }
        let (mut far, mut far_dist) = (lo, -1.0);
        for (i, &p) in points.iter().enumerate().take(hi).skip(lo + 1) {
            let d = segment_distance(p, points[lo], points[hi]);
            if d > far_dist {
                far = i;
                far_dist = d;
            }
        }
        if far_dist > epsilon {
            keep[far] = true;
            stack.push((lo, far));
            stack.push((far, hi));
        }
    }
    points
        .iter()
        .zip(keep)
        .filter_map(|(&p, k)| k.then_some(p))
        .collect()
}

/// RDP on a closed loop, split at the first vertex and the vertex farthest
/// from it.
pub fn rdp_closed(points: &[Pixel], epsilon: f64) -> Vec<Pixel> {
    if points.len() < 4 {
        return points.to_vec();
    }
    let anchor = points[0];
    let far = (1..points.len())
        .max_by_key(|&i| (points[i].dist2(anchor), std::cmp::Reverse(i)))
        .expect("non-empty");
    let first = rdp_open(&points[..=far], epsilon);
    let mut second_chain: Vec<Pixel> = points[far..].to_vec();
    second_chain.push(anchor);
    let second = rdp_open(&second_chain, epsilon);
    let mut out = first;
    out.extend_from_slice(&second[1..second.len() - 1]);
    out
}

fn draw_line(mask: &mut BinaryMask, a: Pixel, b: Pixel) {
    let (dx, dy) = ((b.x - a.x).abs(), -(b.y - a.y).abs());
    let (sx, sy) = (
        if a.x < b.x { 1 } else { -1 },
        if a.y < b.y { 1 } else { -1 },
    );
    let (mut x, mut y, mut err) = (a.x, a.y, dx + dy);
    loop {
        mask.set_pixel(Pixel::new(x, y), true);
        if x == b.x && y == b.y {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Rasterizes a closed polygon whose vertices sit on pixel centers: pixel
/// centers with nonzero winding number are filled, and the edges themselves
/// are drawn so that boundary pixels are included.
pub fn fill_polygon(width: usize, height: usize, polygon: &[Pixel]) -> BinaryMask {
    let mut mask = BinaryMask::new(width, height);
    let n = polygon.len();
    if n == 0 {
        return mask;
    }
    let ys = polygon.iter().map(|p| p.y);
    let (ymin, ymax) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut crossings: Vec<(f64, i32)> = Vec::new();
    for y in ymin.max(0)..=ymax.min(height as i64 - 1) {
        crossings.clear();
        let yc = y as f64;
        for i in 0..n {
            let (a, b) = (polygon[i], polygon[(i + 1) % n]);
            if a.y == b.y {
                continue;
            }
            let (lo, hi, dir) = if a.y < b.y { (a, b, 1) } else { (b, a, -1) };
            if y >= lo.y && y < hi.y {
                let t = (yc - lo.y as f64) / (hi.y - lo.y) as f64;
                crossings.push((lo.x as f64 + t * (hi.x - lo.x) as f64, dir));
            }
        }
        crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut winding = 0;
        for pair in crossings.windows(2) {
            winding += pair[0].1;
            if winding != 0 {
                let x0 = pair[0].0.ceil().max(0.0) as i64;
                let x1 = pair[1].0.floor().min(width as f64 - 1.0) as i64;
                for x in x0..=x1 {
                    mask.set_pixel(Pixel::new(x, y), true);
                }
            }
        }
    }
    for i in 0..n {
        draw_line(&mut mask, polygon[i], polygon[(i + 1) % n]);
    }
    mask
}

/// Replaces the largest component by the filled RDP simplification of its
/// outer contour. The result is one hole-free component.
pub fn polygonal_refine(mask: &BinaryMask, epsilon: f64) -> Result<BinaryMask> {
    let region = largest_component(mask);
    let contour = trace_outer_contour(&region)?;
    let polygon = rdp_closed(&contour, epsilon);
    let filled = fill_polygon(mask.width(), mask.height(), &polygon);
    Ok(fill_holes(&filled))
}
