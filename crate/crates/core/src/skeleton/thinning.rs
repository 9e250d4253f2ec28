//! Medial axis by iterative thinning, with radii from the exact distance
//! transform.

use crate::distance::edt;
use crate::error::{Error, Result};
use crate::geom::{Pixel, NEIGHBORS8};
use crate::mask::BinaryMask;

/// One-pixel-wide skeleton plus the medial radius (pixels) at every pixel of
/// the source mask.
#[derive(Debug, Clone)]
pub struct MedialAxis {
    pub skeleton: BinaryMask,
    radius: Vec<f64>,
}

impl MedialAxis {
    /// Distance from the pixel center to the object boundary: the distance
    /// to the nearest background pixel center less half a pixel, so that a
    /// rod `w` pixels wide has a maximal diameter of `w`.
    pub fn radius_at(&self, p: Pixel) -> f64 {
        if !self.skeleton.in_bounds(p) {
            return 0.0;
        }
        self.radius[p.y as usize * self.skeleton.width() + p.x as usize]
    }

    pub fn max_radius(&self) -> f64 {
        self.skeleton
            .pixels()
            .map(|p| self.radius_at(p))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn object_radius(mask: &BinaryMask) -> Vec<f64> {
    edt(mask)
        .into_iter()
        .map(|d| if d > 0.0 { d - 0.5 } else { 0.0 })
        .collect()
}

/// Neighbor values in Zhang–Suen order: N, NE, E, SE, S, SW, W, NW.
fn ring(mask: &BinaryMask, p: Pixel) -> [bool; 8] {
    const ORDER: [(i64, i64); 8] = [
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
    ];
    ORDER.map(|(dx, dy)| mask.contains(Pixel::new(p.x + dx, p.y + dy)))
}

fn zhang_suen(mask: &BinaryMask) -> BinaryMask {
    let mut img = mask.clone();
    let mut candidates: Vec<Pixel> = mask.pixels().collect();
    let mut to_clear = Vec::new();
    loop {
        let mut changed = false;
        for pass in 0..2 {
            to_clear.clear();
            for &p in &candidates {
                let n = ring(&img, p);
                let count = n.iter().filter(|&&v| v).count();
                if !(2..=6).contains(&count) {
                    continue;
                }
                let transitions = (0..8).filter(|&i| !n[i] && n[(i + 1) % 8]).count();
                if transitions != 1 {
                    continue;
                }
                let (north, east, south, west) = (n[0], n[2], n[4], n[6]);
                let ok = if pass == 0 {
                    !(north && east && south) && !(east && south && west)
                } else {
                    !(north && east && west) && !(north && south && west)
                };
                if ok {
                    to_clear.push(p);
                }
            }
            for &p in &to_clear {
                img.set_pixel(p, false);
            }
            changed |= !to_clear.is_empty();
            candidates.retain(|&p| img.contains(p));
        }
        if !changed {
            return img;
        }
    }
}

type Offset = (i64, i64);

/// Number of connected groups of `cells` (under `adjacent`) that contain at
/// least one cell accepted by `counts`.
fn count_groups(
    cells: &[Offset],
    adjacent: fn(Offset, Offset) -> bool,
    counts: fn(Offset) -> bool,
) -> usize {
    let mut visited = vec![false; cells.len()];
    let mut groups = 0;
    for i in 0..cells.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let mut stack = vec![i];
        let mut counted = false;
        while let Some(j) = stack.pop() {
            counted |= counts(cells[j]);
            for k in 0..cells.len() {
                if !visited[k] && adjacent(cells[j], cells[k]) {
                    visited[k] = true;
                    stack.push(k);
                }
            }
        }
        groups += counted as usize;
    }
    groups
}

/// Whether deleting `p` preserves 8-connected topology: its foreground
/// neighbors form one 8-component and exactly one background 4-component
/// touches it.
fn is_simple(img: &BinaryMask, p: Pixel) -> bool {
    let (fg, bg): (Vec<Offset>, Vec<Offset>) = NEIGHBORS8
        .iter()
        .partition(|&&(dx, dy)| img.contains(Pixel::new(p.x + dx, p.y + dy)));
    let chebyshev_adjacent = |a: Offset, b: Offset| (a.0 - b.0).abs().max((a.1 - b.1).abs()) == 1;
    let manhattan_adjacent = |a: Offset, b: Offset| (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1;
    count_groups(&fg, chebyshev_adjacent, |_| true) == 1
        && count_groups(&bg, manhattan_adjacent, |c| c.0 == 0 || c.1 == 0) == 1
}

/// Removes staircase corners left by thinning: simple pixels with both a
/// horizontal and a vertical 4-neighbor.
fn remove_redundant(img: &mut BinaryMask) {
    let on =
        |img: &BinaryMask, p: Pixel, dx: i64, dy: i64| img.contains(Pixel::new(p.x + dx, p.y + dy));
    loop {
        let mut changed = false;
        let pixels: Vec<Pixel> = img.pixels().collect();
        for p in pixels {
            let corner =
                (on(img, p, 1, 0) || on(img, p, -1, 0)) && (on(img, p, 0, 1) || on(img, p, 0, -1));
            if corner && is_simple(img, p) {
                img.set_pixel(p, false);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Thins an existing skeleton again, collapsing leftover junction clusters
/// into plain line pixels.
pub(crate) fn rethin(img: &BinaryMask) -> BinaryMask {
    let mut out = zhang_suen(img);
    remove_redundant(&mut out);
    out
}

/// One-pixel-wide, 8-connected skeleton of a single hole-free component.
pub fn medial_axis(mask: &BinaryMask) -> Result<MedialAxis> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    let mut skeleton = zhang_suen(mask);
    remove_redundant(&mut skeleton);
    Ok(MedialAxis {
        skeleton,
        radius: object_radius(mask),
    })
}
