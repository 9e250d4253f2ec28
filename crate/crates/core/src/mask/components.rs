use std::collections::VecDeque;

use super::BinaryMask;
use crate::geom::Pixel;

/// 8-connected components, in order of their first pixel in raster order.
/// Each component's first pixel is its topmost-leftmost pixel.
pub fn label_components(mask: &BinaryMask) -> Vec<Vec<Pixel>> {
    let (w, h) = mask.dims();
    let mut seen = vec![false; w * h];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in mask.pixels() {
        let si = start.y as usize * w + start.x as usize;
        if seen[si] {
            continue;
        }
        seen[si] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(p) = queue.pop_front() {
            comp.push(p);
            for q in p.neighbors8() {
                if mask.contains(q) {
                    let qi = q.y as usize * w + q.x as usize;
                    if !seen[qi] {
                        seen[qi] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        components.push(comp);
    }
    components
}

/// Drops every 8-connected component smaller than `min_size` pixels.
pub fn remove_small_objects(mask: &BinaryMask, min_size: usize) -> BinaryMask {
    let kept = label_components(mask)
        .into_iter()
        .filter(|c| c.len() >= min_size)
        .flatten();
    BinaryMask::from_pixels(mask.width(), mask.height(), kept)
}

/// Keeps only the component with the largest area. Equal areas resolve to
/// the component whose topmost-leftmost pixel comes first in raster order.
pub fn largest_component(mask: &BinaryMask) -> BinaryMask {
    let mut best: Option<Vec<Pixel>> = None;
    for comp in label_components(mask) {
        if best.as_ref().is_none_or(|b| comp.len() > b.len()) {
            best = Some(comp);
        }
    }
    BinaryMask::from_pixels(mask.width(), mask.height(), best.unwrap_or_default())
}

/// Sets every background pixel that is not 4-connected to the image border.
pub fn fill_holes(mask: &BinaryMask) -> BinaryMask {
    let (w, h) = mask.dims();
    let mut outside = vec![false; w * h];
    let mut queue = VecDeque::new();
    let seed =
        |x: usize, y: usize, outside: &mut Vec<bool>, queue: &mut VecDeque<(usize, usize)>| {
            let i = y * w + x;
            if !mask.data()[i] && !outside[i] {
                outside[i] = true;
                queue.push_back((x, y));
            }
        };
    for x in 0..w {
        seed(x, 0, &mut outside, &mut queue);
        seed(x, h - 1, &mut outside, &mut queue);
    }
    for y in 0..h {
        seed(0, y, &mut outside, &mut queue);
        seed(w - 1, y, &mut outside, &mut queue);
    }
    while let Some((x, y)) = queue.pop_front() {
        if x > 0 {
            seed(x - 1, y, &mut outside, &mut queue);
        }
        if x + 1 < w {
            seed(x + 1, y, &mut outside, &mut queue);
        }
        if y > 0 {
            seed(x, y - 1, &mut outside, &mut queue);
        }
        if y + 1 < h {
            seed(x, y + 1, &mut outside, &mut queue);
        }
    }
    BinaryMask::from_vec(w, h, outside.into_iter().map(|o| !o).collect()).expect("same dimensions")
}
