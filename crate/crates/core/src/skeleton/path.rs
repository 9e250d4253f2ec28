//! Minimum-cost paths over a pixel cost grid and trunk extraction.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::geom::Pixel;
use crate::mask::BinaryMask;

#[derive(Debug, Clone, Copy, PartialEq)]
struct State {
    cost: f64,
    index: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on cost, then index for determinism
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra over an 8-connected grid where entering a pixel costs
/// `costs[pixel]`. Infinite (or NaN) costs are impassable. The path cost
/// includes both end pixels. Returns `None` when `end` is unreachable.
pub fn min_cost_path(
    costs: &[f64],
    width: usize,
    height: usize,
    start: Pixel,
    end: Pixel,
) -> Option<(Vec<Pixel>, f64)> {
    let in_bounds =
        |p: Pixel| p.x >= 0 && p.y >= 0 && (p.x as usize) < width && (p.y as usize) < height;
    let index = |p: Pixel| p.y as usize * width + p.x as usize;
    if !in_bounds(start) || !in_bounds(end) {
        return None;
    }
    let passable = |i: usize| costs[i].is_finite();
    if !passable(index(start)) || !passable(index(end)) {
        return None;
    }
    let mut dist = vec![f64::INFINITY; width * height];
    let mut parent = vec![usize::MAX; width * height];
    let mut heap = BinaryHeap::new();
    let s = index(start);
    dist[s] = costs[s];
    heap.push(State {
        cost: dist[s],
        index: s,
    });
    let target = index(end);
    while let Some(State { cost, index: i }) = heap.pop() {
        if cost > dist[i] {
            continue;
        }
        if i == target {
            break;
        }
        let p = Pixel::new((i % width) as i64, (i / width) as i64);
        for q in p.neighbors8() {
            if !in_bounds(q) {
                continue;
            }
            let j = index(q);
            if !passable(j) {
                continue;
            }
            let next = cost + costs[j];
            if next < dist[j] {
                dist[j] = next;
                parent[j] = i;
                heap.push(State {
                    cost: next,
                    index: j,
                });
            }
        }
    }
    if !dist[target].is_finite() {
        return None;
    }
    let mut path = vec![end];
    let mut i = target;
    while i != s {
        i = parent[i];
        path.push(Pixel::new((i % width) as i64, (i / width) as i64));
    }
    path.reverse();
    Some((path, dist[target]))
}

/// Endpoint pairs in preference order: largest vertical separation, then
/// largest Euclidean separation, then coordinates. Each pair is returned
/// lower endpoint first.
pub fn ranked_endpoint_pairs(endpoints: &[Pixel]) -> Vec<(Pixel, Pixel)> {
    let mut pairs = Vec::new();
    for (i, &a) in endpoints.iter().enumerate() {
        for &b in &endpoints[i + 1..] {
            let (first, second) = if a.raster_key() <= b.raster_key() {
                (a, b)
            } else {
                (b, a)
            };
            pairs.push((first, second));
        }
    }
    pairs.sort_by(|&(a1, b1), &(a2, b2)| {
        let dy1 = (a1.y - b1.y).abs();
        let dy2 = (a2.y - b2.y).abs();
        dy2.cmp(&dy1)
            .then(a2.dist2(b2).cmp(&a1.dist2(b1)))
            .then((a1.raster_key(), b1.raster_key()).cmp(&(a2.raster_key(), b2.raster_key())))
    });
    pairs
        .into_iter()
        .map(|(a, b)| if b.y > a.y { (b, a) } else { (a, b) })
        .collect()
}

/// Minimum-cost path through the skeleton (unit cost per pixel) between the
/// endpoint pair with the largest vertical separation, ordered from the
/// lower endpoint to the upper. Pairs that lie in disconnected parts are
/// skipped in favour of the next-best pair.
pub fn trunk_path(skel: &BinaryMask, endpoints: &[Pixel]) -> Result<Vec<Pixel>> {
    let costs: Vec<f64> = skel
        .data()
        .iter()
        .map(|&s| if s { 1.0 } else { f64::INFINITY })
        .collect();
    for (lower, upper) in ranked_endpoint_pairs(endpoints) {
        if let Some((path, _)) = min_cost_path(&costs, skel.width(), skel.height(), lower, upper) {
            return Ok(path);
        }
    }
    Err(Error::NoPath)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn bfs_len(skel: &BinaryMask, a: Pixel, b: Pixel) -> Option<usize> {
        let mut dist = std::collections::HashMap::new();
        dist.insert(a, 1usize);
        let mut q = VecDeque::from([a]);
        while let Some(p) = q.pop_front() {
            if p == b {
                return dist.get(&p).copied();
            }
            let d = dist[&p];
            for n in p.neighbors8() {
                if skel.contains(n) && !dist.contains_key(&n) {
                    dist.insert(n, d + 1);
                    q.push_back(n);
                }
            }
        }
        None
    }

    #[test]
    fn vertical_line_bottom_to_top() {
        let s = BinaryMask::from_fn(5, 20, |x, y| x == 2 && (3..17).contains(&y));
        let ends = [Pixel::new(2, 3), Pixel::new(2, 16)];
        let path = trunk_path(&s, &ends).unwrap();
        assert_eq!(path.len(), 14);
        assert_eq!(path[0], Pixel::new(2, 16));
        assert_eq!(*path.last().unwrap(), Pixel::new(2, 3));
        for w in path.windows(2) {
            assert_eq!(w[0].chebyshev(w[1]), 1);
        }
    }

    #[test]
    fn c_shape_follows_every_pixel() {
        // C made of a left column and two arms
        let mut s = BinaryMask::new(20, 30);
        for y in 5..25 {
            s.set(3, y, true);
        }
        for x in 4..15 {
            s.set(x, 4, true);
            s.set(x, 25, true);
        }
        let ends = [Pixel::new(14, 4), Pixel::new(14, 25)];
        let path = trunk_path(&s, &ends).unwrap();
        assert_eq!(path.len(), bfs_len(&s, ends[0], ends[1]).unwrap());
        assert_eq!(path.len(), s.area());
        assert_eq!(path[0], Pixel::new(14, 25));
    }

    #[test]
    fn y_shape_uses_max_vertical_pair() {
        let mut s = BinaryMask::new(40, 40);
        for y in 20..38 {
            s.set(20, y, true);
        }
        for i in 1..15 {
            s.set(20 - i, 20 - i, true);
        }
        for x in 21..35 {
            s.set(x, 19, true);
        }
        let topo = crate::skeleton::classify_points(&s);
        assert_eq!(topo.endpoints.len(), 3);
        let path = trunk_path(&s, &topo.endpoints).unwrap();
        assert_eq!(path[0], Pixel::new(20, 37));
        assert_eq!(*path.last().unwrap(), Pixel::new(6, 6));
        assert_eq!(
            path.len(),
            bfs_len(&s, Pixel::new(20, 37), Pixel::new(6, 6)).unwrap()
        );
        assert!(path.iter().all(|p| p.y != 19 || p.x <= 20));
    }

    #[test]
    fn disconnected_pair_falls_back() {
        let mut s = BinaryMask::new(20, 40);
        for y in 2..10 {
            s.set(2, y, true); // short piece, far apart vertically from the long one
        }
        for y in 15..38 {
            s.set(10, y, true);
        }
        let topo = crate::skeleton::classify_points(&s);
        let path = trunk_path(&s, &topo.endpoints).unwrap();
        assert_eq!(path.len(), 23);
        assert_eq!(path[0], Pixel::new(10, 37));
    }

    #[test]
    fn no_endpoints_is_error() {
        let s = BinaryMask::new(5, 5);
        assert!(matches!(trunk_path(&s, &[]), Err(Error::NoPath)));
        assert!(matches!(
            trunk_path(&s, &[Pixel::new(1, 1)]),
            Err(Error::NoPath)
        ));
    }

    #[test]
    fn weighted_costs_detour() {
        // 3x3 grid, center expensive: path around it is cheaper
        let mut costs = vec![1.0; 9];
        costs[4] = 10.0;
        let (path, cost) = min_cost_path(&costs, 3, 3, Pixel::new(0, 1), Pixel::new(2, 1)).unwrap();
        assert_eq!(cost, 3.0);
        assert_eq!(path.len(), 3);
        assert!(!path.contains(&Pixel::new(1, 1)));
    }

    #[test]
    fn tie_break_prefers_euclidean_then_coords() {
        let ends = [Pixel::new(0, 10), Pixel::new(5, 0), Pixel::new(1, 0)];
        let pairs = ranked_endpoint_pairs(&ends);
        assert_eq!(pairs[0], (Pixel::new(0, 10), Pixel::new(5, 0)));
        assert_eq!(pairs[1], (Pixel::new(0, 10), Pixel::new(1, 0)));
    }
}
