//! Endpoint / intersection classification and short-branch pruning.

use crate::geom::Pixel;
use crate::mask::BinaryMask;

/// Connectivity value of an endpoint: center weight plus one neighbor.
pub const ENDPOINT_CONNECTIVITY: u32 = 11;
/// Pixels above this connectivity (three or more neighbors) are junctions.
pub const JUNCTION_THRESHOLD: u32 = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct TopologyPoints {
    pub endpoints: Vec<Pixel>,
    pub intersections: Vec<Pixel>,
    width: usize,
    connectivity: Vec<u32>,
}

impl TopologyPoints {
    /// Kernel response at `p`: 10 for a skeleton pixel plus one per
    /// skeleton neighbor. Zero off the skeleton.
    pub fn connectivity(&self, p: Pixel) -> u32 {
        if p.x < 0 || p.y < 0 || p.x as usize >= self.width {
            return 0;
        }
        self.connectivity
            .get(p.y as usize * self.width + p.x as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn is_junction(&self, p: Pixel) -> bool {
        self.connectivity(p) > JUNCTION_THRESHOLD
    }
}

/// Convolves the zero-padded skeleton with the 3×3 kernel (center 10,
/// neighbors 1) and classifies pixels with response 11 as endpoints and
/// above 12 as intersections.
pub fn classify_points(skel: &BinaryMask) -> TopologyPoints {
    let (w, h) = skel.dims();
    let mut connectivity = vec![0u32; w * h];
    let mut endpoints = Vec::new();
    let mut intersections = Vec::new();
    for p in skel.pixels() {
        let c = 10 + p.neighbors8().filter(|&q| skel.contains(q)).count() as u32;
        connectivity[p.y as usize * w + p.x as usize] = c;
        if c == ENDPOINT_CONNECTIVITY {
            endpoints.push(p);
        } else if c > JUNCTION_THRESHOLD {
            intersections.push(p);
        }
    }
    TopologyPoints {
        endpoints,
        intersections,
        width: w,
        connectivity,
    }
}

/// Single-linkage clustering of intersection candidates: candidates within
/// `radius` of each other share a cluster. Each cluster keeps the member
/// nearest its centroid (raster order breaks ties).
pub fn cluster_intersections(candidates: &[Pixel], radius: f64) -> Vec<Pixel> {
    let n = candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let r2 = radius * radius;
    for i in 0..n {
        for j in i + 1..n {
            if candidates[i].dist2(candidates[j]) as f64 <= r2 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<Pixel>> = Default::default();
    for (i, &c) in candidates.iter().enumerate() {
        let root = find(&mut parent, i);
        clusters.entry(root).or_default().push(c);
    }
    let mut out: Vec<Pixel> = clusters
        .into_values()
        .map(|members| {
            let cx = members.iter().map(|p| p.x as f64).sum::<f64>() / members.len() as f64;
            let cy = members.iter().map(|p| p.y as f64).sum::<f64>() / members.len() as f64;
            *members
                .iter()
                .min_by(|a, b| {
                    let da = (a.x as f64 - cx).powi(2) + (a.y as f64 - cy).powi(2);
                    let db = (b.x as f64 - cx).powi(2) + (b.y as f64 - cy).powi(2);
                    da.total_cmp(&db).then(a.raster_key().cmp(&b.raster_key()))
                })
                .expect("clusters are non-empty")
        })
        .collect();
    out.sort_by_key(|p| p.raster_key());
    out
}

/// Path from an endpoint towards the rest of the skeleton.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub endpoint: Pixel,
    /// Pixels walked from the endpoint, excluding the junction.
    pub pixels: Vec<Pixel>,
    /// First junction pixel reached, `None` if the walk ended at another
    /// endpoint (the branch is an isolated path).
    pub junction: Option<Pixel>,
}

impl Branch {
    /// Unit cost per traversed skeleton pixel.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }
}

/// Walks every endpoint through neighboring skeleton pixels until it meets a
/// junction or dead-ends.
pub fn branches(skel: &BinaryMask, topo: &TopologyPoints) -> Vec<Branch> {
    topo.endpoints
        .iter()
        .map(|&endpoint| {
            let mut pixels = vec![endpoint];
            let mut prev: Option<Pixel> = None;
            let mut current = endpoint;
            loop {
                let next: Vec<Pixel> = current
                    .neighbors8()
                    .filter(|&q| skel.contains(q) && Some(q) != prev && !pixels.contains(&q))
                    .collect();
                let Some(&step) = next.first() else {
                    return Branch {
                        endpoint,
                        pixels,
                        junction: None,
                    };
                };
                if next.len() > 1 || topo.is_junction(step) {
                    let junction = next
                        .iter()
                        .copied()
                        .find(|&q| topo.is_junction(q))
                        .unwrap_or(step);
                    return Branch {
                        endpoint,
                        pixels,
                        junction: Some(junction),
                    };
                }
                prev = Some(current);
                current = step;
                pixels.push(step);
            }
        })
        .collect()
}

/// Removes every endpoint-to-junction branch shorter than `min_length`,
/// then thins what is left so the junctions of removed branches become
/// plain line pixels. Isolated paths are never removed, and if pruning
/// would leave fewer than two endpoints the two longest branches are kept.
pub fn prune(skel: &BinaryMask, topo: &TopologyPoints, min_length: f64) -> BinaryMask {
    let all = branches(skel, topo);
    let short: Vec<&Branch> = all
        .iter()
        .filter(|b| b.junction.is_some() && (b.len() as f64) < min_length)
        .collect();
    let mut pruned = skel.clone();
    for b in &short {
        for &p in &b.pixels {
            pruned.set_pixel(p, false);
        }
    }
    if short.is_empty() {
        return pruned;
    }
    let thinned = super::thinning::rethin(&pruned);
    if topo.endpoints.len() < 2 || classify_points(&thinned).endpoints.len() >= 2 {
        return thinned;
    }
    let mut by_length: Vec<&Branch> = short.clone();
    by_length.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then(a.endpoint.raster_key().cmp(&b.endpoint.raster_key()))
    });
    for b in by_length.iter().take(2) {
        for &p in &b.pixels {
            pruned.set_pixel(p, true);
        }
    }
    super::thinning::rethin(&pruned)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skel(w: usize, h: usize, pts: &[(i64, i64)]) -> BinaryMask {
        BinaryMask::from_pixels(w, h, pts.iter().map(|&(x, y)| Pixel::new(x, y)))
    }

    #[test]
    fn straight_run() {
        let s = skel(5, 3, &[(1, 1), (2, 1), (3, 1)]);
        let t = classify_points(&s);
        assert_eq!(t.connectivity(Pixel::new(1, 1)), 11);
        assert_eq!(t.connectivity(Pixel::new(2, 1)), 12);
        assert_eq!(t.endpoints, vec![Pixel::new(1, 1), Pixel::new(3, 1)]);
        assert!(t.intersections.is_empty());
    }

    #[test]
    fn t_junction_center() {
        let s = skel(
            7,
            7,
            &[(1, 1), (2, 2), (3, 3), (4, 2), (5, 1), (3, 4), (3, 5)],
        );
        let t = classify_points(&s);
        assert_eq!(t.connectivity(Pixel::new(3, 3)), 13);
        assert_eq!(t.intersections, vec![Pixel::new(3, 3)]);
    }

    #[test]
    fn isolated_pixel() {
        let s = skel(3, 3, &[(1, 1)]);
        let t = classify_points(&s);
        assert_eq!(t.connectivity(Pixel::new(1, 1)), 10);
        assert!(t.endpoints.is_empty() && t.intersections.is_empty());
    }

    #[test]
    fn border_pixels_are_padded() {
        let s = skel(3, 3, &[(0, 0), (1, 0)]);
        let t = classify_points(&s);
        assert_eq!(t.endpoints.len(), 2);
    }

    #[test]
    fn clustering() {
        let close = [Pixel::new(5, 5), Pixel::new(6, 5)];
        assert_eq!(cluster_intersections(&close, 3.0).len(), 1);
        let far = [Pixel::new(5, 5), Pixel::new(15, 5)];
        assert_eq!(cluster_intersections(&far, 3.0).len(), 2);
        // chained: single linkage merges all four; the representative is a member
        let chain: Vec<Pixel> = (0..4).map(|i| Pixel::new(10 + i, 7)).collect();
        let kept = cluster_intersections(&chain, 2.0);
        assert_eq!(kept.len(), 1);
        assert!(chain.contains(&kept[0]));
        assert!(cluster_intersections(&[], 3.0).is_empty());
    }

    fn line_with_spur(spur: i64) -> BinaryMask {
        let mut pts: Vec<(i64, i64)> = (2..40).map(|y| (10, y)).collect();
        // connector pixel plus `spur` branch pixels to the right at y = 20
        pts.extend((11..=11 + spur).map(|x| (x, 20)));
        skel(40, 42, &pts)
    }

    #[test]
    fn spur_branch_length() {
        let s = line_with_spur(3);
        let t = classify_points(&s);
        let b = branches(&s, &t);
        let spur = b.iter().find(|b| b.endpoint == Pixel::new(14, 20)).unwrap();
        assert_eq!(spur.len(), 3);
        assert_eq!(spur.junction, Some(Pixel::new(11, 20)));
    }

    #[test]
    fn short_spur_pruned_trunk_intact() {
        let s = line_with_spur(3);
        let p = prune(&s, &classify_points(&s), 10.0);
        for y in 2..40 {
            assert!(p.get(10, y));
        }
        for x in 12..=14 {
            assert!(!p.get(x, 20));
        }
    }

    #[test]
    fn straight_line_untouched() {
        let s = skel(10, 30, &(1..29).map(|y| (4, y)).collect::<Vec<_>>());
        assert_eq!(prune(&s, &classify_points(&s), 100.0), s);
    }

    #[test]
    fn long_y_arms_retained() {
        // stem of 30 px, two diagonal arms of 20 px each; d = 10
        let mut pts: Vec<(i64, i64)> = (40..70).map(|y| (30, y)).collect();
        for i in 1..=20 {
            pts.push((30 - i, 40 - i));
            pts.push((30 + i, 40 - i));
        }
        let s = skel(61, 72, &pts);
        let t = classify_points(&s);
        for b in branches(&s, &t) {
            assert!(b.len() >= 10, "{b:?}");
        }
        assert_eq!(prune(&s, &t, 10.0), s);
    }

    #[test]
    fn all_short_keeps_two_longest() {
        // plus sign with arms 3, 4, 5, 6 long; d = 50 would remove everything
        let mut pts = vec![(20, 20)];
        pts.extend((1..=3).map(|i| (20 - i, 20)));
        pts.extend((1..=4).map(|i| (20 + i, 20)));
        pts.extend((1..=5).map(|i| (20, 20 - i)));
        pts.extend((1..=6).map(|i| (20, 20 + i)));
        let s = skel(40, 40, &pts);
        let p = prune(&s, &classify_points(&s), 50.0);
        let ends = classify_points(&p).endpoints;
        assert_eq!(ends, vec![Pixel::new(20, 15), Pixel::new(20, 26)]);
    }
}
