//! Ordered skeletons: a medial-axis trunk for rod-like objects, or a straight
//! symmetry-axis path for general objects.

mod augment;
mod axis;
mod path;
mod thinning;
mod topology;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{Pixel, Point2};
use crate::mask::BinaryMask;

pub use augment::augment;
pub use axis::{
    construct_general, dissimilarity, principal_axes, select_axis, AxisSelection,
    FORCE_FIRST_AXIS_RATIO,
};
pub use path::{min_cost_path, ranked_endpoint_pairs, trunk_path};
pub use thinning::{medial_axis, MedialAxis};
pub use topology::{
    branches, classify_points, cluster_intersections, prune, Branch, TopologyPoints,
};

/// Default single-linkage radius for merging intersection candidates.
pub const INTERSECTION_CLUSTER_RADIUS: f64 = 3.0;

/// Ordered centerline, bottommost point first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skeleton {
    pub points: Vec<Point2>,
    /// Medial radius (pixels) per point; only rod skeletons carry it.
    pub radius: Option<Vec<f64>>,
}

impl Skeleton {
    pub fn new(points: Vec<Point2>) -> Self {
        Self {
            points,
            radius: None,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn pixel(&self, k: usize) -> Pixel {
        Pixel::nearest(&self.points[k])
    }
}

/// Intermediate products of [`construct_rod`], kept for debugging and
/// overlays.
#[derive(Debug, Clone)]
pub struct RodConstruction {
    pub medial_axis: MedialAxis,
    pub topology: TopologyPoints,
    /// Intersection representatives after clustering.
    pub junctions: Vec<Pixel>,
    pub prune_length: f64,
    pub pruned: BinaryMask,
    pub trunk: Vec<Pixel>,
    pub skeleton: Skeleton,
}

/// Medial axis → classify → cluster → prune → trunk path → augment.
pub fn construct_rod_detailed(mask: &BinaryMask) -> Result<RodConstruction> {
    let medial_axis = medial_axis(mask)?;
    let topology = classify_points(&medial_axis.skeleton);
    let junctions = cluster_intersections(&topology.intersections, INTERSECTION_CLUSTER_RADIUS);
    let prune_length = 2.0 * medial_axis.max_radius();
    let pruned = prune(&medial_axis.skeleton, &topology, prune_length);
    let endpoints = classify_points(&pruned).endpoints;
    let trunk = trunk_path(&pruned, &endpoints)?;
    let mut skeleton = augment(trim_ends(&trunk, prune_length), mask);
    let radius = thinning::object_radius(mask);
    skeleton.radius = Some(
        skeleton
            .points
            .iter()
            .map(|p| {
                let q = Pixel::nearest(p);
                if mask.contains(q) {
                    radius[q.y as usize * mask.width() + q.x as usize]
                } else {
                    0.0
                }
            })
            .collect(),
    );
    Ok(RodConstruction {
        medial_axis,
        topology,
        junctions,
        prune_length,
        pruned,
        trunk,
        skeleton,
    })
}

/// Drops `length` pixels from both ends of a trunk path, keeping at least
/// its middle third. Thinning can bend the last stretch of a wide rod into
/// one corner without leaving a junction, so pruning never sees it; the
/// extension step then regrows the ends along the remaining slope.
pub fn trim_ends(trunk: &[Pixel], length: f64) -> &[Pixel] {
    let n = trunk.len();
    let keep = (n / 3).max(2).min(n);
    let cut = (length.max(0.0).ceil() as usize).min((n - keep) / 2);
    &trunk[cut..n - cut]
}

pub fn construct_rod(mask: &BinaryMask) -> Result<Skeleton> {
    construct_rod_detailed(mask).map(|c| c.skeleton)
}
