//! Dimensional measurement of objects with circular cross-sections from a
//! binary mask, an aligned metric depth map and pinhole camera intrinsics.
//!
//! The pipeline runs in stages, each exposed as its own module:
//!
//! - [`mask`]: clean a raw segmentation mask into one smooth, hole-free
//!   component.
//! - [`skeleton`]: build an ordered centerline, either from the medial axis
//!   (rod-like objects) or from the best mirror-symmetry axis (general
//!   objects).
//! - [`segments`]: cast perpendicular chords at sampled stations and recover
//!   gated depths for both chord endpoints.
//! - [`measure`]: lift chords to 3D and compute the diameter profile, length
//!   and frustum-sum volume.
//! - [`grasp`]: rank chords as parallel-gripper grasp candidates.
//! - [`synth`]: render solids of revolution with analytic ground truth.
//!
//! [`pipeline`] strings the stages together and is what the `maskmeasure`
//! binary drives.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod camera;
pub mod depth;
pub mod distance;
pub mod error;
pub mod geom;
pub mod grasp;
pub mod io;
pub mod mask;
pub mod measure;
pub mod overlay;
pub mod pipeline;
pub mod segments;
pub mod skeleton;
pub mod synth;

pub use camera::CameraIntrinsics;
pub use depth::DepthMap;
pub use error::{Error, Result};
pub use geom::{Pixel, Point2, Point3};
pub use grasp::{GraspCandidate, GraspWeights};
pub use mask::{BinaryMask, MaskConfig};
pub use measure::MeasurementReport;
pub use pipeline::{GeometryMode, RunConfig};
pub use segments::{SamplingConfig, StationSegment};
pub use skeleton::Skeleton;
