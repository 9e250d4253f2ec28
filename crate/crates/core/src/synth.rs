//! Synthetic fixtures: solids of revolution rendered through a pinhole
//! camera, with analytic ground truth.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::camera::CameraIntrinsics;
use crate::depth::{is_valid, DepthMap};
use crate::distance::edt;
use crate::error::{Error, Result};
use crate::geom::{Point2, Point3};
use crate::mask::BinaryMask;
use crate::measure::frustum_volume;

type Vector3 = nalgebra::Vector3<f64>;

/// Piecewise-linear radius profile along a straight axis, placed side-on in
/// front of the camera. The axis midpoint sits at
/// `(offset[0], offset[1], distance)` in the camera frame and the axis runs
/// upward in the image, rotated by `tilt` radians (positive leans right).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevolutionProfile {
    /// `(height, radius)` in meters, heights strictly increasing.
    pub axis_points: Vec<(f64, f64)>,
    pub tilt: f64,
    pub distance: f64,
    #[serde(default)]
    pub offset: [f64; 2],
    /// `(width, height)` in pixels.
    pub image_size: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// `(height, diameter)` at each profile point, meters.
    pub diameters_at_heights: Vec<(f64, f64)>,
    pub length: f64,
    pub volume: f64,
    /// Projected axis at each profile height, pixels, base first.
    pub centerline: Vec<Point2>,
}

impl GroundTruth {
    /// Interpolated diameter at an axial height; clamps outside the profile.
    pub fn diameter_at(&self, h: f64) -> f64 {
        let p = &self.diameters_at_heights;
        if h <= p[0].0 {
            return p[0].1;
        }
        for w in p.windows(2) {
            if h <= w[1].0 {
                let t = (h - w[0].0) / (w[1].0 - w[0].0);
                return w[0].1 + t * (w[1].1 - w[0].1);
            }
        }
        p[p.len() - 1].1
    }

    pub fn min_diameter(&self) -> f64 {
        self.diameters_at_heights
            .iter()
            .map(|d| d.1)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_diameter(&self) -> f64 {
        self.diameters_at_heights
            .iter()
            .map(|d| d.1)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct Render {
    pub mask: BinaryMask,
    pub depth: DepthMap,
    pub truth: GroundTruth,
}

impl RevolutionProfile {
    pub fn new(axis_points: Vec<(f64, f64)>, distance: f64, image_size: (usize, usize)) -> Self {
        Self {
            axis_points,
            tilt: 0.0,
            distance,
            offset: [0.0, 0.0],
            image_size,
        }
    }

    pub fn with_tilt(mut self, tilt: f64) -> Self {
        self.tilt = tilt;
        self
    }

    pub fn with_offset(mut self, x: f64, y: f64) -> Self {
        self.offset = [x, y];
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pts = &self.axis_points;
        if pts.len() < 2 {
            return Err(Error::InvalidInput(
                "profile needs at least two points".into(),
            ));
        }
        if pts
            .iter()
            .any(|&(h, r)| !h.is_finite() || !(r > 0.0) || !r.is_finite())
        {
            return Err(Error::InvalidInput("profile radii must be positive".into()));
        }
        if pts.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidInput("profile heights must increase".into()));
        }
        let max_r = pts.iter().map(|p| p.1).fold(0.0, f64::max);
        if !(self.distance > max_r) {
            return Err(Error::InvalidInput(
                "camera distance must exceed the radius".into(),
            ));
        }
        if self.image_size.0 == 0 || self.image_size.1 == 0 {
            return Err(Error::InvalidInput("image size must be nonzero".into()));
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        self.axis_points[self.axis_points.len() - 1].0 - self.axis_points[0].0
    }

    /// Exact volume of the piecewise-linear solid.
    pub fn volume(&self) -> f64 {
        self.axis_points
            .windows(2)
            .map(|w| frustum_volume(2.0 * w[0].1, 2.0 * w[1].1, w[1].0 - w[0].0))
            .sum()
    }

    /// Unit axis direction in the camera frame, base to top.
    pub fn axis_direction(&self) -> Vector3 {
        Vector3::new(self.tilt.sin(), -self.tilt.cos(), 0.0)
    }

    /// Camera-frame point on the axis at profile height `h`.
    pub fn axis_point(&self, h: f64) -> Point3 {
        let mid = 0.5 * (self.axis_points[0].0 + self.axis_points[self.axis_points.len() - 1].0);
        Point3::new(self.offset[0], self.offset[1], self.distance)
            + self.axis_direction() * (h - mid)
    }
}

/// Smallest `t > 0` with `a t² + b t + c = 0` passing `accept`.
fn smallest_root(a: f64, b: f64, c: f64, accept: impl Fn(f64) -> bool) -> Option<f64> {
    let mut roots = [f64::NAN; 2];
    if a.abs() < 1e-14 {
        if b.abs() > 1e-14 {
            roots[0] = -c / b;
        }
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        // numerically stable pair
        let q = -0.5 * (b + b.signum() * sq);
        roots = [q / a, if q != 0.0 { c / q } else { -b / (2.0 * a) }];
    }
    roots
        .into_iter()
        .filter(|t| t.is_finite() && *t > 0.0 && accept(*t))
        .min_by(f64::total_cmp)
}

/// Depth along the camera ray `d = (x, y, 1)` to the first surface hit.
fn ray_depth(profile: &RevolutionProfile, d: Vector3) -> Option<f64> {
    let a = profile.axis_direction();
    let pts = &profile.axis_points;
    let base = profile.axis_point(pts[0].0).coords - a * pts[0].0;
    // axial coordinate s(t) = t α - b and radial offset |t u - q|
    let alpha = d.dot(&a);
    let b = base.dot(&a);
    let u = d - a * alpha;
    let q = base - a * b;
    let uu = u.norm_squared();
    let uq = u.dot(&q);
    let qq = q.norm_squared();
    let mut best: Option<f64> = None;
    let mut take = |t: Option<f64>| {
        if let Some(t) = t {
            best = Some(best.map_or(t, |b: f64| b.min(t)));
        }
    };
    for w in pts.windows(2) {
        let ((h0, r0), (h1, r1)) = (w[0], w[1]);
        let m = (r1 - r0) / (h1 - h0);
        // radius as a function of t: c0 + c1 t
        let c0 = r0 - m * h0 - m * b;
        let c1 = m * alpha;
        let t = smallest_root(uu - c1 * c1, -2.0 * uq - 2.0 * c0 * c1, qq - c0 * c0, |t| {
            let s = t * alpha - b;
            s >= h0 && s <= h1 && c0 + c1 * t >= 0.0
        });
        take(t);
    }
    if alpha.abs() > 1e-14 {
        for &(h, r) in [pts[0], pts[pts.len() - 1]].iter() {
            let t = (h + b) / alpha;
            if t > 0.0 {
                let rho2 = t * t * uu - 2.0 * t * uq + qq;
                if rho2 <= r * r {
                    take(Some(t));
                }
            }
        }
    }
    best
}

/// Renders the silhouette and per-pixel depth (camera Z of the first
/// ray–surface intersection at each pixel center).
pub fn render(profile: &RevolutionProfile, intr: &CameraIntrinsics) -> Result<Render> {
    profile.validate()?;
    let (w, h) = profile.image_size;
    intr.validate(w, h)?;
    let rows: Vec<Vec<f64>> = (0..h)
        .into_par_iter()
        .map(|y| {
            (0..w)
                .map(|x| {
                    let (xn, yn) = match intr.ray(&Point2::new(x as f64, y as f64)) {
                        Ok(r) => r,
                        Err(_) => return 0.0,
                    };
                    ray_depth(profile, Vector3::new(xn, yn, 1.0)).unwrap_or(0.0)
                })
                .collect()
        })
        .collect();
    let depth = DepthMap::from_vec(w, h, rows.concat())?;
    let mask = depth.valid_mask();
    if mask.is_empty() {
        return Err(Error::OutOfView);
    }
    let (x0, y0, x1, y1) = mask.bounding_box().expect("nonempty");
    if x0 == 0 || y0 == 0 || x1 + 1 >= w || y1 + 1 >= h {
        return Err(Error::OutOfView);
    }
    let centerline = profile
        .axis_points
        .iter()
        .map(|&(hh, _)| intr.project(&profile.axis_point(hh)))
        .collect::<Result<Vec<_>>>()?;
    let truth = GroundTruth {
        diameters_at_heights: profile
            .axis_points
            .iter()
            .map(|&(hh, r)| (hh - profile.axis_points[0].0, 2.0 * r))
            .collect(),
        length: profile.length(),
        volume: profile.volume(),
        centerline,
    };
    Ok(Render { mask, depth, truth })
}

/// Adds zero-mean Gaussian noise to every valid depth and clears a band of
/// `edge_dropout` pixels along the boundary of the valid region.
pub fn perturb(
    depth: &DepthMap,
    noise_sigma: f64,
    edge_dropout: usize,
    seed: u64,
) -> Result<DepthMap> {
    if !(noise_sigma >= 0.0) || !noise_sigma.is_finite() {
        return Err(Error::InvalidInput(format!(
            "noise sigma must be non-negative, got {noise_sigma}"
        )));
    }
    let mut out = depth.clone();
    if noise_sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, noise_sigma).expect("sigma checked");
        for d in out.data_mut().iter_mut().filter(|d| is_valid(**d)) {
            *d = (*d + normal.sample(&mut rng)).max(1e-6);
        }
    }
    if edge_dropout > 0 {
        let valid = depth.valid_mask();
        let dist = edt(&valid);
        for (d, r) in out.data_mut().iter_mut().zip(dist) {
            if r > 0.0 && r <= edge_dropout as f64 {
                *d = 0.0;
            }
        }
    }
    Ok(out)
}

/// Straight cylinder of the given radius and length.
pub fn cylinder(radius: f64, length: f64) -> Vec<(f64, f64)> {
    vec![(0.0, radius), (length, radius)]
}

pub const BOTTLE_LENGTH: f64 = 0.29845;
pub const BOTTLE_VOLUME: f64 = 9.43e-4;

/// Wine-bottle profile with a narrowing neck and a slightly flared lip;
/// the body radius is solved so the volume is `volume`.
pub fn bottle_profile(length: f64, volume: f64) -> Vec<(f64, f64)> {
    let s = length / BOTTLE_LENGTH;
    let shape = |rb: f64| {
        vec![
            (0.0, rb),
            (0.17 * s, rb),
            (0.22 * s, 0.016 * s),
            (0.27 * s, 0.014 * s),
            (0.285 * s, 0.0165 * s),
            (length, 0.0165 * s),
        ]
    };
    let vol = |rb: f64| RevolutionProfile::new(shape(rb), 1.0, (1, 1)).volume();
    // volume is exactly quadratic in the body radius
    let (v0, v1, v2) = (vol(0.0), vol(1.0), vol(2.0));
    let a = 0.5 * (v2 - 2.0 * v1 + v0);
    let b = v1 - v0 - a;
    let c = v0 - volume;
    let rb = (-b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a);
    shape(rb)
}

/// Tube of constant pixel width around `x = x0 + amplitude·sin(2π y / period)`.
#[derive(Debug, Clone)]
pub struct CurvedRod {
    pub mask: BinaryMask,
    pub depth: DepthMap,
    /// Dense samples of the generating curve, bottom first.
    pub centerline: Vec<Point2>,
}

impl CurvedRod {
    /// Distance from `p` to the generating curve, pixels.
    pub fn distance_to_centerline(&self, p: &Point2) -> f64 {
        self.centerline
            .windows(2)
            .map(|w| {
                let u = w[1] - w[0];
                let t = ((p - w[0]).dot(&u) / u.norm_squared()).clamp(0.0, 1.0);
                (p - (w[0] + u * t)).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn curved_rod(
    width: usize,
    height: usize,
    x0: f64,
    amplitude: f64,
    period: f64,
    y_range: (f64, f64),
    half_width: f64,
    depth: f64,
) -> CurvedRod {
    let curve_x = |y: f64| x0 + amplitude * (2.0 * std::f64::consts::PI * y / period).sin();
    let n = ((y_range.1 - y_range.0) * 8.0).ceil() as usize;
    let centerline: Vec<Point2> = (0..=n)
        .map(|i| {
            let y = y_range.1 - (y_range.1 - y_range.0) * i as f64 / n as f64;
            Point2::new(curve_x(y), y)
        })
        .collect();
    let rod = CurvedRod {
        mask: BinaryMask::new(width, height),
        depth: DepthMap::new(width, height),
        centerline,
    };
    let mask = BinaryMask::from_fn(width, height, |x, y| {
        let p = Point2::new(x as f64, y as f64);
        (p.x - curve_x(p.y.clamp(y_range.0, y_range.1))).abs() <= half_width + amplitude
            && rod.distance_to_centerline(&p) <= half_width
    });
    let depth_map = DepthMap::from_fn(
        width,
        height,
        |x, y| if mask.get(x, y) { depth } else { 0.0 },
    );
    CurvedRod {
        mask,
        depth: depth_map,
        ..rod
    }
}
