//! Pinhole camera with Brown–Conrady distortion (OpenCV ordering
//! `k1, k2, p1, p2, k3`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Point3};

/// Maximum fixed-point iterations when inverting the distortion model.
pub const UNDISTORT_MAX_ITERATIONS: usize = 20;
/// Convergence tolerance on the re-distorted residual, normalized units.
pub const UNDISTORT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    #[serde(default)]
    pub dist: [f64; 5],
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64) -> Self {
        Self {
            fx,
            fy,
            cx,
            cy,
            dist: [0.0; 5],
        }
    }

    pub fn with_distortion(mut self, dist: [f64; 5]) -> Self {
        self.dist = dist;
        self
    }

    pub fn validate(&self, width: usize, height: usize) -> Result<()> {
        if !(self.fx > 0.0 && self.fy > 0.0) {
            return Err(Error::Config(format!(
                "focal lengths must be positive, got fx={} fy={}",
                self.fx, self.fy
            )));
        }
        if !(self.cx >= 0.0
            && self.cx <= width as f64
            && self.cy >= 0.0
            && self.cy <= height as f64)
        {
            return Err(Error::Config(format!(
                "principal point ({}, {}) outside the {width}x{height} image",
                self.cx, self.cy
            )));
        }
        if self.dist.iter().any(|d| !d.is_finite()) {
            return Err(Error::Config(
                "distortion coefficients must be finite".into(),
            ));
        }
        Ok(())
    }

    pub fn is_distorted(&self) -> bool {
        self.dist.iter().any(|&d| d != 0.0)
    }

    /// Applies the distortion model to normalized image coordinates.
    pub fn distort(&self, x: f64, y: f64) -> (f64, f64) {
        let [k1, k2, p1, p2, k3] = self.dist;
        let r2 = x * x + y * y;
        let radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
        let xd = x * radial + 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x);
        let yd = y * radial + p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y;
        (xd, yd)
    }

    /// Inverts [`distort`](Self::distort) by fixed-point iteration.
    pub fn undistort(&self, xd: f64, yd: f64) -> Result<(f64, f64)> {
        if !self.is_distorted() {
            return Ok((xd, yd));
        }
        let [k1, k2, p1, p2, k3] = self.dist;
        let (mut x, mut y) = (xd, yd);
        for _ in 0..UNDISTORT_MAX_ITERATIONS {
            let r2 = x * x + y * y;
            let radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
            if radial.abs() < 1e-12 || !radial.is_finite() {
                return Err(Error::NoConvergence);
            }
            let dx = 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x);
            let dy = p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y;
            x = (xd - dx) / radial;
            y = (yd - dy) / radial;
            let (rx, ry) = self.distort(x, y);
            if (rx - xd).abs().max((ry - yd).abs()) < UNDISTORT_TOLERANCE {
                return Ok((x, y));
            }
        }
        Err(Error::NoConvergence)
    }

    /// Camera-frame point to (distorted) pixel coordinates.
    pub fn project(&self, point: &Point3) -> Result<Point2> {
        if !(point.z > 0.0) || !point.z.is_finite() {
            return Err(Error::BadDepth(point.z));
        }
        let (xd, yd) = self.distort(point.x / point.z, point.y / point.z);
        Ok(Point2::new(self.fx * xd + self.cx, self.fy * yd + self.cy))
    }

    /// Normalized, undistorted ray direction `(x, y, 1)` through a pixel.
    pub fn ray(&self, pixel: &Point2) -> Result<(f64, f64)> {
        let xd = (pixel.x - self.cx) / self.fx;
        let yd = (pixel.y - self.cy) / self.fy;
        self.undistort(xd, yd)
    }

    /// Pixel plus metric depth (camera Z) to a camera-frame point.
    pub fn deproject(&self, pixel: &Point2, depth: f64) -> Result<Point3> {
        if !(depth > 0.0) || !depth.is_finite() {
            return Err(Error::BadDepth(depth));
        }
        let (x, y) = self.ray(pixel)?;
        Ok(Point3::new(x * depth, y * depth, depth))
    }
}
