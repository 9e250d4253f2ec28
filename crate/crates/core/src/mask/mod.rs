//! Binary masks and the clean-up stage that turns a raw segmentation into a
//! single smooth, hole-free component.

mod components;
mod contour;
mod morphology;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Pixel;

pub use components::{fill_holes, label_components, largest_component, remove_small_objects};
pub use contour::{fill_polygon, polygonal_refine, rdp_closed, rdp_open, trace_outer_contour};
pub use morphology::{close, dilate, erode, open, open_close};

/// Row-major boolean pixel grid; `true` marks the object.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl std::fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryMask")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("area", &self.area())
            .finish()
    }
}

impl BinaryMask {
    /// All-background mask.
    ///
    /// Panics if either dimension is zero.
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "mask dimensions must be positive");
        Self {
            width,
            height,
            data: vec![false; width * height],
        }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "mask dimensions must be positive, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "mask data length {} does not match {width}x{height}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut mask = Self::new(width, height);
        for y in 0..height {
            for x in 0..width {
                mask.data[y * width + x] = f(x, y);
            }
        }
        mask
    }

    /// Same dimensions, with exactly the given pixels set. Out-of-bounds
    /// pixels are ignored.
    pub fn from_pixels(
        width: usize,
        height: usize,
        pixels: impl IntoIterator<Item = Pixel>,
    ) -> Self {
        let mut mask = Self::new(width, height);
        for p in pixels {
            mask.set_pixel(p, true);
        }
        mask
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.data[y * self.width + x] = value;
    }

    /// Lookup that treats everything outside the image as background.
    pub fn contains(&self, p: Pixel) -> bool {
        self.in_bounds(p) && self.data[p.y as usize * self.width + p.x as usize]
    }

    pub fn in_bounds(&self, p: Pixel) -> bool {
        p.x >= 0 && p.y >= 0 && (p.x as usize) < self.width && (p.y as usize) < self.height
    }

    pub fn set_pixel(&mut self, p: Pixel, value: bool) {
        if self.in_bounds(p) {
            self.data[p.y as usize * self.width + p.x as usize] = value;
        }
    }

    pub fn area(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.data.iter().any(|&v| v)
    }

    /// Foreground pixels in raster order.
    pub fn pixels(&self) -> impl Iterator<Item = Pixel> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| Pixel::new((i % self.width) as i64, (i / self.width) as i64))
    }

    /// Inclusive bounding box `(min_x, min_y, max_x, max_y)` of the
    /// foreground, or `None` for an empty mask.
    pub fn bounding_box(&self) -> Option<(usize, usize, usize, usize)> {
        let mut bbox: Option<(usize, usize, usize, usize)> = None;
        for p in self.pixels() {
            let (x, y) = (p.x as usize, p.y as usize);
            bbox = Some(match bbox {
                None => (x, y, x, y),
                Some((x0, y0, x1, y1)) => (x0.min(x), y0.min(y), x1.max(x), y1.max(y)),
            });
        }
        bbox
    }

    /// Number of pixels set in `self` but not in `other` or vice versa.
    pub fn symmetric_difference(&self, other: &BinaryMask) -> usize {
        self.data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// Parameters of [`refine`]. None of the defaults are load-bearing beyond
/// working on typical depth-camera resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MaskConfig {
    pub min_object_size: usize,
    pub kernel_size: usize,
    pub rdp_epsilon: f64,
}

impl Default for MaskConfig {
    fn default() -> Self {
        Self {
            min_object_size: 64,
            kernel_size: 5,
            rdp_epsilon: 0.75,
        }
    }
}

impl MaskConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_object_size < 1 {
            return Err(Error::Config("min_object_size must be at least 1".into()));
        }
        if self.kernel_size < 1 || self.kernel_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "kernel_size must be odd and positive, got {}",
                self.kernel_size
            )));
        }
        if !(self.rdp_epsilon >= 0.0) {
            return Err(Error::Config(format!(
                "rdp_epsilon must be non-negative, got {}",
                self.rdp_epsilon
            )));
        }
        Ok(())
    }
}

/// Full clean-up: drop specks, keep the largest region, open then close,
/// and replace the region by its filled, simplified outer contour.
pub fn refine(mask: &BinaryMask, cfg: &MaskConfig) -> Result<BinaryMask> {
    cfg.validate()?;
    let filtered = remove_small_objects(mask, cfg.min_object_size);
    let largest = largest_component(&filtered);
    if largest.is_empty() {
        return Err(Error::EmptyMask);
    }
    let smoothed = open_close(&largest, cfg.kernel_size);
    polygonal_refine(&smoothed, cfg.rdp_epsilon)
}
