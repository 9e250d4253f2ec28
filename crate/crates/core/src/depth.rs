use crate::error::{Error, Result};
use crate::geom::Pixel;
use crate::mask::BinaryMask;

/// Row-major metric depth (camera-frame Z, meters). Zero and non-finite
/// values mean "no measurement".
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl DepthMap {
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "depth dimensions must be positive");
        Self {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "depth data of length {} does not fit {width}x{height}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut map = Self::new(width, height);
        for y in 0..height {
            for x in 0..width {
                map.data[y * width + x] = f(x, y);
            }
        }
        map
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

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get_raw(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: f64) {
        self.data[y * self.width + x] = value;
    }

    /// Valid depth at a pixel, `None` when missing or outside the image.
    pub fn get(&self, p: Pixel) -> Option<f64> {
        if p.x < 0 || p.y < 0 || p.x as usize >= self.width || p.y as usize >= self.height {
            return None;
        }
        let d = self.data[p.y as usize * self.width + p.x as usize];
        is_valid(d).then_some(d)
    }

    pub fn check_matches(&self, mask: &BinaryMask) -> Result<()> {
        if self.dims() != mask.dims() {
            return Err(Error::DimensionMismatch {
                expected: mask.dims(),
                actual: self.dims(),
            });
        }
        Ok(())
    }

    /// Mask of pixels carrying a valid depth.
    pub fn valid_mask(&self) -> BinaryMask {
        BinaryMask::from_vec(
            self.width,
            self.height,
            self.data.iter().map(|&d| is_valid(d)).collect(),
        )
        .expect("same dimensions")
    }
}

pub fn is_valid(d: f64) -> bool {
    d.is_finite() && d > 0.0
}
