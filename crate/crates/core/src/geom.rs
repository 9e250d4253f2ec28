use serde::{Deserialize, Serialize};

pub type Point2 = nalgebra::Point2<f64>;
pub type Point3 = nalgebra::Point3<f64>;
pub type Vector2 = nalgebra::Vector2<f64>;

/// Integer pixel coordinate. `y` grows downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pixel {
    pub x: i64,
    pub y: i64,
}

impl Pixel {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Nearest pixel to a subpixel position (pixel centers at integers).
    pub fn nearest(p: &Point2) -> Self {
        Self {
            x: (p.x + 0.5).floor() as i64,
            y: (p.y + 0.5).floor() as i64,
        }
    }

    pub fn to_point(self) -> Point2 {
        Point2::new(self.x as f64, self.y as f64)
    }

    pub fn chebyshev(self, other: Pixel) -> i64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn dist2(self, other: Pixel) -> i64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// The eight surrounding pixels, row-major.
    pub fn neighbors8(self) -> impl Iterator<Item = Pixel> {
        NEIGHBORS8
            .iter()
            .map(move |&(dx, dy)| Pixel::new(self.x + dx, self.y + dy))
    }

    /// Row-major ordering key: smallest y first, then smallest x.
    pub fn raster_key(self) -> (i64, i64) {
        (self.y, self.x)
    }
}

pub const NEIGHBORS8: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];
