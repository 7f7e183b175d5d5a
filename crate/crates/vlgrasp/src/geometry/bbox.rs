//! Axis-aligned pixel boxes and binary masks.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Axis-aligned box; `(x, y)` is the top-left pixel, `w`/`h` the extent.
/// Covers pixel columns `x..x+w` and rows `y..y+h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BBox2D {
    pub x: i32,
    pub y: i32,
    pub w: u32,
    pub h: u32,
}

impl BBox2D {
    pub fn new(x: i32, y: i32, w: u32, h: u32) -> Self {
        assert!(w > 0 && h > 0, "box extent must be positive");
        Self { x, y, w, h }
    }

    pub fn area(&self) -> f64 {
        self.w as f64 * self.h as f64
    }

    pub fn center(&self) -> (f64, f64) {
        (
            self.x as f64 + self.w as f64 / 2.0,
            self.y as f64 + self.h as f64 / 2.0,
        )
    }

    pub fn contains_pixel(&self, u: u32, v: u32) -> bool {
        let (u, v) = (u as i64, v as i64);
        u >= self.x as i64
            && v >= self.y as i64
            && u < self.x as i64 + self.w as i64
            && v < self.y as i64 + self.h as i64
    }

    /// Intersection with `width`x`height` image bounds; `None` when empty.
    pub fn clipped_to(&self, width: u32, height: u32) -> Option<BBox2D> {
        let x0 = self.x.max(0);
        let y0 = self.y.max(0);
        let x1 = (self.x as i64 + self.w as i64).min(width as i64) as i32;
        let y1 = (self.y as i64 + self.h as i64).min(height as i64) as i32;
        if x1 > x0 && y1 > y0 {
            Some(BBox2D::new(x0, y0, (x1 - x0) as u32, (y1 - y0) as u32))
        } else {
            None
        }
    }
}

// On the wire a box is always the 4-array [x, y, w, h].
impl Serialize for BBox2D {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            self.x as i64,
            self.y as i64,
            self.w as i64,
            self.h as i64,
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BBox2D {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = <[i64; 4]>::deserialize(d)?;
        if v[2] <= 0 || v[3] <= 0 {
            return Err(D::Error::custom(format!(
                "bbox extent must be positive, got {:?}",
                v
            )));
        }
        Ok(BBox2D {
            x: v[0] as i32,
            y: v[1] as i32,
            w: v[2] as u32,
            h: v[3] as u32,
        })
    }
}

/// Grow a box by `f · extent` on every side, then clamp to image bounds.
/// Clamping uses floor/ceil so the result always contains `b ∩ bounds`.
pub fn dilate_bbox(b: &BBox2D, f: f64, width: u32, height: u32) -> BBox2D {
    assert!(f >= 0.0, "dilation factor must be non-negative");
    let x0 = (b.x as f64 - f * b.w as f64).floor();
    let y0 = (b.y as f64 - f * b.h as f64).floor();
    let x1 = (b.x as f64 + b.w as f64 * (1.0 + f)).ceil();
    let y1 = (b.y as f64 + b.h as f64 * (1.0 + f)).ceil();
    let x0 = (x0.max(0.0) as i32).min(width as i32 - 1);
    let y0 = (y0.max(0.0) as i32).min(height as i32 - 1);
    let x1 = (x1.min(width as f64) as i32).max(x0 + 1);
    let y1 = (y1.min(height as f64) as i32).max(y0 + 1);
    BBox2D::new(x0, y0, (x1 - x0) as u32, (y1 - y0) as u32)
}

/// Row-major binary grid; `true` marks target pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: u32,
    height: u32,
    data: Vec<bool>,
}

impl Mask {
    pub fn new(width: u32, height: u32, data: Vec<bool>) -> Self {
        assert_eq!(data.len(), (width * height) as usize, "mask buffer size");
        Self {
            width,
            height,
            data,
        }
    }

    pub fn empty(width: u32, height: u32) -> Self {
        Self::new(width, height, vec![false; (width * height) as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, u: u32, v: u32) -> bool {
        self.data[(v * self.width + u) as usize]
    }

    pub fn set(&mut self, u: u32, v: u32, value: bool) {
        self.data[(v * self.width + u) as usize] = value;
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.data
    }

    /// Tight bounding box of the set pixels, `None` when the mask is empty.
    pub fn tight_bbox(&self) -> Option<BBox2D> {
        let (mut umin, mut vmin, mut umax, mut vmax) = (u32::MAX, u32::MAX, 0u32, 0u32);
        let mut any = false;
        for v in 0..self.height {
            for u in 0..self.width {
                if self.get(u, v) {
                    any = true;
                    umin = umin.min(u);
                    vmin = vmin.min(v);
                    umax = umax.max(u);
                    vmax = vmax.max(v);
                }
            }
        }
        any.then(|| {
            BBox2D::new(
                umin as i32,
                vmin as i32,
                umax - umin + 1,
                vmax - vmin + 1,
            )
        })
    }
}
