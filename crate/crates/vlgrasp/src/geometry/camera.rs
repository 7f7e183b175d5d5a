//! Pinhole camera model and 16-bit depth images.

use nalgebra::Point3;
use serde::{Deserialize, Serialize};

use super::{BBox2D, GeometryError, Mask, PointCloud};

/// Pinhole intrinsics, no distortion. Pixel centers sit on integer
/// coordinates; depth is metric along the optical axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: u32,
    pub height: u32,
}

impl CameraIntrinsics {
    pub fn new(
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: u32,
        height: u32,
    ) -> Result<Self, GeometryError> {
        let intr = Self {
            fx,
            fy,
            cx,
            cy,
            width,
            height,
        };
        if !(fx > 0.0 && fy > 0.0) {
            return Err(GeometryError::Invalid {
                what: "intrinsics",
                detail: format!("focal lengths must be positive, got fx={fx}, fy={fy}"),
            });
        }
        if !(0.0 <= cx && cx < width as f64 && 0.0 <= cy && cy < height as f64) {
            return Err(GeometryError::Invalid {
                what: "intrinsics",
                detail: format!("principal point ({cx},{cy}) outside {width}x{height}"),
            });
        }
        Ok(intr)
    }

    /// Standard 640x480 camera with a centered principal point.
    pub fn default_vga() -> Self {
        Self {
            fx: 525.0,
            fy: 525.0,
            cx: 319.5,
            cy: 239.5,
            width: 640,
            height: 480,
        }
    }

    /// Same field of view at a different resolution.
    pub fn scaled_to(&self, width: u32, height: u32) -> Self {
        let sx = width as f64 / self.width as f64;
        let sy = height as f64 / self.height as f64;
        Self {
            fx: self.fx * sx,
            fy: self.fy * sy,
            cx: self.cx * sx,
            cy: self.cy * sy,
            width,
            height,
        }
    }
}

/// Row-major grid of depth values in millimeters; 0 means no return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthImage {
    width: u32,
    height: u32,
    data: Vec<u16>,
}

impl DepthImage {
    pub fn new(width: u32, height: u32, data: Vec<u16>) -> Self {
        assert_eq!(data.len(), (width * height) as usize, "depth buffer size");
        Self {
            width,
            height,
            data,
        }
    }

    pub fn zeros(width: u32, height: u32) -> Self {
        Self::new(width, height, vec![0; (width * height) as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, u: u32, v: u32) -> u16 {
        self.data[(v * self.width + u) as usize]
    }

    pub fn set(&mut self, u: u32, v: u32, mm: u16) {
        self.data[(v * self.width + u) as usize] = mm;
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.data
    }

    /// Depth in meters, `None` for invalid pixels.
    pub fn meters_at(&self, u: u32, v: u32) -> Option<f64> {
        match self.get(u, v) {
            0 => None,
            mm => Some(mm as f64 / 1000.0),
        }
    }
}

/// Back-project valid depth pixels inside `region` ∩ `mask` to camera-frame
/// points; each point carries its source pixel and a target flag taken from
/// mask membership (all true when a mask restricts the domain).
pub fn backproject(
    depth: &DepthImage,
    intr: &CameraIntrinsics,
    region: Option<&BBox2D>,
    mask: Option<&Mask>,
) -> Result<PointCloud, GeometryError> {
    let (u0, v0, u1, v1) = match region {
        Some(b) => match b.clipped_to(intr.width, intr.height) {
            Some(c) => (c.x as u32, c.y as u32, c.x as u32 + c.w, c.y as u32 + c.h),
            None => {
                return Err(GeometryError::EmptyCloud {
                    context: "region does not intersect image bounds".into(),
                })
            }
        },
        None => (0, 0, intr.width, intr.height),
    };

    let mut points = Vec::new();
    let mut pixels = Vec::new();
    for v in v0..v1 {
        for u in u0..u1 {
            if let Some(m) = mask {
                if !m.get(u, v) {
                    continue;
                }
            }
            if let Some(z) = depth.meters_at(u, v) {
                let x = (u as f64 - intr.cx) * z / intr.fx;
                let y = (v as f64 - intr.cy) * z / intr.fy;
                points.push(Point3::new(x, y, z));
                pixels.push((u, v));
            }
        }
    }
    if points.is_empty() {
        return Err(GeometryError::EmptyCloud {
            context: format!(
                "no valid depth in {}x{} window at ({u0},{v0})",
                u1 - u0,
                v1 - v0
            ),
        });
    }
    let n = points.len();
    Ok(PointCloud::with_pixels(
        points,
        pixels,
        vec![mask.is_some(); n],
    ))
}

/// Project a camera-frame point to real-valued pixel coordinates.
pub fn project(point: &Point3<f64>, intr: &CameraIntrinsics) -> Result<(f64, f64), GeometryError> {
    if point.z <= 0.0 {
        return Err(GeometryError::NonProjectable { z: point.z });
    }
    Ok((
        intr.fx * point.x / point.z + intr.cx,
        intr.fy * point.y / point.z + intr.cy,
    ))
}
