//! Camera model, rigid transforms, depth↔cloud conversion, 2D box math.
//!
//! All types are immutable values and every operation is a pure function, so
//! the whole module is safe to use from any number of threads.

mod bbox;
mod camera;
mod cloud;
mod pose;

pub use bbox::{dilate_bbox, BBox2D, Mask};
pub use camera::{backproject, project, CameraIntrinsics, DepthImage};
pub use cloud::{estimate_normal, NormalEstimate, PointCloud};
pub use pose::{euler_zyx_from_rotation, rotation_from_euler_zyx, Pose};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    /// Back-projection produced no points (no valid depth in the region).
    #[error("empty point cloud: {context}")]
    EmptyCloud { context: String },
    /// A point at or behind the camera plane cannot be projected.
    #[error("point not projectable: z = {z}")]
    NonProjectable { z: f64 },
    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },
}
