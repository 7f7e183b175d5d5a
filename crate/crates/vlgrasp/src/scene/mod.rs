//! Synthetic cluttered indoor scenes rendered by analytic ray casting.
//!
//! Scenes stand in for a real RGB-D capture rig: primitive-shaped objects on
//! a support surface, a sampled camera, and a renderer that emits aligned
//! color, depth, and instance-id images with exact ground truth.

mod generate;
mod primitives;
mod render;
mod summary;

pub use generate::{generate_scene, sample_camera, CatalogEntry, SceneGenConfig, ShapeTemplate};
pub use primitives::{raycast_horizontal_rect, raycast_shape, shape_contains, PrimitiveShape};
pub use render::{gt_annotations, render, ColorImage, InstanceImage, RenderedFrame};
pub use summary::{summarize_frame, ObjectSummary};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{CameraIntrinsics, Pose};

/// The six supported room layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    Table,
    Shelf,
    Sofa,
    WashTable,
    Drawer,
    Chair,
}

impl Layout {
    pub const ALL: [Layout; 6] = [
        Layout::Table,
        Layout::Shelf,
        Layout::Sofa,
        Layout::WashTable,
        Layout::Drawer,
        Layout::Chair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Layout::Table => "table",
            Layout::Shelf => "shelf",
            Layout::Sofa => "sofa",
            Layout::WashTable => "wash_table",
            Layout::Drawer => "drawer",
            Layout::Chair => "chair",
        }
    }
}

/// Size class attached to each object alongside its color.
pub const SIZE_SMALL: &str = "small";
pub const SIZE_BIG: &str = "big";
pub const SIZE_MEDIUM: &str = "medium";

/// One placed object with its category, appearance tags, shape, and pose.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneObject {
    pub id: u32,
    pub category: String,
    pub color: String,
    pub size_tag: String,
    pub shape: PrimitiveShape,
    pub pose: Pose,
}

/// Camera view: camera-to-world pose plus intrinsics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CameraView {
    pub pose: Pose,
    pub intrinsics: CameraIntrinsics,
}

/// A complete scene: layout, support surface, objects, and one camera view.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scene {
    pub layout: Layout,
    pub support_height: f64,
    /// Shelf layouts add a board this far above the support surface.
    pub overhead_height: Option<f64>,
    pub objects: Vec<SceneObject>,
    pub camera: CameraView,
    pub seed: u64,
}

impl Scene {
    pub fn object(&self, id: u32) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Same scene viewed by a different camera.
    pub fn with_camera(&self, camera: CameraView) -> Scene {
        Scene {
            camera,
            ..self.clone()
        }
    }
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("object placement failed after {attempts} rejections (seed {seed})")]
    PlacementFailed { seed: u64, attempts: u32 },
    #[error("object catalog is empty")]
    EmptyCatalog,
    #[error("object {id} is not visible in the frame")]
    NotVisible { id: u32 },
    #[error("unknown object id {id}")]
    UnknownObject { id: u32 },
}
