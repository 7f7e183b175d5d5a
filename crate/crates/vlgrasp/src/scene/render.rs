//! Analytic ray-casting renderer producing aligned color/depth/instance
//! frames, and exact ground-truth annotation extraction.

use nalgebra::{Point3, Vector3};

use super::{raycast_horizontal_rect, raycast_shape, Scene, SceneError};
use crate::exec;
use crate::geometry::{BBox2D, DepthImage, Mask};

/// 8-bit RGB image, row-major, 3 bytes per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl ColorImage {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), (width * height * 3) as usize);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, u: u32, v: u32) -> [u8; 3] {
        let i = ((v * self.width + u) * 3) as usize;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }
}

/// Per-pixel instance ids; 0 is background (including layout surfaces).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceImage {
    width: u32,
    height: u32,
    data: Vec<u16>,
}

impl InstanceImage {
    pub fn new(width: u32, height: u32, data: Vec<u16>) -> Self {
        assert_eq!(data.len(), (width * height) as usize);
        Self {
            width,
            height,
            data,
        }
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

    pub fn as_slice(&self) -> &[u16] {
        &self.data
    }

    /// Binary mask of one instance id.
    pub fn mask_of(&self, id: u16) -> Mask {
        Mask::new(
            self.width,
            self.height,
            self.data.iter().map(|&x| x == id).collect(),
        )
    }
}

/// Aligned color, depth, and instance-id images of one scene view.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedFrame {
    pub color: ColorImage,
    pub depth: DepthImage,
    pub instances: InstanceImage,
}

fn color_rgb(name: &str) -> [f64; 3] {
    match name {
        "red" => [200.0, 40.0, 40.0],
        "green" => [50.0, 160.0, 60.0],
        "blue" => [50.0, 80.0, 200.0],
        "yellow" => [220.0, 200.0, 40.0],
        "orange" => [235.0, 140.0, 30.0],
        "purple" => [140.0, 60.0, 180.0],
        "pink" => [235.0, 130.0, 180.0],
        "white" => [235.0, 235.0, 235.0],
        "black" => [35.0, 35.0, 35.0],
        "brown" => [140.0, 90.0, 50.0],
        "gray" => [128.0, 128.0, 128.0],
        _ => [128.0, 128.0, 128.0],
    }
}

const SURFACE_RGB: [f64; 3] = [180.0, 175.0, 165.0];
const SURFACE_HALF_EXTENT: f64 = 1.0;
const AMBIENT: f64 = 0.35;

fn light_dir() -> Vector3<f64> {
    Vector3::new(0.4, -0.3, 1.0).normalize() // toward the light
}

struct Hit {
    t: f64,
    id: u16,
    normal: Vector3<f64>,
    base_rgb: [f64; 3],
}

fn cast_ray(scene: &Scene, origin: &Point3<f64>, dir: &Vector3<f64>) -> Option<Hit> {
    let mut best: Option<Hit> = None;
    let mut consider = |hit: Option<(f64, Vector3<f64>)>, id: u16, rgb: [f64; 3]| {
        if let Some((t, normal)) = hit {
            if best.as_ref().map_or(true, |b| t < b.t) {
                best = Some(Hit {
                    t,
                    id,
                    normal,
                    base_rgb: rgb,
                });
            }
        }
    };

    consider(
        raycast_horizontal_rect(
            scene.support_height,
            SURFACE_HALF_EXTENT,
            SURFACE_HALF_EXTENT,
            origin,
            dir,
        ),
        0,
        SURFACE_RGB,
    );
    if let Some(clearance) = scene.overhead_height {
        consider(
            raycast_horizontal_rect(
                scene.support_height + clearance,
                SURFACE_HALF_EXTENT,
                SURFACE_HALF_EXTENT,
                origin,
                dir,
            ),
            0,
            SURFACE_RGB,
        );
    }
    for obj in &scene.objects {
        consider(
            raycast_shape(&obj.shape, &obj.pose, origin, dir),
            obj.id as u16,
            color_rgb(&obj.color),
        );
    }
    best
}

fn shade(rgb: [f64; 3], normal: &Vector3<f64>) -> [f64; 3] {
    let n = normal.normalize();
    let diffuse = n.dot(&light_dir()).abs();
    let k = AMBIENT + (1.0 - AMBIENT) * diffuse;
    [rgb[0] * k, rgb[1] * k, rgb[2] * k]
}

/// Render the scene. Rays go through pixel centers (integer coordinates);
/// with `supersample` = s, an s×s sub-grid per pixel is averaged for color
/// while depth and instance id come from the majority-id sample. Depth is the
/// camera-frame z distance in millimeters; misses get depth 0 and id 0.
pub fn render(scene: &Scene, supersample: u32) -> RenderedFrame {
    assert!(supersample >= 1);
    let intr = scene.camera.intrinsics;
    let cam = &scene.camera.pose;
    let (w, h) = (intr.width, intr.height);
    let origin = Point3::from(*cam.translation());
    let s = supersample;

    // Rows are independent; render them in (possibly parallel) order.
    let rows = exec::map_range(h as usize, |vr| {
        let v = vr as u32;
        let mut color_row = vec![0u8; (w * 3) as usize];
        let mut depth_row = vec![0u16; w as usize];
        let mut id_row = vec![0u16; w as usize];
        let mut samples: Vec<(u16, f64, [f64; 3])> = Vec::with_capacity((s * s) as usize);
        for u in 0..w {
            samples.clear();
            for sv in 0..s {
                for su in 0..s {
                    let du = (su as f64 + 0.5) / s as f64 - 0.5;
                    let dv = (sv as f64 + 0.5) / s as f64 - 0.5;
                    // Unit z in the camera frame makes the ray parameter the
                    // optical-axis depth directly.
                    let dir_cam = Vector3::new(
                        (u as f64 + du - intr.cx) / intr.fx,
                        (v as f64 + dv - intr.cy) / intr.fy,
                        1.0,
                    );
                    let dir = cam.transform_vector(&dir_cam);
                    match cast_ray(scene, &origin, &dir) {
                        Some(hit) => {
                            samples.push((hit.id, hit.t, shade(hit.base_rgb, &hit.normal)))
                        }
                        None => samples.push((u16::MAX, 0.0, [0.0, 0.0, 0.0])),
                    }
                }
            }
            // Majority instance id; ties break toward the nearer surface.
            let mut winner: (u16, usize, f64) = (u16::MAX, 0, f64::INFINITY);
            for &(id, t, _) in &samples {
                let count = samples.iter().filter(|&&(i, _, _)| i == id).count();
                let min_t = samples
                    .iter()
                    .filter(|&&(i, _, _)| i == id)
                    .map(|&(_, t2, _)| t2)
                    .fold(f64::INFINITY, f64::min);
                if count > winner.1 || (count == winner.1 && min_t < winner.2) {
                    winner = (id, count, min_t);
                }
                let _ = t;
            }
            let (win_id, _, _) = winner;
            let mut rgb = [0.0f64; 3];
            for &(_, _, c) in &samples {
                rgb[0] += c[0];
                rgb[1] += c[1];
                rgb[2] += c[2];
            }
            let n = samples.len() as f64;
            let i = (u * 3) as usize;
            color_row[i] = (rgb[0] / n).round().clamp(0.0, 255.0) as u8;
            color_row[i + 1] = (rgb[1] / n).round().clamp(0.0, 255.0) as u8;
            color_row[i + 2] = (rgb[2] / n).round().clamp(0.0, 255.0) as u8;
            if win_id != u16::MAX {
                let depths: Vec<f64> = samples
                    .iter()
                    .filter(|&&(i2, _, _)| i2 == win_id)
                    .map(|&(_, t, _)| t)
                    .collect();
                let mean_t = depths.iter().sum::<f64>() / depths.len() as f64;
                depth_row[u as usize] = (mean_t * 1000.0).round().clamp(0.0, 65535.0) as u16;
                id_row[u as usize] = win_id;
            }
        }
        (color_row, depth_row, id_row)
    });

    let mut color = Vec::with_capacity((w * h * 3) as usize);
    let mut depth = Vec::with_capacity((w * h) as usize);
    let mut ids = Vec::with_capacity((w * h) as usize);
    for (c, d, i) in rows {
        color.extend_from_slice(&c);
        depth.extend_from_slice(&d);
        ids.extend_from_slice(&i);
    }
    RenderedFrame {
        color: ColorImage::new(w, h, color),
        depth: DepthImage::new(w, h, depth),
        instances: InstanceImage::new(w, h, ids),
    }
}

/// Exact mask and tight bounding box of a rendered object.
pub fn gt_annotations(frame: &RenderedFrame, object_id: u32) -> Result<(BBox2D, Mask), SceneError> {
    let mask = frame.instances.mask_of(object_id as u16);
    match mask.tight_bbox() {
        Some(bbox) => Ok((bbox, mask)),
        None => Err(SceneError::NotVisible { id: object_id }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CameraIntrinsics, Pose};
    use crate::scene::{CameraView, Layout, PrimitiveShape, SceneObject};
    use nalgebra::Matrix3;

    /// Camera at the world origin looking straight down the +z axis; objects
    /// are placed in front of it in camera coordinates.
    fn frontal_scene(objects: Vec<SceneObject>, support_z: f64) -> Scene {
        Scene {
            layout: Layout::Table,
            support_height: support_z,
            overhead_height: None,
            objects,
            camera: CameraView {
                pose: Pose::new(
                    // Camera x -> world x, camera y -> world -z? Keep it
                    // simple: identity means world == camera frame, with the
                    // "support" plane fronto-parallel at z = support_z.
                    Matrix3::identity(),
                    nalgebra::Vector3::zeros(),
                ),
                intrinsics: CameraIntrinsics::new(500.0, 500.0, 320.0, 240.0, 640, 480).unwrap(),
            },
            seed: 0,
        }
    }

    #[test]
    fn sphere_center_depth() {
        // Sphere r=0.05 on the optical axis at z=1.0 -> center depth 950 mm.
        let sphere = SceneObject {
            id: 1,
            category: "apple".into(),
            color: "red".into(),
            size_tag: "medium".into(),
            shape: PrimitiveShape::Sphere { radius: 0.05 },
            pose: Pose::new(Matrix3::identity(), nalgebra::Vector3::new(0.0, 0.0, 1.0)),
        };
        // Put the support plane far behind so it does not interfere.
        let scene = frontal_scene(vec![sphere], 5.0);
        let frame = render(&scene, 1);
        assert_eq!(frame.depth.get(320, 240), 950);
        assert_eq!(frame.instances.get(320, 240), 1);
    }

    #[test]
    fn empty_scene_plane_depth() {
        // Fronto-parallel support plane at z=1.2 -> center depth 1200 mm.
        let scene = frontal_scene(vec![], 1.2);
        let frame = render(&scene, 1);
        assert_eq!(frame.depth.get(320, 240), 1200);
        assert_eq!(frame.instances.get(320, 240), 0);
    }

    #[test]
    fn instance_ids_follow_objects() {
        let sphere = SceneObject {
            id: 3,
            category: "apple".into(),
            color: "green".into(),
            size_tag: "medium".into(),
            shape: PrimitiveShape::Sphere { radius: 0.08 },
            pose: Pose::new(Matrix3::identity(), nalgebra::Vector3::new(0.0, 0.0, 0.9)),
        };
        let scene = frontal_scene(vec![sphere], 1.5);
        let frame = render(&scene, 1);
        for v in (0..480).step_by(7) {
            for u in (0..640).step_by(7) {
                let id = frame.instances.get(u, v);
                let d = frame.depth.get(u, v);
                if id != 0 {
                    assert!(d > 0, "object pixel must have depth");
                    assert!(d < 1500, "object is nearer than the plane");
                }
            }
        }
    }

    #[test]
    fn gt_annotations_tight_box_and_occlusion() {
        let front = SceneObject {
            id: 1,
            category: "block".into(),
            color: "blue".into(),
            size_tag: "big".into(),
            shape: PrimitiveShape::Box {
                dx: 0.4,
                dy: 0.4,
                dz: 0.01,
            },
            pose: Pose::new(Matrix3::identity(), nalgebra::Vector3::new(0.0, 0.0, 0.5)),
        };
        let hidden = SceneObject {
            id: 2,
            category: "apple".into(),
            color: "red".into(),
            size_tag: "small".into(),
            shape: PrimitiveShape::Sphere { radius: 0.03 },
            pose: Pose::new(Matrix3::identity(), nalgebra::Vector3::new(0.0, 0.0, 0.8)),
        };
        let scene = frontal_scene(vec![front, hidden], 5.0);
        let frame = render(&scene, 1);
        let (bbox, mask) = gt_annotations(&frame, 1).unwrap();
        // Every mask pixel inside the box; box is minimal.
        for v in 0..480u32 {
            for u in 0..640u32 {
                if mask.get(u, v) {
                    assert!(bbox.contains_pixel(u, v));
                }
            }
        }
        let touches = |edge: &dyn Fn(u32, u32) -> bool| {
            (0..480).any(|v| (0..640).any(|u| mask.get(u, v) && edge(u, v)))
        };
        assert!(touches(&|u, _| u == bbox.x as u32));
        assert!(touches(&|u, _| u == bbox.x as u32 + bbox.w - 1));
        assert!(touches(&|_, v| v == bbox.y as u32));
        assert!(touches(&|_, v| v == bbox.y as u32 + bbox.h - 1));
        // The sphere is fully behind the plate.
        assert!(matches!(
            gt_annotations(&frame, 2),
            Err(SceneError::NotVisible { id: 2 })
        ));
    }

    #[test]
    fn render_is_deterministic() {
        let cfg = crate::scene::SceneGenConfig::default();
        let scene = crate::scene::generate_scene(&cfg, 9).unwrap();
        let a = render(&scene, 1);
        let b = render(&scene, 1);
        assert_eq!(a, b);
    }
}
