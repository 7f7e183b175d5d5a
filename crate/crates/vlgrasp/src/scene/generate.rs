//! Seeded scene generation: catalog sampling, rejection placement, cameras.

use nalgebra::{Matrix3, Point3, Vector3};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    CameraView, Layout, PrimitiveShape, Scene, SceneError, SceneObject, SIZE_BIG, SIZE_MEDIUM,
    SIZE_SMALL,
};
use crate::geometry::{CameraIntrinsics, Pose};

/// Shape family with a correlated size range: one scale draw stretches every
/// dimension between its `lo` and `hi` bound, which keeps "small"/"big" tags
/// meaningful.
#[derive(Debug, Clone, Copy)]
pub enum ShapeTemplate {
    Sphere { radius: (f64, f64) },
    Box { dx: (f64, f64), dy: (f64, f64), dz: (f64, f64) },
    Cylinder { radius: (f64, f64), height: (f64, f64) },
}

impl ShapeTemplate {
    fn sample(&self, scale: f64) -> PrimitiveShape {
        let lerp = |(lo, hi): (f64, f64)| lo + scale * (hi - lo);
        match *self {
            ShapeTemplate::Sphere { radius } => PrimitiveShape::Sphere {
                radius: lerp(radius),
            },
            ShapeTemplate::Box { dx, dy, dz } => PrimitiveShape::Box {
                dx: lerp(dx),
                dy: lerp(dy),
                dz: lerp(dz),
            },
            ShapeTemplate::Cylinder { radius, height } => PrimitiveShape::Cylinder {
                radius: lerp(radius),
                height: lerp(height),
            },
        }
    }
}

/// One graspable object family: category name, shape proxy, allowed colors.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub category: &'static str,
    pub shape: ShapeTemplate,
    pub colors: &'static [&'static str],
}

const MANY: &[&str] = &["red", "green", "blue", "yellow", "white", "black", "purple", "pink"];

/// Built-in object catalog. Categories match the default lexicon.
pub fn default_catalog() -> Vec<CatalogEntry> {
    use ShapeTemplate::*;
    vec![
        CatalogEntry { category: "apple", shape: Sphere { radius: (0.030, 0.042) }, colors: &["red", "green", "yellow"] },
        CatalogEntry { category: "orange", shape: Sphere { radius: (0.032, 0.045) }, colors: &["orange"] },
        CatalogEntry { category: "peach", shape: Sphere { radius: (0.028, 0.038) }, colors: &["pink", "yellow"] },
        CatalogEntry { category: "tennis_ball", shape: Sphere { radius: (0.031, 0.035) }, colors: &["green", "yellow"] },
        CatalogEntry { category: "cup", shape: Cylinder { radius: (0.032, 0.045), height: (0.085, 0.115) }, colors: MANY },
        CatalogEntry { category: "bottle", shape: Cylinder { radius: (0.028, 0.035), height: (0.16, 0.22) }, colors: &["blue", "green", "white", "red"] },
        CatalogEntry { category: "can", shape: Cylinder { radius: (0.030, 0.034), height: (0.10, 0.13) }, colors: &["red", "blue", "green", "black"] },
        CatalogEntry { category: "vitamin_bottle", shape: Cylinder { radius: (0.022, 0.028), height: (0.08, 0.10) }, colors: &["white", "orange", "brown"] },
        CatalogEntry { category: "shampoo_bottle", shape: Cylinder { radius: (0.027, 0.033), height: (0.15, 0.19) }, colors: &["white", "blue", "pink", "purple"] },
        CatalogEntry { category: "banana", shape: Box { dx: (0.12, 0.15), dy: (0.032, 0.040), dz: (0.030, 0.038) }, colors: &["yellow", "green"] },
        CatalogEntry { category: "toothpaste", shape: Box { dx: (0.11, 0.14), dy: (0.028, 0.036), dz: (0.028, 0.036) }, colors: &["white", "blue", "red"] },
        CatalogEntry { category: "soap", shape: Box { dx: (0.045, 0.060), dy: (0.070, 0.090), dz: (0.024, 0.032) }, colors: &["white", "pink", "green"] },
        CatalogEntry { category: "sponge", shape: Box { dx: (0.055, 0.070), dy: (0.085, 0.110), dz: (0.025, 0.035) }, colors: &["yellow", "blue", "green"] },
        CatalogEntry { category: "block", shape: Box { dx: (0.035, 0.060), dy: (0.035, 0.060), dz: (0.035, 0.060) }, colors: MANY },
        CatalogEntry { category: "marker", shape: Box { dx: (0.10, 0.12), dy: (0.014, 0.018), dz: (0.014, 0.018) }, colors: &["black", "blue", "red", "green"] },
        CatalogEntry { category: "remote", shape: Box { dx: (0.042, 0.055), dy: (0.12, 0.15), dz: (0.018, 0.024) }, colors: &["black", "white", "gray"] },
        CatalogEntry { category: "stapler", shape: Box { dx: (0.030, 0.040), dy: (0.10, 0.13), dz: (0.040, 0.055) }, colors: &["black", "red", "blue"] },
        CatalogEntry { category: "computer_mouse", shape: Box { dx: (0.050, 0.065), dy: (0.090, 0.110), dz: (0.030, 0.040) }, colors: &["black", "white", "gray"] },
        CatalogEntry { category: "toy_elephant", shape: Box { dx: (0.045, 0.060), dy: (0.080, 0.105), dz: (0.055, 0.075) }, colors: &["gray", "blue", "pink"] },
        CatalogEntry { category: "toy_dinosaur", shape: Box { dx: (0.035, 0.050), dy: (0.10, 0.14), dz: (0.050, 0.075) }, colors: &["green", "brown", "purple"] },
        CatalogEntry { category: "toy_lion", shape: Box { dx: (0.045, 0.058), dy: (0.085, 0.110), dz: (0.055, 0.075) }, colors: &["yellow", "brown", "orange"] },
        CatalogEntry { category: "cone", shape: Cylinder { radius: (0.032, 0.042), height: (0.09, 0.13) }, colors: &["orange", "red", "yellow"] },
    ]
}

/// Scene generation parameters.
#[derive(Debug, Clone)]
pub struct SceneGenConfig {
    pub layout_weights: Vec<(Layout, f64)>,
    /// Inclusive object-count range.
    pub count_range: (usize, usize),
    /// Probability that a scene contains 2-3 objects of one category.
    pub duplicate_prob: f64,
    pub image_width: u32,
    pub image_height: u32,
    pub catalog: Vec<CatalogEntry>,
}

impl Default for SceneGenConfig {
    fn default() -> Self {
        Self {
            layout_weights: vec![
                (Layout::Table, 0.35),
                (Layout::Shelf, 0.20),
                (Layout::Sofa, 0.12),
                (Layout::WashTable, 0.12),
                (Layout::Drawer, 0.11),
                (Layout::Chair, 0.10),
            ],
            count_range: (3, 10),
            duplicate_prob: 0.5,
            image_width: 640,
            image_height: 480,
            catalog: default_catalog(),
        }
    }
}

impl SceneGenConfig {
    pub fn intrinsics(&self) -> CameraIntrinsics {
        CameraIntrinsics::default_vga().scaled_to(self.image_width, self.image_height)
    }
}

fn support_height(layout: Layout) -> f64 {
    match layout {
        Layout::Table => 0.75,
        Layout::Shelf => 1.00,
        Layout::Sofa => 0.45,
        Layout::WashTable => 0.85,
        Layout::Drawer => 0.55,
        Layout::Chair => 0.45,
    }
}

/// Placement half-extents of the support region per layout.
fn placement_region(layout: Layout) -> (f64, f64) {
    match layout {
        Layout::Shelf => (0.30, 0.16),
        Layout::Drawer => (0.25, 0.18),
        _ => (0.30, 0.24),
    }
}

const OVERHEAD_CLEARANCE: f64 = 0.35;
const PLACEMENT_MARGIN: f64 = 0.012;
const MAX_REJECTIONS: u32 = 1000;

fn pick_layout(weights: &[(Layout, f64)], rng: &mut ChaCha8Rng) -> Layout {
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    let mut x = rng.random_range(0.0..total);
    for &(layout, w) in weights {
        if x < w {
            return layout;
        }
        x -= w;
    }
    weights.last().expect("non-empty layout weights").0
}

/// Generate a scene: weighted layout, 3-10 non-overlapping objects resting on
/// the support surface, optional same-category duplicates, and a camera
/// sampled from the layout's elevation band. Deterministic in `(config, seed)`.
pub fn generate_scene(config: &SceneGenConfig, seed: u64) -> Result<Scene, SceneError> {
    if config.catalog.is_empty() {
        return Err(SceneError::EmptyCatalog);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let layout = pick_layout(&config.layout_weights, &mut rng);
    let support = support_height(layout);
    let overhead = (layout == Layout::Shelf).then_some(OVERHEAD_CLEARANCE);
    let (half_x, half_y) = placement_region(layout);

    let (lo, hi) = config.count_range;
    let n_objects = rng.random_range(lo..=hi);

    // Choose categories first; a duplicated category models ambiguity.
    let mut picks: Vec<usize> = Vec::with_capacity(n_objects);
    if n_objects >= 2 && rng.random_bool(config.duplicate_prob) {
        let dup = rng.random_range(0..config.catalog.len());
        let dup_count = if n_objects >= 3 && rng.random_bool(0.3) { 3 } else { 2 };
        picks.extend(std::iter::repeat(dup).take(dup_count));
    }
    while picks.len() < n_objects {
        let c = rng.random_range(0..config.catalog.len());
        // Cap categories at three instances so location tags keep working.
        if picks.iter().filter(|&&p| p == c).count() < 3 {
            picks.push(c);
        }
    }

    // Crowded scenes get a proportionally larger support region.
    let region_scale = match n_objects {
        0..=5 => 1.0,
        6..=7 => 1.15,
        _ => 1.3,
    };
    let (half_x, half_y) = (half_x * region_scale, half_y * region_scale);

    // Sample appearance up front, then place largest footprints first so the
    // rejection sampler packs reliably within its budget.
    struct Draft {
        entry_idx: usize,
        shape: PrimitiveShape,
        size_tag: &'static str,
        color: &'static str,
    }
    let mut drafts: Vec<Draft> = picks
        .iter()
        .map(|&cat_idx| {
            let entry = &config.catalog[cat_idx];
            let scale = rng.random_range(0.0..1.0);
            let shape = entry.shape.sample(scale);
            let size_tag = if scale < 0.35 {
                SIZE_SMALL
            } else if scale > 0.65 {
                SIZE_BIG
            } else {
                SIZE_MEDIUM
            };
            let color = *entry.colors.choose(&mut rng).expect("non-empty colors");
            Draft {
                entry_idx: cat_idx,
                shape,
                size_tag,
                color,
            }
        })
        .collect();
    drafts.sort_by(|a, b| {
        b.shape
            .footprint_radius()
            .partial_cmp(&a.shape.footprint_radius())
            .unwrap()
    });

    let mut objects: Vec<SceneObject> = Vec::with_capacity(n_objects);
    let mut placed: Vec<(f64, f64, f64)> = Vec::new(); // (x, y, footprint radius)
    let mut rejections = 0u32;
    for (i, draft) in drafts.iter().enumerate() {
        let entry = &config.catalog[draft.entry_idx];
        let radius = draft.shape.footprint_radius();

        let (x, y) = loop {
            let x = rng.random_range(-half_x + radius..half_x - radius);
            let y = rng.random_range(-half_y + radius..half_y - radius);
            let ok = placed.iter().all(|&(px, py, pr)| {
                ((x - px).powi(2) + (y - py).powi(2)).sqrt() >= pr + radius + PLACEMENT_MARGIN
            });
            if ok {
                break (x, y);
            }
            rejections += 1;
            if rejections >= MAX_REJECTIONS {
                return Err(SceneError::PlacementFailed {
                    seed,
                    attempts: rejections,
                });
            }
        };
        placed.push((x, y, radius));

        let yaw = match draft.shape {
            PrimitiveShape::Sphere { .. } => 0.0,
            _ => rng.random_range(0.0..std::f64::consts::TAU),
        };
        let (s, c) = yaw.sin_cos();
        let rotation = Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0);
        let z = support + draft.shape.resting_height() * 0.5;
        objects.push(SceneObject {
            id: (i + 1) as u32,
            category: entry.category.to_string(),
            color: draft.color.to_string(),
            size_tag: draft.size_tag.to_string(),
            shape: draft.shape,
            pose: Pose::new(rotation, Vector3::new(x, y, z)),
        });
    }

    let camera = sample_camera(layout, support, config.intrinsics(), rng.random());
    Ok(Scene {
        layout,
        support_height: support,
        overhead_height: overhead,
        objects,
        camera,
        seed,
    })
}

/// Sample a camera view for the layout: frontal band for shelves, a steep
/// top-down band for tables, mid elevation otherwise. Deterministic in seed.
pub fn sample_camera(
    layout: Layout,
    support_height: f64,
    intrinsics: CameraIntrinsics,
    seed: u64,
) -> CameraView {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (elev_lo, elev_hi) = match layout {
        Layout::Table => (45.0, 70.0),
        Layout::Shelf => (5.0, 25.0),
        _ => (25.0, 50.0),
    };
    let elevation = rng.random_range(elev_lo..elev_hi) * std::f64::consts::PI / 180.0;
    let azimuth = match layout {
        // Shelves are viewed from the front (the -y side).
        Layout::Shelf => rng.random_range(-1.0..1.0),
        _ => rng.random_range(0.0..std::f64::consts::TAU),
    };
    let distance = rng.random_range(0.70..1.10);
    let target = Point3::new(
        rng.random_range(-0.05..0.05),
        rng.random_range(-0.05..0.05),
        support_height,
    );
    let eye = Point3::new(
        target.x + distance * elevation.cos() * azimuth.sin(),
        target.y - distance * elevation.cos() * azimuth.cos(),
        target.z + distance * elevation.sin(),
    );
    CameraView {
        pose: look_at(&eye, &target),
        intrinsics,
    }
}

/// Camera-to-world pose looking from `eye` to `target` with +z forward,
/// +x right, +y down (the usual optical convention).
pub fn look_at(eye: &Point3<f64>, target: &Point3<f64>) -> Pose {
    let forward = (target - eye).normalize();
    let world_up = Vector3::new(0.0, 0.0, 1.0);
    let mut right = forward.cross(&world_up);
    if right.norm() < 1e-9 {
        right = forward.cross(&Vector3::new(1.0, 0.0, 0.0));
    }
    let right = right.normalize();
    let down = forward.cross(&right);
    let rotation = Matrix3::from_columns(&[right, down, forward]);
    Pose::new(rotation, eye.coords)
}
