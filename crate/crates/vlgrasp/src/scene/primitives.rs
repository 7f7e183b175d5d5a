//! Analytic primitives: ray intersection, containment, surface sampling.

use nalgebra::{Point3, Vector3};
use serde::{Deserialize, Serialize};

use crate::geometry::Pose;

/// Proxy shapes for graspable objects. Dimensions in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PrimitiveShape {
    Sphere { radius: f64 },
    Box { dx: f64, dy: f64, dz: f64 },
    Cylinder { radius: f64, height: f64 },
}

impl PrimitiveShape {
    /// Height of the shape when resting on a horizontal surface.
    pub fn resting_height(&self) -> f64 {
        match *self {
            PrimitiveShape::Sphere { radius } => 2.0 * radius,
            PrimitiveShape::Box { dz, .. } => dz,
            PrimitiveShape::Cylinder { height, .. } => height,
        }
    }

    /// Radius of the bounding circle of the footprint on the support plane.
    pub fn footprint_radius(&self) -> f64 {
        match *self {
            PrimitiveShape::Sphere { radius } => radius,
            PrimitiveShape::Box { dx, dy, .. } => 0.5 * (dx * dx + dy * dy).sqrt(),
            PrimitiveShape::Cylinder { radius, .. } => radius,
        }
    }

    /// Point containment in the local frame (origin at shape center).
    pub fn contains_local(&self, p: &Point3<f64>) -> bool {
        match *self {
            PrimitiveShape::Sphere { radius } => p.coords.norm_squared() <= radius * radius,
            PrimitiveShape::Box { dx, dy, dz } => {
                p.x.abs() <= dx * 0.5 && p.y.abs() <= dy * 0.5 && p.z.abs() <= dz * 0.5
            }
            PrimitiveShape::Cylinder { radius, height } => {
                p.x * p.x + p.y * p.y <= radius * radius && p.z.abs() <= height * 0.5
            }
        }
    }

    /// First intersection of a local-frame ray with the shape surface.
    /// Returns the ray parameter and the local surface normal.
    pub fn raycast_local(
        &self,
        origin: &Point3<f64>,
        dir: &Vector3<f64>,
    ) -> Option<(f64, Vector3<f64>)> {
        const T_MIN: f64 = 1e-9;
        match *self {
            PrimitiveShape::Sphere { radius } => {
                let a = dir.norm_squared();
                let b = 2.0 * origin.coords.dot(dir);
                let c = origin.coords.norm_squared() - radius * radius;
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    return None;
                }
                let sq = disc.sqrt();
                let t = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
                    .into_iter()
                    .find(|&t| t > T_MIN)?;
                let hit = origin + dir * t;
                Some((t, hit.coords / radius))
            }
            PrimitiveShape::Box { dx, dy, dz } => {
                let half = [dx * 0.5, dy * 0.5, dz * 0.5];
                let mut t_near = f64::NEG_INFINITY;
                let mut t_far = f64::INFINITY;
                let mut near_axis = 0usize;
                for axis in 0..3 {
                    let o = origin[axis];
                    let d = dir[axis];
                    if d.abs() < 1e-15 {
                        if o.abs() > half[axis] {
                            return None;
                        }
                        continue;
                    }
                    let mut t0 = (-half[axis] - o) / d;
                    let mut t1 = (half[axis] - o) / d;
                    if t0 > t1 {
                        std::mem::swap(&mut t0, &mut t1);
                    }
                    if t0 > t_near {
                        t_near = t0;
                        near_axis = axis;
                    }
                    t_far = t_far.min(t1);
                    if t_near > t_far {
                        return None;
                    }
                }
                if t_near <= T_MIN {
                    return None;
                }
                let hit = origin + dir * t_near;
                let mut normal = Vector3::zeros();
                normal[near_axis] = hit[near_axis].signum();
                Some((t_near, normal))
            }
            PrimitiveShape::Cylinder { radius, height } => {
                let h2 = height * 0.5;
                let mut best: Option<(f64, Vector3<f64>)> = None;
                // Lateral surface.
                let a = dir.x * dir.x + dir.y * dir.y;
                if a > 1e-15 {
                    let b = 2.0 * (origin.x * dir.x + origin.y * dir.y);
                    let c = origin.x * origin.x + origin.y * origin.y - radius * radius;
                    let disc = b * b - 4.0 * a * c;
                    if disc >= 0.0 {
                        let sq = disc.sqrt();
                        for t in [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)] {
                            if t > T_MIN {
                                let hit = origin + dir * t;
                                if hit.z.abs() <= h2 {
                                    let n = Vector3::new(hit.x / radius, hit.y / radius, 0.0);
                                    if best.map_or(true, |(bt, _)| t < bt) {
                                        best = Some((t, n));
                                    }
                                    break;
                                }
                            }
                        }
                    }
                }
                // End caps.
                if dir.z.abs() > 1e-15 {
                    for cap_z in [-h2, h2] {
                        let t = (cap_z - origin.z) / dir.z;
                        if t > T_MIN {
                            let hit = origin + dir * t;
                            if hit.x * hit.x + hit.y * hit.y <= radius * radius
                                && best.map_or(true, |(bt, _)| t < bt)
                            {
                                best = Some((t, Vector3::new(0.0, 0.0, cap_z.signum())));
                            }
                        }
                    }
                }
                best
            }
        }
    }

    /// Surface points on a roughly uniform grid with the given spacing (m),
    /// in the local frame. Used by the geometric grasp evaluator.
    pub fn sample_surface_local(&self, spacing: f64) -> Vec<Point3<f64>> {
        let mut pts = Vec::new();
        match *self {
            PrimitiveShape::Sphere { radius } => {
                // Latitude bands with proportional longitude counts.
                let n_lat = ((std::f64::consts::PI * radius / spacing).ceil() as usize).max(3);
                for i in 0..=n_lat {
                    let theta = std::f64::consts::PI * i as f64 / n_lat as f64;
                    let ring_r = radius * theta.sin();
                    let z = radius * theta.cos();
                    let n_lon = ((std::f64::consts::TAU * ring_r / spacing).ceil() as usize).max(1);
                    for j in 0..n_lon {
                        let phi = std::f64::consts::TAU * j as f64 / n_lon as f64;
                        pts.push(Point3::new(ring_r * phi.cos(), ring_r * phi.sin(), z));
                    }
                }
            }
            PrimitiveShape::Box { dx, dy, dz } => {
                let half = [dx * 0.5, dy * 0.5, dz * 0.5];
                let steps = |len: f64| ((len / spacing).ceil() as usize).max(1);
                // Six faces; fixed axis takes ±half, the others span a grid.
                for axis in 0..3 {
                    let (a1, a2) = ((axis + 1) % 3, (axis + 2) % 3);
                    let (n1, n2) = (steps(2.0 * half[a1]), steps(2.0 * half[a2]));
                    for sign in [-1.0, 1.0] {
                        for i in 0..=n1 {
                            for j in 0..=n2 {
                                let mut p = [0.0; 3];
                                p[axis] = sign * half[axis];
                                p[a1] = -half[a1] + 2.0 * half[a1] * i as f64 / n1 as f64;
                                p[a2] = -half[a2] + 2.0 * half[a2] * j as f64 / n2 as f64;
                                pts.push(Point3::new(p[0], p[1], p[2]));
                            }
                        }
                    }
                }
            }
            PrimitiveShape::Cylinder { radius, height } => {
                let h2 = height * 0.5;
                let n_phi = ((std::f64::consts::TAU * radius / spacing).ceil() as usize).max(3);
                let n_z = ((height / spacing).ceil() as usize).max(1);
                for i in 0..n_phi {
                    let phi = std::f64::consts::TAU * i as f64 / n_phi as f64;
                    let (x, y) = (radius * phi.cos(), radius * phi.sin());
                    for j in 0..=n_z {
                        pts.push(Point3::new(x, y, -h2 + height * j as f64 / n_z as f64));
                    }
                }
                // Caps as concentric rings.
                let n_r = ((radius / spacing).ceil() as usize).max(1);
                for k in 0..=n_r {
                    let r = radius * k as f64 / n_r as f64;
                    let n_ring = ((std::f64::consts::TAU * r / spacing).ceil() as usize).max(1);
                    for i in 0..n_ring {
                        let phi = std::f64::consts::TAU * i as f64 / n_ring as f64;
                        for z in [-h2, h2] {
                            pts.push(Point3::new(r * phi.cos(), r * phi.sin(), z));
                        }
                    }
                }
            }
        }
        pts
    }
}

/// Intersect a world-frame ray with a posed shape. The ray parameter is
/// preserved by the rigid transform, so `t` has the caller's scale.
pub fn raycast_shape(
    shape: &PrimitiveShape,
    pose: &Pose,
    origin: &Point3<f64>,
    dir: &Vector3<f64>,
) -> Option<(f64, Vector3<f64>)> {
    let inv = pose.inverse();
    let o_local = inv.transform_point(origin);
    let d_local = inv.transform_vector(dir);
    shape
        .raycast_local(&o_local, &d_local)
        .map(|(t, n_local)| (t, pose.transform_vector(&n_local)))
}

/// World-frame containment test for a posed shape.
pub fn shape_contains(
    shape: &PrimitiveShape,
    pose: &Pose,
    point: &Point3<f64>,
) -> bool {
    shape.contains_local(&pose.inverse().transform_point(point))
}

/// Intersect a ray with the horizontal rectangle `z = height`,
/// `|x| <= half_x`, `|y| <= half_y`. Returns the parameter and normal.
pub fn raycast_horizontal_rect(
    height: f64,
    half_x: f64,
    half_y: f64,
    origin: &Point3<f64>,
    dir: &Vector3<f64>,
) -> Option<(f64, Vector3<f64>)> {
    if dir.z.abs() < 1e-15 {
        return None;
    }
    let t = (height - origin.z) / dir.z;
    if t <= 1e-9 {
        return None;
    }
    let hit = origin + dir * t;
    if hit.x.abs() <= half_x && hit.y.abs() <= half_y {
        Some((t, Vector3::new(0.0, 0.0, -dir.z.signum())))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_raycast_head_on() {
        let s = PrimitiveShape::Sphere { radius: 0.05 };
        let (t, n) = s
            .raycast_local(
                &Point3::new(0.0, 0.0, -1.0),
                &Vector3::new(0.0, 0.0, 1.0),
            )
            .unwrap();
        assert!((t - 0.95).abs() < 1e-12);
        assert!((n - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn box_raycast_face_and_normal() {
        let b = PrimitiveShape::Box {
            dx: 0.2,
            dy: 0.2,
            dz: 0.2,
        };
        let (t, n) = b
            .raycast_local(&Point3::new(0.0, -2.0, 0.0), &Vector3::new(0.0, 1.0, 0.0))
            .unwrap();
        assert!((t - 1.9).abs() < 1e-12);
        assert!((n - Vector3::new(0.0, -1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cylinder_raycast_side_and_cap() {
        let c = PrimitiveShape::Cylinder {
            radius: 0.05,
            height: 0.2,
        };
        let (t, n) = c
            .raycast_local(&Point3::new(-1.0, 0.0, 0.0), &Vector3::new(1.0, 0.0, 0.0))
            .unwrap();
        assert!((t - 0.95).abs() < 1e-12);
        assert!((n - Vector3::new(-1.0, 0.0, 0.0)).norm() < 1e-12);
        let (t, n) = c
            .raycast_local(&Point3::new(0.0, 0.0, 1.0), &Vector3::new(0.0, 0.0, -1.0))
            .unwrap();
        assert!((t - 0.9).abs() < 1e-12);
        assert!((n - Vector3::new(0.0, 0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn raycast_misses_return_none() {
        let s = PrimitiveShape::Sphere { radius: 0.05 };
        assert!(s
            .raycast_local(&Point3::new(0.0, 1.0, -1.0), &Vector3::new(0.0, 0.0, 1.0))
            .is_none());
        // Behind the origin.
        assert!(s
            .raycast_local(&Point3::new(0.0, 0.0, 1.0), &Vector3::new(0.0, 0.0, 1.0))
            .is_none());
    }

    #[test]
    fn posed_raycast_matches_translation() {
        use nalgebra::Vector3 as V;
        let s = PrimitiveShape::Sphere { radius: 0.05 };
        let pose = Pose::new(nalgebra::Matrix3::identity(), V::new(0.0, 0.0, 1.0));
        let (t, _) = raycast_shape(
            &s,
            &pose,
            &Point3::new(0.0, 0.0, 0.0),
            &Vector3::new(0.0, 0.0, 1.0),
        )
        .unwrap();
        assert!((t - 0.95).abs() < 1e-12);
    }

    #[test]
    fn surface_samples_lie_on_surface() {
        let shapes = [
            PrimitiveShape::Sphere { radius: 0.04 },
            PrimitiveShape::Box {
                dx: 0.05,
                dy: 0.08,
                dz: 0.03,
            },
            PrimitiveShape::Cylinder {
                radius: 0.03,
                height: 0.1,
            },
        ];
        for s in shapes {
            let pts = s.sample_surface_local(0.002);
            assert!(pts.len() > 100);
            for p in &pts {
                // On the surface up to rounding: a hair inside is contained,
                // scaled outward it is not (shapes are star-shaped at 0).
                let inward = Point3::from(p.coords * (1.0 - 1e-9));
                assert!(s.contains_local(&inward), "sample outside {s:?}");
                let outward = Point3::from(p.coords * 1.02);
                assert!(!s.contains_local(&outward));
            }
        }
    }

    #[test]
    fn rect_raycast_fronto_parallel() {
        // Camera looking straight down from z=0 onto a plane 1.2 m away.
        let (t, _) = raycast_horizontal_rect(
            -1.2,
            1.0,
            1.0,
            &Point3::new(0.0, 0.0, 0.0),
            &Vector3::new(0.0, 0.0, -1.0),
        )
        .unwrap();
        assert!((t - 1.2).abs() < 1e-12);
    }
}
