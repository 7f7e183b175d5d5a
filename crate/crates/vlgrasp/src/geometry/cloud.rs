//! Camera-frame point clouds and surface-normal estimation.

use nalgebra::{Matrix3, Point3, Unit, Vector3};

/// Single-view point cloud in the camera frame (+z forward, meters).
/// Points optionally carry their source pixel and a target flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Point3<f64>>,
    pixels: Option<Vec<(u32, u32)>>,
    target: Option<Vec<bool>>,
}

impl PointCloud {
    pub fn new(points: Vec<Point3<f64>>) -> Self {
        debug_assert!(points.iter().all(|p| p.z > 0.0), "points must have z > 0");
        Self {
            points,
            pixels: None,
            target: None,
        }
    }

    pub fn with_pixels(
        points: Vec<Point3<f64>>,
        pixels: Vec<(u32, u32)>,
        target: Vec<bool>,
    ) -> Self {
        assert_eq!(points.len(), pixels.len());
        assert_eq!(points.len(), target.len());
        Self {
            points,
            pixels: Some(pixels),
            target: Some(target),
        }
    }

    /// Replace the per-point target flags.
    pub fn set_target_flags(&mut self, target: Vec<bool>) {
        assert_eq!(target.len(), self.points.len());
        self.target = Some(target);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3<f64>] {
        &self.points
    }

    pub fn pixels(&self) -> Option<&[(u32, u32)]> {
        self.pixels.as_deref()
    }

    pub fn target_flags(&self) -> Option<&[bool]> {
        self.target.as_deref()
    }

    pub fn is_target(&self, index: usize) -> bool {
        self.target.as_ref().map(|t| t[index]).unwrap_or(false)
    }

    pub fn target_count(&self) -> usize {
        self.target
            .as_ref()
            .map(|t| t.iter().filter(|&&b| b).count())
            .unwrap_or(0)
    }

    pub fn target_indices(&self) -> Vec<usize> {
        match &self.target {
            Some(t) => (0..t.len()).filter(|&i| t[i]).collect(),
            None => Vec::new(),
        }
    }

    /// Keep only the listed indices (in the given order).
    pub fn select(&self, indices: &[usize]) -> PointCloud {
        PointCloud {
            points: indices.iter().map(|&i| self.points[i]).collect(),
            pixels: self
                .pixels
                .as_ref()
                .map(|px| indices.iter().map(|&i| px[i]).collect()),
            target: self
                .target
                .as_ref()
                .map(|t| indices.iter().map(|&i| t[i]).collect()),
        }
    }

    /// Dump as ASCII lines `x y z flag` for debugging.
    pub fn to_xyz_dump(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.points.iter().enumerate() {
            let flag = if self.is_target(i) { 1 } else { 0 };
            out.push_str(&format!("{:.6} {:.6} {:.6} {}\n", p.x, p.y, p.z, flag));
        }
        out
    }
}

/// Result of [`estimate_normal`]; `degenerate` marks the camera-ray fallback.
#[derive(Debug, Clone, Copy)]
pub struct NormalEstimate {
    pub normal: Unit<Vector3<f64>>,
    pub degenerate: bool,
}

/// Normal at `cloud[index]` from the covariance of its `k` nearest neighbors,
/// oriented toward the camera (single-view clouds are seen from the origin).
/// Rank-deficient neighborhoods fall back to the origin-to-point direction.
pub fn estimate_normal(cloud: &PointCloud, index: usize, k: usize) -> NormalEstimate {
    let points = cloud.points();
    assert!(points.len() > k, "need at least k+1 points");
    let p = points[index];

    // k nearest neighbors by squared distance, excluding the query itself.
    let mut dists: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(i, q)| ((q - p).norm_squared(), i))
        .collect();
    dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    dists.truncate(k);

    let mut neighborhood: Vec<Point3<f64>> = dists.iter().map(|&(_, i)| points[i]).collect();
    neighborhood.push(p);

    let n = neighborhood.len() as f64;
    let mean = neighborhood
        .iter()
        .fold(Vector3::zeros(), |acc, q| acc + q.coords)
        / n;
    let mut cov = Matrix3::zeros();
    for q in &neighborhood {
        let d = q.coords - mean;
        cov += d * d.transpose();
    }
    cov /= n;

    let eig = cov.symmetric_eigen();
    // Ascending eigenvalue order.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let (l1, l2) = (
        eig.eigenvalues[order[1]].max(0.0),
        eig.eigenvalues[order[2]].max(0.0),
    );

    // Rank < 2: the two smallest spreads vanish relative to the largest.
    let degenerate = l2 <= 1e-18 || l1 <= 1e-8 * l2;
    if degenerate {
        let toward_camera = Unit::new_normalize(-p.coords);
        return NormalEstimate {
            normal: toward_camera,
            degenerate: true,
        };
    }

    let mut normal = eig.eigenvectors.column(order[0]).into_owned();
    // Orient toward the camera at the origin: require normal · (-p) >= 0.
    if normal.dot(&(-p.coords)) < 0.0 {
        normal = -normal;
    }
    NormalEstimate {
        normal: Unit::new_normalize(normal),
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_normal_faces_camera() {
        let mut pts = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                pts.push(Point3::new(i as f64 * 0.01, j as f64 * 0.01, 1.0));
            }
        }
        let cloud = PointCloud::new(pts);
        let est = estimate_normal(&cloud, 55, 8);
        assert!(!est.degenerate);
        assert!((est.normal.as_ref() - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-9);
    }

    #[test]
    fn sphere_normal_matches_analytic() {
        // Sphere centered (0,0,1), r = 0.1; query the nearest sample to the
        // front pole (0,0,0.9) where the outward camera-facing normal is -z.
        let center = Vector3::new(0.0, 0.0, 1.0);
        let r = 0.1;
        let mut pts = vec![Point3::new(0.0, 0.0, 0.9)]; // front pole
        let n = 24;
        for a in 0..n {
            for b in 1..n {
                let theta = std::f64::consts::PI * b as f64 / n as f64;
                let phi = std::f64::consts::TAU * a as f64 / n as f64;
                let dir = Vector3::new(
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    -theta.cos(),
                );
                pts.push(Point3::from(center + r * dir));
            }
        }
        let cloud = PointCloud::new(pts);
        let query = Point3::new(0.0, 0.0, 0.9);
        let idx = cloud
            .points()
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - query)
                    .norm()
                    .partial_cmp(&(b.1 - query).norm())
                    .unwrap()
            })
            .unwrap()
            .0;
        let est = estimate_normal(&cloud, idx, 12);
        assert!(!est.degenerate);
        assert!((est.normal.as_ref() - Vector3::new(0.0, 0.0, -1.0)).norm() < 0.05);
    }

    #[test]
    fn collinear_points_fall_back() {
        let pts = vec![
            Point3::new(0.0, 0.0, 1.0),
            Point3::new(0.01, 0.0, 1.0),
            Point3::new(0.02, 0.0, 1.0),
        ];
        let cloud = PointCloud::new(pts);
        let est = estimate_normal(&cloud, 0, 2);
        assert!(est.degenerate);
        // Fallback points from p back toward the camera origin.
        assert!((est.normal.as_ref() - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-9);
    }

    #[test]
    fn select_preserves_metadata() {
        let cloud = PointCloud::with_pixels(
            vec![
                Point3::new(0.0, 0.0, 1.0),
                Point3::new(0.1, 0.0, 1.0),
                Point3::new(0.2, 0.0, 1.0),
            ],
            vec![(0, 0), (1, 0), (2, 0)],
            vec![false, true, false],
        );
        let sub = cloud.select(&[2, 1]);
        assert_eq!(sub.points()[0].x, 0.2);
        assert_eq!(sub.pixels().unwrap(), &[(2, 0), (1, 0)]);
        assert_eq!(sub.target_flags().unwrap(), &[false, true]);
    }
}
