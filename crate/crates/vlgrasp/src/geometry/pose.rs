//! Rigid transforms (rotation matrix + translation) and ZYX Euler angles.

use nalgebra::{Matrix3, Point3, Vector3};
use serde::{Deserialize, Serialize};

/// Rigid transform: `p_out = R · p_in + t`. The rotation is kept orthonormal
/// with determinant +1 (checked to 1e-9 on construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl Pose {
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Self {
        let pose = Self {
            rotation,
            translation,
        };
        debug_assert!(
            pose.orthonormality_defect() < 1e-9,
            "rotation not orthonormal"
        );
        debug_assert!(
            (rotation.determinant() - 1.0).abs() < 1e-9,
            "rotation not proper"
        );
        pose
    }

    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    /// Frobenius norm of `RᵀR − I`.
    pub fn orthonormality_defect(&self) -> f64 {
        (self.rotation.transpose() * self.rotation - Matrix3::identity()).norm()
    }

    pub fn transform_point(&self, p: &Point3<f64>) -> Point3<f64> {
        Point3::from(self.rotation * p.coords + self.translation)
    }

    pub fn transform_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * v
    }

    pub fn inverse(&self) -> Pose {
        let rt = self.rotation.transpose();
        Pose {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Pose) -> Pose {
        Pose {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }
}

/// Extract ZYX Euler angles `(rx, ry, rz)` with `R = Rz(rz)·Ry(ry)·Rx(rx)`.
pub fn euler_zyx_from_rotation(r: &Matrix3<f64>) -> (f64, f64, f64) {
    let sy = -r[(2, 0)];
    let ry = sy.clamp(-1.0, 1.0).asin();
    if sy.abs() < 1.0 - 1e-12 {
        let rx = r[(2, 1)].atan2(r[(2, 2)]);
        let rz = r[(1, 0)].atan2(r[(0, 0)]);
        (rx, ry, rz)
    } else {
        // Gimbal lock: fold the lost degree of freedom into rz.
        let rx = 0.0;
        let rz = (-r[(0, 1)]).atan2(r[(1, 1)]);
        (rx, ry, rz)
    }
}

/// Build `R = Rz(rz)·Ry(ry)·Rx(rx)`.
pub fn rotation_from_euler_zyx(rx: f64, ry: f64, rz: f64) -> Matrix3<f64> {
    let (sx, cx) = rx.sin_cos();
    let (sy, cy) = ry.sin_cos();
    let (sz, cz) = rz.sin_cos();
    let rz_m = Matrix3::new(cz, -sz, 0.0, sz, cz, 0.0, 0.0, 0.0, 1.0);
    let ry_m = Matrix3::new(cy, 0.0, sy, 0.0, 1.0, 0.0, -sy, 0.0, cy);
    let rx_m = Matrix3::new(1.0, 0.0, 0.0, 0.0, cx, -sx, 0.0, sx, cx);
    rz_m * ry_m * rx_m
}

// JSON form: {"rotation": [[..3],[..3],[..3]], "translation": [x,y,z]}.
#[derive(Serialize, Deserialize)]
struct PoseRepr {
    rotation: [[f64; 3]; 3],
    translation: [f64; 3],
}

impl Serialize for Pose {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = &self.rotation;
        PoseRepr {
            rotation: [
                [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
                [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
                [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
            ],
            translation: [
                self.translation.x,
                self.translation.y,
                self.translation.z,
            ],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pose {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PoseRepr::deserialize(d)?;
        let m = Matrix3::from_fn(|i, j| repr.rotation[i][j]);
        Ok(Pose::new(m, Vector3::from(repr.translation)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rotation(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
        rotation_from_euler_zyx(
            rng.random_range(-3.0..3.0),
            rng.random_range(-1.5..1.5),
            rng.random_range(-3.0..3.0),
        )
    }

    #[test]
    fn compose_and_invert_stay_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut acc = Pose::identity();
        for _ in 0..200 {
            let p = Pose::new(
                random_rotation(&mut rng),
                Vector3::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ),
            );
            acc = acc.compose(&p).compose(&p.inverse());
            assert!(acc.orthonormality_defect() < 1e-9);
        }
        // Composing with inverses should stay near identity.
        assert!(acc.translation().norm() < 1e-6);
    }

    #[test]
    fn inverse_undoes_transform() {
        let p = Pose::new(
            rotation_from_euler_zyx(0.3, -0.5, 1.1),
            Vector3::new(0.2, -0.4, 0.9),
        );
        let x = Point3::new(0.1, 0.2, 0.3);
        let back = p.inverse().transform_point(&p.transform_point(&x));
        assert!((back - x).norm() < 1e-12);
    }

    #[test]
    fn euler_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let r = random_rotation(&mut rng);
            let (rx, ry, rz) = euler_zyx_from_rotation(&r);
            let back = rotation_from_euler_zyx(rx, ry, rz);
            assert!((back - r).norm() < 1e-6);
        }
    }

    #[test]
    fn pose_serde_round_trip() {
        let p = Pose::new(
            rotation_from_euler_zyx(0.1, 0.2, 0.3),
            Vector3::new(1.0, 2.0, 3.0),
        );
        let json = serde_json::to_string(&p).unwrap();
        let back: Pose = serde_json::from_str(&json).unwrap();
        assert!((back.rotation() - p.rotation()).norm() < 1e-12);
        assert!((back.translation() - p.translation()).norm() < 1e-12);
    }
}
