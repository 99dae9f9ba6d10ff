use nalgebra::{Rotation3, Unit, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::GeomError;

/// A value of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

/// Point of the unit sphere. `0` sits at the south pole `(0,0,-1)`, `∞` at the north pole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    u: Vector3<f64>,
}

impl SpherePoint {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(v: Vector3<f64>) -> Result<Self, GeomError> {
        let n = v.norm();
        if !n.is_finite() || n < 1e-300 {
            return Err(GeomError::InvalidPoint);
        }
        Ok(SpherePoint { u: v / n })
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Result<Self, GeomError> {
        Self::new(Vector3::new(x, y, z))
    }

    pub fn infinity() -> Self {
        SpherePoint { u: Vector3::new(0.0, 0.0, 1.0) }
    }

    pub fn origin() -> Self {
        SpherePoint { u: Vector3::new(0.0, 0.0, -1.0) }
    }

    /// Inverse stereographic projection.
    pub fn from_extended(z: ExtendedComplex) -> Result<Self, GeomError> {
        match z {
            ExtendedComplex::Infinity => Ok(Self::infinity()),
            ExtendedComplex::Finite(w) => {
                if !w.re.is_finite() || !w.im.is_finite() {
                    return Err(GeomError::InvalidPoint);
                }
                let m = w.norm_sqr();
                let d = 1.0 + m;
                Self::new(Vector3::new(2.0 * w.re / d, 2.0 * w.im / d, (m - 1.0) / d))
            }
        }
    }

    pub fn from_complex(re: f64, im: f64) -> Result<Self, GeomError> {
        Self::from_extended(ExtendedComplex::finite(re, im))
    }

    /// Stereographic projection back to the extended plane.
    pub fn to_extended(&self) -> ExtendedComplex {
        let (x, y, z) = (self.u.x, self.u.y, self.u.z);
        let rho2 = x * x + y * y;
        if rho2 == 0.0 && z > 0.0 {
            return ExtendedComplex::Infinity;
        }
        // (1 - z)(1 + z) = x² + y²; pick the form without cancellation
        if z <= 0.0 {
            ExtendedComplex::finite(x / (1.0 - z), y / (1.0 - z))
        } else {
            let s = (1.0 + z) / rho2;
            ExtendedComplex::finite(x * s, y * s)
        }
    }

    pub fn vec(&self) -> &Vector3<f64> {
        &self.u
    }

    pub fn antipode(&self) -> Self {
        SpherePoint { u: -self.u }
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.u.dot(&other.u)
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        SpherePoint { u: (rot * self.u).normalize() }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.to_extended(), ExtendedComplex::Infinity)
    }

    /// Unit tangent at `self` pointing along the shorter great circle toward `to`.
    pub(crate) fn tangent_toward(&self, to: &SpherePoint) -> Option<Vector3<f64>> {
        let t = to.u - self.u * self.u.dot(&to.u);
        let n = t.norm();
        (n > 1e-300).then(|| t / n)
    }
}

/// Spherical (great-circle) distance in `[0, π]`.
pub fn dist(p: &SpherePoint, q: &SpherePoint) -> f64 {
    let c = p.u.cross(&q.u).norm();
    let d = p.u.dot(&q.u);
    c.atan2(d).clamp(0.0, PI)
}

/// Rotation taking `from` onto `to` (any rotation about the axis when they are antipodal).
pub fn rotation_between(from: &SpherePoint, to: &SpherePoint) -> Rotation3<f64> {
    match Rotation3::rotation_between(&from.u, &to.u) {
        Some(r) => r,
        None => {
            let helper = if from.u.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
            let axis = Unit::new_normalize(from.u.cross(&helper));
            Rotation3::from_axis_angle(&axis, PI)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles() {
        let zero = SpherePoint::from_complex(0.0, 0.0).unwrap();
        assert_eq!(zero, SpherePoint::origin());
        let inf = SpherePoint::from_extended(ExtendedComplex::Infinity).unwrap();
        assert_eq!(inf.to_extended(), ExtendedComplex::Infinity);
        assert!((dist(&zero, &inf) - PI).abs() < 1e-15);
    }

    #[test]
    fn zero_one_quarter_circle() {
        let a = SpherePoint::from_complex(0.0, 0.0).unwrap();
        let b = SpherePoint::from_complex(1.0, 0.0).unwrap();
        assert!((dist(&a, &b) - PI / 2.0).abs() < 1e-15);
        assert!((dist(&b, &SpherePoint::infinity()) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip_large_modulus() {
        for &(re, im) in &[(1e8, 0.0), (-3e7, 7e7), (1e-9, -2e-9), (0.3, 0.4), (5e4, -1e3)] {
            let p = SpherePoint::from_complex(re, im).unwrap();
            assert!((p.vec().norm() - 1.0).abs() < 1e-12);
            let ExtendedComplex::Finite(w) = p.to_extended() else { panic!("lost a finite point") };
            let scale = Complex64::new(re, im).norm().max(1.0);
            assert!((w - Complex64::new(re, im)).norm() / scale < 1e-12, "{re} {im} -> {w}");
        }
    }

    #[test]
    fn metric_density() {
        // chordal pull-back: d(z, z+h) ≈ 2|h|/(1+|z|²)
        let z = Complex64::new(0.7, -1.3);
        let h = 1e-6;
        let p = SpherePoint::from_extended(z.into()).unwrap();
        let q = SpherePoint::from_extended((z + h).into()).unwrap();
        let expect = 2.0 * h / (1.0 + z.norm_sqr());
        assert!((dist(&p, &q) / expect - 1.0).abs() < 1e-5);
    }

    #[test]
    fn antipodal_rotation() {
        let a = SpherePoint::origin();
        let r = rotation_between(&a, &a.antipode());
        assert!(dist(&a.rotate(&r), &SpherePoint::infinity()) < 1e-12);
    }
}
