use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::arc::{CircularArc, Orientation, PiecewiseCircularCurve};
use super::point::{dist, rotation_between, SpherePoint};
use crate::error::GeomError;
use crate::quadrature::integrate;
use crate::tol::{QUAD_ABS, QUAD_MAX_PANELS, TOL_ON};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleArea {
    pub area: f64,
    /// Vertices lie on a common great circle within a semicircle.
    pub degenerate: bool,
}

/// Area of the region to the left of the closed geodesic path `a → b → c → a`.
///
/// Counter-clockwise triangles (in the chart) give the small area, clockwise ones its complement.
/// Collinear vertices spread over a full great circle bound a hemisphere (2π);
/// collinear vertices inside a semicircle give 0 with the degeneracy flag set.
pub fn spherical_triangle_area(a: &SpherePoint, b: &SpherePoint, c: &SpherePoint) -> Result<TriangleArea, GeomError> {
    for (p, q) in [(a, b), (b, c), (c, a)] {
        if dist(p, q) >= PI - TOL_ON {
            return Err(GeomError::AntipodalVertices);
        }
    }
    let (u, v, w) = (a.vec(), b.vec(), c.vec());
    let det = u.dot(&v.cross(w));
    let denom = 1.0 + u.dot(v) + v.dot(w) + w.dot(u);
    let scale = u.cross(v).norm().max(v.cross(w).norm()).max(w.cross(u).norm());
    if det.abs() <= TOL_ON * scale.max(TOL_ON) {
        return Ok(if denom > 0.0 {
            TriangleArea { area: 0.0, degenerate: true }
        } else {
            TriangleArea { area: TAU, degenerate: false }
        });
    }
    let excess = 2.0 * det.abs().atan2(denom);
    let area = if det < 0.0 { excess } else { 4.0 * PI - excess };
    Ok(TriangleArea { area, degenerate: false })
}

/// Signed turning angle at `v` between the geodesics `u → v` and `v → w`; left turns are positive.
pub fn turning_angle(u: &SpherePoint, v: &SpherePoint, w: &SpherePoint) -> Result<f64, GeomError> {
    let t_in = -v.tangent_toward(u).ok_or(GeomError::CoincidentEndpoints)?;
    let t_out = v.tangent_toward(w).ok_or(GeomError::CoincidentEndpoints)?;
    if dist(u, v) >= PI - TOL_ON || dist(v, w) >= PI - TOL_ON {
        return Err(GeomError::AntipodalVertices);
    }
    Ok((-t_in.cross(&t_out).dot(v.vec())).atan2(t_in.dot(&t_out)))
}

/// Area to the left of a simple closed geodesic polygon, by Gauss–Bonnet.
pub fn polygon_left_area(vertices: &[SpherePoint]) -> Result<f64, GeomError> {
    let n = vertices.len();
    let mut turning = 0.0;
    for i in 0..n {
        turning += turning_angle(&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n])?;
    }
    Ok(TAU - turning)
}

fn integrand(p: Vector3<f64>, dp: Vector3<f64>) -> f64 {
    let one_minus_z = if p.z > 0.0 { (p.x * p.x + p.y * p.y) / (1.0 + p.z) } else { 1.0 - p.z };
    (p.x * dp.y - p.y * dp.x) / one_minus_z
}

fn arc_integral(arc: &CircularArc, tol: f64) -> Result<f64, GeomError> {
    let f = arc.frame();
    let v = integrate(|phi| integrand(f.point(phi), f.derivative(phi)), 0.0, f.sweep, tol, QUAD_MAX_PANELS)?;
    Ok(match arc.orientation {
        Orientation::Forward => v,
        Orientation::Reverse => -v,
    })
}

/// `n` nearly uniform points on the sphere.
pub fn fibonacci_lattice(n: usize) -> impl Iterator<Item = Vector3<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n).map(move |i| {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
        let rho = (1.0 - z * z).sqrt();
        let phi = golden * i as f64;
        Vector3::new(rho * phi.cos(), rho * phi.sin(), z)
    })
}

/// Line integral `∮ (X dY − Y dX)/(1 − Z)`: the area to the left of a simple curve, minus 4π
/// when that region holds ∞.
///
/// If the curve passes close to ∞ the whole curve is first rotated so that the sphere point
/// farthest from it becomes ∞.
pub fn contour_area(curve: &PiecewiseCircularCurve) -> Result<f64, GeomError> {
    if !curve.is_closed() {
        return Err(GeomError::NotClosed);
    }
    let samples: Vec<SpherePoint> = curve
        .segments()
        .iter()
        .map(|s| s.sample(256))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let near_pole = samples.iter().any(|p| p.vec().z > 1.0 - 1e-3);
    let curve = if near_pole {
        let far = fibonacci_lattice(1024)
            .map(|v| SpherePoint::new(v).expect("unit vector"))
            .max_by(|x, y| {
                let dx = samples.iter().map(|p| dist(p, x)).fold(f64::INFINITY, f64::min);
                let dy = samples.iter().map(|p| dist(p, y)).fold(f64::INFINITY, f64::min);
                dx.total_cmp(&dy)
            })
            .expect("nonempty lattice");
        curve.rotate(&rotation_between(&far, &SpherePoint::infinity()))
    } else {
        curve.clone()
    };
    let tol = QUAD_ABS / curve.segments().len() as f64;
    curve.segments().iter().map(|s| arc_integral(s, tol)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::arc::GeodesicChord;
    use std::f64::consts::FRAC_PI_2;

    fn pt(re: f64, im: f64) -> SpherePoint {
        SpherePoint::from_complex(re, im).unwrap()
    }

    #[test]
    fn octant() {
        let t = spherical_triangle_area(&pt(0.0, 0.0), &pt(1.0, 0.0), &pt(0.0, 1.0)).unwrap();
        assert!((t.area - FRAC_PI_2).abs() < 1e-14);
        let t = spherical_triangle_area(&pt(0.0, 0.0), &pt(0.0, 1.0), &pt(1.0, 0.0)).unwrap();
        assert!((t.area - 3.5 * PI).abs() < 1e-13);
    }

    #[test]
    fn degenerate_cases() {
        let a = pt(0.2, 0.1);
        let t = spherical_triangle_area(&a, &a, &pt(1.0, 1.0)).unwrap();
        assert_eq!(t, TriangleArea { area: 0.0, degenerate: true });
        let t = spherical_triangle_area(&pt(0.0, 0.0), &pt(0.5, 0.0), &pt(2.0, 0.0)).unwrap();
        assert!(t.degenerate);
        // spread over the real circle: a hemisphere, not degenerate
        let s3 = 3f64.sqrt();
        let t = spherical_triangle_area(&pt(1.0, 0.0), &pt(-0.5, s3 / 2.0), &pt(-0.5, -s3 / 2.0)).unwrap();
        assert!(!t.degenerate && (t.area - TAU).abs() < 1e-12);
        let err = spherical_triangle_area(&pt(0.0, 0.0), &pt(1.0, 0.0), &SpherePoint::infinity());
        assert_eq!(err, Err(GeomError::AntipodalVertices));
    }

    #[test]
    fn unit_circle() {
        let s3 = 3f64.sqrt();
        let tri = [pt(1.0, 0.0), pt(-0.5, s3 / 2.0), pt(-0.5, -s3 / 2.0)];
        let curve = PiecewiseCircularCurve::polygon(&tri).unwrap();
        assert!((contour_area(&curve).unwrap() - TAU).abs() < 1e-9);
        assert!((polygon_left_area(&tri).unwrap() - TAU).abs() < 1e-12);
    }

    #[test]
    fn out_and_back() {
        let c = GeodesicChord::new(pt(0.1, 0.2), pt(-0.7, 0.4)).unwrap();
        let arc = CircularArc::forward(c, 0.9).unwrap();
        let curve = PiecewiseCircularCurve::new(vec![arc, arc.reversed()]).unwrap();
        assert!(contour_area(&curve).unwrap().abs() < 1e-10);
    }

    #[test]
    fn polygon_matches_girard() {
        let v = [pt(0.1, 0.2), pt(1.3, -0.4), pt(0.5, 1.7)];
        let g = spherical_triangle_area(&v[0], &v[1], &v[2]).unwrap().area;
        assert!((polygon_left_area(&v).unwrap() - g).abs() < 1e-12);
        let w = [v[0], v[2], v[1]];
        assert!((polygon_left_area(&w).unwrap() - (4.0 * PI - g)).abs() < 1e-12);
    }

    #[test]
    fn curve_through_infinity_is_rotated() {
        // upper unit semicircle, then out to ∞ and back along the real axis; the left side is 3π
        let v = [pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0), SpherePoint::infinity()];
        let curve = PiecewiseCircularCurve::polygon(&v).unwrap();
        let a = contour_area(&curve).unwrap();
        let left = polygon_left_area(&v).unwrap();
        assert!((left - 3.0 * PI).abs() < 1e-12);
        // the integral counts the region holding the chart's ∞ with weight −1
        assert!((a.rem_euclid(4.0 * PI) - left).abs() < 1e-8, "{a}");
    }

    #[test]
    fn not_closed() {
        let c = GeodesicChord::new(pt(0.1, 0.2), pt(-0.7, 0.4)).unwrap();
        let curve = PiecewiseCircularCurve::new(vec![CircularArc::forward(c, 0.3).unwrap()]).unwrap();
        assert_eq!(contour_area(&curve), Err(GeomError::NotClosed));
    }
}
