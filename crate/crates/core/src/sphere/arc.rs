use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::point::{dist, SpherePoint};
use crate::error::GeomError;
use crate::tol::{TOL_JOIN, TOL_ON};

/// Shorter great-circle arc from `a` to `b`, with `0 < d(a,b) < π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicChord {
    a: SpherePoint,
    b: SpherePoint,
}

impl GeodesicChord {
    pub fn new(a: SpherePoint, b: SpherePoint) -> Result<Self, GeomError> {
        let d = dist(&a, &b);
        if d <= TOL_ON {
            return Err(GeomError::CoincidentEndpoints);
        }
        if d >= PI - TOL_ON {
            return Err(GeomError::AntipodalEndpoints);
        }
        Ok(GeodesicChord { a, b })
    }

    pub fn a(&self) -> SpherePoint {
        self.a
    }

    pub fn b(&self) -> SpherePoint {
        self.b
    }

    pub fn reversed(&self) -> Self {
        GeodesicChord { a: self.b, b: self.a }
    }

    pub fn length(&self) -> f64 {
        dist(&self.a, &self.b)
    }

    /// Unit normal `a × b`; points with negative component are on the left.
    pub fn normal(&self) -> Vector3<f64> {
        self.a.vec().cross(self.b.vec()).normalize()
    }

    pub fn midpoint(&self) -> SpherePoint {
        SpherePoint::new(self.a.vec() + self.b.vec()).expect("chord endpoints are not antipodal")
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        GeodesicChord { a: self.a.rotate(rot), b: self.b.rotate(rot) }
    }

    /// Signed distance of `p` from the great circle, positive on the right.
    pub fn signed_offset(&self, p: &SpherePoint) -> f64 {
        p.vec().dot(&self.normal()).clamp(-1.0, 1.0).asin()
    }

    /// Angular position of the projection of `p` along the great circle, measured from `a`.
    pub fn along(&self, p: &SpherePoint) -> f64 {
        let n = self.normal();
        let t = n.cross(self.a.vec());
        p.vec().dot(&t).atan2(p.vec().dot(self.a.vec()))
    }

    /// `p` within `tol` of the closed segment.
    pub fn contains(&self, p: &SpherePoint, tol: f64) -> bool {
        if dist(p, &self.a) <= tol || dist(p, &self.b) <= tol {
            return true;
        }
        if self.signed_offset(p).abs() > tol {
            return false;
        }
        let s = self.along(p);
        s >= 0.0 && s <= self.length()
    }

    /// `p` within `tol` of the segment but farther than `tol` from both endpoints.
    pub fn contains_interior(&self, p: &SpherePoint, tol: f64) -> bool {
        dist(p, &self.a) > tol && dist(p, &self.b) > tol && self.contains(p, tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Forward,
    Reverse,
}

/// Circle data of an arc: `P(φ) = cos r·c + sin r·(cos φ·e1 + sin φ·e2)`, `φ ∈ [0, sweep]`,
/// running from the chord's `a` to its `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcFrame {
    pub center: Vector3<f64>,
    pub radius: f64,
    pub e1: Vector3<f64>,
    pub e2: Vector3<f64>,
    pub sweep: f64,
}

impl ArcFrame {
    pub fn point(&self, phi: f64) -> Vector3<f64> {
        let (s, c) = phi.sin_cos();
        self.center * self.radius.cos() + (self.e1 * c + self.e2 * s) * self.radius.sin()
    }

    pub fn derivative(&self, phi: f64) -> Vector3<f64> {
        let (s, c) = phi.sin_cos();
        (self.e2 * c - self.e1 * s) * self.radius.sin()
    }
}

/// Circular arc over a chord, bulging to the left of `a → b` with cusp angle `theta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularArc {
    pub chord: GeodesicChord,
    pub theta: f64,
    pub orientation: Orientation,
}

impl CircularArc {
    pub fn new(chord: GeodesicChord, theta: f64, orientation: Orientation) -> Result<Self, GeomError> {
        if !(0.0..=PI).contains(&theta) {
            return Err(GeomError::ThetaOutOfRange(theta));
        }
        Ok(CircularArc { chord, theta, orientation })
    }

    pub fn forward(chord: GeodesicChord, theta: f64) -> Result<Self, GeomError> {
        Self::new(chord, theta, Orientation::Forward)
    }

    /// Minor arc or exactly half of its circle.
    pub fn is_minor(&self) -> bool {
        self.theta <= FRAC_PI_2
    }

    pub fn reversed(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        };
        CircularArc { orientation, ..*self }
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        CircularArc { chord: self.chord.rotate(rot), ..*self }
    }

    /// Geodesic curvature `sinθ / tan(δ/2)`.
    pub fn curvature(&self) -> f64 {
        self.theta.sin() / (self.chord.length() / 2.0).tan()
    }

    pub fn frame(&self) -> ArcFrame {
        let a = *self.chord.a().vec();
        let b = *self.chord.b().vec();
        let n = self.chord.normal();
        let half = self.chord.length() / 2.0;
        if self.theta == 0.0 {
            let e2 = n.cross(&a);
            return ArcFrame { center: n, radius: FRAC_PI_2, e1: a, e2, sweep: 2.0 * half };
        }
        let m = (a + b).normalize();
        let r = 1.0f64.atan2(self.curvature());
        let s = (r.cos() / half.cos()).clamp(-1.0, 1.0).acos();
        // minor arcs keep the center on the right, major arcs on the left
        let center = if self.theta <= FRAC_PI_2 {
            (m * s.cos() + n * s.sin()).normalize()
        } else {
            (m * s.cos() - n * s.sin()).normalize()
        };
        let g = if self.theta <= FRAC_PI_2 { r - s } else { r + s };
        let bulge = m * g.cos() - n * g.sin();

        let e1 = (a - center * r.cos()).normalize();
        let mut e2 = center.cross(&e1);
        let angle = |v: &Vector3<f64>, e2: &Vector3<f64>| v.dot(e2).atan2(v.dot(&e1)).rem_euclid(TAU);
        let mut sweep = angle(&b, &e2);
        if angle(&bulge, &e2) > sweep {
            e2 = -e2;
            sweep = TAU - sweep;
        }
        ArcFrame { center, radius: r, e1, e2, sweep }
    }

    pub fn length(&self) -> f64 {
        let f = self.frame();
        f.sweep * f.radius.sin()
    }

    pub fn start(&self) -> SpherePoint {
        match self.orientation {
            Orientation::Forward => self.chord.a(),
            Orientation::Reverse => self.chord.b(),
        }
    }

    pub fn end(&self) -> SpherePoint {
        match self.orientation {
            Orientation::Forward => self.chord.b(),
            Orientation::Reverse => self.chord.a(),
        }
    }

    /// Point at fraction `t ∈ [0,1]` of the traversal.
    pub fn point_at(&self, t: f64) -> SpherePoint {
        self.point_at_frame(&self.frame(), t)
    }

    fn point_at_frame(&self, f: &ArcFrame, t: f64) -> SpherePoint {
        if t <= 0.0 {
            return self.start();
        }
        if t >= 1.0 {
            return self.end();
        }
        let phi = match self.orientation {
            Orientation::Forward => t * f.sweep,
            Orientation::Reverse => (1.0 - t) * f.sweep,
        };
        SpherePoint::new(f.point(phi)).expect("arc points are unit vectors")
    }

    /// `n ≥ 2` points equally spaced in arc parameter, endpoints included.
    pub fn sample(&self, n: usize) -> Result<Vec<SpherePoint>, GeomError> {
        if n < 2 {
            return Err(GeomError::TooFewSamples);
        }
        let f = self.frame();
        Ok((0..n).map(|i| self.point_at_frame(&f, i as f64 / (n - 1) as f64)).collect())
    }

    /// Midpoint of the arc (farthest point from the chord).
    pub fn midpoint(&self) -> SpherePoint {
        self.point_at(0.5)
    }
}

/// Chain of arcs where each terminal point matches the next initial point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseCircularCurve {
    segments: Vec<CircularArc>,
}

impl PiecewiseCircularCurve {
    pub fn new(segments: Vec<CircularArc>) -> Result<Self, GeomError> {
        if segments.is_empty() {
            return Err(GeomError::EmptyCurve);
        }
        for (i, w) in segments.windows(2).enumerate() {
            if dist(&w[0].end(), &w[1].start()) > TOL_JOIN {
                return Err(GeomError::Disconnected(i));
            }
        }
        Ok(PiecewiseCircularCurve { segments })
    }

    /// Closed polygon of geodesic edges through `vertices`.
    pub fn polygon(vertices: &[SpherePoint]) -> Result<Self, GeomError> {
        let n = vertices.len();
        let segs = (0..n)
            .map(|i| CircularArc::forward(GeodesicChord::new(vertices[i], vertices[(i + 1) % n])?, 0.0))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(segs)
    }

    pub fn segments(&self) -> &[CircularArc] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        let first = self.segments[0].start();
        let last = self.segments[self.segments.len() - 1].end();
        dist(&first, &last) <= TOL_JOIN
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(CircularArc::length).sum()
    }

    pub fn reversed(&self) -> Self {
        PiecewiseCircularCurve { segments: self.segments.iter().rev().map(CircularArc::reversed).collect() }
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        PiecewiseCircularCurve { segments: self.segments.iter().map(|s| s.rotate(rot)).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, GeomError> {
        let mut segs = self.segments.clone();
        segs.extend_from_slice(&other.segments);
        Self::new(segs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> SpherePoint {
        SpherePoint::from_complex(re, im).unwrap()
    }

    fn unit_chord() -> GeodesicChord {
        GeodesicChord::new(pt(0.0, 0.0), pt(1.0, 0.0)).unwrap()
    }

    #[test]
    fn rejects_bad_chords() {
        let a = pt(0.3, 0.1);
        assert_eq!(GeodesicChord::new(a, a), Err(GeomError::CoincidentEndpoints));
        assert_eq!(GeodesicChord::new(a, a.antipode()), Err(GeomError::AntipodalEndpoints));
    }

    #[test]
    fn geodesic_sample_is_endpoints() {
        let arc = CircularArc::forward(unit_chord(), 0.0).unwrap();
        let s = arc.sample(2).unwrap();
        assert_eq!(s[0], pt(0.0, 0.0));
        assert_eq!(s[1], pt(1.0, 0.0));
        assert!((arc.length() - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn half_circle_midpoint_on_diameter_circle() {
        let arc = CircularArc::forward(unit_chord(), FRAC_PI_2).unwrap();
        let mid = arc.midpoint();
        let r = crate::lens::theta_to_circle(FRAC_PI_2, FRAC_PI_2).unwrap().r;
        assert!((dist(&mid, &unit_chord().midpoint()) - r).abs() < 1e-12);
        // bulges into the upper half plane
        assert!(unit_chord().signed_offset(&mid) < 0.0);
    }

    #[test]
    fn polyline_length_converges_to_half_circle() {
        let arc = CircularArc::forward(unit_chord(), FRAC_PI_2).unwrap();
        let pts = arc.sample(20001).unwrap();
        let len: f64 = pts.windows(2).map(|w| dist(&w[0], &w[1])).sum();
        assert!((len - std::f64::consts::SQRT_2 * PI / 2.0).abs() < 1e-8);
    }

    #[test]
    fn sample_endpoints_exact_for_all_shapes() {
        for &th in &[0.1, 0.7, FRAC_PI_2, 2.0, 3.0] {
            for o in [Orientation::Forward, Orientation::Reverse] {
                let arc = CircularArc::new(unit_chord(), th, o).unwrap();
                let s = arc.sample(7).unwrap();
                assert!(dist(&s[0], &arc.start()) < 1e-12);
                assert!(dist(&s[6], &arc.end()) < 1e-12);
                let f = arc.frame();
                assert!(dist(&SpherePoint::new(f.point(f.sweep)).unwrap(), &unit_chord().b()) < 1e-12);
            }
        }
    }

    #[test]
    fn curve_joins() {
        let c = unit_chord();
        let a1 = CircularArc::forward(c, 0.4).unwrap();
        let a2 = CircularArc::forward(c.reversed(), 0.4).unwrap();
        let curve = PiecewiseCircularCurve::new(vec![a1, a2]).unwrap();
        assert!(curve.is_closed());
        assert_eq!(PiecewiseCircularCurve::new(vec![a1, a1]), Err(GeomError::Disconnected(0)));
    }
}
