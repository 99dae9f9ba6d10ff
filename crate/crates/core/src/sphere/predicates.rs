use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::arc::{CircularArc, GeodesicChord};
use super::point::{dist, SpherePoint};
use crate::error::GeomError;
use crate::tol::TOL_ON;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    On,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LunePosition {
    Interior,
    BoundaryArc,
    BoundaryChord,
    Outside,
}

fn check_antipodal(p: &SpherePoint, chord: &GeodesicChord) -> Result<(), GeomError> {
    if dist(p, &chord.a().antipode()) <= TOL_ON || dist(p, &chord.b().antipode()) <= TOL_ON {
        return Err(GeomError::AmbiguousAntipodal);
    }
    Ok(())
}

/// Which side of the great circle through `chord` the point lies on, as seen in the complex chart.
pub fn side_of_chord(p: &SpherePoint, chord: &GeodesicChord) -> Result<Side, GeomError> {
    check_antipodal(p, chord)?;
    let off = chord.signed_offset(p);
    Ok(if off.abs() <= TOL_ON {
        Side::On
    } else if off < 0.0 {
        Side::Left
    } else {
        Side::Right
    })
}

/// Position of `p` relative to the open lune between `arc` and its chord.
///
/// The antipode of a chord endpoint lies on the chord's great circle but never inside a lune;
/// it is reported as outside (on the arc for the hemisphere case `theta = π`).
pub fn in_lune(p: &SpherePoint, arc: &CircularArc) -> Result<LunePosition, GeomError> {
    let chord = &arc.chord;
    if check_antipodal(p, chord).is_err() {
        return Ok(if arc.theta == PI { LunePosition::BoundaryArc } else { LunePosition::Outside });
    }
    if chord.contains(p, TOL_ON) {
        return Ok(LunePosition::BoundaryChord);
    }
    if arc.theta == 0.0 {
        return Ok(LunePosition::Outside);
    }
    let off = chord.signed_offset(p);
    let f = arc.frame();
    let rho = p.vec().cross(&f.center).norm().atan2(p.vec().dot(&f.center));
    if off < -TOL_ON && (rho - f.radius).abs() <= TOL_ON {
        return Ok(LunePosition::BoundaryArc);
    }
    if off < -TOL_ON && rho < f.radius - TOL_ON {
        return Ok(LunePosition::Interior);
    }
    Ok(LunePosition::Outside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn pt(re: f64, im: f64) -> SpherePoint {
        SpherePoint::from_complex(re, im).unwrap()
    }

    fn unit_chord() -> GeodesicChord {
        GeodesicChord::new(pt(0.0, 0.0), pt(1.0, 0.0)).unwrap()
    }

    #[test]
    fn upper_half_plane_is_left() {
        // triple-product oracle: det(a, b, p) < 0 means left in the chart
        let c = unit_chord();
        let p = pt(0.0, 0.5);
        let det = c.a().vec().dot(&c.b().vec().cross(p.vec()));
        assert!(det < 0.0);
        assert_eq!(side_of_chord(&p, &c), Ok(Side::Left));
        assert_eq!(side_of_chord(&p, &c.reversed()), Ok(Side::Right));
        assert_eq!(side_of_chord(&pt(-2.0, 0.0), &c), Ok(Side::On));
        assert_eq!(side_of_chord(&pt(0.0, -1e-3), &c), Ok(Side::Right));
    }

    #[test]
    fn antipode_of_endpoint_is_ambiguous() {
        let c = unit_chord();
        assert_eq!(side_of_chord(&SpherePoint::infinity(), &c), Err(GeomError::AmbiguousAntipodal));
        assert_eq!(side_of_chord(&pt(-1.0, 0.0), &c), Err(GeomError::AmbiguousAntipodal));
        let arc = CircularArc::forward(c, 0.5).unwrap();
        assert_eq!(in_lune(&SpherePoint::infinity(), &arc), Ok(LunePosition::Outside));
        let hemi = CircularArc::forward(c, PI).unwrap();
        assert_eq!(in_lune(&SpherePoint::infinity(), &hemi), Ok(LunePosition::BoundaryArc));
        assert_eq!(in_lune(&pt(0.0, 3.0), &hemi), Ok(LunePosition::Interior));
    }

    #[test]
    fn lune_membership() {
        let c = unit_chord();
        let arc = CircularArc::forward(c, FRAC_PI_2).unwrap();
        // planar oracle: the circle with spherical diameter [0,1] is the plane circle |z - 1/2| = 1/2
        let p = pt(0.5, 0.3);
        assert!((p_plane_inside(0.5, 0.3)));
        assert_eq!(in_lune(&p, &arc), Ok(LunePosition::Interior));
        assert_eq!(in_lune(&pt(0.5, -0.3), &arc), Ok(LunePosition::Outside));
        assert_eq!(in_lune(&pt(0.5, 0.6), &arc), Ok(LunePosition::Outside));
        assert_eq!(in_lune(&c.a(), &arc), Ok(LunePosition::BoundaryChord));
        assert_eq!(in_lune(&pt(0.3, 0.0), &arc), Ok(LunePosition::BoundaryChord));
        assert_eq!(in_lune(&pt(0.5, 0.5), &arc), Ok(LunePosition::BoundaryArc));
        let flat = CircularArc::forward(c, 0.0).unwrap();
        assert_eq!(in_lune(&p, &flat), Ok(LunePosition::Outside));
    }

    fn p_plane_inside(x: f64, y: f64) -> bool {
        (x - 0.5).hypot(y) < 0.5
    }

    #[test]
    fn major_lune_contains_more() {
        let arc = CircularArc::forward(unit_chord(), 2.5).unwrap();
        assert_eq!(in_lune(&pt(0.5, 0.6), &arc), Ok(LunePosition::Interior));
        assert_eq!(in_lune(&pt(0.5, -0.05), &arc), Ok(LunePosition::Outside));
    }
}
