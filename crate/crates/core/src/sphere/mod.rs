//! Points, chords, circular arcs and areas on the unit sphere.

mod arc;
mod area;
mod point;
mod predicates;

pub use arc::{ArcFrame, CircularArc, GeodesicChord, Orientation, PiecewiseCircularCurve};
pub use area::{contour_area, fibonacci_lattice, polygon_left_area, spherical_triangle_area, turning_angle, TriangleArea};
pub use point::{dist, rotation_between, ExtendedComplex, SpherePoint};
pub use predicates::{in_lune, side_of_chord, LunePosition, Side};
