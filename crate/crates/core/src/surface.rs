//! Surfaces with a prescribed boundary of circular arcs through points of `E_q`.
//!
//! The surface is a fan of geodesic triangles `T_j` with apex at the first vertex, sewn along
//! the diagonals `l_j`, with a lune `K_j` sewn onto every edge `p_j p_{j+1}` on its right.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{GeomError, SurfaceError};
use crate::functionals::{Configuration, SurfaceStats};
use crate::lens::{curvature_to_theta, lune_area, lune_length};
use crate::sphere::{
    dist, fibonacci_lattice, in_lune, polygon_left_area, spherical_triangle_area, CircularArc, GeodesicChord,
    LunePosition, Orientation, PiecewiseCircularCurve, SpherePoint,
};
use crate::tol::{TOL_CURVATURE, TOL_ON};

const FOUR_PI: f64 = 4.0 * PI;

/// Ordered vertices (indices into the configuration) and one cusp angle per edge;
/// edge `j` joins vertex `j` to vertex `j + 1` cyclically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPartition {
    pub vertices: Vec<usize>,
    pub thetas: Vec<f64>,
}

impl BoundaryPartition {
    pub fn new(vertices: Vec<usize>, thetas: Vec<f64>) -> Self {
        BoundaryPartition { vertices, thetas }
    }

    /// All edges geodesic.
    pub fn geodesic(vertices: Vec<usize>) -> Self {
        let n = vertices.len();
        BoundaryPartition { vertices, thetas: vec![0.0; n] }
    }

    /// Cusp angles realizing the common curvature `k` on every edge.
    pub fn with_curvature(config: &Configuration, vertices: Vec<usize>, k: f64) -> Result<Self, SurfaceError> {
        let n = vertices.len();
        let mut thetas = Vec::with_capacity(n);
        for j in 0..n {
            let d = dist(&config.point(vertices[j]), &config.point(vertices[(j + 1) % n]));
            thetas.push(curvature_to_theta(d, k)?);
        }
        Ok(BoundaryPartition { vertices, thetas })
    }

    pub fn qprime(&self) -> usize {
        self.vertices.len()
    }

    pub fn chord(&self, config: &Configuration, j: usize) -> Result<GeodesicChord, GeomError> {
        let n = self.vertices.len();
        GeodesicChord::new(config.point(self.vertices[j]), config.point(self.vertices[(j + 1) % n]))
    }

    /// Boundary arc of edge `j`, traversed from `p_j` to `p_{j+1}` and bulging to its right.
    pub fn edge_arc(&self, config: &Configuration, j: usize) -> Result<CircularArc, GeomError> {
        CircularArc::new(self.chord(config, j)?.reversed(), self.thetas[j], Orientation::Reverse)
    }

    pub fn boundary(&self, config: &Configuration) -> Result<PiecewiseCircularCurve, GeomError> {
        let arcs = (0..self.qprime()).map(|j| self.edge_arc(config, j)).collect::<Result<Vec<_>, _>>()?;
        PiecewiseCircularCurve::new(arcs)
    }

    /// Geodesic curvature of every edge.
    pub fn curvatures(&self, config: &Configuration) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|j| {
                let d = dist(&config.point(self.vertices[j]), &config.point(self.vertices[(j + 1) % n]));
                self.thetas[j].sin() / (d / 2.0).tan()
            })
            .collect()
    }

    /// The same vertices in the opposite order, each edge keeping its cusp angle.
    pub fn reversed(&self) -> Self {
        let n = self.vertices.len();
        let vertices = self.vertices.iter().rev().copied().collect();
        let thetas = (0..n).map(|i| self.thetas[(2 * n - 2 - i) % n]).collect();
        BoundaryPartition { vertices, thetas }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum S0Violation {
    /// Needs `2 ≤ q′ ≤ q`.
    VertexCount { qprime: usize, q: usize },
    VertexIndex { position: usize, index: usize },
    RepeatedVertex { first: usize, second: usize },
    /// Consecutive vertices antipodal (or coincident).
    BadEdge { edge: usize },
    ThetaCount { expected: usize, got: usize },
    /// Cusp angle outside `[0, π/2]`: the arc would be major.
    MajorArc { edge: usize, theta: f64 },
    CurvatureMismatch { edge: usize, k: f64, k_first: f64 },
    /// A point of `E_q` lies on (or within the tolerance shell of) an open boundary arc.
    PointOnArc { edge: usize, point: usize },
    /// Arc not contained in an open hemisphere.
    NotInHemisphere { edge: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<S0Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structural, convexity, curvature and point-avoidance conditions of the admissible family.
/// The covering-multiplicity bound is checked separately by [`deg_max_estimate`].
pub fn validate_s0(partition: &BoundaryPartition, config: &Configuration) -> ValidityReport {
    let mut v = Vec::new();
    let n = partition.qprime();
    let q = config.q();
    if n < 2 || n > q {
        v.push(S0Violation::VertexCount { qprime: n, q });
    }
    for (position, &index) in partition.vertices.iter().enumerate() {
        if index >= q {
            v.push(S0Violation::VertexIndex { position, index });
        }
    }
    if !v.is_empty() {
        return ValidityReport { violations: v };
    }
    for i in 0..n {
        for j in i + 1..n {
            if partition.vertices[i] == partition.vertices[j] {
                v.push(S0Violation::RepeatedVertex { first: i, second: j });
            }
        }
    }
    if partition.thetas.len() != n {
        v.push(S0Violation::ThetaCount { expected: n, got: partition.thetas.len() });
        return ValidityReport { violations: v };
    }
    let mut arcs = Vec::with_capacity(n);
    for j in 0..n {
        let theta = partition.thetas[j];
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            v.push(S0Violation::MajorArc { edge: j, theta });
        }
        match partition.edge_arc(config, j) {
            Ok(a) => arcs.push(Some(a)),
            Err(_) => {
                v.push(S0Violation::BadEdge { edge: j });
                arcs.push(None);
            }
        }
    }
    let ks = partition.curvatures(config);
    for j in 1..n {
        if arcs[j].is_some() && arcs[0].is_some() && (ks[j] - ks[0]).abs() > TOL_CURVATURE * ks[0].abs().max(1.0) {
            v.push(S0Violation::CurvatureMismatch { edge: j, k: ks[j], k_first: ks[0] });
        }
    }
    for (j, arc) in arcs.iter().enumerate() {
        let Some(arc) = arc else { continue };
        let ends = [partition.vertices[j], partition.vertices[(j + 1) % n]];
        for (i, p) in config.points().iter().enumerate() {
            if ends.contains(&i) {
                continue;
            }
            if point_on_open_arc(p, arc) {
                v.push(S0Violation::PointOnArc { edge: j, point: i });
            }
        }
        if !in_open_hemisphere(arc) {
            v.push(S0Violation::NotInHemisphere { edge: j });
        }
    }
    ValidityReport { violations: v }
}

fn point_on_open_arc(p: &SpherePoint, arc: &CircularArc) -> bool {
    if dist(p, &arc.chord.a()) <= TOL_ON || dist(p, &arc.chord.b()) <= TOL_ON {
        return false;
    }
    match in_lune(p, arc) {
        Ok(LunePosition::BoundaryArc) => true,
        Ok(LunePosition::BoundaryChord) => arc.theta == 0.0,
        _ => false,
    }
}

fn in_open_hemisphere(arc: &CircularArc) -> bool {
    let mid = arc.midpoint();
    arc.sample(65).map(|pts| pts.iter().all(|p| p.dot(&mid) > 1e-12)).unwrap_or(false)
}

/// Region of the sphere occupied by a fan face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FaceRegion {
    /// Left side of a closed geodesic polygon; `small` when that side is convex.
    Polygon { vertices: Vec<SpherePoint>, small: bool },
    /// The sphere minus a geodesic path.
    Slit { path: Vec<SpherePoint> },
}

impl FaceRegion {
    fn edges(&self) -> Vec<GeodesicChord> {
        let (pts, closed) = match self {
            FaceRegion::Polygon { vertices, .. } => (vertices, true),
            FaceRegion::Slit { path } => (path, false),
        };
        let n = pts.len();
        let m = if closed { n } else { n - 1 };
        (0..m).filter_map(|i| GeodesicChord::new(pts[i], pts[(i + 1) % n]).ok()).collect()
    }

    pub fn on_boundary(&self, p: &SpherePoint) -> bool {
        self.edges().iter().any(|e| e.contains(p, TOL_ON))
    }

    /// `p` in the open face, away from its boundary by more than the tolerance.
    pub fn contains(&self, p: &SpherePoint) -> bool {
        let edges = self.edges();
        if edges.iter().any(|e| e.contains(p, TOL_ON)) {
            return false;
        }
        match self {
            FaceRegion::Slit { .. } => true,
            FaceRegion::Polygon { small: true, .. } => edges.iter().all(|e| e.signed_offset(p) < -TOL_ON),
            FaceRegion::Polygon { small: false, .. } => edges.iter().any(|e| e.signed_offset(p) < -TOL_ON),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleFace {
    /// Position of the face in the fan, vertices `p_1, p_{m}, p_{m+1}` (0-based `m`).
    pub fan_index: usize,
    pub region: FaceRegion,
    pub area: f64,
    pub nbar: usize,
    /// Resolved through the collinear-vertex rules.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LuneFace {
    pub edge: usize,
    /// Arc over the reversed edge chord, so the lune is its left side.
    pub arc: CircularArc,
    pub area: f64,
    pub length: f64,
    pub nbar: usize,
    /// Points of `E_q` in the open chord.
    pub chord_hits: usize,
    pub nonempty: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagonal {
    /// Index of the far vertex of `l` (0-based).
    pub to_vertex: usize,
    pub path: Vec<SpherePoint>,
    /// Points of `E_q` in the open path.
    pub hits: usize,
    /// Path bent through the previous vertex because the far vertex is antipodal to the apex.
    pub substitute: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSurface {
    pub partition: BoundaryPartition,
    pub triangles: Vec<TriangleFace>,
    pub lunes: Vec<LuneFace>,
    /// Interior diagonals, the ones the triangles are sewn along.
    pub diagonals: Vec<Diagonal>,
    /// Edges whose lune has nonempty interior.
    pub j_set: Vec<usize>,
    /// `(edge, point)` pairs with a point of `E_q` on an open boundary arc.
    pub arc_contacts: Vec<(usize, usize)>,
    pub stats: SurfaceStats,
}

impl SolutionSurface {
    pub fn qprime(&self) -> usize {
        self.partition.qprime()
    }

    pub fn boundary(&self) -> Result<PiecewiseCircularCurve, GeomError> {
        PiecewiseCircularCurve::new(self.lunes.iter().map(|l| l.arc.reversed()).collect())
    }

    /// Number of faces whose open interior holds `p`, or `None` on a face boundary.
    pub fn coverage(&self, p: &SpherePoint) -> Option<usize> {
        let mut count = 0;
        for t in &self.triangles {
            if t.region.on_boundary(p) {
                return None;
            }
            count += t.region.contains(p) as usize;
        }
        for l in &self.lunes {
            if !l.nonempty {
                continue;
            }
            match in_lune(p, &l.arc) {
                Ok(LunePosition::Interior) => count += 1,
                Ok(LunePosition::Outside) => {}
                _ => return None,
            }
        }
        Some(count)
    }
}

fn path_hits(path: &[SpherePoint], config: &Configuration) -> usize {
    let (first, last) = (path[0], path[path.len() - 1]);
    let segs: Vec<GeodesicChord> = path.windows(2).filter_map(|w| GeodesicChord::new(w[0], w[1]).ok()).collect();
    config
        .points()
        .iter()
        .filter(|p| dist(p, &first) > TOL_ON && dist(p, &last) > TOL_ON)
        .filter(|p| segs.iter().any(|s| s.contains(p, TOL_ON)))
        .count()
}

fn path_contains_interior(path: &[SpherePoint], p: &SpherePoint) -> bool {
    let (first, last) = (path[0], path[path.len() - 1]);
    dist(p, &first) > TOL_ON
        && dist(p, &last) > TOL_ON
        && path.windows(2).filter_map(|w| GeodesicChord::new(w[0], w[1]).ok()).any(|s| s.contains(p, TOL_ON))
}

/// Geometry of a vertex tuple that does not depend on the cusp angles.
#[derive(Clone, Debug)]
pub struct Fan<'a> {
    config: &'a Configuration,
    vertices: Vec<usize>,
    chords: Vec<GeodesicChord>,
    chord_hits: Vec<usize>,
    triangles: Vec<TriangleFace>,
    diagonals: Vec<Diagonal>,
}

impl<'a> Fan<'a> {
    pub fn new(config: &'a Configuration, vertices: &[usize], allow_degenerate: bool) -> Result<Self, SurfaceError> {
        let n = vertices.len();
        let q = config.q();
        if n < 2 || n > q {
            return Err(SurfaceError::Invalid(format!("{n} vertices for q = {q}")));
        }
        if let Some(&bad) = vertices.iter().find(|&&i| i >= q) {
            return Err(SurfaceError::Invalid(format!("vertex index {bad} out of range")));
        }
        for i in 0..n {
            if vertices[i + 1..].contains(&vertices[i]) {
                return Err(SurfaceError::Invalid(format!("vertex {} repeated", vertices[i])));
            }
        }
        let pts: Vec<SpherePoint> = vertices.iter().map(|&i| config.point(i)).collect();
        let chords = (0..n)
            .map(|j| GeodesicChord::new(pts[j], pts[(j + 1) % n]))
            .collect::<Result<Vec<_>, _>>()?;
        let chord_hits = chords
            .iter()
            .map(|c| config.points().iter().filter(|p| c.contains_interior(p, TOL_ON)).count())
            .collect();

        let mut fan = Fan { config, vertices: vertices.to_vec(), chords, chord_hits, triangles: vec![], diagonals: vec![] };
        if n == 2 {
            let path = vec![pts[0], pts[1]];
            let region = FaceRegion::Slit { path };
            let nbar = fan.count_inside(&region);
            fan.triangles.push(TriangleFace { fan_index: 1, region, area: FOUR_PI, nbar, degenerate: false });
            return Ok(fan);
        }

        // l to vertex m, for m = 1..n-1
        let paths: Vec<(Vec<SpherePoint>, bool)> = (0..n)
            .map(|m| {
                if m == 0 {
                    (vec![], false)
                } else if m >= 2 && m <= n - 2 && dist(&pts[0], &pts[m]) >= PI - TOL_ON {
                    (vec![pts[0], pts[m - 1], pts[m]], true)
                } else {
                    (vec![pts[0], pts[m]], false)
                }
            })
            .collect();
        for m in 2..=n - 2 {
            let (path, substitute) = paths[m].clone();
            let hits = path_hits(&path, config);
            fan.diagonals.push(Diagonal { to_vertex: m, path, hits, substitute });
        }
        for m in 1..=n - 2 {
            let face = fan.triangle(m, &pts, &paths, allow_degenerate)?;
            fan.triangles.push(face);
        }
        Ok(fan)
    }

    fn count_inside(&self, region: &FaceRegion) -> usize {
        self.config.points().iter().filter(|p| region.contains(p)).count()
    }

    fn slit_face(&self, m: usize, path: &[SpherePoint]) -> TriangleFace {
        let region = FaceRegion::Slit { path: path.to_vec() };
        let nbar = self.count_inside(&region);
        TriangleFace { fan_index: m, region, area: FOUR_PI, nbar, degenerate: true }
    }

    fn polygon_face(&self, m: usize, vertices: Vec<SpherePoint>, area: f64) -> TriangleFace {
        let region = FaceRegion::Polygon { vertices, small: area <= TAU + 1e-12 };
        let nbar = self.count_inside(&region);
        TriangleFace { fan_index: m, region, area, nbar, degenerate: false }
    }

    fn triangle(
        &self,
        m: usize,
        pts: &[SpherePoint],
        paths: &[(Vec<SpherePoint>, bool)],
        allow_degenerate: bool,
    ) -> Result<TriangleFace, SurfaceError> {
        let (p0, pm, pn) = (pts[0], pts[m], pts[m + 1]);
        let (left, left_sub) = &paths[m];
        let (right, right_sub) = &paths[m + 1];
        if *right_sub {
            // the bent diagonal runs back over p_m: the face is the sphere slit along it
            return Ok(self.slit_face(m, right));
        }
        if *left_sub {
            let gc = GeodesicChord::new(p0, pts[m - 1])?;
            if gc.signed_offset(&pn).abs() <= TOL_ON && path_contains_interior(left, &pn) {
                if !allow_degenerate {
                    return Err(SurfaceError::DegenerateConfiguration(m));
                }
                return Ok(self.slit_face(m, left));
            }
            let poly = vec![p0, pts[m - 1], pm, pn];
            let area = polygon_left_area(&poly)?;
            return Ok(self.polygon_face(m, poly, area));
        }
        let t = spherical_triangle_area(&p0, &pm, &pn)?;
        if !t.degenerate {
            return Ok(self.polygon_face(m, vec![p0, pm, pn], t.area));
        }
        if path_contains_interior(left, &pn) {
            if !allow_degenerate {
                return Err(SurfaceError::DegenerateConfiguration(m));
            }
            return Ok(self.slit_face(m, left));
        }
        if path_contains_interior(right, &pm) {
            if !allow_degenerate {
                return Err(SurfaceError::DegenerateConfiguration(m));
            }
            return Ok(self.slit_face(m, right));
        }
        // apex between p_m and p_{m+1}: not covered by the construction
        Err(SurfaceError::DegenerateConfiguration(m))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn chord_lengths(&self) -> Vec<f64> {
        self.chords.iter().map(GeodesicChord::length).collect()
    }

    pub fn chords(&self) -> &[GeodesicChord] {
        &self.chords
    }

    /// Area and interior count of the polygon part `P`, before any lune is attached.
    pub fn polygon_stats(&self) -> (f64, usize) {
        let a = self.triangles.iter().map(|t| t.area).sum();
        let n = self.triangles.iter().map(|t| t.nbar).sum::<usize>() + self.diagonals.iter().map(|d| d.hits).sum::<usize>();
        (a, n)
    }

    /// The surface with cusp angle `thetas[j]` on edge `j`.
    pub fn solution(&self, thetas: &[f64]) -> Result<SolutionSurface, SurfaceError> {
        let n = self.vertices.len();
        if thetas.len() != n {
            return Err(SurfaceError::Invalid(format!("{} cusp angles for {n} edges", thetas.len())));
        }
        let mut lunes = Vec::with_capacity(n);
        let mut arc_contacts = Vec::new();
        for j in 0..n {
            let theta = thetas[j];
            let delta = self.chords[j].length();
            let arc = CircularArc::new(self.chords[j].reversed(), theta, Orientation::Forward)?;
            let nonempty = theta > 0.0;
            let mut nbar = 0;
            let ends = [self.vertices[j], self.vertices[(j + 1) % n]];
            for (i, p) in self.config.points().iter().enumerate() {
                if ends.contains(&i) {
                    continue;
                }
                if point_on_open_arc(p, &arc) {
                    arc_contacts.push((j, i));
                }
                if nonempty && in_lune(p, &arc)? == LunePosition::Interior {
                    nbar += 1;
                }
            }
            lunes.push(LuneFace {
                edge: j,
                arc,
                area: lune_area(delta, theta)?,
                length: lune_length(delta, theta)?,
                nbar,
                chord_hits: self.chord_hits[j],
                nonempty,
            });
        }
        let j_set: Vec<usize> = lunes.iter().filter(|l| l.nonempty).map(|l| l.edge).collect();
        let (poly_area, poly_nbar) = self.polygon_stats();
        let area = poly_area + j_set.iter().map(|&j| lunes[j].area).sum::<f64>();
        let nbar = poly_nbar + j_set.iter().map(|&j| lunes[j].nbar + lunes[j].chord_hits).sum::<usize>();
        let length = lunes.iter().map(|l| l.length).sum();
        Ok(SolutionSurface {
            partition: BoundaryPartition::new(self.vertices.clone(), thetas.to_vec()),
            triangles: self.triangles.clone(),
            lunes,
            diagonals: self.diagonals.clone(),
            j_set,
            arc_contacts,
            stats: SurfaceStats::new(self.config.q(), area, length, nbar),
        })
    }
}

pub fn build_solution(
    partition: &BoundaryPartition,
    config: &Configuration,
    allow_degenerate: bool,
) -> Result<SolutionSurface, SurfaceError> {
    Fan::new(config, &partition.vertices, allow_degenerate)?.solution(&partition.thetas)
}

/// `R` assembled face by face, audited against the aggregate `(q−2)A − 4π n̄`.
pub fn r_of_solution(sol: &SolutionSurface) -> Result<f64, SurfaceError> {
    let qm2 = sol.stats.q as f64 - 2.0;
    let r_face = |a: f64, n: usize| qm2 * a - FOUR_PI * n as f64;
    let mut r: f64 = sol.triangles.iter().map(|t| r_face(t.area, t.nbar)).sum();
    for &j in &sol.j_set {
        let l = &sol.lunes[j];
        r += r_face(l.area, l.nbar) - FOUR_PI * l.chord_hits as f64;
    }
    r -= FOUR_PI * sol.diagonals.iter().map(|d| d.hits).sum::<usize>() as f64;
    let ledger = sol.stats.r();
    if (r - ledger).abs() > 1e-9 * (1.0 + ledger.abs()) {
        return Err(SurfaceError::InternalMismatch { formula: r, ledger });
    }
    Ok(r)
}

/// Sampled maximum covering multiplicity; a lower bound for the true value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegMaxEstimate {
    pub value: usize,
    pub samples_used: usize,
}

/// Maximum number of faces over a point, taken over a Fibonacci lattice of `samples` points
/// plus points just inside and outside every boundary arc.
pub fn deg_max_estimate(sol: &SolutionSurface, samples: usize) -> DegMaxEstimate {
    let mut best = 0;
    let mut used = 0;
    let mut visit = |p: SpherePoint| {
        if let Some(c) = sol.coverage(&p) {
            best = best.max(c);
            used += 1;
        }
    };
    for v in fibonacci_lattice(samples) {
        visit(SpherePoint::new(v).expect("lattice points are unit vectors"));
    }
    for l in sol.lunes.iter().filter(|l| l.nonempty) {
        let f = l.arc.frame();
        for i in 1..16 {
            let phi = f.sweep * i as f64 / 16.0;
            for off in [-3.0 * TOL_ON, 3.0 * TOL_ON] {
                let r = f.radius + off;
                let (s, c) = phi.sin_cos();
                let v = f.center * r.cos() + (f.e1 * c + f.e2 * s) * r.sin();
                visit(SpherePoint::new(v).expect("nonzero"));
            }
        }
    }
    debug_assert!(best <= 2 * sol.qprime() - 2 || sol.triangles.iter().any(|t| t.area > TAU));
    DegMaxEstimate { value: best, samples_used: used }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::{lens_area, lens_length};
    use crate::sphere::ExtendedComplex;

    fn e3() -> Configuration {
        Configuration::from_extended(&[
            ExtendedComplex::finite(0.0, 0.0),
            ExtendedComplex::finite(1.0, 0.0),
            ExtendedComplex::Infinity,
        ])
        .unwrap()
    }

    #[test]
    fn lens_over_zero_one() {
        let c = e3();
        let part = BoundaryPartition::new(vec![0, 1], vec![0.5, 0.5]);
        assert!(validate_s0(&part, &c).is_valid());
        let sol = build_solution(&part, &c, false).unwrap();
        assert_eq!(sol.triangles[0].area, FOUR_PI);
        assert_eq!(sol.triangles[0].nbar, 1);
        assert_eq!(sol.j_set, vec![0, 1]);
        let r = r_of_solution(&sol).unwrap();
        assert!((r - lens_area(FRAC_PI_2, 0.5).unwrap()).abs() < 1e-12);
        assert!((sol.stats.length - lens_length(FRAC_PI_2, 0.5).unwrap()).abs() < 1e-12);
        assert_eq!(deg_max_estimate(&sol, 10_000).value, 2);
    }

    #[test]
    fn structural_violations() {
        let c = e3();
        let rep = validate_s0(&BoundaryPartition::new(vec![0, 1, 0], vec![0.1; 3]), &c);
        assert!(rep.violations.contains(&S0Violation::RepeatedVertex { first: 0, second: 2 }));
        let rep = validate_s0(&BoundaryPartition::new(vec![0, 1], vec![0.5, 0.4]), &c);
        assert!(matches!(rep.violations[..], [S0Violation::CurvatureMismatch { edge: 1, .. }]));
        let rep = validate_s0(&BoundaryPartition::new(vec![0, 2], vec![0.5, 0.5]), &c);
        assert!(rep.violations.contains(&S0Violation::BadEdge { edge: 0 }));
    }

    #[test]
    fn geodesic_polygon_has_no_lunes() {
        let c = Configuration::from_extended(&[
            ExtendedComplex::finite(0.0, 0.0),
            ExtendedComplex::finite(1.0, 0.0),
            ExtendedComplex::finite(0.0, 1.0),
            ExtendedComplex::finite(5.0, 5.0),
        ])
        .unwrap();
        let sol = build_solution(&BoundaryPartition::geodesic(vec![0, 1, 2]), &c, false).unwrap();
        assert!(sol.j_set.is_empty());
        assert!((sol.stats.area - FRAC_PI_2).abs() < 1e-13);
        assert_eq!(sol.stats.nbar, 0);
        assert!((r_of_solution(&sol).unwrap() - 2.0 * FRAC_PI_2).abs() < 1e-12);
        assert_eq!(deg_max_estimate(&sol, 2000).value, 1);
    }

    #[test]
    fn reversal_gives_complement() {
        let c = Configuration::from_extended(&[
            ExtendedComplex::finite(0.0, 0.0),
            ExtendedComplex::finite(1.0, 0.0),
            ExtendedComplex::finite(0.0, 1.0),
        ])
        .unwrap();
        let p = BoundaryPartition::geodesic(vec![0, 1, 2]);
        let a = build_solution(&p, &c, false).unwrap().stats.area;
        let b = build_solution(&p.reversed(), &c, false).unwrap().stats.area;
        assert!((a + b - FOUR_PI).abs() < 1e-12);
    }

    #[test]
    fn reversed_thetas_follow_edges() {
        let p = BoundaryPartition::new(vec![4, 7, 9], vec![0.1, 0.2, 0.3]);
        let r = p.reversed();
        assert_eq!(r.vertices, vec![9, 7, 4]);
        // edges 9→7, 7→4, 4→9 reverse 7→9, 4→7, 9→4
        assert_eq!(r.thetas, vec![0.2, 0.1, 0.3]);
        assert_eq!(r.reversed(), p);
    }
}
