//! Randomized and exhaustive property suites over the lens formulas, the ledger and the
//! surface builder. Each suite is seeded and deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::functionals::{rh_audit, sew_ledger, slit_sphere_r, Branch, BranchDatum, Configuration, SurfaceStats};
use crate::lens::*;
use crate::optim::bisect;
use crate::search::enumerate_tuples;
use crate::sphere::{
    contour_area, CircularArc, GeodesicChord, Orientation, PiecewiseCircularCurve, SpherePoint,
};
use crate::surface::{r_of_solution, BoundaryPartition, Fan};
use crate::tol::TOL_ON;

const FOUR_PI: f64 = 4.0 * PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Isoperimetric,
    LensArea,
    Area2,
    Disk,
    TwoCircle,
    TwoCurvature,
    Ledger,
    Rh,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Isoperimetric,
        Suite::LensArea,
        Suite::Area2,
        Suite::Disk,
        Suite::TwoCircle,
        Suite::TwoCurvature,
        Suite::Ledger,
        Suite::Rh,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Isoperimetric => "isoperimetric",
            Suite::LensArea => "lens-area",
            Suite::Area2 => "area2",
            Suite::Disk => "disk",
            Suite::TwoCircle => "two-circle",
            Suite::TwoCurvature => "two-curvature",
            Suite::Ledger => "ledger",
            Suite::Rh => "rh",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown suite {:?}", self.0)
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Outcome of one property: `worst` is the largest defect seen, and an instance fails when
/// its defect exceeds `limit` (or is not a number).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub worst: f64,
    pub limit: f64,
}

impl PropertyResult {
    fn new(name: &str, limit: f64) -> Self {
        PropertyResult { name: name.to_string(), trials: 0, failures: 0, worst: f64::NEG_INFINITY, limit }
    }

    fn record(&mut self, defect: f64) {
        self.trials += 1;
        if !(defect <= self.limit) {
            self.failures += 1;
        }
        if defect.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(defect);
        }
    }

    /// Counts an instance the property could not even be evaluated on.
    fn broken(&mut self) {
        self.record(f64::NAN);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }
}

/// Runs one suite with `trials` random instances per property (`rh` is exhaustive and ignores it).
pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite as u64);
    let properties = match suite {
        Suite::Isoperimetric => isoperimetric(&mut rng, trials),
        Suite::LensArea => lens_area_transfer(&mut rng, trials),
        Suite::Area2 => area2(&mut rng, trials),
        Suite::Disk => disk(&mut rng, trials),
        Suite::TwoCircle => two_circle(&mut rng, trials),
        Suite::TwoCurvature => two_curvature(&mut rng, trials),
        Suite::Ledger => ledger(&mut rng, trials),
        Suite::Rh => rh(),
        Suite::Oracle => oracle(&mut rng, trials),
    };
    SuiteReport { suite, seed, properties }
}

pub fn run_all(seed: u64, trials: usize) -> Vec<SuiteReport> {
    Suite::ALL.into_iter().map(|s| run_suite(s, seed, trials)).collect()
}

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let v = nalgebra::Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return SpherePoint::new(v).expect("nonzero");
        }
    }
}

/// A unit vector orthogonal to `c`.
fn orthonormal(c: &SpherePoint) -> (nalgebra::Vector3<f64>, nalgebra::Vector3<f64>) {
    let v = c.vec();
    let helper = if v.x.abs() < 0.9 { nalgebra::Vector3::x() } else { nalgebra::Vector3::y() };
    let e1 = v.cross(&helper).normalize();
    let e2 = v.cross(&e1);
    (e1, e2)
}

/// Points on the circle of radius `rho` about `c` at the given angles.
fn on_circle(c: &SpherePoint, rho: f64, angles: &[f64]) -> Vec<SpherePoint> {
    let (e1, e2) = orthonormal(c);
    angles
        .iter()
        .map(|&t| SpherePoint::new(c.vec() * rho.cos() + (e1 * t.cos() + e2 * t.sin()) * rho.sin()).expect("unit"))
        .collect()
}

/// Closed lens boundary over `a→b` with the lens on its left.
pub fn lens_boundary(a: SpherePoint, b: SpherePoint, theta: f64) -> Result<PiecewiseCircularCurve, crate::error::GeomError> {
    let ab = GeodesicChord::new(a, b)?;
    PiecewiseCircularCurve::new(vec![
        CircularArc::new(ab, theta, Orientation::Reverse)?,
        CircularArc::new(ab.reversed(), theta, Orientation::Reverse)?,
    ])
}

fn isoperimetric(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut iso = PropertyResult::new("area below disk of equal perimeter", 1e-6);
    let mut quad = PropertyResult::new("A(4π−A) ≤ L²", 1e-6);
    while iso.trials < trials {
        // convex curve inscribed in a circle, arcs no flatter than the circle
        let c = random_point(rng);
        let rho = rng.gen_range(0.05..1.5);
        let n = rng.gen_range(3..=7);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        if angles.windows(2).any(|w| w[1] - w[0] < 1e-3) || angles[0] + TAU - angles[n - 1] < 1e-3 {
            continue;
        }
        let pts = on_circle(&c, rho, &angles);
        let k_circle = 1.0 / rho.tan();
        let mut arcs = Vec::with_capacity(n);
        for j in 0..n {
            let Ok(chord) = GeodesicChord::new(pts[j], pts[(j + 1) % n]) else { break };
            let d = chord.length();
            let k = rng.gen_range(k_circle.max(0.0)..=max_curvature(d).max(k_circle));
            let Ok(th) = curvature_to_theta(d, k.min(max_curvature(d))) else { break };
            // the circle runs counterclockwise about c, so the outward bulge is on the right
            match CircularArc::new(chord.reversed(), th, Orientation::Reverse) {
                Ok(a) => arcs.push(a),
                Err(_) => break,
            }
        }
        if arcs.len() != n {
            continue;
        }
        let curve = match PiecewiseCircularCurve::new(arcs) {
            Ok(c) => c,
            Err(_) => {
                iso.broken();
                continue;
            }
        };
        let l = curve.length();
        match (contour_area(&curve), disk_area_from_perimeter(l.min(TAU))) {
            (Ok(a), Ok(bound)) => {
                let a = a.rem_euclid(FOUR_PI);
                let small = a.min(FOUR_PI - a);
                iso.record(small - bound);
                quad.record(a * (FOUR_PI - a) - l * l);
            }
            _ => iso.broken(),
        }
    }
    vec![iso, quad]
}

fn lens_area_transfer(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut p = PropertyResult::new("equal perimeter, shorter chord has larger area", 1e-9);
    let mut attempts = 0;
    while p.trials < trials && attempts < 100 * trials {
        attempts += 1;
        let d1 = rng.gen_range(0.01..PI - 0.01);
        let d2 = rng.gen_range(0.005..d1);
        let t1 = rng.gen_range(0.0..FRAC_PI_2);
        let (Ok(l), Ok(a1)) = (lens_length(d1, t1), lens_area(d1, t1)) else { p.broken(); continue };
        let Ok(Some(t2)) = equal_perimeter_theta(d2, l) else { continue };
        if t2 <= t1 {
            p.broken();
            continue;
        }
        match lens_area(d2, t2) {
            Ok(a2) => p.record(a1 - a2),
            Err(_) => p.broken(),
        }
    }
    vec![p]
}

fn area2(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut p = PropertyResult::new("shrinking the chord at equal perimeter raises h", 1e-9);
    let mut best = PropertyResult::new("max over θ rises as the chord shrinks", 1e-9);
    let mut attempts = 0;
    while p.trials < trials && attempts < 100 * trials {
        attempts += 1;
        let q = rng.gen_range(3..=8);
        let a0 = if rng.gen_bool(0.5) { FOUR_PI * (1.0 - rng.gen_range(0..3) as f64) } else { rng.gen_range(-8.0 * PI..8.0 * PI) };
        let d0 = rng.gen_range(0.05..PI - 0.05);
        let Ok(m) = max_h_theta(a0, q, d0, 1e-12) else { p.broken(); continue };
        if !(m.theta > 1e-4 && m.theta < FRAC_PI_2 - 1e-4) {
            continue;
        }
        let Ok(l) = lens_length(d0, m.theta) else { p.broken(); continue };
        let d = d0 * (1.0 - 1e-3);
        let Ok(Some(td)) = equal_perimeter_theta(d, l) else { p.broken(); continue };
        match (h_family(a0, q, d, td), max_h_theta(a0, q, d, 1e-12)) {
            (Ok(h), Ok(md)) => {
                p.record(m.h - h);
                best.record(m.h - md.h);
            }
            _ => p.broken(),
        }
    }
    vec![p, best]
}

fn disk(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut fd = PropertyResult::new("derivative matches central differences (relative)", 1e-5);
    let mut empty = PropertyResult::new("empty disk: sign flips at 2 arccos((q−2)/q)", 1e-9);
    let mut nonempty = PropertyResult::new("nonempty disk: strictly increasing", 1e-9);
    let mut family = PropertyResult::new("equals the half-circle lens family", 1e-10);
    for _ in 0..trials {
        let q = rng.gen_range(3..=12);
        let nbar = if rng.gen_bool(0.4) { 0 } else { rng.gen_range(1..=q) };
        let d = rng.gen_range(0.02..PI - 0.02);
        let (Ok(h), Ok(dh)) = (h_disk(q, nbar, d), dh_disk(q, nbar, d)) else { fd.broken(); continue };
        let step = 1e-6;
        match (h_disk(q, nbar, d + step), h_disk(q, nbar, d - step)) {
            (Ok(hp), Ok(hm)) => {
                let est = (hp - hm) / (2.0 * step);
                fd.record((est - dh).abs() / dh.abs().max(1.0));
            }
            _ => fd.broken(),
        }
        if nbar == 0 {
            let crit = 2.0 * ((q as f64 - 2.0) / q as f64).acos();
            if (d - crit).abs() > 1e-6 {
                // positive defect when the sign is wrong
                let expect = if d < crit { -1.0 } else { 1.0 };
                empty.record(-expect * dh);
            }
        } else {
            nonempty.record(-dh);
        }
        let a0 = FOUR_PI * (1.0 - nbar as f64);
        match h_family(a0, q, d, FRAC_PI_2) {
            Ok(hf) => family.record((hf - h).abs() / h.abs().max(1.0)),
            Err(_) => family.broken(),
        }
    }
    vec![fd, empty, nonempty, family]
}

fn two_circle(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut p = PropertyResult::new("two disks of total perimeter L: area decreasing on [0, L/2]", 1e-9);
    let mut upper = PropertyResult::new("two disks never exceed one disk of perimeter L", 1e-12);
    let grid = 64;
    for _ in 0..trials {
        let l = rng.gen_range(1e-3..TAU - 1e-3);
        let f = |x: f64| disk_area_from_perimeter(x).unwrap() + disk_area_from_perimeter(l - x).unwrap();
        let mut worst = f64::NEG_INFINITY;
        let mut prev = f(0.0);
        for i in 1..=grid {
            let cur = f(l / 2.0 * i as f64 / grid as f64);
            worst = worst.max(cur - prev);
            prev = cur;
        }
        p.record(worst);
        upper.record(f(rng.gen_range(0.0..l)) - disk_area_from_perimeter(l).unwrap());
    }
    vec![p, upper]
}

/// Cusp angle of the lune with arc length `l` over a chord of length `delta`, on `[lo, hi]`.
fn lune_theta(delta: f64, l: f64, lo: f64, hi: f64) -> Option<f64> {
    bisect(&|th: f64| lune_length(delta, th).unwrap_or(f64::NAN) - l, lo, hi, 1e-15)
}

fn two_curvature(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut a = PropertyResult::new("length moved onto the more curved arc lowers total area", 1e-9);
    let mut b = PropertyResult::new("major arcs of equal curvature: local minimum of total area", 1e-9);
    let mut attempts = 0;
    while a.trials < trials && attempts < 100 * trials {
        attempts += 1;
        let d1 = rng.gen_range(0.05..PI - 0.05);
        let d2 = rng.gen_range(0.05..PI - 0.05);
        let t1 = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
        let t2 = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
        let (k1, k2) = (t1.sin() / (d1 / 2.0).tan(), t2.sin() / (d2 / 2.0).tan());
        if (k1 - k2).abs() < 1e-3 {
            continue;
        }
        // arc 1 is the more curved one
        let ((d1, t1), (d2, t2)) = if k1 > k2 { ((d1, t1), (d2, t2)) } else { ((d2, t2), (d1, t1)) };
        let (l1, l2) = (lune_length(d1, t1).unwrap(), lune_length(d2, t2).unwrap());
        let before = lune_area(d1, t1).unwrap() + lune_area(d2, t2).unwrap();
        // stay inside both minor-arc ranges
        let room = (lune_length(d1, FRAC_PI_2).unwrap() - l1).min(l2 - d2);
        let h = 1e-4 * l1.min(l2).min(room);
        let (Some(n1), Some(n2)) = (lune_theta(d1, l1 + h, 0.0, FRAC_PI_2), lune_theta(d2, l2 - h, 0.0, FRAC_PI_2)) else {
            a.broken();
            continue;
        };
        let after = lune_area(d1, n1).unwrap() + lune_area(d2, n2).unwrap();
        a.record(after - before);
    }
    attempts = 0;
    while b.trials < trials && attempts < 100 * trials {
        attempts += 1;
        let d1 = rng.gen_range(0.1..PI - 0.1);
        let d2 = rng.gen_range(0.1..PI - 0.1);
        let t1 = rng.gen_range(FRAC_PI_2 + 0.05..PI - 0.3);
        let k = t1.sin() / (d1 / 2.0).tan();
        let s2 = k * (d2 / 2.0).tan();
        if !(s2 > 0.1 && s2 < 0.95) {
            continue;
        }
        let t2 = PI - s2.asin();
        let (l1, l2) = (lune_length(d1, t1).unwrap(), lune_length(d2, t2).unwrap());
        let before = lune_area(d1, t1).unwrap() + lune_area(d2, t2).unwrap();
        let room = |d: f64, l: f64| (lune_length(d, PI - 1e-9).unwrap() - l).min(l - lune_length(d, FRAC_PI_2).unwrap());
        let h = 1e-3 * l1.min(l2).min(room(d1, l1)).min(room(d2, l2));
        let mut worst = f64::NEG_INFINITY;
        for s in [-1.0, 1.0] {
            let (Some(n1), Some(n2)) =
                (lune_theta(d1, l1 + s * h, FRAC_PI_2, PI - 1e-9), lune_theta(d2, l2 - s * h, FRAC_PI_2, PI - 1e-9))
            else {
                worst = f64::NAN;
                break;
            };
            let after = lune_area(d1, n1).unwrap() + lune_area(d2, n2).unwrap();
            worst = worst.max(before - after);
        }
        b.record(worst);
    }
    vec![a, b]
}

fn random_configuration(rng: &mut ChaCha8Rng, q: usize) -> Configuration {
    loop {
        let pts = (0..q).map(|_| random_point(rng)).collect();
        if let Ok(c) = Configuration::new(pts) {
            return c;
        }
    }
}

fn ledger(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut sew = PropertyResult::new("two lunes sewn on their chord give the lens", 1e-12);
    let mut slit = PropertyResult::new("slit sphere formula matches the direct count", 1e-12);
    let mut fan = PropertyResult::new("face formula matches the aggregate ledger", 1e-9);
    for _ in 0..trials {
        let q = rng.gen_range(3..=8);
        let d = rng.gen_range(0.01..PI - 0.01);
        let t = rng.gen_range(0.0..=FRAC_PI_2);
        let lune = SurfaceStats::new(q, lune_area(d, t).unwrap(), lune_length(d, t).unwrap() + d, 0);
        match sew_ledger(&lune, &lune, d, 0) {
            Ok(s) => {
                let (a, l) = (lens_area(d, t).unwrap(), lens_length(d, t).unwrap());
                sew.record(((s.area - a).abs() / a.max(1.0)).max((s.length - l).abs() / l.max(1.0)));
            }
            Err(_) => sew.broken(),
        }
    }
    for _ in 0..trials {
        // a chord with some points placed on it
        let q = rng.gen_range(3..=7);
        let a = random_point(rng);
        let b = loop {
            let b = random_point(rng);
            if GeodesicChord::new(a, b).is_ok() {
                break b;
            }
        };
        let chord = GeodesicChord::new(a, b).unwrap();
        let mut pts = Vec::new();
        if rng.gen_bool(0.7) {
            pts.push(a);
        }
        if rng.gen_bool(0.7) {
            pts.push(b);
        }
        while pts.len() < q {
            let p = if rng.gen_bool(0.3) {
                let s = rng.gen_range(0.05..0.95);
                SpherePoint::new(a.vec() * (1.0 - s) + b.vec() * s).unwrap()
            } else {
                random_point(rng)
            };
            pts.push(p);
        }
        let Ok(c) = Configuration::new(pts) else { continue };
        let endpoint = c.points().iter().filter(|p| p.dot(&a) > 1.0 - 1e-15 || p.dot(&b) > 1.0 - 1e-15).count();
        let on = c.points().iter().filter(|p| chord.contains(p, TOL_ON)).count();
        let interior = on - endpoint;
        let direct = SurfaceStats::new(c.q(), FOUR_PI, 0.0, c.q() - on).r();
        match slit_sphere_r(&c, interior, endpoint) {
            Ok(r) => slit.record((r - direct).abs() / FOUR_PI),
            Err(_) => slit.broken(),
        }
    }
    let mut built = 0;
    while built < trials {
        let q = rng.gen_range(3..=6);
        let c = random_configuration(rng, q);
        let tuples = enumerate_tuples(&c, 2, q).unwrap();
        let t = &tuples[rng.gen_range(0..tuples.len())];
        let Ok(f) = Fan::new(&c, t, false) else { continue };
        let kmax = f.chord_lengths().iter().map(|&d| max_curvature(d)).fold(f64::INFINITY, f64::min);
        let k = rng.gen_range(0.0..=kmax);
        let Ok(p) = BoundaryPartition::with_curvature(&c, t.clone(), k) else { continue };
        built += 1;
        match f.solution(&p.thetas) {
            Ok(sol) => match r_of_solution(&sol) {
                Ok(r) => fan.record((r - sol.stats.r()).abs() / (1.0 + r.abs())),
                Err(_) => fan.broken(),
            },
            Err(_) => fan.broken(),
        }
    }
    vec![sew, slit, fan]
}

/// All branch data of degree `2..=max_degree`: multisets of `(v, flagged)` with `Σ(v−1) ≤ 2d−2`.
pub fn branch_data(max_degree: usize) -> impl Iterator<Item = BranchDatum> {
    (2..=max_degree).flat_map(|d| {
        let kinds: Vec<Branch> =
            (2..=d).flat_map(|v| [false, true].map(|in_eq| Branch { multiplicity: v, in_eq })).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        multisets(&kinds, 0, 2 * d - 2, &mut cur, &mut out);
        out.into_iter().map(move |branches| BranchDatum { degree: d, branches })
    })
}

fn multisets(kinds: &[Branch], from: usize, budget: usize, cur: &mut Vec<Branch>, out: &mut Vec<Vec<Branch>>) {
    out.push(cur.clone());
    for i in from..kinds.len() {
        let w = kinds[i].multiplicity - 1;
        if w <= budget {
            cur.push(kinds[i]);
            multisets(kinds, i, budget - w, cur, out);
            cur.pop();
        }
    }
}

fn rh() -> Vec<PropertyResult> {
    let mut filter = PropertyResult::new("audit accepts exactly the data with Σ(v−1) = 2d−2", 0.0);
    let mut nbar = PropertyResult::new("n̄ ≥ (q−2)d + 2", 0.0);
    let mut bound = PropertyResult::new("R ≤ −8π", 1e-12);
    let mut eq = PropertyResult::new("R = −8π exactly when every branch point is over E_q", 0.0);
    let configs: Vec<Configuration> = (3..=6)
        .map(|q| {
            let pts = (0..q).map(|i| SpherePoint::from_complex(i as f64, 0.5 * i as f64).unwrap()).collect();
            Configuration::new(pts).unwrap()
        })
        .collect();
    for b in branch_data(10) {
        let total: usize = b.branches.iter().map(|x| x.multiplicity - 1).sum();
        let valid = total == 2 * b.degree - 2;
        for c in &configs {
            let audit = rh_audit(&b, c);
            filter.record(if audit.is_ok() == valid { 0.0 } else { 1.0 });
            let Ok(a) = audit else { continue };
            nbar.record(a.nbar_min as f64 - a.nbar as f64);
            bound.record((a.r - a.r_max) / FOUR_PI);
            let all_flagged = b.branches.iter().all(|x| x.in_eq);
            let at_max = (a.r - a.r_max).abs() <= 1e-12 * FOUR_PI;
            eq.record(if at_max == all_flagged && a.equality == all_flagged { 0.0 } else { 1.0 });
        }
    }
    vec![filter, nbar, bound, eq]
}

fn oracle(rng: &mut ChaCha8Rng, trials: usize) -> Vec<PropertyResult> {
    let mut area = PropertyResult::new("lens area equals contour integral", 1e-8);
    let mut length = PropertyResult::new("half lens length equals φ·sin r", 1e-10);
    let mut boundary = PropertyResult::new("surface area agrees with its boundary integral mod 4π", 1e-7);
    for _ in 0..trials {
        let d = rng.gen_range(0.1..PI - 0.1);
        let t = rng.gen_range(0.01..=FRAC_PI_2);
        let a = random_point(rng);
        let (e1, _) = orthonormal(&a);
        let b = SpherePoint::new(a.vec() * d.cos() + e1 * d.sin()).unwrap();
        let (Ok(al), Ok(ll), Ok(circ)) = (lens_area(d, t), lens_length(d, t), theta_to_circle(d, t)) else {
            area.broken();
            continue;
        };
        match lens_boundary(a, b, t).and_then(|c| contour_area(&c)) {
            Ok(x) => area.record((x.rem_euclid(FOUR_PI) - al).abs()),
            Err(_) => area.broken(),
        }
        length.record((ll / 2.0 - circ.phi * circ.r.sin()).abs());
    }
    let mut built = 0;
    while built < trials / 10 + 1 {
        let q = rng.gen_range(3..=5);
        let c = random_configuration(rng, q);
        let tuples = enumerate_tuples(&c, 2, q).unwrap();
        let t = &tuples[rng.gen_range(0..tuples.len())];
        let Ok(f) = Fan::new(&c, t, false) else { continue };
        let kmax = f.chord_lengths().iter().map(|&d| max_curvature(d)).fold(f64::INFINITY, f64::min);
        let Ok(p) = BoundaryPartition::with_curvature(&c, t.clone(), rng.gen_range(0.0..=kmax)) else { continue };
        built += 1;
        let res = f.solution(&p.thetas).map_err(|_| ()).and_then(|sol| {
            let curve = sol.boundary().map_err(|_| ())?;
            let x = contour_area(&curve).map_err(|_| ())?;
            Ok((sol.stats.area, x))
        });
        match res {
            Ok((a, x)) => {
                let diff = (a - x).rem_euclid(FOUR_PI);
                boundary.record(diff.min(FOUR_PI - diff));
            }
            Err(_) => boundary.broken(),
        }
    }
    vec![area, length, boundary]
}
