//! The extremal search: `H₀ = max (R + 4π)/L` over boundaries of equal-curvature arcs through
//! points of `E_q`, by enumerating vertex tuples and optimizing the common curvature.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{SearchError, SurfaceError};
use crate::functionals::{delta_eq, dufresnoy_bound, Configuration, SurfaceStats};
use crate::lens::{curvature_to_theta, max_curvature, max_h_theta};
use crate::optim::maximize;
use crate::sphere::{dist, GeodesicChord, SpherePoint};
use crate::surface::{deg_max_estimate, BoundaryPartition, DegMaxEstimate, Fan, SolutionSurface};
use crate::tol::{TOL_ON, TOL_WINNER};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const FOUR_PI: f64 = 4.0 * PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub qprime_min: usize,
    /// Defaults to `q`.
    pub qprime_max: Option<usize>,
    pub allow_degenerate: bool,
    /// Grid points per smooth curvature interval before golden-section refinement.
    pub grid: usize,
    /// Curvature resolution of the golden-section stage.
    pub tol: f64,
    /// Lattice size for the covering-multiplicity estimate.
    pub degmax_samples: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { qprime_min: 2, qprime_max: None, allow_degenerate: false, grid: 33, tol: 1e-11, degmax_samples: 4000 }
    }
}

/// Ordered tuples of distinct indices with `qprime_min ≤ len ≤ qprime_max`, one per cyclic
/// rotation class (smallest index first), keeping both orientations; consecutive points
/// (cyclically) must not be antipodal.
pub fn enumerate_tuples(config: &Configuration, qprime_min: usize, qprime_max: usize) -> Result<Vec<Vec<usize>>, SearchError> {
    let q = config.q();
    if qprime_min < 2 || qprime_min > qprime_max || qprime_max > q {
        return Err(SearchError::BadRange(qprime_min, qprime_max));
    }
    let ok = |i: usize, j: usize| dist(&config.point(i), &config.point(j)) < PI - TOL_ON;
    let mut out = Vec::new();
    for len in qprime_min..=qprime_max {
        for first in 0..q {
            let mut stack = vec![first];
            extend(&mut stack, len, q, &ok, &mut out);
        }
    }
    Ok(out)
}

fn extend<F: Fn(usize, usize) -> bool>(stack: &mut Vec<usize>, len: usize, q: usize, ok: &F, out: &mut Vec<Vec<usize>>) {
    if stack.len() == len {
        if ok(stack[len - 1], stack[0]) {
            out.push(stack.clone());
        }
        return;
    }
    let first = stack[0];
    let last = stack[stack.len() - 1];
    for next in first + 1..q {
        if stack.contains(&next) || !ok(last, next) {
            continue;
        }
        // a pair is its own reverse rotation
        stack.push(next);
        extend(stack, len, q, ok, out);
        stack.pop();
    }
}

/// Best surface found for one vertex tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub partition: BoundaryPartition,
    /// Common geodesic curvature of the boundary arcs.
    pub k: f64,
    /// `(R + 4π)/L`.
    pub value: f64,
    pub r: f64,
    pub stats: SurfaceStats,
    pub qprime: usize,
    pub degmax: Option<DegMaxEstimate>,
    /// The optimum sits against a curvature where a point of `E_q` meets an arc, so the value
    /// is a supremum approached from inside the interval.
    pub at_breakpoint: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TupleDiagnostics {
    pub breakpoints: usize,
    pub evaluations: usize,
}

/// Curvatures in `(0, k_max)` at which a point of `E_q` on the bulge side of an edge meets that edge's arc.
pub fn curvature_breakpoints(config: &Configuration, vertices: &[usize], k_max: f64) -> Vec<f64> {
    let n = vertices.len();
    let mut ks = Vec::new();
    for j in 0..n {
        let (ia, ib) = (vertices[j], vertices[(j + 1) % n]);
        let (a, b) = (config.point(ia), config.point(ib));
        let Ok(chord) = GeodesicChord::new(a, b) else { continue };
        for (i, w) in config.points().iter().enumerate() {
            if i == ia || i == ib || chord.signed_offset(w) <= TOL_ON {
                continue;
            }
            if let Some(k) = circle_curvature(&a, &b, w, &chord) {
                if k > 0.0 && k < k_max {
                    ks.push(k);
                }
            }
        }
    }
    ks.sort_by(f64::total_cmp);
    ks.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs().max(1.0));
    ks
}

/// Curvature of the circle through `a`, `b`, `w` when its arc from `a` to `b` through `w` is at most a half circle.
fn circle_curvature(a: &SpherePoint, b: &SpherePoint, w: &SpherePoint, chord: &GeodesicChord) -> Option<f64> {
    let n = (b.vec() - a.vec()).cross(&(w.vec() - a.vec()));
    let norm = n.norm();
    if norm < 1e-300 {
        return None;
    }
    let mut c = n / norm;
    if c.dot(a.vec()) < 0.0 {
        c = -c;
    }
    let cos_r = c.dot(a.vec());
    let sin_r = c.cross(a.vec()).norm();
    let side = c.dot(&chord.normal());
    // w is on the right of a→b; a minor arc through w has its center on the left
    if side > TOL_ON {
        return None;
    }
    Some(cos_r / sin_r)
}

struct Objective<'f, 'c> {
    fan: &'f Fan<'c>,
    deltas: Vec<f64>,
}

impl Objective<'_, '_> {
    fn thetas(&self, k: f64) -> Option<Vec<f64>> {
        self.deltas.iter().map(|&d| curvature_to_theta(d, k).ok()).collect()
    }

    fn surface(&self, k: f64) -> Option<SolutionSurface> {
        let sol = self.fan.solution(&self.thetas(k)?).ok()?;
        sol.arc_contacts.is_empty().then_some(sol)
    }

    fn value(&self, k: f64) -> f64 {
        match self.surface(k) {
            Some(s) => (s.stats.r() + FOUR_PI) / s.stats.length,
            None => f64::NEG_INFINITY,
        }
    }
}

/// Optimizes the common curvature for one tuple over `[0, k_max]`, interval by interval
/// between breakpoints.
pub fn optimize_curvature(
    config: &Configuration,
    vertices: &[usize],
    options: &SearchOptions,
) -> Result<(Candidate, TupleDiagnostics), SearchError> {
    let fan = Fan::new(config, vertices, options.allow_degenerate)?;
    let deltas = fan.chord_lengths();
    let k_max = deltas.iter().map(|&d| max_curvature(d)).fold(f64::INFINITY, f64::min);
    let breaks = curvature_breakpoints(config, vertices, k_max);
    let obj = Objective { fan: &fan, deltas };
    let evaluations = std::cell::Cell::new(0usize);
    let f = |k: f64| {
        evaluations.set(evaluations.get() + 1);
        obj.value(k)
    };

    let margin = |k: f64| 50.0 * TOL_ON * (1.0 + k * k);
    let mut edges = vec![0.0];
    edges.extend(breaks.iter().copied());
    edges.push(k_max);
    let mut best: Option<(f64, f64, bool)> = None;
    let mut consider = |k: f64, v: f64, at_break: bool| {
        if v.is_finite() && best.map_or(true, |(_, bv, _)| v > bv) {
            best = Some((k, v, at_break));
        }
    };
    consider(0.0, f(0.0), false);
    for w in edges.windows(2) {
        let lo = if w[0] == 0.0 { 0.0 } else { w[0] + margin(w[0]) };
        let hi = if w[1] == k_max { k_max } else { w[1] - margin(w[1]) };
        if hi <= lo {
            continue;
        }
        let m = maximize(&f, lo, hi, options.grid, options.tol);
        let slack = 2.0 * options.tol.max(1e-12);
        let touches = (w[0] != 0.0 && m.x - lo <= slack) || (w[1] != k_max && hi - m.x <= slack);
        consider(m.x, m.value, touches);
    }
    let Some((k, value, at_breakpoint)) = best else {
        return Err(SearchError::NoFeasibleCurvature);
    };
    let sol = obj.surface(k).ok_or(SearchError::NoFeasibleCurvature)?;
    let r = crate::surface::r_of_solution(&sol)?;
    Ok((
        Candidate {
            partition: sol.partition.clone(),
            k,
            value,
            r,
            stats: sol.stats,
            qprime: vertices.len(),
            degmax: None,
            at_breakpoint,
        },
        TupleDiagnostics { breakpoints: breaks.len(), evaluations: evaluations.get() },
    ))
}

/// Largest open disk free of points, capped at a hemisphere, and its ratio `(q−2)A/L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmptyDisk {
    pub center: SpherePoint,
    pub radius: f64,
    pub ratio: f64,
}

pub fn best_empty_disk(config: &Configuration) -> EmptyDisk {
    let pts = config.points();
    let q = pts.len();
    let mut best = (SpherePoint::origin(), 0.0);
    for i in 0..q {
        for j in i + 1..q {
            for l in j + 1..q {
                let n = (pts[j].vec() - pts[i].vec()).cross(&(pts[l].vec() - pts[i].vec()));
                let Ok(c) = SpherePoint::new(n) else { continue };
                for c in [c, c.antipode()] {
                    let r = pts.iter().map(|p| dist(p, &c)).fold(f64::INFINITY, f64::min);
                    if r > best.1 {
                        best = (c, r);
                    }
                }
            }
        }
    }
    let radius = best.1.min(FRAC_PI_2);
    EmptyDisk { center: best.0, radius, ratio: (q as f64 - 2.0) * (radius / 2.0).tan() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Anomaly {
    /// A winner has a geodesic edge.
    GeodesicWinner { winner: usize },
    /// `H₀` does not exceed the best empty disk ratio.
    DiskNotBeaten { h0: f64, disk: f64 },
    /// `H₀` exceeds the a priori upper bound.
    AboveUpperBound { h0: f64, bound: f64 },
    /// Winners disagree on the common curvature.
    CurvatureSpread { min: f64, max: f64 },
    /// Winners tied on `(Q, L)` were separated only by the sampled multiplicity.
    DegMaxDecided { winners: Vec<usize> },
    /// A winner's value is a supremum at an arc/point contact.
    SupremumAtBreakpoint { winner: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub tuples_enumerated: usize,
    pub tuples_degenerate: usize,
    pub tuples_infeasible: usize,
    /// Candidates dropped for exceeding the covering-multiplicity bound.
    pub tuples_over_degmax: usize,
    pub breakpoints: usize,
    pub evaluations: usize,
    pub anomalies: Vec<Anomaly>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub h0: f64,
    pub winners: Vec<Candidate>,
    /// Indices into `winners` of the lexicographically `(Q, L, deg_max)`-minimal ones.
    pub simplest: Vec<usize>,
    pub delta_eq: f64,
    pub upper_bound: f64,
    pub empty_disk: EmptyDisk,
    pub diagnostics: Diagnostics,
}

impl SearchReport {
    pub fn simplest_winner(&self) -> &Candidate {
        &self.winners[self.simplest[0]]
    }
}

fn evaluate_all(config: &Configuration, tuples: &[Vec<usize>], options: &SearchOptions) -> Vec<Result<(Candidate, TupleDiagnostics), SearchError>> {
    #[cfg(feature = "parallel")]
    {
        tuples.par_iter().map(|t| optimize_curvature(config, t, options)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        tuples.iter().map(|t| optimize_curvature(config, t, options)).collect()
    }
}

pub fn compute_h0(config: &Configuration, options: &SearchOptions) -> Result<SearchReport, SearchError> {
    let q = config.q();
    let qmax = options.qprime_max.unwrap_or(q);
    let tuples = enumerate_tuples(config, options.qprime_min, qmax)?;
    let mut diag = Diagnostics { tuples_enumerated: tuples.len(), ..Default::default() };
    let mut cands = Vec::new();
    for res in evaluate_all(config, &tuples, options) {
        match res {
            Ok((c, d)) => {
                diag.breakpoints += d.breakpoints;
                diag.evaluations += d.evaluations;
                cands.push(c);
            }
            Err(SearchError::Surface(SurfaceError::DegenerateConfiguration(_))) => diag.tuples_degenerate += 1,
            Err(SearchError::NoFeasibleCurvature) => diag.tuples_infeasible += 1,
            Err(e) => return Err(e),
        }
    }
    // stable: ties keep enumeration order
    cands.sort_by(|a, b| b.value.total_cmp(&a.value));

    let mut winners: Vec<Candidate> = Vec::new();
    let mut h0 = None;
    for mut c in cands {
        if let Some(h) = h0 {
            if c.value < h - TOL_WINNER * f64::max(1.0, f64::abs(h)) {
                break;
            }
        }
        let sol = Fan::new(config, &c.partition.vertices, options.allow_degenerate)?.solution(&c.partition.thetas)?;
        let est = deg_max_estimate(&sol, options.degmax_samples);
        if est.value > 2 * c.qprime - 2 {
            diag.tuples_over_degmax += 1;
            continue;
        }
        c.degmax = Some(est);
        h0.get_or_insert(c.value);
        winners.push(c);
    }
    let h0 = h0.ok_or(SearchError::NoCandidates)?;

    let (simplest, tied) = select_simplest(&winners);
    let empty_disk = best_empty_disk(config);
    let upper_bound = dufresnoy_bound(config);
    for (i, w) in winners.iter().enumerate() {
        if w.k <= 0.0 {
            diag.anomalies.push(Anomaly::GeodesicWinner { winner: i });
        }
        if w.at_breakpoint {
            diag.anomalies.push(Anomaly::SupremumAtBreakpoint { winner: i });
        }
    }
    if h0 <= empty_disk.ratio {
        diag.anomalies.push(Anomaly::DiskNotBeaten { h0, disk: empty_disk.ratio });
    }
    if h0 > upper_bound {
        diag.anomalies.push(Anomaly::AboveUpperBound { h0, bound: upper_bound });
    }
    let kmin = winners.iter().map(|w| w.k).fold(f64::INFINITY, f64::min);
    let kmax = winners.iter().map(|w| w.k).fold(f64::NEG_INFINITY, f64::max);
    if kmax - kmin > 1e-8 {
        diag.anomalies.push(Anomaly::CurvatureSpread { min: kmin, max: kmax });
    }
    if tied.len() > simplest.len() {
        diag.anomalies.push(Anomaly::DegMaxDecided { winners: tied });
    }
    Ok(SearchReport { h0, winners, simplest, delta_eq: delta_eq(config), upper_bound, empty_disk, diagnostics: diag })
}

/// Winners minimal in `Q`, then `L` (up to the winner tolerance), then sampled `deg_max`.
/// Also returns the set tied before the `deg_max` step.
fn select_simplest(winners: &[Candidate]) -> (Vec<usize>, Vec<usize>) {
    let qmin = winners.iter().map(|w| w.qprime).min().unwrap_or(0);
    let idx: Vec<usize> = (0..winners.len()).filter(|&i| winners[i].qprime == qmin).collect();
    let lmin = idx.iter().map(|&i| winners[i].stats.length).fold(f64::INFINITY, f64::min);
    let idx: Vec<usize> = idx.into_iter().filter(|&i| winners[i].stats.length <= lmin * (1.0 + TOL_WINNER)).collect();
    let dmin = idx.iter().filter_map(|&i| winners[i].degmax.map(|d| d.value)).min();
    let narrowed = idx.iter().copied().filter(|&i| winners[i].degmax.map(|d| d.value) == dmin).collect();
    (narrowed, idx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedFormStatus {
    /// Agrees with the general search.
    Exact,
    /// The general search found a larger value on a triangle boundary.
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub h0: f64,
    pub theta_star: f64,
    pub pair: (usize, usize),
    pub status: ClosedFormStatus,
}

/// For three points: the best lens over a closest pair, compared against the general search.
pub fn q3_closed_form(config: &Configuration) -> Result<ClosedForm, SearchError> {
    if config.q() != 3 {
        return Err(SearchError::WrongQ(config.q()));
    }
    let d = delta_eq(config);
    let pair = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(i, j)| dist(&config.point(i), &config.point(j)) <= d + 1e-14)
        .expect("three pairs");
    let m = max_h_theta(FOUR_PI, 3, d, 1e-12)?;
    let report = compute_h0(config, &SearchOptions { qprime_min: 3, ..SearchOptions::default() });
    let status = match report {
        Ok(r) if r.h0 > m.h * (1.0 + TOL_WINNER) => ClosedFormStatus::LowerBound,
        _ => ClosedFormStatus::Exact,
    };
    Ok(ClosedForm { h0: m.h, theta_star: m.theta, pair, status })
}
