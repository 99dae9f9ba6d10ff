//! The ledger `(A, L, n̄, R, H)` of a covering surface and the arithmetic around it.

use nalgebra::Rotation3;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{ConfigError, LedgerError};
use crate::sphere::{dist, ExtendedComplex, SpherePoint};
use crate::tol::TOL_ON;

const FOUR_PI: f64 = 4.0 * PI;

/// The point set `E_q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<SpherePoint>,
}

impl Configuration {
    pub fn new(points: Vec<SpherePoint>) -> Result<Self, ConfigError> {
        if points.len() < 3 {
            return Err(ConfigError::TooFewPoints(points.len()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if dist(&points[i], &points[j]) <= TOL_ON {
                    return Err(ConfigError::DuplicatePoints(i, j));
                }
            }
        }
        let c = Configuration { points };
        debug_assert!(delta_eq(&c) <= 2.0 * PI / 3.0 + 1e-12);
        Ok(c)
    }

    pub fn from_extended(zs: &[ExtendedComplex]) -> Result<Self, ConfigError> {
        let pts = zs.iter().map(|z| SpherePoint::from_extended(*z)).collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }

    pub fn q(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> SpherePoint {
        self.points[i]
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        Configuration { points: self.points.iter().map(|p| p.rotate(rot)).collect() }
    }
}

/// Smallest pairwise distance.
pub fn delta_eq(config: &Configuration) -> f64 {
    let p = config.points();
    let mut best = PI;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            best = best.min(dist(&p[i], &p[j]));
        }
    }
    best
}

/// Area, boundary length and interior point count of a surface, tagged with `q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceStats {
    pub q: usize,
    pub area: f64,
    pub length: f64,
    pub nbar: usize,
}

impl SurfaceStats {
    pub fn new(q: usize, area: f64, length: f64, nbar: usize) -> Self {
        SurfaceStats { q, area, length, nbar }
    }

    /// `(q−2)A − 4π n̄`.
    pub fn r(&self) -> f64 {
        (self.q as f64 - 2.0) * self.area - FOUR_PI * self.nbar as f64
    }

    /// `R / L`.
    pub fn h(&self) -> Result<f64, LedgerError> {
        if self.length > 0.0 {
            Ok(self.r() / self.length)
        } else {
            Err(LedgerError::ZeroPerimeter)
        }
    }
}

pub fn r_value(stats: &SurfaceStats) -> f64 {
    stats.r()
}

pub fn h_value(stats: &SurfaceStats) -> Result<f64, LedgerError> {
    stats.h()
}

/// Ledger of the surface obtained by sewing `s1` and `s2` along an arc of length `gamma_len`
/// whose interior meets `gamma_interior_hits` points of `E_q`.
pub fn sew_ledger(
    s1: &SurfaceStats,
    s2: &SurfaceStats,
    gamma_len: f64,
    gamma_interior_hits: usize,
) -> Result<SurfaceStats, LedgerError> {
    if s1.q != s2.q {
        return Err(LedgerError::MixedConfigurations(s1.q, s2.q));
    }
    if gamma_len > s1.length.min(s2.length) {
        return Err(LedgerError::LedgerViolation { gamma: gamma_len, l1: s1.length, l2: s2.length });
    }
    Ok(SurfaceStats {
        q: s1.q,
        area: s1.area + s2.area,
        length: s1.length + s2.length - 2.0 * gamma_len,
        nbar: s1.nbar + s2.nbar + gamma_interior_hits,
    })
}

/// `R` of the sphere slit along a simple arc, from the arc's contacts with `E_q`.
pub fn slit_sphere_r(
    config: &Configuration,
    gamma_interior_hits: usize,
    gamma_endpoint_hits: usize,
) -> Result<f64, LedgerError> {
    if gamma_endpoint_hits > 2 {
        return Err(LedgerError::EndpointHits(gamma_endpoint_hits));
    }
    let _ = config.q();
    Ok(FOUR_PI * gamma_interior_hits as f64 + FOUR_PI * gamma_endpoint_hits as f64 - 2.0 * FOUR_PI)
}

/// A branch point of multiplicity `v ≥ 2`, flagged when it lies over `E_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub multiplicity: usize,
    pub in_eq: bool,
}

/// Branching data of a closed covering of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDatum {
    pub degree: usize,
    pub branches: Vec<Branch>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhAudit {
    /// Interior count implied by the data.
    pub nbar: usize,
    /// `(q−2)d + 2`.
    pub nbar_min: usize,
    pub r: f64,
    /// `−8π`.
    pub r_max: f64,
    /// Every branch point lies over `E_q`, so both bounds are attained.
    pub equality: bool,
}

pub fn rh_audit(b: &BranchDatum, config: &Configuration) -> Result<RhAudit, LedgerError> {
    let d = b.degree;
    let expected = 2 * d.max(1) - 2;
    let sum: usize = b.branches.iter().map(|x| x.multiplicity.saturating_sub(1)).sum();
    if d == 0 || sum != expected || b.branches.iter().any(|x| x.multiplicity < 2 || x.multiplicity > d) {
        return Err(LedgerError::RHViolation { sum, expected });
    }
    let q = config.q();
    let over_eq: usize = b.branches.iter().filter(|x| x.in_eq).map(|x| x.multiplicity - 1).sum();
    let nbar = q * d - over_eq;
    let r = SurfaceStats::new(q, FOUR_PI * d as f64, 0.0, nbar).r();
    Ok(RhAudit {
        nbar,
        nbar_min: (q - 2) * d + 2,
        r,
        r_max: -2.0 * FOUR_PI,
        equality: over_eq == expected,
    })
}

/// `(q−2)·6π/δ_{E_q}`, an upper bound for `H₀`.
pub fn dufresnoy_bound(config: &Configuration) -> f64 {
    (config.q() as f64 - 2.0) * 6.0 * PI / delta_eq(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2, TAU};

    fn e3() -> Configuration {
        Configuration::from_extended(&[
            ExtendedComplex::finite(0.0, 0.0),
            ExtendedComplex::finite(1.0, 0.0),
            ExtendedComplex::Infinity,
        ])
        .unwrap()
    }

    #[test]
    fn configuration_checks() {
        let z = ExtendedComplex::finite(0.5, 0.5);
        assert_eq!(Configuration::from_extended(&[z, ExtendedComplex::Infinity]), Err(ConfigError::TooFewPoints(2)));
        assert_eq!(
            Configuration::from_extended(&[z, ExtendedComplex::Infinity, z]),
            Err(ConfigError::DuplicatePoints(0, 2))
        );
    }

    #[test]
    fn delta_values() {
        assert!((delta_eq(&e3()) - FRAC_PI_2).abs() < 1e-15);
        let s3 = 3f64.sqrt();
        let c = Configuration::from_extended(&[
            ExtendedComplex::finite(1.0, 0.0),
            ExtendedComplex::finite(-0.5, s3 / 2.0),
            ExtendedComplex::finite(-0.5, -s3 / 2.0),
        ])
        .unwrap();
        assert!((delta_eq(&c) - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((dufresnoy_bound(&e3()) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn r_and_h() {
        assert!((SurfaceStats::new(3, 4.0 * PI, 0.0, 3).r() + 8.0 * PI).abs() < 1e-12);
        assert_eq!(SurfaceStats::new(5, 0.0, 1.0, 0).r(), 0.0);
        let l = SQRT_2 * PI;
        let s = SurfaceStats::new(3, TAU - l, l, 0);
        assert!((s.h().unwrap() - (TAU - l) / l).abs() < 1e-15);
        assert_eq!(SurfaceStats::new(3, 1.0, 0.0, 0).h(), Err(LedgerError::ZeroPerimeter));
    }

    #[test]
    fn sewing() {
        let hemi = SurfaceStats::new(3, TAU, TAU, 1);
        let s = sew_ledger(&hemi, &hemi, PI, 0).unwrap();
        assert_eq!((s.area, s.length), (4.0 * PI, TAU));
        let s0 = sew_ledger(&hemi, &hemi, 1.0, 0).unwrap();
        let s2 = sew_ledger(&hemi, &hemi, 1.0, 2).unwrap();
        assert!((s0.r() - s2.r() - 8.0 * PI).abs() < 1e-12);
        assert!(matches!(sew_ledger(&hemi, &hemi, 7.0, 0), Err(LedgerError::LedgerViolation { .. })));
        let other = SurfaceStats::new(4, TAU, TAU, 1);
        assert_eq!(sew_ledger(&hemi, &other, 1.0, 0), Err(LedgerError::MixedConfigurations(3, 4)));
    }

    #[test]
    fn slit_values() {
        let c = e3();
        assert_eq!(slit_sphere_r(&c, 0, 2).unwrap(), 0.0);
        // direct: (q−2)·4π − 4π·#(E₃ off the slit)
        assert_eq!(SurfaceStats::new(3, 4.0 * PI, 0.0, 1).r(), 0.0);
        assert!((slit_sphere_r(&c, 0, 0).unwrap() + 8.0 * PI).abs() < 1e-12);
        assert!((slit_sphere_r(&c, 1, 2).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!(slit_sphere_r(&c, 0, 3).is_err());
    }

    #[test]
    fn riemann_hurwitz_examples() {
        let c = e3();
        let z2 = BranchDatum {
            degree: 2,
            branches: vec![Branch { multiplicity: 2, in_eq: true }, Branch { multiplicity: 2, in_eq: true }],
        };
        let a = rh_audit(&z2, &c).unwrap();
        assert!(a.equality && a.nbar == a.nbar_min);
        let id = BranchDatum { degree: 1, branches: vec![] };
        let a = rh_audit(&id, &c).unwrap();
        assert_eq!(a.nbar_min, 3);
        assert!(a.equality && (a.r - a.r_max).abs() < 1e-12);
        let bad = BranchDatum { degree: 2, branches: vec![Branch { multiplicity: 2, in_eq: false }] };
        assert!(matches!(rh_audit(&bad, &c), Err(LedgerError::RHViolation { sum: 1, expected: 2 })));
    }
}
