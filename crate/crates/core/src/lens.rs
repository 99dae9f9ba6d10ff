//! Closed forms for lenses, lunes and disks.
//!
//! A lens over a chord of length `delta` with cusp angle `theta` on each side is two
//! mirror-image lunes glued along the chord. With `t = tan(δ/2)` and `s = √(sin²θ + t²)`:
//! `L = 4t/s · atan(s / cosθ)` and `A = 4θ − L sinθ / t`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::LensError;
use crate::optim::{bisect, maximize};
use crate::tol::TOL_FORMS;

fn check_delta(delta: f64) -> Result<(), LensError> {
    if delta > 0.0 && delta < PI {
        Ok(())
    } else {
        Err(LensError::domain("delta", delta))
    }
}

fn check_theta(theta: f64) -> Result<(), LensError> {
    if (0.0..=FRAC_PI_2).contains(&theta) {
        Ok(())
    } else {
        Err(LensError::domain("theta", theta))
    }
}

/// `atan(s / cosθ)` continued past `θ = π/2`.
fn arc_angle(s: f64, theta: f64) -> f64 {
    if theta == FRAC_PI_2 {
        FRAC_PI_2
    } else {
        s.atan2(theta.cos())
    }
}

fn raw_lune_length(delta: f64, theta: f64) -> f64 {
    let t = (delta / 2.0).tan();
    let s = theta.sin().hypot(t);
    2.0 * t / s * arc_angle(s, theta)
}

fn raw_lune_area(delta: f64, theta: f64) -> f64 {
    let t = (delta / 2.0).tan();
    2.0 * theta - raw_lune_length(delta, theta) * theta.sin() / t
}

pub fn lens_length(delta: f64, theta: f64) -> Result<f64, LensError> {
    check_delta(delta)?;
    check_theta(theta)?;
    Ok(2.0 * raw_lune_length(delta, theta))
}

pub fn lens_area(delta: f64, theta: f64) -> Result<f64, LensError> {
    check_delta(delta)?;
    check_theta(theta)?;
    Ok(2.0 * raw_lune_area(delta, theta))
}

/// Arc length of a single lune; accepts major arcs, `theta ∈ [0, π)`.
pub fn lune_length(delta: f64, theta: f64) -> Result<f64, LensError> {
    check_delta(delta)?;
    if !(0.0..PI).contains(&theta) {
        return Err(LensError::domain("theta", theta));
    }
    Ok(raw_lune_length(delta, theta))
}

/// Area of a single lune; accepts major arcs, `theta ∈ [0, π)`.
pub fn lune_area(delta: f64, theta: f64) -> Result<f64, LensError> {
    lune_length(delta, theta)?;
    Ok(raw_lune_area(delta, theta))
}

/// `(A0 + (q−2)·A) / L` for the lens family, cross-checked against the expanded form.
pub fn h_family(a0: f64, q: usize, delta: f64, theta: f64) -> Result<f64, LensError> {
    check_delta(delta)?;
    check_theta(theta)?;
    if q < 3 {
        return Err(LensError::domain("q", q as f64));
    }
    let qm2 = (q - 2) as f64;
    let l = 2.0 * raw_lune_length(delta, theta);
    let quotient = (a0 + qm2 * 2.0 * raw_lune_area(delta, theta)) / l;
    let t = (delta / 2.0).tan();
    let s = theta.sin().hypot(t);
    let expanded = (a0 / 4.0 + qm2 * theta) * s / (t * arc_angle(s, theta)) - qm2 * theta.sin() / t;
    if (quotient - expanded).abs() > TOL_FORMS * quotient.abs().max(1.0) {
        return Err(LensError::InternalMismatch { quotient, expanded });
    }
    Ok(quotient)
}

/// Circle carrying an arc: spherical radius, central angle and geodesic curvature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcCircleParams {
    pub r: f64,
    pub phi: f64,
    pub k: f64,
}

/// Largest curvature for which the arc over a chord of length `delta` is at most a half circle.
pub fn max_curvature(delta: f64) -> f64 {
    1.0 / (delta / 2.0).tan()
}

pub fn theta_to_circle(delta: f64, theta: f64) -> Result<ArcCircleParams, LensError> {
    check_delta(delta)?;
    check_theta(theta)?;
    let k = theta.sin() / (delta / 2.0).tan();
    let r = 1.0f64.atan2(k);
    let phi = 2.0 * ((delta / 2.0).sin() / r.sin()).min(1.0).asin();
    Ok(ArcCircleParams { r, phi, k })
}

pub fn curvature_to_theta(delta: f64, k: f64) -> Result<f64, LensError> {
    check_delta(delta)?;
    let kmax = max_curvature(delta);
    if !(k >= 0.0 && k <= kmax * (1.0 + 1e-12)) {
        return Err(LensError::domain("k", k));
    }
    // within rounding of k_max the arc is the half circle
    if k >= kmax * (1.0 - 4.0 * f64::EPSILON) {
        return Ok(FRAC_PI_2);
    }
    Ok((k * (delta / 2.0).tan()).min(1.0).asin())
}

/// Area of a spherical disk of perimeter `l`.
pub fn disk_area_from_perimeter(l: f64) -> Result<f64, LensError> {
    if !(0.0..=TAU).contains(&l) {
        return Err(LensError::domain("L", l));
    }
    Ok(TAU - (TAU * TAU - l * l).max(0.0).sqrt())
}

fn check_disk(q: usize, delta: f64) -> Result<(), LensError> {
    check_delta(delta)?;
    if q < 3 {
        return Err(LensError::domain("q", q as f64));
    }
    Ok(())
}

/// `(R + 4π)/L` for a disk of spherical diameter `delta` holding `nbar` points inside.
pub fn h_disk(q: usize, nbar: usize, delta: f64) -> Result<f64, LensError> {
    check_disk(q, delta)?;
    let (qf, nf) = (q as f64, nbar as f64);
    Ok((qf - 2.0 * nf - (qf - 2.0) * (delta / 2.0).cos()) / (delta / 2.0).sin())
}

pub fn dh_disk(q: usize, nbar: usize, delta: f64) -> Result<f64, LensError> {
    check_disk(q, delta)?;
    let (qf, nf) = (q as f64, nbar as f64);
    let s = (delta / 2.0).sin();
    Ok((-(qf - 2.0 * nf) * (delta / 2.0).cos() + qf - 2.0) / (2.0 * s * s))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaMax {
    pub theta: f64,
    pub h: f64,
}

/// Maximizes `θ ↦ h_family(a0, q, delta, θ)` over `[0, π/2]`.
pub fn max_h_theta(a0: f64, q: usize, delta: f64, tol: f64) -> Result<ThetaMax, LensError> {
    h_family(a0, q, delta, 0.0)?;
    if !(tol > 0.0) {
        return Err(LensError::domain("tol", tol));
    }
    let f = |th: f64| h_family(a0, q, delta, th).unwrap_or(f64::NEG_INFINITY);
    let m = maximize(&f, 0.0, FRAC_PI_2, 65, tol.min(1e-9));
    Ok(ThetaMax { theta: m.x, h: m.value })
}

/// Cusp angle giving a lens of perimeter `l` over a chord of length `delta`, if one exists.
pub fn equal_perimeter_theta(delta: f64, l: f64) -> Result<Option<f64>, LensError> {
    check_delta(delta)?;
    let g = |th: f64| 2.0 * raw_lune_length(delta, th) - l;
    Ok(bisect(&g, 0.0, FRAC_PI_2, 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn half_circle_lens() {
        assert!((lens_length(FRAC_PI_2, FRAC_PI_2).unwrap() - SQRT_2 * PI).abs() < 1e-12);
        let a = lens_area(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((a - (TAU - SQRT_2 * PI)).abs() < 1e-12);
        assert!((disk_area_from_perimeter(SQRT_2 * PI).unwrap() - a).abs() < 1e-12);
    }

    #[test]
    fn flat_lens() {
        for &d in &[0.1, 1.0, 2.5, 3.1] {
            assert!((lens_length(d, 0.0).unwrap() - 2.0 * d).abs() < 1e-14);
            assert_eq!(lens_area(d, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(lens_length(0.0, 0.1).is_err());
        assert!(lens_length(PI, 0.1).is_err());
        assert!(lens_area(1.0, 1.6).is_err());
        assert!(disk_area_from_perimeter(7.0).is_err());
        assert!(curvature_to_theta(FRAC_PI_2, 1.1).is_err());
        assert!(h_disk(2, 0, 1.0).is_err());
    }

    #[test]
    fn circle_params() {
        let c = theta_to_circle(0.8, 0.3).unwrap();
        assert!((lens_length(0.8, 0.3).unwrap() / 2.0 - c.phi * c.r.sin()).abs() < 1e-10);
        let c = theta_to_circle(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((c.k - 1.0).abs() < 1e-15);
        assert!((c.r - PI / 4.0).abs() < 1e-15);
        assert!((c.phi * c.r.sin() - SQRT_2 * PI / 2.0).abs() < 1e-12);
        let c = theta_to_circle(1.0, 0.0).unwrap();
        assert_eq!(c.k, 0.0);
        assert_eq!(c.r, FRAC_PI_2);
        assert_eq!(curvature_to_theta(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn curvature_round_trip_grid() {
        for i in 0..100 {
            let delta = 0.01 + (PI - 0.02) * i as f64 / 99.0;
            for j in 0..100 {
                let theta = (FRAC_PI_2 * j as f64 / 99.0).min(FRAC_PI_2);
                let k = theta_to_circle(delta, theta).unwrap().k;
                let back = curvature_to_theta(delta, k).unwrap();
                assert!((back - theta).abs() < 1e-12, "{delta} {theta} {back}");
            }
        }
    }

    #[test]
    fn family_values() {
        assert!((h_family(4.0 * PI, 3, FRAC_PI_2, 0.0).unwrap() - 4.0).abs() < 1e-12);
        let top = h_family(4.0 * PI, 3, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((top - (3.0 * SQRT_2 - 1.0)).abs() < 1e-12);
        let (d, th, q) = (1.3, 0.7, 5);
        let expect = (q - 2) as f64 * lens_area(d, th).unwrap() / lens_length(d, th).unwrap();
        assert!((h_family(0.0, q, d, th).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn disk_values() {
        assert_eq!(disk_area_from_perimeter(0.0).unwrap(), 0.0);
        assert_eq!(disk_area_from_perimeter(TAU).unwrap(), TAU);
        let star = 2.0 * (1.0f64 / 3.0).acos();
        assert!((star - 2.461_918_834_681_55).abs() < 1e-10);
        assert!(dh_disk(3, 0, star).unwrap().abs() < 1e-12);
        for i in 1..100 {
            assert!(dh_disk(4, 1, PI * i as f64 / 100.0).unwrap() > 0.0);
        }
    }

    #[test]
    fn theorem_three_point_maximum() {
        let m = max_h_theta(4.0 * PI, 3, FRAC_PI_2, 1e-10).unwrap();
        assert!(m.theta > 0.0 && m.theta < FRAC_PI_2);
        assert!(m.h > 4.0);
        // independent oracle: h(θ) = (π+θ)√(1+sin²θ)/atan(√(1+sin²θ)/cosθ) − sinθ
        let h = |th: f64| {
            let s = (1.0 + th.sin().powi(2)).sqrt();
            (PI + th) * s / s.atan2(th.cos()) - th.sin()
        };
        let n = 1_000_000;
        let grid = (0..=n).map(|i| h(FRAC_PI_2 * i as f64 / n as f64)).fold(f64::MIN, f64::max);
        assert!((grid - m.h).abs() < 1e-6);
        assert!((m.h - 4.034_159_790_535_564).abs() < 1e-9);
    }

    #[test]
    fn equal_perimeter_companion() {
        let l = lens_length(2.0, 0.4).unwrap();
        let th = equal_perimeter_theta(1.5, l).unwrap().unwrap();
        assert!((lens_length(1.5, th).unwrap() - l).abs() < 1e-10);
        assert!(equal_perimeter_theta(0.2, 6.0).unwrap().is_none());
    }
}
