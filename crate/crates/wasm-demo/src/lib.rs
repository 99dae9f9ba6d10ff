use std::f64::consts::{FRAC_PI_2, PI};

use ahlfors_core::lens::{h_disk, h_family, max_h_theta};
use ahlfors_core::search::{compute_h0, SearchOptions};
use ahlfors_core::{Configuration, ExtendedComplex};
use wasm_bindgen::prelude::*;

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
}

/// `[θ0, h0, θ1, h1, ...]` over `[0, π/2]`, then the maximizer and its value.
#[wasm_bindgen]
pub fn theta_curve(a0: f64, q: usize, delta: f64, n: usize) -> Result<Vec<f64>, JsError> {
    theta_samples(a0, q, delta, n).map_err(|e| JsError::new(&e))
}

fn theta_samples(a0: f64, q: usize, delta: f64, n: usize) -> Result<Vec<f64>, String> {
    let mut out = Vec::with_capacity(2 * n + 2);
    for th in grid(0.0, FRAC_PI_2, n) {
        out.push(th);
        out.push(h_family(a0, q, delta, th).map_err(|e| e.to_string())?);
    }
    let m = max_h_theta(a0, q, delta, 1e-12).map_err(|e| e.to_string())?;
    out.push(m.theta);
    out.push(m.h);
    Ok(out)
}

/// `[δ0, h0, δ1, h1, ...]` for disks of diameter `δ` strictly inside `(0, π)`.
#[wasm_bindgen]
pub fn disk_curve(q: usize, nbar: usize, n: usize) -> Result<Vec<f64>, JsError> {
    disk_samples(q, nbar, n).map_err(|e| JsError::new(&e))
}

fn disk_samples(q: usize, nbar: usize, n: usize) -> Result<Vec<f64>, String> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let d = PI * (i + 1) as f64 / (n + 1) as f64;
        out.push(d);
        out.push(h_disk(q, nbar, d).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// Points come as `[re0, im0, re1, im1, ...]`; a non-finite `re` stands for ∞.
/// Returns `[H0, Q, L, A, k, n̄, upper bound, empty disk ratio, tuples]`.
#[wasm_bindgen]
pub fn h0_summary(coords: &[f64]) -> Result<Vec<f64>, JsError> {
    summary(coords).map_err(|e| JsError::new(&e))
}

fn summary(coords: &[f64]) -> Result<Vec<f64>, String> {
    if coords.len() % 2 != 0 {
        return Err("odd number of coordinates".into());
    }
    let zs: Vec<ExtendedComplex> = coords
        .chunks(2)
        .map(|c| if c[0].is_finite() { ExtendedComplex::finite(c[0], c[1]) } else { ExtendedComplex::Infinity })
        .collect();
    let config = Configuration::from_extended(&zs).map_err(|e| e.to_string())?;
    let r = compute_h0(&config, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let w = r.simplest_winner();
    Ok(vec![
        r.h0,
        w.qprime as f64,
        w.stats.length,
        w.stats.area,
        w.k,
        w.stats.nbar as f64,
        r.upper_bound,
        r.empty_disk.ratio,
        r.diagnostics.tuples_enumerated as f64,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_curve_starts_at_four() {
        let v = theta_samples(4.0 * PI, 3, FRAC_PI_2, 11).unwrap();
        assert_eq!(v.len(), 24);
        assert_eq!(v[0], 0.0);
        assert!((v[1] - 4.0).abs() < 1e-12);
        assert_eq!(v[20], FRAC_PI_2);
        assert!(v[23] >= v.iter().skip(1).step_by(2).take(11).cloned().fold(f64::MIN, f64::max));
    }

    #[test]
    fn disk_curve_stays_inside() {
        let v = disk_samples(3, 0, 99).unwrap();
        assert_eq!(v.len(), 198);
        assert!((v[98] - FRAC_PI_2).abs() < 1e-15);
        assert!(v[198 - 2] < PI);
        assert!(disk_samples(2, 0, 5).is_err());
    }

    #[test]
    fn h0_of_three_points() {
        let v = summary(&[0.0, 0.0, 1.0, 0.0, f64::INFINITY, 0.0]).unwrap();
        assert!((v[0] - 4.034_159_790_535_6).abs() < 1e-9);
        assert_eq!(v[1], 2.0);
        assert_eq!(v[8], 2.0);
        assert!(summary(&[0.0, 0.0, 1.0]).is_err());
        assert!(summary(&[0.0, 0.0, 1.0, 0.0]).is_err());
    }
}
