//! Deterministic one-dimensional maximization and root bracketing.

use crate::tol::GOLDEN_MAX_ITER;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, x_tol: f64) -> Maximum {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a).abs() <= x_tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        Maximum { x: c, value: fc }
    } else {
        Maximum { x: d, value: fd }
    }
}

/// One parabolic step through `x - h, x, x + h`, kept inside `[lo, hi]` unless it is worse than
/// `best` by more than rounding. Near a flat maximum this locates the argmax far better than
/// comparing values.
fn parabolic_polish<F: Fn(f64) -> f64>(f: &F, best: Maximum, h: f64, lo: f64, hi: f64) -> Maximum {
    let (x0, x2) = (best.x - h, best.x + h);
    if x0 < lo || x2 > hi {
        return best;
    }
    let (f0, f1, f2) = (f(x0), best.value, f(x2));
    let curv = f0 - 2.0 * f1 + f2;
    if curv >= 0.0 {
        return best;
    }
    let x = best.x + 0.5 * h * (f0 - f2) / curv;
    if !(lo..=hi).contains(&x) {
        return best;
    }
    let v = f(x);
    if v >= best.value - 8.0 * f64::EPSILON * best.value.abs() {
        Maximum { x, value: v }
    } else {
        best
    }
}

/// Grid scan, golden section around the best grid cell, then a parabolic polish.
/// Endpoints are always candidates.
pub fn maximize<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, grid: usize, x_tol: f64) -> Maximum {
    let grid = grid.max(3);
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| if i == grid - 1 { hi } else { lo + step * i as f64 }).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut ibest = 0;
    for i in 1..grid {
        if vals[i] > vals[ibest] {
            ibest = i;
        }
    }
    let mut best = Maximum { x: xs[ibest], value: vals[ibest] };
    let a = xs[ibest.saturating_sub(1)];
    let b = xs[(ibest + 1).min(grid - 1)];
    let g = golden_section_max(f, a, b, x_tol);
    if g.value > best.value {
        best = g;
    }
    parabolic_polish(f, best, (x_tol * 10.0).max(1e-5 * (hi - lo)), lo, hi)
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, x_tol: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a) <= x_tol {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
