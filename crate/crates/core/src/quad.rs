//! Shared quadrature utilities: Gauss-Legendre nodes and panel integration
//! of smooth decaying integrands on `[0, inf)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::C64;

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let computed = compute_gauss_legendre(n);
    cache.lock().unwrap().insert(n, computed.clone());
    computed
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral of `f` over `[lo, hi]` by Gauss-Legendre of order `n`.
pub fn gl_panel(f: &dyn Fn(f64) -> C64, lo: f64, hi: f64, n: usize) -> C64 {
    let (xs, ws) = gauss_legendre(n);
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = C64::new(0.0, 0.0);
    for (&x, &w) in xs.iter().zip(ws.iter()) {
        acc += w * f(mid + half * x);
    }
    half * acc
}

/// Result of a panel integration with an error estimate.
pub struct PanelIntegral {
    pub value: C64,
    pub est_error: f64,
}

/// Integrate a smooth integrand over `[0, inf)` on geometrically growing
/// panels until a panel's contribution drops below `tol / 16`, with a
/// per-panel error estimate from embedded Gauss rules and a geometric bound
/// on the un-integrated tail.
///
/// `decay_rate` is a (lower bound on the) exponential decay rate of the
/// integrand, used only to bound the remaining tail.
pub fn integrate_half_line(
    f: &dyn Fn(f64) -> C64,
    decay_rate: f64,
    tol: f64,
    max_panels: usize,
) -> PanelIntegral {
    let mut value = C64::new(0.0, 0.0);
    let mut est = 0.0;
    let mut lo = 0.0f64;
    let mut len = 1.0f64;
    let mut last = f64::INFINITY;
    for _ in 0..max_panels {
        let hi = lo + len;
        let coarse = gl_panel(f, lo, hi, 24);
        let fine = gl_panel(f, lo, hi, 48);
        value += fine;
        est += (fine - coarse).norm();
        let mag = fine.norm();
        if mag < tol / 16.0 && last < tol / 16.0 {
            // bound the remaining tail by geometric decay
            let r = (-decay_rate * len).exp();
            let tail = if r < 1.0 { mag * r / (1.0 - r) } else { mag * 8.0 };
            est += tail;
            return PanelIntegral { value, est_error: est };
        }
        last = mag;
        lo = hi;
        len = (len * 2.0).min(16.0);
    }
    PanelIntegral {
        value,
        est_error: est + last,
    }
}

/// Adaptive trapezoid on `[lo, hi]`, doubling the node count until two
/// successive estimates differ by less than `tol`, starting from `n0`
/// intervals. Returns the value and the last difference as error estimate.
pub fn trapezoid_adaptive(
    f: &dyn Fn(f64) -> C64,
    lo: f64,
    hi: f64,
    n0: usize,
    tol: f64,
    max_doublings: usize,
) -> PanelIntegral {
    let mut n = n0.max(8);
    let h = (hi - lo) / n as f64;
    let mut acc = 0.5 * (f(lo) + f(hi));
    for i in 1..n {
        acc += f(lo + i as f64 * h);
    }
    let mut value = acc * h;
    let mut err = f64::INFINITY;
    for _ in 0..max_doublings {
        // refine: add midpoints
        let h = (hi - lo) / n as f64;
        let mut mids = C64::new(0.0, 0.0);
        for i in 0..n {
            mids += f(lo + (i as f64 + 0.5) * h);
        }
        let refined = 0.5 * value + 0.5 * h * mids;
        err = (refined - value).norm();
        value = refined;
        n *= 2;
        if err < tol {
            break;
        }
    }
    PanelIntegral {
        value,
        est_error: err,
    }
}
