//! Two-sided Mellin transforms, spectral synthesis on the critical line,
//! the dilation-invariant line operator `D = x d/dx + 1/2`, and the
//! nilmanifold operator
//!
//! ```text
//! Delta_L = (1/2 pi i) d_a d_c + N c d_c + N/2,
//! ```
//!
//! which is carried to D by the twisted Weil-Brezin maps.
//!
//! The transforms are
//!
//! ```text
//! M_k(f)(s) = int_R f(x) sgn(x)^k |x|^s dx/|x|,   k = 0, 1,
//! ```
//!
//! computed in logarithmic coordinates. On the critical line s = 1/2 + i tau
//! the pair (M_0, M_1) is an isometry onto L^2 of two copies of R with the
//! measure `d tau / (4 pi)`, which is the constant under which the inversion
//! formula below round-trips; the alternative constant `2 sqrt(2) pi` is kept
//! around for comparison in the verification reports.

use std::f64::consts::PI;

use crate::defaults::{MELLIN_MEASURE, TAU_MAX, TAU_STEP};
use crate::error::{Error, Result};
use crate::lerch::EvalResult;
use crate::line::{Decay, LineFunction};
use crate::nil::{Backing, NilFunction};
use crate::quad::trapezoid_adaptive;
use crate::weil_brezin::wb_map;
use crate::{powc_real, C64};

/// Samples of the two Mellin families on the critical line.
#[derive(Debug, Clone)]
pub struct SpectralSample {
    /// Entries (k, tau, M_k(f)(1/2 + i tau)), sorted by (k, tau).
    pub entries: Vec<(u8, f64, C64)>,
    /// The measure constant recorded with the samples: integrals against
    /// `d tau / measure_constant`.
    pub measure_constant: f64,
}

impl SpectralSample {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,tau,re,im\n");
        for (k, tau, v) in &self.entries {
            out.push_str(&format!("{k},{tau},{:.12e},{:.12e}\n", v.re, v.im));
        }
        out
    }
}

/// Two-sided Mellin transform `M_k(f)(s)`.
///
/// In logarithmic coordinates `x = e^u` the two half-lines combine into
/// `int_R [f(e^u) + (-1)^k f(-e^u)] e^{s u} du`, truncated where the decay
/// descriptor (right) and the factor `e^{Re(s) u}` (left) make the integrand
/// negligible. `Re(s) <= 0` with `f(0) != 0` diverges at the origin.
pub fn mellin(f: &LineFunction, k: u8, s: C64, tol: f64) -> Result<EvalResult> {
    if k > 1 {
        return Err(Error::domain("parity index k must be 0 or 1"));
    }
    let combined0 = f.eval(0.0) + if k == 0 { f.eval(0.0) } else { -f.eval(0.0) };
    if s.re <= 0.0 && combined0.norm() > 1e-14 {
        return Err(Error::Convergence(
            "Mellin integral diverges at 0 for Re(s) <= 0 with f(0) != 0".into(),
        ));
    }
    let r = f.decay.truncation_radius(tol / 10.0).max(2.0);
    let u_hi = r.ln() + 1.0;
    let u_lo = if s.re > 0.0 {
        // |integrand| <= 2 max|f| e^{sigma u}
        (tol / 10.0).ln() / s.re - 2.0
    } else {
        -40.0
    };
    let sgn = if k == 0 { 1.0 } else { -1.0 };
    let fe = f.clone();
    let integrand = move |u: f64| -> C64 {
        let x = u.exp();
        let val = fe.eval(x) + sgn * fe.eval(-x);
        val * powc_real(x, s)
    };
    let n0 = (((u_hi - u_lo) * 6.0 * (1.0 + s.im.abs() / 4.0)) as usize).max(64);
    let out = trapezoid_adaptive(&integrand, u_lo, u_hi, n0, tol / 4.0, 12);
    Ok(EvalResult {
        value: out.value,
        est_error: out.est_error + tol / 10.0,
        pole_flag: false,
    })
}

/// Sample both Mellin families on a symmetric tau grid.
pub fn mellin_table(f: &LineFunction, tau_max: f64, tau_step: f64, tol: f64) -> Result<SpectralSample> {
    let mut entries = Vec::new();
    let steps = (tau_max / tau_step).round() as i64;
    for k in 0..=1u8 {
        for i in -steps..=steps {
            let tau = i as f64 * tau_step;
            let v = mellin(f, k, C64::new(0.5, tau), tol)?;
            entries.push((k, tau, v.value));
        }
    }
    Ok(SpectralSample {
        entries,
        measure_constant: MELLIN_MEASURE,
    })
}

/// Default-grid Mellin table.
pub fn mellin_table_default(f: &LineFunction, tol: f64) -> Result<SpectralSample> {
    mellin_table(f, TAU_MAX, TAU_STEP, tol)
}

/// Spectral synthesis (inverse Mellin transform on the critical line):
///
/// ```text
/// f(x) = int M_0(f)(1/2+i tau) |x|^{-1/2-i tau} d tau / C
///      + int M_1(f)(1/2+i tau) sgn(x) |x|^{-1/2-i tau} d tau / C
/// ```
///
/// evaluated by the trapezoid rule over the recorded grid, with C the
/// sample's measure constant.
pub fn spectral_synthesis(samples: &SpectralSample, x: f64) -> C64 {
    spectral_synthesis_with_measure(samples, x, samples.measure_constant)
}

/// Synthesis against an explicit measure constant (used to compare the
/// self-consistent constant with the alternative one).
pub fn spectral_synthesis_with_measure(samples: &SpectralSample, x: f64, measure: f64) -> C64 {
    let ax = x.abs();
    if ax == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let mut acc = C64::new(0.0, 0.0);
    // trapezoid in tau per parity family; entries are sorted by (k, tau)
    for k in 0..=1u8 {
        let fam: Vec<&(u8, f64, C64)> = samples.entries.iter().filter(|e| e.0 == k).collect();
        if fam.len() < 2 {
            continue;
        }
        let sgn = if k == 1 && x < 0.0 { -1.0 } else { 1.0 };
        let mut fam_acc = C64::new(0.0, 0.0);
        for w in fam.windows(2) {
            let (_, t0, v0) = *w[0];
            let (_, t1, v1) = *w[1];
            let h = t1 - t0;
            let g0 = v0 * powc_real(ax, C64::new(-0.5, -t0));
            let g1 = v1 * powc_real(ax, C64::new(-0.5, -t1));
            fam_acc += 0.5 * h * (g0 + g1);
        }
        acc += sgn * fam_acc;
    }
    acc / measure
}

/// `D f = x f'(x) + f(x)/2`; requires a closed-form derivative.
pub fn line_d_apply(f: &LineFunction) -> Result<LineFunction> {
    let df = f
        .derivative()
        .ok_or_else(|| Error::unsupported("line operator D needs a derivative"))?
        .clone();
    let fe = f.clone();
    let decay = match f.decay {
        // |x f' + f/2| for the Gaussian class stays Gaussian with halved
        // width and a computable amplitude bump.
        Decay::Gaussian { width, amp } => Decay::Gaussian {
            width: width / 2.0,
            amp: 3.0 * amp * (1.0 + 1.0 / width),
        },
        Decay::SchwartzGeneric { bound, order, radius } => Decay::SchwartzGeneric {
            bound: 16.0 * bound * (1.0 + radius),
            order: (order - 1.0).max(2.0),
            radius,
        },
    };
    let parity = f.parity;
    LineFunction::new(
        move |x| x * df(x) + 0.5 * fe.eval(x),
        decay,
        parity,
        format!("D({})", f.label),
    )
}

/// How to apply `Delta_L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaMode {
    /// Through the backing: `Delta_L W(f) = W(x f' + f/2)`.
    Exact,
    /// Central finite differences on the nilmanifold evaluator: a 4-point
    /// cross for d_a d_c and 2-point central for d_c.
    Fd { h: f64 },
}

/// Apply `Delta_L = (1/2 pi i) d_a d_c + N c d_c + N/2` to F.
///
/// In `Fd` mode, evaluation within 2h of a known singular lattice line of F
/// returns NaN as a flag.
pub fn delta_l_apply(big_f: &NilFunction, mode: DeltaMode) -> Result<NilFunction> {
    match mode {
        DeltaMode::Exact => {
            let Some(Backing::Multiplicative { f, d, chi, tol }) = &big_f.backing else {
                return Err(Error::unsupported(
                    "exact Delta_L needs a multiplicative Weil-Brezin backing",
                ));
            };
            let df = line_d_apply(f)?;
            wb_map(&df, big_f.central_index(), *d, chi, *tol)
        }
        DeltaMode::Fd { h } => {
            if h <= 0.0 {
                return Err(Error::domain("finite-difference step must be positive"));
            }
            let g = big_f.clone();
            let n = big_f.central_index() as f64;
            let spacing = big_f.singular_spacing;
            let base = move |a: f64, c: f64| -> C64 {
                if let Some(sp) = spacing {
                    let da = (a / sp - (a / sp).round()).abs() * sp;
                    let dc = (c / sp - (c / sp).round()).abs() * sp;
                    if da < 2.0 * h || dc < 2.0 * h {
                        return C64::new(f64::NAN, f64::NAN);
                    }
                }
                let mixed = (g.base(a + h, c + h) - g.base(a + h, c - h)
                    - g.base(a - h, c + h)
                    + g.base(a - h, c - h))
                    / (4.0 * h * h);
                let dc = (g.base(a, c + h) - g.base(a, c - h)) / (2.0 * h);
                mixed / C64::new(0.0, 2.0 * PI) + n * c * dc + 0.5 * n * g.base(a, c)
            };
            big_f.compose(base, format!("DeltaL_fd({})", big_f.label))
        }
    }
}

/// Parseval defect: `| ||f||^2 - sum_k int |M_k|^2 d tau / C |`.
pub fn parseval_defect(f: &LineFunction, samples: &SpectralSample, measure: f64) -> f64 {
    let lhs = f.inner_product(f, 1e-12).re;
    let mut rhs = 0.0;
    for k in 0..=1u8 {
        let fam: Vec<&(u8, f64, C64)> = samples.entries.iter().filter(|e| e.0 == k).collect();
        for w in fam.windows(2) {
            let (_, t0, v0) = *w[0];
            let (_, t1, v1) = *w[1];
            rhs += 0.5 * (t1 - t0) * (v0.norm_sqr() + v1.norm_sqr());
        }
    }
    (lhs - rhs / measure).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::DirichletCharacter;
    use crate::defaults::MELLIN_MEASURE_ALT;
    use crate::gamma::complex_gamma;
    use crate::line::{gaussian, hermite1};

    #[test]
    fn mellin_gaussian_matches_gamma() {
        let f = gaussian(1.0).unwrap();
        for &s in &[C64::new(0.5, 0.0), C64::new(0.5, 2.0), C64::new(1.2, -0.7)] {
            let got = mellin(&f, 0, s, 1e-10).unwrap().value;
            let want = powc_real(PI, -s / 2.0) * complex_gamma(s / 2.0);
            assert!((got - want).norm() < 1e-8, "s={s}");
        }
        // odd family on the odd test function
        let g = hermite1(1.0).unwrap();
        let s = C64::new(0.5, 2.0);
        let got = mellin(&g, 1, s, 1e-10).unwrap().value;
        let want = powc_real(PI, -(s + 1.0) / 2.0) * complex_gamma((s + 1.0) / 2.0);
        assert!((got - want).norm() < 1e-8);
    }

    #[test]
    fn mellin_parity_vanishing() {
        let f = gaussian(1.0).unwrap();
        let v = mellin(&f, 1, C64::new(0.5, 1.0), 1e-10).unwrap().value;
        assert!(v.norm() < 1e-10);
        let g = hermite1(1.0).unwrap();
        let v = mellin(&g, 0, C64::new(0.5, 1.0), 1e-10).unwrap().value;
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn mellin_divergence_flag() {
        let f = gaussian(1.0).unwrap();
        assert!(mellin(&f, 0, C64::new(-0.5, 0.0), 1e-10).is_err());
        // odd combination kills f(0): no divergence
        assert!(mellin(&f, 1, C64::new(-0.5, 0.0), 1e-10).is_ok());
    }

    #[test]
    fn synthesis_round_trip() {
        let f = gaussian(1.0).unwrap();
        let table = mellin_table(&f, 40.0, 0.05, 1e-9).unwrap();
        for &x in &[0.7, -1.1, 0.3] {
            let got = spectral_synthesis(&table, x);
            let want = f.eval(x);
            assert!((got - want).norm() < 1e-4, "x={x}: {got} vs {want}");
        }
        // the alternative measure constant does not round-trip
        let off = spectral_synthesis_with_measure(&table, 0.7, MELLIN_MEASURE_ALT);
        assert!((off - f.eval(0.7)).norm() > 1e-2);
        // linearity and zero
        let zero = SpectralSample {
            entries: table.entries.iter().map(|&(k, t, _)| (k, t, C64::new(0.0, 0.0))).collect(),
            measure_constant: MELLIN_MEASURE,
        };
        assert!(spectral_synthesis(&zero, 0.7).norm() == 0.0);
    }

    #[test]
    fn parseval_holds_with_four_pi() {
        let f = gaussian(1.0).unwrap();
        let table = mellin_table(&f, 40.0, 0.05, 1e-9).unwrap();
        assert!(parseval_defect(&f, &table, MELLIN_MEASURE) < 1e-4);
        assert!(parseval_defect(&f, &table, MELLIN_MEASURE_ALT) > 1e-2);
    }

    #[test]
    fn d_operator_closed_form_and_skewness() {
        let f = gaussian(1.0).unwrap();
        let df = line_d_apply(&f).unwrap();
        for &x in &[0.0, 0.4, -1.3] {
            let want = (0.5 - 2.0 * PI * x * x) * (-PI * x * x).exp();
            assert!((df.eval(x) - want).norm() < 1e-13);
        }
        // <Df, g> + <f, Dg> = 0
        let g = gaussian(2.0).unwrap();
        let dg = line_d_apply(&g).unwrap();
        let lhs = df.inner_product(&g, 1e-12) + f.inner_product(&dg, 1e-12);
        assert!(lhs.norm() < 1e-8);
    }

    #[test]
    fn d_multiplier_is_minus_i_tau() {
        let f = gaussian(1.0).unwrap();
        let df = line_d_apply(&f).unwrap();
        for &tau in &[0.0, 1.0, 3.5] {
            let s = C64::new(0.5, tau);
            let lhs = mellin(&df, 0, s, 1e-10).unwrap().value;
            let rhs = C64::new(0.0, -tau) * mellin(&f, 0, s, 1e-10).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-6, "tau={tau}");
        }
        let g = hermite1(1.0).unwrap();
        let dg = line_d_apply(&g).unwrap();
        for &tau in &[1.0, 3.5] {
            let s = C64::new(0.5, tau);
            let lhs = mellin(&dg, 1, s, 1e-10).unwrap().value;
            let rhs = C64::new(0.0, -tau) * mellin(&g, 1, s, 1e-10).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-6, "tau={tau}");
        }
    }

    #[test]
    fn delta_l_exact_vs_fd() {
        let f = gaussian(1.0).unwrap();
        let chi = DirichletCharacter::principal(1).unwrap();
        let w = wb_map(&f, 1, 1, &chi, 1e-13).unwrap();
        let exact = delta_l_apply(&w, DeltaMode::Exact).unwrap();
        let h = 1e-3;
        let fd = delta_l_apply(&w, DeltaMode::Fd { h }).unwrap();
        let fd2 = delta_l_apply(&w, DeltaMode::Fd { h: h / 2.0 }).unwrap();
        let mut worst = 0.0f64;
        let mut worst2 = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let (a, c) = (0.11 + 0.2 * i as f64, 0.13 + 0.19 * j as f64);
                let e = exact.base(a, c);
                worst = worst.max((fd.base(a, c) - e).norm());
                worst2 = worst2.max((fd2.base(a, c) - e).norm());
            }
        }
        assert!(worst < 1e-4, "fd error {worst}");
        // O(h^2) convergence: ratio in [3.5, 4.5]
        let ratio = worst / worst2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn delta_l_commutes_with_dilation() {
        let f = gaussian(1.0).unwrap();
        let chi = DirichletCharacter::principal(1).unwrap();
        let w = wb_map(&f, 1, 1, &chi, 1e-13).unwrap();
        let t = 1.4;
        let lhs = delta_l_apply(
            &crate::weil_brezin::dilation_on_nil(&w, t).unwrap(),
            DeltaMode::Exact,
        )
        .unwrap();
        let rhs = crate::weil_brezin::dilation_on_nil(
            &delta_l_apply(&w, DeltaMode::Exact).unwrap(),
            t,
        )
        .unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (a, c) = (0.11 + 0.2 * i as f64, 0.13 + 0.19 * j as f64);
                assert!((lhs.base(a, c) - rhs.base(a, c)).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn fd_flags_near_singular_lines() {
        let f = gaussian(1.0).unwrap();
        let chi = DirichletCharacter::principal(1).unwrap();
        let w = wb_map(&f, 1, 1, &chi, 1e-13)
            .unwrap()
            .with_singular_spacing(1.0);
        let fd = delta_l_apply(&w, DeltaMode::Fd { h: 1e-3 }).unwrap();
        assert!(fd.base(1e-5, 0.4).re.is_nan());
        assert!(!fd.base(0.3, 0.4).re.is_nan());
    }
}
