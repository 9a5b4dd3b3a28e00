//! Test functions on the real line with decay descriptors.
//!
//! A `LineFunction` is an evaluator `x -> C` together with a decay bound used
//! to choose truncation radii for lattice sums and Fourier quadrature, an
//! optional closed-form derivative, and an optional parity tag. The registry
//! provides the named families addressable from the CLI:
//! `gaussian:t` (exp(-pi t x^2)), `hermite1:t` (x exp(-pi t x^2), odd) and
//! `bump:w` (smooth, supported on [-w, w]).

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::defaults::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::quad::{trapezoid_adaptive, PanelIntegral};
use crate::{e2pi, C64, TWO_PI};

type EvalFn = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// Decay information: an upper bound on |f(x)| valid for |x| beyond `radius`.
#[derive(Debug, Clone, Copy)]
pub enum Decay {
    /// |f(x)| <= amp * exp(-pi width x^2) everywhere.
    Gaussian { width: f64, amp: f64 },
    /// |f(x)| <= bound * (1 + |x|)^(-order) for |x| >= radius.
    SchwartzGeneric { bound: f64, order: f64, radius: f64 },
}

impl Decay {
    /// Radius R such that the lattice-sum tail over |x| >= R is below eps.
    pub fn truncation_radius(&self, eps: f64) -> f64 {
        match *self {
            Decay::Gaussian { width, amp } => {
                let r = ((amp.max(1e-300) / eps).ln().max(1.0) / (PI * width)).sqrt();
                r + 1.0
            }
            Decay::SchwartzGeneric { bound, order, radius } => {
                // sum_{u >= R} bound (1+u)^{-p} <= bound (1+R)^{1-p} / (p-1)
                let p = order;
                let r = (2.0 * bound / ((p - 1.0) * eps)).powf(1.0 / (p - 1.0)) - 1.0;
                radius.max(r).max(1.0) + 1.0
            }
        }
    }

    /// Pointwise bound at |x| = r (for r beyond the stated radius).
    pub fn bound_at(&self, r: f64) -> f64 {
        match *self {
            Decay::Gaussian { width, amp } => amp * (-PI * width * r * r).exp(),
            Decay::SchwartzGeneric { bound, order, .. } => bound * (1.0 + r).powf(-order),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A test function on the real line.
#[derive(Clone)]
pub struct LineFunction {
    eval: EvalFn,
    derivative: Option<EvalFn>,
    pub decay: Decay,
    pub parity: Option<Parity>,
    pub label: String,
}

impl std::fmt::Debug for LineFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LineFunction({}, {:?})", self.label, self.decay)
    }
}

impl LineFunction {
    /// Construct with a decay spot-check: |f| is sampled at points beyond the
    /// stated radius and must respect the declared bound.
    pub fn new(
        eval: impl Fn(f64) -> C64 + Send + Sync + 'static,
        decay: Decay,
        parity: Option<Parity>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let f = LineFunction {
            eval: Arc::new(eval),
            derivative: None,
            decay,
            parity,
            label: label.into(),
        };
        f.spot_check()?;
        Ok(f)
    }

    pub fn with_derivative(
        mut self,
        derivative: impl Fn(f64) -> C64 + Send + Sync + 'static,
    ) -> Self {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    fn from_parts(
        eval: EvalFn,
        derivative: Option<EvalFn>,
        decay: Decay,
        parity: Option<Parity>,
        label: String,
    ) -> Self {
        LineFunction {
            eval,
            derivative,
            decay,
            parity,
            label,
        }
    }

    fn spot_check(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x11);
        let r0 = match self.decay {
            Decay::Gaussian { .. } => 0.0,
            Decay::SchwartzGeneric { radius, .. } => radius,
        };
        for _ in 0..32 {
            let x = r0 + rng.gen::<f64>() * (r0 + 10.0);
            for sgn in [-1.0, 1.0] {
                let v = (self.eval)(sgn * x).norm();
                let b = self.decay.bound_at(x);
                if v > b * (1.0 + 1e-9) + 1e-300 {
                    return Err(Error::domain(format!(
                        "decay bound violated at x={:.4}: |f|={:.3e} > {:.3e}",
                        sgn * x,
                        v,
                        b
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn eval(&self, x: f64) -> C64 {
        (self.eval)(x)
    }

    pub fn derivative(&self) -> Option<&EvalFn> {
        self.derivative.as_ref()
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// Pointwise linear combination `alpha f + beta g` (decay bounds add).
    pub fn linear_combination(alpha: C64, f: &LineFunction, beta: C64, g: &LineFunction) -> Self {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let decay = combine_decay(&f.decay, alpha.norm(), &g.decay, beta.norm());
        let deriv = match (&f.derivative, &g.derivative) {
            (Some(df), Some(dg)) => {
                let (df, dg) = (df.clone(), dg.clone());
                Some(Arc::new(move |x: f64| alpha * df(x) + beta * dg(x)) as EvalFn)
            }
            _ => None,
        };
        LineFunction::from_parts(
            Arc::new(move |x| alpha * fe(x) + beta * ge(x)),
            deriv,
            decay,
            None,
            format!("lin({},{})", f.label, g.label),
        )
    }

    /// Unitary dilation `U(t) f (x) = |t|^{1/2} f(t x)`, t != 0.
    pub fn dilate(&self, t: f64) -> Result<LineFunction> {
        if t == 0.0 {
            return Err(Error::domain("dilation parameter must be nonzero"));
        }
        let amp_scale = t.abs().sqrt();
        let decay = match self.decay {
            Decay::Gaussian { width, amp } => Decay::Gaussian {
                width: width * t * t,
                amp: amp * amp_scale,
            },
            Decay::SchwartzGeneric { bound, order, radius } => Decay::SchwartzGeneric {
                bound: bound * amp_scale * (1.0 + 1.0 / t.abs()).powf(order),
                order,
                radius: radius / t.abs(),
            },
        };
        let e = self.eval.clone();
        let deriv = self.derivative.as_ref().map(|d| {
            let d = d.clone();
            Arc::new(move |x: f64| amp_scale * t * d(t * x)) as EvalFn
        });
        let parity = self.parity;
        Ok(LineFunction::from_parts(
            Arc::new(move |x| amp_scale * e(t * x)),
            deriv,
            decay,
            parity,
            format!("U({t})({})", self.label),
        ))
    }

    /// Schroedinger representation with central parameter lambda:
    /// `x -> e^{2 pi i a x} f(x + lambda c) e^{2 pi i lambda z}`.
    pub fn schrodinger_act(&self, lambda: f64, h: [f64; 3]) -> Result<LineFunction> {
        if lambda == 0.0 {
            return Err(Error::domain("schrodinger action needs lambda != 0"));
        }
        let [a, c, z] = h;
        let shift = lambda * c;
        let phase0 = e2pi(lambda * z);
        let e = self.eval.clone();
        let decay = shift_decay(&self.decay, shift);
        Ok(LineFunction::from_parts(
            Arc::new(move |x| e2pi(a * x) * e(x + shift) * phase0),
            None,
            decay,
            None,
            format!("rho[{a},{c},{z}]({})", self.label),
        ))
    }

    /// L2 inner product `<f, g> = int f conj(g)` by adaptive trapezoid.
    pub fn inner_product(&self, other: &LineFunction, tol: f64) -> C64 {
        let r = self
            .decay
            .truncation_radius(tol / 8.0)
            .max(other.decay.truncation_radius(tol / 8.0));
        let fe = &self.eval;
        let ge = &other.eval;
        let integrand = move |x: f64| fe(x) * ge(x).conj();
        trapezoid_adaptive(&integrand, -r, r, 128, tol, 16).value
    }

    pub fn norm(&self, tol: f64) -> f64 {
        self.inner_product(self, tol).re.max(0.0).sqrt()
    }

    /// Additive Fourier transform at a point:
    /// `F f (y) = int f(x) e^{-2 pi i x y} dx`
    /// by adaptive trapezoid over the decay-truncated support.
    pub fn fourier_eval(&self, y: f64, tol: f64) -> PanelIntegral {
        let r = self.decay.truncation_radius(tol / 16.0);
        let e = &self.eval;
        let integrand = move |x: f64| e(x) * e2pi(-x * y);
        // resolve the oscillation e^{-2 pi i x y}
        let n0 = (64.0_f64).max(8.0 * r * (1.0 + y.abs())).min(16384.0) as usize;
        let mut out = trapezoid_adaptive(&integrand, -r, r, n0, tol / 4.0, 14);
        out.est_error += 2.0 * r * self.decay.bound_at(r);
        out
    }

    /// The Fourier transform as a new line function (quadrature-backed, with
    /// the decay descriptor transformed analytically for the Gaussian class).
    pub fn fourier(&self, tol: f64) -> LineFunction {
        let decay = match self.decay {
            Decay::Gaussian { width, amp } => Decay::Gaussian {
                width: 1.0 / width,
                amp: amp / width.sqrt() * 1.0000001,
            },
            // The transform of a Schwartz-class function is Schwartz; a
            // conservative polynomial bound is estimated from the L1 mass.
            Decay::SchwartzGeneric { bound, order, radius } => Decay::SchwartzGeneric {
                bound: (2.0 * bound * (1.0 + radius)) * 4.0,
                order: (order - 2.0).max(2.0),
                radius: 1.0,
            },
        };
        let this = self.clone();
        let parity = self.parity;
        LineFunction::from_parts(
            Arc::new(move |y| this.fourier_eval(y, tol).value),
            None,
            decay,
            parity,
            format!("F({})", self.label),
        )
    }

    /// Zero function with Gaussian descriptor.
    pub fn zero() -> LineFunction {
        LineFunction::from_parts(
            Arc::new(|_| C64::new(0.0, 0.0)),
            Some(Arc::new(|_| C64::new(0.0, 0.0))),
            Decay::Gaussian { width: 1.0, amp: 0.0 },
            Some(Parity::Even),
            "zero".into(),
        )
    }

    /// Scale by a complex constant.
    pub fn scale(&self, alpha: C64) -> LineFunction {
        let e = self.eval.clone();
        let deriv = self.derivative.as_ref().map(|d| {
            let d = d.clone();
            Arc::new(move |x: f64| alpha * d(x)) as EvalFn
        });
        let decay = match self.decay {
            Decay::Gaussian { width, amp } => Decay::Gaussian {
                width,
                amp: amp * alpha.norm(),
            },
            Decay::SchwartzGeneric { bound, order, radius } => Decay::SchwartzGeneric {
                bound: bound * alpha.norm(),
                order,
                radius,
            },
        };
        LineFunction::from_parts(
            Arc::new(move |x| alpha * e(x)),
            deriv,
            decay,
            self.parity,
            format!("{}*({})", alpha, self.label),
        )
    }
}

fn combine_decay(a: &Decay, wa: f64, b: &Decay, wb: f64) -> Decay {
    match (a, b) {
        (
            Decay::Gaussian { width: w1, amp: a1 },
            Decay::Gaussian { width: w2, amp: a2 },
        ) => Decay::Gaussian {
            width: w1.min(*w2),
            amp: wa * a1 + wb * a2,
        },
        _ => Decay::SchwartzGeneric {
            bound: wa * a.bound_at(0.0).max(1.0) + wb * b.bound_at(0.0).max(1.0),
            order: 4.0,
            radius: 1.0,
        },
    }
}

fn shift_decay(d: &Decay, shift: f64) -> Decay {
    match *d {
        Decay::Gaussian { width, amp } => {
            // |f(x+s)| <= amp e^{-pi w (x+s)^2}; bound by a wider Gaussian
            // centered at 0: e^{-pi w (x+s)^2} <= e^{pi w s^2} e^{-pi (w/2) x^2}
            // for all x (since (x+s)^2 >= x^2/2 - s^2).
            Decay::Gaussian {
                width: width / 2.0,
                amp: amp * (PI * width * shift * shift).exp(),
            }
        }
        Decay::SchwartzGeneric { bound, order, radius } => Decay::SchwartzGeneric {
            bound,
            order,
            radius: radius + shift.abs(),
        },
    }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// `exp(-pi t x^2)`.
pub fn gaussian(t: f64) -> Result<LineFunction> {
    if t <= 0.0 {
        return Err(Error::domain("gaussian width must be positive"));
    }
    let f = LineFunction::new(
        move |x| C64::new((-PI * t * x * x).exp(), 0.0),
        Decay::Gaussian { width: t, amp: 1.0 },
        Some(Parity::Even),
        format!("gaussian:{t}"),
    )?;
    Ok(f.with_derivative(move |x| C64::new(-TWO_PI * t * x * (-PI * t * x * x).exp(), 0.0)))
}

/// `x exp(-pi t x^2)` (odd).
pub fn hermite1(t: f64) -> Result<LineFunction> {
    if t <= 0.0 {
        return Err(Error::domain("hermite1 width must be positive"));
    }
    // |x| e^{-pi t x^2} <= A e^{-pi (t/2) x^2} with A = sup |x| e^{-pi t x^2 / 2}
    let amp = 1.0 / (PI * t * std::f64::consts::E).sqrt();
    let f = LineFunction::new(
        move |x| C64::new(x * (-PI * t * x * x).exp(), 0.0),
        Decay::Gaussian { width: t / 2.0, amp },
        Some(Parity::Odd),
        format!("hermite1:{t}"),
    )?;
    Ok(f.with_derivative(move |x| {
        C64::new((1.0 - TWO_PI * t * x * x) * (-PI * t * x * x).exp(), 0.0)
    }))
}

/// Smooth bump `exp(1 - 1/(1 - (x/w)^2))` supported on (-w, w).
pub fn bump(w: f64) -> Result<LineFunction> {
    if w <= 0.0 {
        return Err(Error::domain("bump radius must be positive"));
    }
    let val = move |x: f64| -> f64 {
        let u = x / w;
        if u.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - u * u)).exp()
        }
    };
    let f = LineFunction::new(
        move |x| C64::new(val(x), 0.0),
        Decay::SchwartzGeneric {
            bound: 1.0,
            order: 16.0,
            radius: w,
        },
        Some(Parity::Even),
        format!("bump:{w}"),
    )?;
    Ok(f.with_derivative(move |x| {
        let u = x / w;
        if u.abs() >= 1.0 {
            C64::new(0.0, 0.0)
        } else {
            let g = 1.0 - u * u;
            C64::new(val(x) * (-2.0 * u / (w * g * g)), 0.0)
        }
    }))
}

/// Look up a registry profile like `gaussian:1`, `hermite1:0.5`, `bump:2`.
pub fn registry(profile: &str) -> Result<LineFunction> {
    let (name, param) = profile
        .split_once(':')
        .ok_or_else(|| Error::domain(format!("profile '{profile}' is not name:param")))?;
    let p: f64 = param
        .parse()
        .map_err(|_| Error::domain(format!("bad profile parameter '{param}'")))?;
    match name {
        "gaussian" => gaussian(p),
        "hermite1" => hermite1(p),
        "bump" => bump(p),
        _ => Err(Error::domain(format!("unknown test function '{name}'"))),
    }
}
