//! Twisted and additive Weil-Brezin (Zak) maps between line functions and
//! nilmanifold functions, and the dilation action they transport.
//!
//! The twisted map at level N with a character chi mod d (d | |N|) is
//!
//! ```text
//! W_{N,d}(chi)(f)(a,c,z) = sqrt(|N|/phi(d)) e^{2 pi i N z}
//!                          sum_n chi(n d / N) f(n + N c) e^{2 pi i n a}
//! ```
//!
//! with chi(r) = 0 off the integers, so only n = 0 mod N/d contributes. The
//! additive map replaces the character by `psi_k(n) = e^{2 pi i k n / N}`
//! (no normalizing constant). Both extend to isometries onto their ranges;
//! the lattice sum is truncated from the decay descriptor so the dropped
//! tail stays below the requested tolerance.

use crate::arith::totient;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::line::LineFunction;
use crate::nil::{Backing, NilFunction};
use crate::quad::trapezoid_adaptive;
use crate::{e2pi, C64};

/// Twisted Weil-Brezin map `W_{N,d}(chi)(f)`.
pub fn wb_map(
    f: &LineFunction,
    n: i64,
    d: u64,
    chi: &DirichletCharacter,
    tol: f64,
) -> Result<NilFunction> {
    if n == 0 {
        return Err(Error::domain("central index must be nonzero"));
    }
    let n_abs = n.unsigned_abs();
    if d == 0 || n_abs % d != 0 {
        return Err(Error::domain(format!("d={d} must divide |N|={n_abs}")));
    }
    if chi.modulus() != d {
        return Err(Error::domain(format!(
            "character modulus {} differs from d={d}",
            chi.modulus()
        )));
    }
    // counting quantities use |N|; phases use the signed N
    let norm_const = (n_abs as f64 / totient(d)? as f64).sqrt();
    let stride = n / d as i64; // chi(n d / N) != 0 only for n = stride * j
    let radius = f.decay.truncation_radius(tol / 10.0);
    let chi = chi.clone();
    let chi_closure = chi.clone();
    let fe = f.clone();
    let nf = n as f64;
    let base = move |a: f64, c: f64| -> C64 {
        // window in x = n + N c of half-width `radius`
        let center = -nf * c;
        let j_lo = ((center - radius) / stride as f64).floor() as i64 - 1;
        let j_hi = ((center + radius) / stride as f64).ceil() as i64 + 1;
        let (j_lo, j_hi) = (j_lo.min(j_hi), j_lo.max(j_hi));
        let mut acc = C64::new(0.0, 0.0);
        for j in j_lo..=j_hi {
            let cv = chi_closure.value(j);
            if cv.norm() == 0.0 {
                continue;
            }
            let nn = stride * j;
            acc += cv * fe.eval(nn as f64 + nf * c) * e2pi(nn as f64 * a);
        }
        norm_const * acc
    };
    let out = NilFunction::from_evaluator_unchecked(
        n,
        base,
        format!("W[{n},{d}]({})", f.label),
    )?;
    Ok(out.with_backing(Backing::Multiplicative {
        f: f.clone(),
        d,
        chi,
        tol,
    }))
}

/// Additive Brezin map `W_N(psi_k)(f)` for N >= 1 and 0 <= k < N.
pub fn additive_brezin(f: &LineFunction, n: i64, k: u64, tol: f64) -> Result<NilFunction> {
    if n <= 0 {
        return Err(Error::domain("additive map needs a positive central index"));
    }
    if k >= n as u64 {
        return Err(Error::domain(format!("k={k} out of range 0..{n}")));
    }
    let radius = f.decay.truncation_radius(tol / 10.0);
    let fe = f.clone();
    let nf = n as f64;
    let kf = k as f64;
    let base = move |a: f64, c: f64| -> C64 {
        let center = -nf * c;
        let lo = (center - radius).floor() as i64 - 1;
        let hi = (center + radius).ceil() as i64 + 1;
        let mut acc = C64::new(0.0, 0.0);
        for m in lo..=hi {
            acc += e2pi(kf * m as f64 / nf) * fe.eval(m as f64 + nf * c) * e2pi(m as f64 * a);
        }
        acc
    };
    let out = NilFunction::from_evaluator_unchecked(
        n,
        base,
        format!("Wadd[{n},{k}]({})", f.label),
    )?;
    Ok(out.with_backing(Backing::Additive {
        f: f.clone(),
        k,
        tol,
    }))
}

/// Inverse Weil-Brezin map. Backed functions return their stored line
/// function; for unbacked functions only the classical case N = 1 is
/// available, via
///
/// ```text
/// f(x) = int_0^1 F(a, x - n, 0) e^{-2 pi i n a} da,   n < x < n + 1.
/// ```
pub fn wb_inverse(big_f: &NilFunction, tol: f64) -> Result<LineFunction> {
    match &big_f.backing {
        Some(Backing::Multiplicative { f, .. }) | Some(Backing::Additive { f, .. }) => {
            Ok(f.clone())
        }
        None => {
            if big_f.central_index() != 1 {
                return Err(Error::unsupported(
                    "inverse map without backing is only available at N = 1",
                ));
            }
            let g = big_f.clone();
            let nodes = 256usize;
            let eval = move |x: f64| -> C64 {
                let n = x.floor();
                let integrand = |a: f64| g.base(a, x - n) * e2pi(-n * a);
                trapezoid_adaptive(&integrand, 0.0, 1.0, nodes, tol, 8).value
            };
            // descriptor estimated from samples; constructor spot-checks it
            let mut peak = 1e-12f64;
            for i in 0..64 {
                let x = -4.0 + 8.0 * (i as f64) / 63.0;
                peak = peak.max(eval(x).norm() * (1.0 + x.abs()).powi(4));
            }
            LineFunction::new(
                eval,
                crate::line::Decay::SchwartzGeneric {
                    bound: 2.0 * peak,
                    order: 4.0,
                    radius: 0.0,
                },
                None,
                format!("Winv({})", big_f.label),
            )
        }
    }
}

/// Dilation `V(t) = W o U(t) o W^{-1}` on a backed nilmanifold function.
pub fn dilation_on_nil(big_f: &NilFunction, t: f64) -> Result<NilFunction> {
    if t == 0.0 {
        return Err(Error::domain("dilation parameter must be nonzero"));
    }
    match &big_f.backing {
        Some(Backing::Multiplicative { f, d, chi, tol }) => {
            wb_map(&f.dilate(t)?, big_f.central_index(), *d, chi, *tol)
        }
        Some(Backing::Additive { f, k, tol }) => {
            additive_brezin(&f.dilate(t)?, big_f.central_index(), *k, *tol)
        }
        None => Err(Error::unsupported(
            "dilation needs a Weil-Brezin backing; this function has none",
        )),
    }
}
