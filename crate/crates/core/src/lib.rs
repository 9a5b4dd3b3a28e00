//! Lerch zeta / Lerch L-functions on the Heisenberg nilmanifold.
//!
//! The library evaluates the Lerch zeta function `zeta(s,a,c)`, the
//! symmetrized pair `L^{+-}(s,a,c)` and the character-twisted, level-N
//! Lerch L-functions `L^{+-}_{N,d}(chi,s,a,c,z)`, together with the
//! operator calculus that acts on functions over the compact quotient
//! `H(Z)\H(R)` of the real Heisenberg group:
//!
//! * two-variable Hecke operators `T_m` and their adjoints,
//! * the order-4 Heisenberg-Fourier operator `R`,
//! * twisted and additive Weil-Brezin (Zak) maps,
//! * the dilation action `V(t)` and the operator
//!   `Delta_L = (1/2 pi i) d_a d_c + N c d_c + N/2`,
//! * two-sided Mellin transforms and their spectral calculus.
//!
//! Everything is organized so that the identities relating these objects
//! (Hecke eigenproperties, functional equations, R-intertwining with the
//! additive Fourier transform, orthogonal decompositions) can be checked
//! numerically at desk scale; see the `verify` module and the `lerch`
//! binary.

pub mod arith;
pub mod characters;
pub mod defaults;
pub mod error;
pub mod functional_eq;
pub mod gamma;
pub mod gauss;
pub mod lerch;
pub mod line;
pub mod nil;
pub mod quad;
pub mod spectral;
pub mod verify;
pub mod weil_brezin;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// 2*pi as f64.
pub const TWO_PI: f64 = std::f64::consts::TAU;

/// exp(2*pi*i*x).
#[inline]
pub fn e2pi(x: f64) -> C64 {
    let (s, c) = (TWO_PI * x).sin_cos();
    C64::new(c, s)
}

/// x^w for real x > 0 and complex w, via exp(w ln x).
#[inline]
pub fn powc_real(x: f64, w: C64) -> C64 {
    let l = x.ln();
    let m = (w.re * l).exp();
    let (s, c) = (w.im * l).sin_cos();
    C64::new(m * c, m * s)
}
