//! Gauss sums `G(m, chi|_d)` of primitive and imprimitive Dirichlet
//! characters, by brute force and in closed form, and the coefficients
//! `C_{N,d}(d~, chi)` entering the R-operator intertwining and the
//! functional equations.
//!
//! The brute-force sum is the binding definition; the closed form follows
//! Hasse's evaluation for imprimitive characters and is cross-checked against
//! brute force in debug builds.

use num_rational::Ratio;

use crate::arith::{gcd, moebius, totient};
use crate::characters::{phase_to_complex, DirichletCharacter};
use crate::error::{Error, Result};
use crate::C64;

/// Which evaluation produced a Gauss sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussFormulaPath {
    BruteForce,
    /// Vanishing case of the closed form: conductor does not divide d'.
    ClosedFormCaseI,
    /// Nonvanishing case of the closed form.
    ClosedFormCaseII,
}

#[derive(Debug, Clone, Copy)]
pub struct GaussSumResult {
    pub value: C64,
    pub vanishes: bool,
    pub formula_path: GaussFormulaPath,
}

/// `G(m, chi|_d) = sum_{k mod d} chi(k) e(km/d)` as an exact sum of roots of
/// unity.
pub fn gauss_sum_bruteforce(chi: &DirichletCharacter, m: i64) -> GaussSumResult {
    let d = chi.modulus() as i64;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..d {
        if let Some(p) = chi.phase(k) {
            acc += phase_to_complex(p + Ratio::new(k * m.rem_euclid(d), d));
        }
    }
    GaussSumResult {
        value: acc,
        vanishes: acc.norm() < 1e-12 * d as f64,
        formula_path: GaussFormulaPath::BruteForce,
    }
}

/// The standard Gauss sum `tau(chi) = G(1, chi)` of a primitive character.
pub fn tau(chi_star: &DirichletCharacter) -> C64 {
    gauss_sum_bruteforce(chi_star, 1).value
}

/// Closed form for `G(m, chi|_d)` where `chi_star` is primitive mod e and
/// e | d. With m' = m/(m,d) and d' = d/(m,d):
///
/// * if e does not divide d', the sum vanishes;
/// * otherwise it equals
///   `(phi(d)/phi(d')) mu(d'/e) chi(d'/e) conj(chi)(m') tau(chi)`.
///
/// In debug builds the result is compared against the brute-force sum.
pub fn gauss_sum_closed(
    chi_star: &DirichletCharacter,
    d: u64,
    m: i64,
) -> Result<GaussSumResult> {
    let e = chi_star.modulus();
    if !chi_star.is_primitive() {
        return Err(Error::domain("gauss_sum_closed requires a primitive character"));
    }
    if d == 0 || d % e != 0 {
        return Err(Error::domain(format!("conductor {e} does not divide {d}")));
    }
    let g = gcd(m, d as i64) as u64; // gcd(0, d) = d, covering m = 0 mod d
    let m_prime = m / g as i64;
    let d_prime = d / g;

    let result = if d_prime % e != 0 {
        GaussSumResult {
            value: C64::new(0.0, 0.0),
            vanishes: true,
            formula_path: GaussFormulaPath::ClosedFormCaseI,
        }
    } else {
        let scale = (totient(d)? / totient(d_prime)?) as f64
            * moebius(d_prime / e)? as f64;
        let value = scale
            * chi_star.value((d_prime / e) as i64)
            * chi_star.conjugate().value(m_prime)
            * tau(chi_star);
        GaussSumResult {
            value,
            vanishes: value.norm() < 1e-12,
            formula_path: GaussFormulaPath::ClosedFormCaseII,
        }
    };

    #[cfg(debug_assertions)]
    {
        let brute = gauss_sum_bruteforce(&chi_star.restrict(d)?, m);
        debug_assert!(
            (brute.value - result.value).norm() < 1e-9 * (d as f64),
            "closed form disagrees with brute force at e={e} d={d} m={m}: {} vs {}",
            result.value,
            brute.value
        );
    }

    Ok(result)
}

/// Coefficient `C_{N,d}(d~, chi)` of the R-operator action on twisted
/// Weil-Brezin images, for a primitive chi mod e with e | d, d | |N|,
/// d~ | |N|. With `d' = d / gcd(|N|/d~, d)`:
///
/// * zero when e does not divide d' (hence whenever e does not divide d~);
/// * otherwise
///   `sqrt(phi(d~)/phi(d)) (phi(d)/phi(d')) mu(d'/e) chi(d'/e) conj(chi)(N d'/(d~ d))`.
pub fn fe_coefficient(
    n: i64,
    d: u64,
    d_tilde: u64,
    chi_star: &DirichletCharacter,
) -> Result<C64> {
    let e = chi_star.modulus();
    let n_abs = n.unsigned_abs();
    if n == 0 {
        return Err(Error::domain("central index must be nonzero"));
    }
    if d == 0 || n_abs % d != 0 || d_tilde == 0 || n_abs % d_tilde != 0 {
        return Err(Error::domain(format!(
            "need d | |N| and d~ | |N|; got N={n}, d={d}, d~={d_tilde}"
        )));
    }
    if d % e != 0 {
        return Err(Error::domain(format!("conductor {e} does not divide d={d}")));
    }
    let d_prime = d / gcd((n_abs / d_tilde) as i64, d as i64) as u64;
    if d_prime % e != 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    // conj(chi) argument: N d' / (d~ d), integral whenever e | d'
    let num = n * d_prime as i64;
    let den = (d_tilde * d) as i64;
    if num % den != 0 {
        return Err(Error::domain(
            "internal: conj(chi) argument is not integral".to_string(),
        ));
    }
    let g_tilde = num / den;
    let scale = ((totient(d_tilde)? as f64 / totient(d)? as f64).sqrt())
        * (totient(d)? / totient(d_prime)?) as f64
        * moebius(d_prime / e)? as f64;
    Ok(scale
        * chi_star.value((d_prime / e) as i64)
        * chi_star.conjugate().value(g_tilde))
}
