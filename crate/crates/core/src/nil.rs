//! Functions on the Heisenberg nilmanifold with a fixed nonzero central
//! index N, and the operator calculus acting on them.
//!
//! A `NilFunction` stores the evaluator `(a, c) -> F(a, c, 0)` on all of R^2;
//! the z-dependence is always the analytic central character
//! `F(a,c,z) = e^{2 pi i N z} F(a,c,0)`. Membership in the level-N space
//! requires the twisted periodicity
//!
//! ```text
//! F(a+1, c, 0) = F(a, c, 0),      F(a, c+1, 0) = e^{-2 pi i N a} F(a, c, 0),
//! ```
//!
//! which a seeded random validator enforces for externally supplied
//! evaluators. Operators compose evaluators lazily (with a depth cap) so the
//! exact identities between them hold up to scalar evaluation error only:
//!
//! * `hecke(m)`: `T_m F (a,c) = (1/|m|) sum_j F((a+j)/m, m c)`
//! * `hecke_adjoint(m)`: `T_m* F (a,c) = (1/m) sum_k e^{2 pi i k N a} F(m a, (c+k)/m)`
//! * `r_op`: `R F (a,c) = e^{-2 pi i N a c} F(-c, a)`, of order 4
//! * `heisenberg_act([a',c',z'])`: right translation
//!   `F(a+a', c+c', z+z'+c a')`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd;
use crate::characters::DirichletCharacter;
use crate::defaults::{DEPTH_CAP, QUAD_GAUSS_N, QUAD_MIDPOINT_N, VALIDATOR_SAMPLES, VALIDATOR_TOL};
use crate::error::{Error, Result};
use crate::line::LineFunction;
use crate::quad::gauss_legendre;
use crate::{e2pi, C64};

type BaseFn = Arc<dyn Fn(f64, f64) -> C64 + Send + Sync>;

/// How a nilmanifold function was produced from a line function, when it was.
#[derive(Clone)]
pub enum Backing {
    /// Twisted Weil-Brezin image `W_{N,d}(chi) f`.
    Multiplicative {
        f: LineFunction,
        d: u64,
        chi: DirichletCharacter,
        tol: f64,
    },
    /// Additive Brezin image `W_N(psi_k) f`.
    Additive { f: LineFunction, k: u64, tol: f64 },
}

/// A function on the Heisenberg nilmanifold with central index N != 0.
#[derive(Clone)]
pub struct NilFunction {
    n: i64,
    base: BaseFn,
    pub backing: Option<Backing>,
    depth: u32,
    /// Spacing of known singular lattice lines (e.g. 1/|N| for Lerch
    /// evaluators); None for smooth functions.
    pub singular_spacing: Option<f64>,
    pub label: String,
}

impl std::fmt::Debug for NilFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NilFunction(N={}, {})", self.n, self.label)
    }
}

impl NilFunction {
    /// Construct from a raw evaluator, validating twisted periodicity at
    /// seeded random samples.
    pub fn from_evaluator(
        n: i64,
        base: impl Fn(f64, f64) -> C64 + Send + Sync + 'static,
        label: impl Into<String>,
    ) -> Result<Self> {
        let f = Self::from_evaluator_unchecked(n, base, label)?;
        f.validate_membership()?;
        Ok(f)
    }

    /// Construct without the membership check (for operator images whose
    /// membership holds analytically).
    pub fn from_evaluator_unchecked(
        n: i64,
        base: impl Fn(f64, f64) -> C64 + Send + Sync + 'static,
        label: impl Into<String>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain(
                "central index 0 is outside this module's scope",
            ));
        }
        Ok(NilFunction {
            n,
            base: Arc::new(base),
            backing: None,
            depth: 0,
            singular_spacing: None,
            label: label.into(),
        })
    }

    pub(crate) fn compose(
        &self,
        base: impl Fn(f64, f64) -> C64 + Send + Sync + 'static,
        label: String,
    ) -> Result<Self> {
        if self.depth + 1 > DEPTH_CAP {
            return Err(Error::DepthCap(DEPTH_CAP));
        }
        Ok(NilFunction {
            n: self.n,
            base: Arc::new(base),
            backing: None,
            depth: self.depth + 1,
            singular_spacing: self.singular_spacing,
            label,
        })
    }

    pub fn central_index(&self) -> i64 {
        self.n
    }

    pub fn with_backing(mut self, b: Backing) -> Self {
        self.backing = Some(b);
        self
    }

    pub fn with_singular_spacing(mut self, s: f64) -> Self {
        self.singular_spacing = Some(s);
        self
    }

    /// Base value F(a, c, 0).
    #[inline]
    pub fn base(&self, a: f64, c: f64) -> C64 {
        (self.base)(a, c)
    }

    /// Full value `F(a, c, z) = e^{2 pi i N z} F(a, c, 0)`.
    pub fn evaluate(&self, a: f64, c: f64, z: f64) -> C64 {
        e2pi(self.n as f64 * z) * self.base(a, c)
    }

    /// Residual of the twisted-periodicity conditions at (a, c).
    pub fn periodicity_residual(&self, a: f64, c: f64) -> f64 {
        let v = self.base(a, c);
        let scale = v.norm().max(1.0);
        let ra = (self.base(a + 1.0, c) - v).norm();
        let rc = (self.base(a, c + 1.0) - e2pi(-(self.n as f64) * a) * v).norm();
        (ra + rc) / scale
    }

    fn validate_membership(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(crate::defaults::DEFAULT_SEED ^ 0x22);
        for _ in 0..VALIDATOR_SAMPLES {
            let a = rng.gen::<f64>();
            let c = rng.gen::<f64>();
            let r = self.periodicity_residual(a, c);
            if r > VALIDATOR_TOL {
                return Err(Error::Membership { residual: r, a, c });
            }
        }
        Ok(())
    }

    // -- Heisenberg action ---------------------------------------------------

    /// Right translation by `h = [a', c', z']`.
    pub fn heisenberg_act(&self, h: [f64; 3]) -> Result<NilFunction> {
        let [ap, cp, zp] = h;
        let n = self.n as f64;
        let inner = self.base.clone();
        let mut out = self.compose(
            move |a, c| e2pi(n * (zp + c * ap)) * inner(a + ap, c + cp),
            format!("rho[{ap},{cp},{zp}]({})", self.label),
        )?;
        // the action pulls back to the Schroedinger representation on backing
        if let Some(Backing::Multiplicative { f, d, chi, tol }) = &self.backing {
            if let Ok(ft) = f.schrodinger_act(self.n as f64, h) {
                out.backing = Some(Backing::Multiplicative {
                    f: ft,
                    d: *d,
                    chi: chi.clone(),
                    tol: *tol,
                });
            }
        }
        Ok(out)
    }

    // -- Two-variable Hecke operators -----------------------------------------

    /// `T_m`, m != 0.
    pub fn hecke(&self, m: i64) -> Result<NilFunction> {
        if m == 0 {
            return Err(Error::domain("T_0 undefined"));
        }
        let inner = self.base.clone();
        let mf = m as f64;
        let m_abs = m.unsigned_abs();
        let mut out = self.compose(
            move |a, c| {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..m_abs {
                    acc += inner((a + j as f64) / mf, mf * c);
                }
                acc / m_abs as f64
            },
            format!("T_{m}({})", self.label),
        )?;
        // When gcd(|m|, N/d) = 1 the twisted Weil-Brezin backing transforms
        // exactly: T_m W(chi)(f) = chi(|m|) W(chi)(f(m .)).
        if let Some(Backing::Multiplicative { f, d, chi, tol }) = &self.backing {
            if gcd(m, self.n / *d as i64) == 1 {
                let chi_m = chi.value(m_abs as i64);
                let scaled = f
                    .dilate(mf)
                    .map(|g| g.scale(chi_m / (m_abs as f64).sqrt()));
                if let Ok(g) = scaled {
                    // U(m) = sqrt(|m|) f(m x); T acts by f(m x), hence the
                    // 1/sqrt(|m|) compensation above.
                    out.backing = Some(Backing::Multiplicative {
                        f: g,
                        d: *d,
                        chi: chi.clone(),
                        tol: *tol,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Adjoint `T_m*`, m >= 1 (negative m via composition with R^2 at call
    /// sites).
    pub fn hecke_adjoint(&self, m: u64) -> Result<NilFunction> {
        if m == 0 {
            return Err(Error::domain("adjoint Hecke operator needs m >= 1"));
        }
        let inner = self.base.clone();
        let n = self.n as f64;
        let mf = m as f64;
        self.compose(
            move |a, c| {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..m {
                    acc += e2pi(k as f64 * n * a) * inner(mf * a, (c + k as f64) / mf);
                }
                acc / mf
            },
            format!("T*_{m}({})", self.label),
        )
    }

    // -- Heisenberg-Fourier operator ------------------------------------------

    /// `R F (a,c) = e^{-2 pi i N a c} F(-c, a)`.
    pub fn r_op(&self) -> Result<NilFunction> {
        let inner = self.base.clone();
        let n = self.n as f64;
        self.compose(
            move |a, c| e2pi(-n * a * c) * inner(-c, a),
            format!("R({})", self.label),
        )
    }

    /// `R^{-1} = R^3`: `F(a,c) -> e^{2 pi i N a c} F(c, -a)`.
    pub fn r_inv(&self) -> Result<NilFunction> {
        let inner = self.base.clone();
        let n = self.n as f64;
        self.compose(
            move |a, c| e2pi(n * a * c) * inner(c, -a),
            format!("R^-1({})", self.label),
        )
    }

    /// The involution `J = R^2`: `F(a,c) -> F(-a,-c)`.
    pub fn j_op(&self) -> Result<NilFunction> {
        let inner = self.base.clone();
        let mut out = self.compose(
            move |a, c| inner(-a, -c),
            format!("J({})", self.label),
        )?;
        // J = V(-1) on backed functions
        if let Some(Backing::Multiplicative { f, d, chi, tol }) = &self.backing {
            if let Ok(g) = f.dilate(-1.0) {
                out.backing = Some(Backing::Multiplicative {
                    f: g,
                    d: *d,
                    chi: chi.clone(),
                    tol: *tol,
                });
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Quadrature on the fundamental domain
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    /// Midpoint rule with half-cell offset nodes (k+1/2)/n, which never hit
    /// the singular lattice lines of L-function integrands.
    Midpoint,
    GaussLegendre,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rule: QuadRule,
    pub nodes_a: usize,
    pub nodes_c: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rule: QuadRule::Midpoint,
            nodes_a: QUAD_MIDPOINT_N,
            nodes_c: QUAD_MIDPOINT_N,
        }
    }
}

impl QuadratureSpec {
    pub fn gauss() -> Self {
        QuadratureSpec {
            rule: QuadRule::GaussLegendre,
            nodes_a: QUAD_GAUSS_N,
            nodes_c: QUAD_GAUSS_N,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_a < 4 || self.nodes_c < 4 {
            return Err(Error::domain("quadrature needs at least 4 nodes per axis"));
        }
        Ok(())
    }

    /// Nodes and weights on [0, 1).
    fn axis(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        match self.rule {
            QuadRule::Midpoint => {
                let nodes = (0..n).map(|k| (k as f64 + 0.5) / n as f64).collect();
                let weights = vec![1.0 / n as f64; n];
                (nodes, weights)
            }
            QuadRule::GaussLegendre => {
                let (xs, ws) = gauss_legendre(n);
                (
                    xs.iter().map(|x| 0.5 * (x + 1.0)).collect(),
                    ws.iter().map(|w| 0.5 * w).collect(),
                )
            }
        }
    }
}

/// Samples of a nilmanifold function on the quadrature grid (z = 0 slice).
pub struct GridSamples {
    pub n: i64,
    values: Vec<C64>,
    weights: Vec<f64>,
}

/// Evaluate F on the quadrature grid once, for repeated inner products.
pub fn sample_grid(f: &NilFunction, q: &QuadratureSpec) -> Result<GridSamples> {
    q.validate()?;
    let (xa, wa) = q.axis(q.nodes_a);
    let (xc, wc) = q.axis(q.nodes_c);
    let mut values = Vec::with_capacity(xa.len() * xc.len());
    let mut weights = Vec::with_capacity(xa.len() * xc.len());
    for (a, wa) in xa.iter().zip(wa.iter()) {
        for (c, wc) in xc.iter().zip(wc.iter()) {
            values.push(f.base(*a, *c));
            weights.push(wa * wc);
        }
    }
    Ok(GridSamples {
        n: f.central_index(),
        values,
        weights,
    })
}

/// `<F, G>` from precomputed samples on the same grid.
pub fn inner_from_samples(f: &GridSamples, g: &GridSamples) -> C64 {
    if f.n != g.n {
        return C64::new(0.0, 0.0);
    }
    f.values
        .iter()
        .zip(g.values.iter())
        .zip(f.weights.iter())
        .map(|((a, b), w)| *w * a * b.conj())
        .sum()
}

/// Hermitian inner product over the fundamental domain. Functions with
/// different central indices are exactly orthogonal (the z-integral
/// vanishes), so 0 is returned without quadrature.
pub fn inner_product(f: &NilFunction, g: &NilFunction, q: &QuadratureSpec) -> Result<C64> {
    if f.central_index() != g.central_index() {
        return Ok(C64::new(0.0, 0.0));
    }
    q.validate()?;
    let (xa, wa) = q.axis(q.nodes_a);
    let (xc, wc) = q.axis(q.nodes_c);
    let mut acc = C64::new(0.0, 0.0);
    for (a, wa) in xa.iter().zip(wa.iter()) {
        for (c, wc) in xc.iter().zip(wc.iter()) {
            acc += wa * wc * f.base(*a, *c) * g.base(*a, *c).conj();
        }
    }
    Ok(acc)
}

/// L2 norm over the fundamental domain.
pub fn norm(f: &NilFunction, q: &QuadratureSpec) -> Result<f64> {
    Ok(inner_product(f, f, q)?.re.max(0.0).sqrt())
}

/// Sup-norm residual over a sample grid of the Heisenberg/Hecke
/// transformation laws
///
/// ```text
/// rho_h T_m F = T_m rho_{beta(m) h} F,   rho_h T_m* F = T_m* rho_{beta(1/m) h} F
/// ```
///
/// with `beta(t)[a,c,z] = [a/t, t c, z]`.
pub fn hecke_heisenberg_commutation_check(
    f: &NilFunction,
    h: [f64; 3],
    m: u64,
    grid: &[(f64, f64)],
) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("m must be nonzero"));
    }
    let mf = m as f64;
    let beta_m = [h[0] / mf, mf * h[1], h[2]];
    let beta_inv = [h[0] * mf, h[1] / mf, h[2]];

    let lhs1 = f.hecke(m as i64)?.heisenberg_act(h)?;
    let rhs1 = f.heisenberg_act(beta_m)?.hecke(m as i64)?;
    let lhs2 = f.hecke_adjoint(m)?.heisenberg_act(h)?;
    let rhs2 = f.heisenberg_act(beta_inv)?.hecke_adjoint(m)?;

    let mut worst = 0.0f64;
    for &(a, c) in grid {
        worst = worst.max((lhs1.base(a, c) - rhs1.base(a, c)).norm());
        worst = worst.max((lhs2.base(a, c) - rhs2.base(a, c)).norm());
    }
    Ok(worst)
}

/// CSV dump `a,c,re,im` on an n x n corner grid of the fundamental domain.
pub fn sample_csv(f: &NilFunction, n: usize) -> Result<String> {
    if n == 0 {
        return Err(Error::domain("grid size must be positive"));
    }
    let mut out = String::from("a,c,re,im\n");
    for i in 0..n {
        for j in 0..n {
            let a = i as f64 / n as f64;
            let c = j as f64 / n as f64;
            let v = f.base(a, c);
            out.push_str(&format!("{a},{c},{:.12e},{:.12e}\n", v.re, v.im));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil_brezin::wb_map;

    fn theta(n: i64) -> NilFunction {
        let chi = DirichletCharacter::principal(1).unwrap();
        let f = crate::line::gaussian(1.0).unwrap();
        wb_map(&f, n, 1, &chi, 1e-13).unwrap()
    }

    fn grid() -> Vec<(f64, f64)> {
        let mut g = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                g.push((0.07 + 0.19 * i as f64, 0.11 + 0.17 * j as f64));
            }
        }
        g
    }

    #[test]
    fn central_character() {
        let f = theta(1);
        let v0 = f.evaluate(0.0, 0.0, 0.0);
        let vhalf = f.evaluate(0.0, 0.0, 0.5);
        assert!((vhalf + v0).norm() < 1e-13); // e^{pi i} = -1
        let v1 = f.evaluate(0.3, 0.4, 1.7);
        let v2 = f.evaluate(0.3, 0.4, 0.7);
        assert!((v1 - v2).norm() < 1e-12);
    }

    #[test]
    fn rejects_central_index_zero_and_bad_membership() {
        assert!(NilFunction::from_evaluator_unchecked(0, |_, _| C64::new(1.0, 0.0), "x").is_err());
        // base = 1 is not twisted-periodic for N = 1
        let bad = NilFunction::from_evaluator(1, |_, _| C64::new(1.0, 0.0), "const");
        assert!(matches!(bad, Err(Error::Membership { .. })));
    }

    #[test]
    fn group_action_composition() {
        let f = theta(1);
        let h1 = [0.2, 0.0, 0.0];
        let h2 = [0.0, 0.3, 0.0];
        // h1 o h2 = [a1+a2, c1+c2, z1+z2+c1 a2]
        let h12 = [0.2, 0.3, 0.0];
        let lhs = f.heisenberg_act(h2).unwrap().heisenberg_act(h1).unwrap();
        let rhs = f.heisenberg_act(h12).unwrap();
        for (a, c) in grid() {
            assert!((lhs.base(a, c) - rhs.base(a, c)).norm() < 1e-12);
        }
        let id = f.heisenberg_act([0.0, 0.0, 0.0]).unwrap();
        assert!((id.base(0.3, 0.4) - f.base(0.3, 0.4)).norm() < 1e-14);
    }

    #[test]
    fn hecke_composition_and_negative() {
        let f = theta(4);
        let t6 = f.hecke(6).unwrap();
        let t23 = f.hecke(3).unwrap().hecke(2).unwrap();
        let t32 = f.hecke(2).unwrap().hecke(3).unwrap();
        for (a, c) in grid() {
            assert!((t6.base(a, c) - t23.base(a, c)).norm() < 1e-12);
            assert!((t6.base(a, c) - t32.base(a, c)).norm() < 1e-12);
        }
        // T_{-m} = T_m R^2
        let tm = f.hecke(-3).unwrap();
        let tr = f.j_op().unwrap().hecke(3).unwrap();
        for (a, c) in grid() {
            assert!((tm.base(a, c) - tr.base(a, c)).norm() < 1e-12);
        }
        let t1 = f.hecke(1).unwrap();
        assert!((t1.base(0.2, 0.7) - f.base(0.2, 0.7)).norm() < 1e-14);
        assert!(f.hecke(0).is_err());
    }

    #[test]
    fn r_operator_relations() {
        let f = theta(3);
        let r4 = f.r_op().unwrap().r_op().unwrap().r_op().unwrap().r_op().unwrap();
        for (a, c) in grid() {
            assert!((r4.base(a, c) - f.base(a, c)).norm() < 1e-12);
        }
        // R^{-1} inverts R
        let id = f.r_op().unwrap().r_inv().unwrap();
        for (a, c) in grid() {
            assert!((id.base(a, c) - f.base(a, c)).norm() < 1e-12);
        }
        // J = R^2 is an involution and self-adjoint
        let j = f.j_op().unwrap();
        let jj = j.j_op().unwrap();
        for (a, c) in grid() {
            assert!((jj.base(a, c) - f.base(a, c)).norm() < 1e-12);
        }
        let g = theta(3).heisenberg_act([0.12, 0.31, 0.0]).unwrap();
        let q = QuadratureSpec::default();
        let lhs = inner_product(&j, &g, &q).unwrap();
        let rhs = inner_product(&f, &g.j_op().unwrap(), &q).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
        // unitarity of R under quadrature
        let nf = norm(&f, &q).unwrap();
        let nr = norm(&f.r_op().unwrap(), &q).unwrap();
        assert!((nf - nr).abs() < 1e-8);
    }

    #[test]
    fn operators_preserve_twisted_periodicity() {
        let f = theta(5);
        let candidates = vec![
            f.hecke(2).unwrap(),
            f.hecke_adjoint(3).unwrap(),
            f.r_op().unwrap(),
            f.heisenberg_act([0.3, 0.1, 0.05]).unwrap(),
        ];
        for g in candidates {
            for (a, c) in grid() {
                assert!(g.periodicity_residual(a, c) < 1e-9, "{}", g.label);
            }
        }
    }

    #[test]
    fn adjoint_relations_coprime_case() {
        let f = theta(5);
        // T_2* T_2 = T_2 T_2* = I/2 for (2, 5) = 1
        let tt = f.hecke(2).unwrap().hecke_adjoint(2).unwrap();
        let tt2 = f.hecke_adjoint(2).unwrap().hecke(2).unwrap();
        for (a, c) in grid() {
            let want = f.base(a, c) / 2.0;
            assert!((tt.base(a, c) - want).norm() < 1e-11);
            assert!((tt2.base(a, c) - want).norm() < 1e-11);
        }
        // T_m* = R^3 T_m R
        let lhs = f.hecke_adjoint(2).unwrap();
        let rhs = f.r_op().unwrap().hecke(2).unwrap().r_inv().unwrap();
        for (a, c) in grid() {
            assert!((lhs.base(a, c) - rhs.base(a, c)).norm() < 1e-11);
        }
    }

    #[test]
    fn adjoint_relations_noncoprime_case() {
        // N = 4, m = 2, d = gcd = 2
        let f = theta(4);
        let tstar_t = f.hecke(2).unwrap().hecke_adjoint(2).unwrap();
        let t_tstar = f.hecke_adjoint(2).unwrap().hecke(2).unwrap();
        for (a, c) in grid() {
            let want1 = (f.base(a, c) + f.base(a + 0.5, c)) / 2.0;
            assert!((tstar_t.base(a, c) - want1).norm() < 1e-11);
            let want2 = (f.base(a, c) + e2pi(2.0 * a) * f.base(a, c + 0.5)) / 2.0;
            assert!((t_tstar.base(a, c) - want2).norm() < 1e-11);
        }
    }

    #[test]
    fn adjointness_under_quadrature() {
        let q = QuadratureSpec::default();
        let f = theta(3);
        let g = theta(3).heisenberg_act([0.21, 0.37, 0.13]).unwrap();
        let lhs = inner_product(&f.hecke(2).unwrap(), &g, &q).unwrap();
        let rhs = inner_product(&f, &g.hecke_adjoint(2).unwrap(), &q).unwrap();
        assert!((lhs - rhs).norm() < 1e-6);
    }

    #[test]
    fn inner_product_structure() {
        let q = QuadratureSpec::default();
        let f1 = theta(1);
        let f2 = theta(2);
        // different central indices: exactly zero
        let z = inner_product(&f1, &f2, &q).unwrap();
        assert_eq!(z, C64::new(0.0, 0.0));
        // Hermitian symmetry
        let g = theta(1).heisenberg_act([0.4, 0.2, 0.0]).unwrap();
        let a = inner_product(&f1, &g, &q).unwrap();
        let b = inner_product(&g, &f1, &q).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
        // isometry of the Weil-Brezin map: ||W(gaussian)||^2 = 2^{-1/2}
        let n2 = inner_product(&f1, &f1, &q).unwrap().re;
        assert!((n2 - 0.5f64.sqrt()).abs() < 1e-10);
        // theta value at the origin
        let v = f1.base(0.0, 0.0);
        let theta3: f64 = (-10..=10i32)
            .map(|n| (-PI_F * (n * n) as f64).exp())
            .sum();
        assert!((v.re - theta3).abs() < 1e-12);
    }
    const PI_F: f64 = std::f64::consts::PI;

    #[test]
    fn hecke_norm_identities() {
        let q = QuadratureSpec::default();
        let f = theta(5);
        let nf = norm(&f, &q).unwrap();
        let nt = norm(&f.hecke(2).unwrap(), &q).unwrap();
        assert!(nt <= nf * (1.0 + 1e-9));
        assert!((nt - nf / 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn heisenberg_commutation() {
        let f = theta(3);
        let r = hecke_heisenberg_commutation_check(&f, [0.1, 0.2, 0.05], 2, &grid()).unwrap();
        assert!(r < 1e-9, "residual {r}");
        let f = theta(1);
        let r = hecke_heisenberg_commutation_check(&f, [0.7, 0.0, 0.0], 5, &grid()).unwrap();
        assert!(r < 1e-9, "residual {r}");
        let r0 = hecke_heisenberg_commutation_check(&f, [0.0, 0.0, 0.0], 3, &grid()).unwrap();
        assert!(r0 < 1e-12);
    }

    #[test]
    fn depth_cap_enforced() {
        let mut f = theta(1);
        let mut hit_cap = false;
        for _ in 0..20 {
            match f.hecke(2) {
                Ok(g) => f = g,
                Err(Error::DepthCap(_)) => {
                    hit_cap = true;
                    break;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(hit_cap);
    }

    #[test]
    fn csv_dump_shape() {
        let f = theta(1);
        let csv = sample_csv(&f, 4).unwrap();
        assert_eq!(csv.lines().count(), 17);
        assert!(csv.starts_with("a,c,re,im"));
        assert!(sample_csv(&f, 0).is_err());
    }
}
