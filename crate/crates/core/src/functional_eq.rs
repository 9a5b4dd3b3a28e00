//! The R-operator intertwining identity, the generalized functional
//! equations for Lerch L-functions, the coarse multiplicative decomposition
//! and its permutation under R, and the Hecke eigenspace checks — all as
//! numeric residuals.

use serde::Serialize;

use crate::arith::{divisors, gcd, totient};
use crate::characters::{character_index, enumerate_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::gamma::{gamma_pm, Sign};
use crate::gauss::{fe_coefficient, tau};
use crate::lerch::{lerch_l, LerchPoint};
use crate::line::LineFunction;
use crate::nil::{inner_from_samples, sample_grid, GridSamples, NilFunction, QuadratureSpec};
use crate::weil_brezin::wb_map;
use crate::{powc_real, C64};

/// A Lerch L-function as a nilmanifold function: the evaluator is
/// `(a,c) -> L^{sign}_{N,d}(chi, s, a, c)` with the central character in z.
pub fn lerch_nil(
    sign: Sign,
    n: i64,
    d: u64,
    chi: &DirichletCharacter,
    s: C64,
    tol: f64,
) -> Result<NilFunction> {
    let probe = LerchPoint {
        sign,
        n,
        d,
        chi: chi.clone(),
        s,
        a: 0.318309,
        c: 0.367879,
        z: 0.0,
    };
    probe.validate()?;
    let chi = chi.clone();
    let base = move |a: f64, c: f64| -> C64 {
        let p = LerchPoint {
            sign,
            n,
            d,
            chi: chi.clone(),
            s,
            a,
            c,
            z: 0.0,
        };
        match lerch_l(&p, tol) {
            Ok(r) => r.value,
            Err(_) => C64::new(f64::NAN, f64::NAN),
        }
    };
    Ok(NilFunction::from_evaluator_unchecked(
        n,
        base,
        format!("L{sign}[{n},{d}](s={s})"),
    )?
    .with_singular_spacing(1.0 / n.unsigned_abs() as f64))
}

// ---------------------------------------------------------------------------
// Coarse multiplicative decomposition
// ---------------------------------------------------------------------------

/// One block of the coarse decomposition: a primitive character chi* mod e
/// with e | |N| together with all the divisors d (e | d | |N|) whose twisted
/// spaces it induces.
#[derive(Debug, Clone)]
pub struct Block {
    pub chi_star: DirichletCharacter,
    pub e: u64,
    pub members: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct DecompositionIndex {
    pub n: i64,
    pub blocks: Vec<Block>,
}

impl DecompositionIndex {
    /// Total member count over all blocks; equals |N| by `sum phi(d) = N`.
    pub fn total_members(&self) -> u64 {
        self.blocks.iter().map(|b| b.members.len() as u64).sum()
    }

    /// Index of the block holding the pair (d, chi mod d).
    pub fn block_of(&self, chi: &DirichletCharacter) -> Option<usize> {
        let (core, e) = chi.primitive_core().ok()?;
        self.blocks
            .iter()
            .position(|b| b.e == e && b.chi_star == core)
    }
}

/// Enumerate the coarse decomposition of the level-N space: one block per
/// primitive character chi* mod e with e | |N|.
pub fn coarse_decomposition(n: i64) -> Result<DecompositionIndex> {
    if n == 0 {
        return Err(Error::domain("central index must be nonzero"));
    }
    let n_abs = n.unsigned_abs();
    let mut blocks = Vec::new();
    for e in divisors(n_abs) {
        for chi_star in enumerate_characters(e)? {
            if !chi_star.is_primitive() {
                continue;
            }
            let members: Vec<u64> = divisors(n_abs)
                .into_iter()
                .filter(|d| d % e == 0)
                .collect();
            blocks.push(Block {
                chi_star,
                e,
                members,
            });
        }
    }
    // count check: each (d, chi mod d) lies in exactly one block
    let total: u64 = blocks.iter().map(|b| b.members.len() as u64).sum();
    let expected: u64 = divisors(n_abs)
        .into_iter()
        .map(|d| totient(d).unwrap())
        .sum();
    debug_assert_eq!(expected, n_abs);
    let _ = total;
    Ok(DecompositionIndex { n, blocks })
}

// ---------------------------------------------------------------------------
// R-operator intertwining with the additive Fourier transform
// ---------------------------------------------------------------------------

/// Sup over `grid` of the defect of
///
/// ```text
/// R_N ( W_{N,d}(chi|_d) f ) = chi(-1) tau(chi)/|N|^{1/2}
///     sum_{d~ | |N|} C_{N,d}(d~, chi) W_{N,d~}(conj(chi)|_{d~}) (F U(N) f)
/// ```
///
/// with both sides built numerically (the Fourier transform by quadrature).
pub fn intertwine_residual(
    n: i64,
    d: u64,
    chi_star: &DirichletCharacter,
    f: &LineFunction,
    grid: &[(f64, f64)],
    tol: f64,
) -> Result<f64> {
    let e = chi_star.modulus();
    if d == 0 || d % e != 0 {
        return Err(Error::domain("need conductor | d"));
    }
    let chi_d = chi_star.restrict(d)?;
    let lhs = wb_map(f, n, d, &chi_d, tol)?.r_op()?;

    let prefactor = chi_star.value(-1) * tau(chi_star) / (n.unsigned_abs() as f64).sqrt();
    let transformed = f.dilate(n as f64)?.fourier(tol);
    let chi_conj = chi_star.conjugate();
    let mut terms: Vec<(C64, NilFunction)> = Vec::new();
    for d_tilde in divisors(n.unsigned_abs()) {
        if d_tilde % e != 0 {
            continue; // coefficient vanishes
        }
        let coef = fe_coefficient(n, d, d_tilde, chi_star)?;
        if coef.norm() == 0.0 {
            continue;
        }
        let w = wb_map(&transformed, n, d_tilde, &chi_conj.restrict(d_tilde)?, tol)?;
        terms.push((prefactor * coef, w));
    }

    let mut worst = 0.0f64;
    for &(a, c) in grid {
        let l = lhs.base(a, c);
        let mut r = C64::new(0.0, 0.0);
        for (coef, w) in &terms {
            r += coef * w.base(a, c);
        }
        worst = worst.max((l - r).norm());
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Generalized functional equations
// ---------------------------------------------------------------------------

/// Max pointwise defect of the functional equation
///
/// ```text
/// R(L^{+-}_{N,d})(chi|_d, 1-s, a, c, z) =
///   chi(-1) tau(chi) |N|^{s-1} gamma^{+-}(s)
///   sum_{d~ | |N|} C_{N,d}(d~, chi) L^{+-}_{N,d~}(conj(chi)|_{d~}, s, a, c, z)
/// ```
///
/// over the given (a, c) points (z = 0 slice; the central character cancels).
pub fn fe_residual(
    sign: Sign,
    n: i64,
    d: u64,
    chi_star: &DirichletCharacter,
    s: C64,
    points: &[(f64, f64)],
    tol: f64,
) -> Result<f64> {
    let e = chi_star.modulus();
    if d == 0 || d % e != 0 {
        return Err(Error::domain("need conductor | d"));
    }
    let one = C64::new(1.0, 0.0);
    let chi_d = chi_star.restrict(d)?;
    let left_fn = lerch_nil(sign, n, d, &chi_d, one - s, tol)?.r_op()?;

    let gamma = gamma_pm(sign, s);
    let prefactor = chi_star.value(-1)
        * tau(chi_star)
        * powc_real(n.unsigned_abs() as f64, s - one)
        * gamma.value;
    let chi_conj = chi_star.conjugate();
    let mut terms: Vec<(C64, NilFunction)> = Vec::new();
    for d_tilde in divisors(n.unsigned_abs()) {
        if d_tilde % e != 0 {
            continue;
        }
        let coef = fe_coefficient(n, d, d_tilde, chi_star)?;
        if coef.norm() == 0.0 {
            continue;
        }
        let l = lerch_nil(sign, n, d_tilde, &chi_conj.restrict(d_tilde)?, s, tol)?;
        terms.push((prefactor * coef, l));
    }

    let mut worst = 0.0f64;
    for &(a, c) in points {
        let lhs = left_fn.base(a, c);
        let mut rhs = C64::new(0.0, 0.0);
        for (coef, l) in &terms {
            rhs += coef * l.base(a, c);
        }
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// R permutes the coarse blocks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BlockLeakReport {
    /// Human-readable block label "(e, chi index)".
    pub block: String,
    /// Index of the conjugate block.
    pub conjugate_block: String,
    /// Relative mass of R(basis vector) falling outside the conjugate block.
    pub leak: f64,
}

/// For each block of the coarse decomposition, push two Gaussian basis
/// vectors of each member space through R and measure (by Gram projection)
/// the relative mass landing outside the conjugate block.
struct BasisVec {
    block: usize,
    samples: GridSamples,
    norm_sq: f64,
}

pub fn r_permutes_coarse_blocks(
    n: i64,
    widths: &[f64],
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<Vec<BlockLeakReport>> {
    let index = coarse_decomposition(n)?;
    // Bases per (block, member): W_{N,d}(chi|_d)(gaussian_w)
    let mut basis: Vec<BasisVec> = Vec::new();
    let mut images: Vec<(usize, GridSamples, f64)> = Vec::new(); // block, R image, norm^2
    for (bi, b) in index.blocks.iter().enumerate() {
        for &d in &b.members {
            let chi_d = b.chi_star.restrict(d)?;
            for &w in widths {
                let f = crate::line::gaussian(w)?;
                let wf = wb_map(&f, n, d, &chi_d, tol)?;
                let s = sample_grid(&wf, quad)?;
                let n2 = inner_from_samples(&s, &s).re;
                basis.push(BasisVec {
                    block: bi,
                    samples: s,
                    norm_sq: n2,
                });
                let img = sample_grid(&wf.r_op()?, quad)?;
                let in2 = inner_from_samples(&img, &img).re;
                images.push((bi, img, in2));
            }
        }
    }

    let mut out = Vec::new();
    for (bi, img, in2) in &images {
        let src = &index.blocks[*bi];
        let conj_core = src.chi_star.conjugate();
        let conj_bi = index
            .blocks
            .iter()
            .position(|b| b.e == src.e && b.chi_star == conj_core)
            .expect("conjugate block exists");
        // Projection mass per block; member spaces inside a block are
        // orthogonal, and within one member space the two Gaussian basis
        // vectors have the known Gram matrix of the line functions
        // (isometry), so project member by member.
        let mut leak = 0.0f64;
        for (tbi, _tb) in index.blocks.iter().enumerate() {
            if tbi == conj_bi {
                continue;
            }
            let members: Vec<&BasisVec> = basis.iter().filter(|v| v.block == tbi).collect();
            // group in pairs (the two widths per member space)
            for pair in members.chunks(widths.len()) {
                leak += projection_mass(img, pair, widths);
            }
        }
        out.push(BlockLeakReport {
            block: format!("(e={}, chi#{})", src.e, character_index(&src.chi_star)),
            conjugate_block: format!(
                "(e={}, chi#{})",
                src.e,
                character_index(&conj_core)
            ),
            leak: leak / in2.max(1e-300),
        });
    }
    Ok(out)
}

/// Mass of the projection of `img` onto the span of the member-space basis
/// vectors, via the Gram inverse.
fn projection_mass(img: &GridSamples, pair: &[&BasisVec], widths: &[f64]) -> f64 {
    let k = pair.len();
    // Gram of the Gaussian line functions: <g_{t_i}, g_{t_j}> = (t_i+t_j)^{-1/2}
    let mut gram = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = 1.0 / (widths[i] + widths[j]).sqrt();
        }
    }
    let b: Vec<C64> = pair.iter().map(|v| inner_from_samples(&v.samples, img)).collect();
    // projection mass onto the span: b* G^{-1} b
    let x = solve_small(&gram, &b);
    let mut mass = 0.0f64;
    for i in 0..k {
        mass += (b[i].conj() * x[i]).re;
    }
    let _ = pair.iter().map(|v| v.norm_sq).sum::<f64>();
    mass.max(0.0)
}

fn solve_small(a: &[Vec<f64>], b: &[C64]) -> Vec<C64> {
    let k = b.len();
    match k {
        1 => vec![b[0] / a[0][0]],
        2 => {
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            vec![
                (b[0] * a[1][1] - b[1] * a[0][1]) / det,
                (b[1] * a[0][0] - b[0] * a[1][0]) / det,
            ]
        }
        _ => {
            // Gaussian elimination for completeness
            let mut m: Vec<Vec<C64>> = a
                .iter()
                .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect();
            let mut rhs = b.to_vec();
            for col in 0..k {
                let piv = m[col][col];
                for row in col + 1..k {
                    let fac = m[row][col] / piv;
                    for cc in col..k {
                        let val = m[col][cc];
                        m[row][cc] -= fac * val;
                    }
                    let val = rhs[col];
                    rhs[row] -= fac * val;
                }
            }
            let mut x = vec![C64::new(0.0, 0.0); k];
            for row in (0..k).rev() {
                let mut acc = rhs[row];
                for cc in row + 1..k {
                    acc -= m[row][cc] * x[cc];
                }
                x[row] = acc / m[row][row];
            }
            x
        }
    }
}

// ---------------------------------------------------------------------------
// Hecke eigenspace checks
// ---------------------------------------------------------------------------

/// Max over m and points of `|T_m L - chi(m) m^{-s} L| / max(|L|, 1)`.
pub fn hecke_eigen_residual(
    sign: Sign,
    n: i64,
    d: u64,
    chi: &DirichletCharacter,
    s: C64,
    ms: &[u64],
    points: &[(f64, f64)],
    tol: f64,
) -> Result<f64> {
    for &m in ms {
        if gcd(m as i64, n) != 1 {
            return Err(Error::domain(format!(
                "m={m} is not coprime to N={n}; the eigenrelation requires (m, N) = 1"
            )));
        }
    }
    let l = lerch_nil(sign, n, d, chi, s, tol)?;
    let mut worst = 0.0f64;
    for &m in ms {
        let tm = l.hecke(m as i64)?;
        let eig = chi.value(m as i64) * powc_real(m as f64, -s);
        for &(a, c) in points {
            let lv = l.base(a, c);
            let r = (tm.base(a, c) - eig * lv).norm() / lv.norm().max(1.0);
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// Adjoint eigenvalue check. Both candidate eigenvalues are measured:
/// `conj(chi)(m) m^{1-s}` (as printed in the source material this library
/// follows) and `conj(chi)(m) m^{-(1-s)}`; the one consistent with
/// `T_m* T_m = (1/m) I` is the reciprocal form.
#[derive(Debug, Clone, Serialize)]
pub struct AdjointEigenReport {
    pub residual_printed: f64,
    pub residual_reciprocal: f64,
    /// "m^{1-s}" or "m^{-(1-s)}"
    pub matching: String,
}

pub fn adjoint_hecke_eigen_residual(
    sign: Sign,
    n: i64,
    d: u64,
    chi: &DirichletCharacter,
    s: C64,
    ms: &[u64],
    points: &[(f64, f64)],
    tol: f64,
) -> Result<AdjointEigenReport> {
    for &m in ms {
        if gcd(m as i64, n) != 1 {
            return Err(Error::domain(format!("m={m} not coprime to N={n}")));
        }
    }
    let one = C64::new(1.0, 0.0);
    let l = lerch_nil(sign, n, d, chi, s, tol)?;
    let chi_bar = chi.conjugate();
    let (mut worst_printed, mut worst_recip) = (0.0f64, 0.0f64);
    for &m in ms {
        let tm_star = l.hecke_adjoint(m)?;
        let eig_printed = chi_bar.value(m as i64) * powc_real(m as f64, one - s);
        let eig_recip = chi_bar.value(m as i64) * powc_real(m as f64, s - one);
        for &(a, c) in points {
            let lv = l.base(a, c);
            let tv = tm_star.base(a, c);
            let scale = lv.norm().max(1.0);
            worst_printed = worst_printed.max((tv - eig_printed * lv).norm() / scale);
            worst_recip = worst_recip.max((tv - eig_recip * lv).norm() / scale);
        }
    }
    Ok(AdjointEigenReport {
        residual_printed: worst_printed,
        residual_reciprocal: worst_recip,
        matching: if worst_recip <= worst_printed {
            "m^{-(1-s)}".into()
        } else {
            "m^{1-s}".into()
        },
    })
}
