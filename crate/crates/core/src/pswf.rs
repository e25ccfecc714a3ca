//! Prolate spectrum: the eigenvalues `χ_n` of the prolate differential
//! operator, the Legendre coefficients of `ψ_n`, and the integral
//! eigenvalues `λ_n`, `μ_n`.
//!
//! In the orthonormal Legendre basis the operator
//! `L ψ = -((1 - t²) ψ')' + c² t² ψ` couples degree `k` only with `k ± 2`,
//! so each parity class is a symmetric tridiagonal matrix.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{ProlateError, Result};
use crate::legendre::{self, Jet};
use crate::tridiag::SymTridiagonal;

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_DOUBLINGS: usize = 6;
const INVERSE_ITERATIONS: usize = 3;
/// Trailing Legendre coefficients below this are dropped.
const COEFF_FLOOR: f64 = 1e-20;

/// Band limit, largest index and eigenvalue tolerance for one spectrum job.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProlateContext {
    pub c: f64,
    pub n_max: usize,
    pub tol: f64,
}

impl ProlateContext {
    pub fn new(c: f64, n_max: usize) -> Result<Self> {
        Self::with_tol(c, n_max, DEFAULT_TOL)
    }

    pub fn with_tol(c: f64, n_max: usize, tol: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(ProlateError::InvalidArgument(format!(
                "band limit must be positive and finite, got {c}"
            )));
        }
        if !(tol > 0.0 && tol < 1e-6) {
            return Err(ProlateError::InvalidArgument(format!(
                "tolerance must lie in (0, 1e-6), got {tol}"
            )));
        }
        Ok(Self { c, n_max, tol })
    }

    /// Starting basis dimension per parity class.
    pub fn initial_dim(&self) -> usize {
        (2.0 * self.c / PI).ceil() as usize + self.n_max + 64
    }
}

/// Diagonal entry `<P̄_k, L P̄_k>`.
pub fn matrix_diag(c: f64, k: usize) -> f64 {
    let k = k as f64;
    let kk = k * (k + 1.0);
    kk + c * c * (2.0 * kk - 1.0) / ((2.0 * k + 3.0) * (2.0 * k - 1.0))
}

/// Off-diagonal entry `<P̄_k, L P̄_{k+2}>`.
pub fn matrix_off(c: f64, k: usize) -> f64 {
    let k = k as f64;
    c * c * (k + 1.0) * (k + 2.0)
        / ((2.0 * k + 3.0) * ((2.0 * k + 1.0) * (2.0 * k + 5.0)).sqrt())
}

/// The parity block of `L` with `dim` rows; row `j` is degree `2j + parity`.
pub fn prolate_matrix(c: f64, parity: usize, dim: usize) -> Result<SymTridiagonal> {
    let diag = (0..dim).map(|j| matrix_diag(c, 2 * j + parity)).collect();
    let off = (0..dim.saturating_sub(1))
        .map(|j| matrix_off(c, 2 * j + parity))
        .collect();
    SymTridiagonal::new(diag, off)
}

fn count_of_parity(n_max: usize, parity: usize) -> usize {
    if n_max < parity {
        0
    } else {
        (n_max - parity) / 2 + 1
    }
}

struct Stage {
    chi: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

fn solve_stage(ctx: &ProlateContext, dim: usize) -> Result<Stage> {
    let len = ctx.n_max + 1;
    let mut chi = vec![0.0; len];
    let mut vectors = vec![Vec::new(); len];
    for parity in 0..2 {
        let count = count_of_parity(ctx.n_max, parity);
        if count == 0 {
            continue;
        }
        let t = prolate_matrix(ctx.c, parity, dim)?;
        let eig = t.eigenvalues()?;
        for (j, &lam) in eig.iter().take(count).enumerate() {
            let v = t.eigenvector(lam, INVERSE_ITERATIONS);
            // the Rayleigh quotient keeps relative accuracy when chi is tiny
            chi[2 * j + parity] = t.rayleigh_quotient(&v);
            vectors[2 * j + parity] = v;
        }
    }
    Ok(Stage { chi, vectors })
}

fn worst_change(prev: &[f64], next: &[f64]) -> (usize, f64) {
    prev.iter()
        .zip(next)
        .enumerate()
        .map(|(n, (a, b))| (n, (a - b).abs() / b.abs().max(1.0)))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
}

/// Eigenvalues `χ_0..χ_{n_max}` with normalized `ψ_n` for each.
#[derive(Debug, Clone)]
pub struct ProlateSpectrum {
    context: ProlateContext,
    chi: Vec<f64>,
    functions: Vec<PswfFunction>,
    truncation: usize,
    doublings: usize,
}

impl ProlateSpectrum {
    /// Builds the spectrum, doubling the basis until every `χ_n` with
    /// `n <= n_max` is stable to `tol` relative (absolute below 1).
    pub fn build(ctx: &ProlateContext) -> Result<Self> {
        let mut dim = ctx.initial_dim();
        let mut prev = solve_stage(ctx, dim)?;
        let mut worst = (0, f64::NAN, f64::NAN);
        for doubling in 1..=MAX_DOUBLINGS {
            dim *= 2;
            let next = solve_stage(ctx, dim)?;
            let (n, change) = worst_change(&prev.chi, &next.chi);
            if change < ctx.tol {
                return Self::assemble(ctx, next, dim, doubling);
            }
            worst = (n, prev.chi[n], next.chi[n]);
            prev = next;
        }
        Err(ProlateError::NoConvergence {
            n: worst.0,
            doublings: MAX_DOUBLINGS,
            previous: worst.1,
            last: worst.2,
        })
    }

    fn assemble(ctx: &ProlateContext, stage: Stage, dim: usize, doublings: usize) -> Result<Self> {
        let functions = stage
            .vectors
            .into_iter()
            .zip(&stage.chi)
            .enumerate()
            .map(|(n, (v, &chi))| PswfFunction::from_parts(ctx.c, n, chi, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            context: *ctx,
            chi: stage.chi,
            functions,
            truncation: dim,
            doublings,
        })
    }

    pub fn context(&self) -> &ProlateContext {
        &self.context
    }

    pub fn c(&self) -> f64 {
        self.context.c
    }

    pub fn n_max(&self) -> usize {
        self.context.n_max
    }

    pub fn chi(&self, n: usize) -> f64 {
        self.chi[n]
    }

    pub fn chis(&self) -> &[f64] {
        &self.chi
    }

    pub fn function(&self, n: usize) -> &PswfFunction {
        &self.functions[n]
    }

    pub fn functions(&self) -> &[PswfFunction] {
        &self.functions
    }

    /// Basis dimension per parity class of the accepted stage.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn doublings(&self) -> usize {
        self.doublings
    }

    pub fn integral_eigenvalues(&self) -> Result<Vec<IntegralEigenvalue>> {
        self.functions.iter().map(|f| f.integral_eigenvalue()).collect()
    }
}

/// `χ_n` for selected `n` without eigenvectors.
///
/// Uses Sturm bisection on each parity block, so memory stays linear in
/// the basis size. Meant for large `c` where a full spectrum is too heavy.
pub fn chi_only(c: f64, ns: &[usize], tol: f64) -> Result<Vec<f64>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let ctx = ProlateContext::with_tol(c, n_max, tol)?;
    let solve = |dim: usize| -> Result<Vec<f64>> {
        let blocks = [prolate_matrix(c, 0, dim)?, prolate_matrix(c, 1, dim)?];
        ns.iter()
            .map(|&n| blocks[n % 2].eigenvalue_by_index(n / 2))
            .collect()
    };
    let mut dim = ctx.initial_dim();
    let mut prev = solve(dim)?;
    let mut worst = (0, f64::NAN, f64::NAN);
    for _ in 0..MAX_DOUBLINGS {
        dim *= 2;
        let next = solve(dim)?;
        let (i, change) = worst_change(&prev, &next);
        if change < tol {
            return Ok(next);
        }
        worst = (ns[i], prev[i], next[i]);
        prev = next;
    }
    Err(ProlateError::NoConvergence {
        n: worst.0,
        doublings: MAX_DOUBLINGS,
        previous: worst.1,
        last: worst.2,
    })
}

/// How the overall sign of `ψ_n` was fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSource {
    /// `ψ_n(1)` is well above rounding level and was made positive.
    Endpoint,
    /// `ψ_n(1)` is exponentially small; the sign was read off the last
    /// sample with `|ψ_n| > 1e-3` left of the turning point, which lies
    /// between `t_n` and 1 where `ψ_n` has the sign of `ψ_n(1)`.
    InteriorSample,
}

/// One PSWF `ψ_n` stored through its Legendre coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PswfFunction {
    c: f64,
    n: usize,
    chi: f64,
    coeffs: Vec<f64>,
    parity: usize,
    sign_source: SignSource,
}

impl PswfFunction {
    /// Builds `ψ_n` for band limit `c` from a fresh spectrum.
    pub fn new(c: f64, n: usize) -> Result<Self> {
        let spec = ProlateSpectrum::build(&ProlateContext::new(c, n)?)?;
        Ok(spec.functions[n].clone())
    }

    /// Wraps raw coefficients: `coeffs[j]` multiplies `P̄_{2j + n mod 2}`.
    /// The vector is trimmed, normalized and sign-fixed.
    pub fn from_parts(c: f64, n: usize, chi: f64, mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|x| !x.is_finite()) {
            return Err(ProlateError::InvalidArgument(format!(
                "coefficient vector of psi_{n} is empty or non-finite"
            )));
        }
        let norm = coeffs.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(ProlateError::InvalidArgument(format!(
                "coefficient vector of psi_{n} is zero"
            )));
        }
        let keep = coeffs
            .iter()
            .rposition(|x| x.abs() > COEFF_FLOOR * norm)
            .unwrap_or(0)
            + 1;
        coeffs.truncate(keep);
        let norm = coeffs.iter().map(|x| x * x).sum::<f64>().sqrt();
        coeffs.iter_mut().for_each(|x| *x /= norm);

        let mut f = Self {
            c,
            n,
            chi,
            coeffs,
            parity: n % 2,
            sign_source: SignSource::Endpoint,
        };
        let (sign, source) = f.sign_at_right_end();
        if sign < 0.0 {
            f.coeffs.iter_mut().for_each(|x| *x = -*x);
        }
        f.sign_source = source;
        Ok(f)
    }

    fn sign_at_right_end(&self) -> (f64, SignSource) {
        let end = self.endpoint_value();
        let scale: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, b)| b.abs() * (self.degree(j) as f64 + 0.5).sqrt())
            .sum();
        if end.abs() > 1e-8 * scale.max(1.0) {
            return (end.signum(), SignSource::Endpoint);
        }
        let step = 1.0 / (16.0 * (self.n as f64 + self.c));
        let mut t = self.turning_point().min(1.0);
        while t > 0.0 {
            let v = self.psi(t);
            if v.abs() > 1e-3 {
                return (v.signum(), SignSource::InteriorSample);
            }
            t -= step;
        }
        (end.signum(), SignSource::Endpoint)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// `coeffs()[j]` multiplies `P̄_{2j + parity}`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn parity(&self) -> usize {
        self.parity
    }

    pub fn sign_source(&self) -> SignSource {
        self.sign_source
    }

    /// Legendre degree of coefficient `j`.
    pub fn degree(&self, j: usize) -> usize {
        2 * j + self.parity
    }

    /// `√χ_n / c`, where `χ_n - c² t²` changes sign.
    pub fn turning_point(&self) -> f64 {
        self.chi.sqrt() / self.c
    }

    /// `ψ_n(1)` from `P_k(1) = 1`.
    pub fn endpoint_value(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, b)| b * (self.degree(j) as f64 + 0.5).sqrt())
            .sum()
    }

    /// `ψ_n`, `ψ_n'`, `ψ_n''` by Legendre recurrences.
    pub fn jet(&self, t: f64) -> Jet {
        legendre::eval_parity_series(&self.coeffs, self.parity, t)
    }

    pub fn psi(&self, t: f64) -> f64 {
        if t.abs() == 1.0 {
            let v = self.endpoint_value();
            return if t < 0.0 && self.parity == 1 { -v } else { v };
        }
        self.jet(t).value
    }

    pub fn dpsi(&self, t: f64) -> f64 {
        if t.abs() == 1.0 {
            let d = 0.5 * (self.chi - self.c * self.c) * self.endpoint_value();
            // ψ' has the opposite parity of ψ
            return if t < 0.0 && self.parity == 0 { -d } else { d };
        }
        self.jet(t).d1
    }

    /// `ψ_n''` from the differential equation, for `|t| < 1`.
    pub fn d2psi_ode(&self, t: f64) -> f64 {
        let j = self.jet(t);
        (2.0 * t * j.d1 - (self.chi - self.c * self.c * t * t) * j.value) / (1.0 - t * t)
    }

    /// `(1-t²)ψ'' - 2tψ' + (χ - c²t²)ψ` with `ψ''` from the recurrence.
    pub fn ode_residual(&self, t: f64) -> f64 {
        let j = self.jet(t);
        (1.0 - t * t) * j.d2 - 2.0 * t * j.d1 + (self.chi - self.c * self.c * t * t) * j.value
    }

    /// `|λ_n|`, its phase and `μ_n` from the integral equation.
    pub fn integral_eigenvalue(&self) -> Result<IntegralEigenvalue> {
        let c = self.c;

        let (ratio, point) = if self.parity == 0 {
            let at0 = self.psi(0.0);
            if at0.abs() > 1e-8 {
                // ∫ψ = √2 β_0
                (SQRT_2 * self.low_coeff() / at0, 0.0)
            } else {
                self.fallback_ratio()?
            }
        } else {
            let d0 = self.dpsi(0.0);
            if d0.abs() > 1e-8 * self.chi.sqrt().max(1.0) {
                // ∫tψ = √(2/3) β_0
                (c * (2.0f64 / 3.0).sqrt() * self.low_coeff() / d0, 0.0)
            } else {
                self.fallback_ratio()?
            }
        };
        let lambda_abs = ratio.abs();
        let expected_sign = if (self.n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(IntegralEigenvalue {
            n: self.n,
            lambda_abs,
            phase_power: (self.n % 4) as u8,
            mu: c / (2.0 * PI) * lambda_abs * lambda_abs,
            signed_ratio: ratio,
            phase_consistent: ratio * expected_sign > 0.0,
            eval_point: point,
        })
    }

    /// The lowest-degree coefficient with full relative accuracy.
    ///
    /// Inverse iteration only resolves tiny components to about `eps` times
    /// the largest one, so when the coefficients decay toward degree zero
    /// `β_0` is rebuilt from the dominant `β_m` through the ratios
    /// `β_j / β_{j+1}` of the three-term recurrence, which are stable in
    /// that direction.
    fn low_coeff(&self) -> f64 {
        let b = &self.coeffs;
        let m = (0..b.len()).fold(0, |m, j| if b[j].abs() > b[m].abs() { j } else { m });
        if m == 0 || b[0].abs() > 1e-6 * b[m].abs() {
            return b[0];
        }
        let (mut r, mut prod) = (0.0, 1.0);
        for j in 0..m {
            let k = 2 * j + self.parity;
            let mut denom = matrix_diag(self.c, k) - self.chi;
            if j > 0 {
                denom += matrix_off(self.c, k - 2) * r;
            }
            r = -matrix_off(self.c, k) / denom;
            prod *= r;
        }
        b[m] * prod
    }

    /// `λ ψ(x) = ∫ ψ(t) e^{icxt} dt` at the location of `max |ψ_n|`.
    /// Only the real part (even n) or imaginary part (odd n) survives.
    fn fallback_ratio(&self) -> Result<(f64, f64)> {
        let samples = 16 * (self.n + self.c.ceil() as usize) + 1;
        let (mut best_t, mut best) = (0.0, 0.0);
        for i in 0..=samples {
            let t = i as f64 / samples as f64;
            let v = self.psi(t).abs();
            if v > best {
                best = v;
                best_t = t;
            }
        }
        if best <= 1e-8 {
            return Err(ProlateError::DegenerateEvaluation(self.n));
        }
        let nodes = (2.0 * (self.c + self.n as f64)).ceil() as usize + 50;
        let (x, w) = legendre::gauss_legendre(nodes);
        let cx = self.c * best_t;
        let int: f64 = x
            .iter()
            .zip(&w)
            .map(|(&t, &w)| (self.psi(t), w, t))
            .map(|(v, w, t)| {
                let k = if self.parity == 0 { (cx * t).cos() } else { (cx * t).sin() };
                v * w * k
            })
            .sum();
        Ok((int / self.psi(best_t), best_t))
    }
}

/// `λ_n = i^n |λ_n|` and `μ_n = (c/2π)|λ_n|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEigenvalue {
    pub n: usize,
    pub lambda_abs: f64,
    /// `n mod 4`.
    pub phase_power: u8,
    pub mu: f64,
    /// `λ_n / i^{n mod 2}` as computed; real up to quadrature error.
    pub signed_ratio: f64,
    /// Whether `signed_ratio` has the sign required by `λ_n = i^n |λ_n|`.
    pub phase_consistent: bool,
    /// Point `x` at which the integral identity was evaluated.
    pub eval_point: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::{gauss_legendre, normalized_table};
    use crate::ode::{integrate, OdeOptions};

    #[test]
    fn matrix_entries_match_dense_galerkin() {
        // <P̄_i, L P̄_j> by quadrature with L ψ = -(1-x²)ψ'' + 2xψ' + c²x²ψ
        let c = 3.7;
        let kmax = 24;
        let (x, w) = gauss_legendre(60);
        let tabs: Vec<_> = x.iter().map(|&t| normalized_table(kmax, t)).collect();
        let entry = |i: usize, j: usize| -> f64 {
            tabs.iter()
                .zip(&x)
                .zip(&w)
                .map(|((tab, &t), &wt)| {
                    let pj = tab[j];
                    let lp = -(1.0 - t * t) * pj.d2 + 2.0 * t * pj.d1 + c * c * t * t * pj.value;
                    wt * tab[i].value * lp
                })
                .sum()
        };
        for i in 0..=kmax {
            for j in 0..=kmax {
                let g = entry(i, j);
                let expected = if i == j {
                    matrix_diag(c, i)
                } else if j == i + 2 {
                    matrix_off(c, i)
                } else if i == j + 2 {
                    matrix_off(c, j)
                } else {
                    0.0
                };
                assert!(
                    (g - expected).abs() < 1e-9 * (1.0 + expected.abs()),
                    "({i},{j}): {g} vs {expected}"
                );
            }
        }
        assert!((matrix_diag(c, 0) - c * c / 3.0).abs() < 1e-14);
    }

    #[test]
    fn context_validation() {
        assert!(ProlateContext::new(0.0, 3).is_err());
        assert!(ProlateContext::new(-1.0, 3).is_err());
        assert!(ProlateContext::with_tol(1.0, 3, 1e-5).is_err());
        assert!(ProlateContext::with_tol(1.0, 3, 0.0).is_err());
        assert!(ProlateContext::new(1.0, 0).is_ok());
    }

    #[test]
    fn legendre_limit_for_tiny_c() {
        let s = ProlateSpectrum::build(&ProlateContext::new(1e-8, 5).unwrap()).unwrap();
        assert!((s.chi(5) - 30.0).abs() < 1e-6);
        for n in 0..=5 {
            assert!((s.chi(n) - (n * (n + 1)) as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn reference_values() {
        let s = ProlateSpectrum::build(&ProlateContext::new(10.0, 6).unwrap()).unwrap();
        assert!((s.chi(6) / 100.0 - 1.0104).abs() < 0.5e-4);
        let s = ProlateSpectrum::build(&ProlateContext::new(20.0, 14).unwrap()).unwrap();
        assert!((s.chi(9) - 325.42).abs() < 0.005);
        assert!((s.chi(14) - 437.36).abs() < 0.005);
        let s = ProlateSpectrum::build(&ProlateContext::new(100.0, 64).unwrap()).unwrap();
        assert!((s.chi(64) / 1e4 - 1.0066).abs() < 0.5e-4);
    }

    #[test]
    fn sign_parity_and_normalization() {
        let s = ProlateSpectrum::build(&ProlateContext::new(20.0, 14).unwrap()).unwrap();
        for f in s.functions() {
            assert!(f.endpoint_value() > 0.0 || f.sign_source() == SignSource::InteriorSample);
            let nrm: f64 = f.coeffs().iter().map(|x| x * x).sum();
            assert!((nrm - 1.0).abs() < 1e-14);
            for t in [0.1, 0.45, 0.8] {
                let sgn = if f.parity() == 0 { 1.0 } else { -1.0 };
                assert!((f.psi(-t) - sgn * f.psi(t)).abs() < 1e-13);
            }
            if f.parity() == 1 {
                assert!(f.psi(0.0).abs() < 1e-14);
            }
            // endpoint formulas agree with the recurrence at t = 1
            let j = f.jet(1.0);
            assert!((j.value - f.psi(1.0)).abs() < 1e-12 * j.value.abs().max(1.0));
            assert!((j.d1 - f.dpsi(1.0)).abs() < 1e-9 * j.d1.abs().max(1.0));
        }
    }

    #[test]
    fn below_regime_sign_uses_interior_sample() {
        let f = PswfFunction::new(200.0, 2).unwrap();
        assert_eq!(f.sign_source(), SignSource::InteriorSample);
        // positive on the last hump
        let t = f.turning_point() * 0.9;
        assert!(f.psi(t) > 0.0);
    }

    #[test]
    fn ode_residual_is_small() {
        let s = ProlateSpectrum::build(&ProlateContext::new(20.0, 20).unwrap()).unwrap();
        for f in s.functions() {
            for i in -19..=19 {
                let t = i as f64 / 20.0;
                let r = f.ode_residual(t);
                let scale = (f.chi() + 400.0) * f.psi(t).abs().max(1.0);
                assert!(r.abs() < 1e-8 * scale, "n={} t={t} r={r}", f.n());
            }
        }
    }

    #[test]
    fn matches_independent_ode_integration() {
        // oracle: (ψ, ψ') integrated from t = 0 with Dormand–Prince
        let f = PswfFunction::new(20.0, 14).unwrap();
        let (chi, c) = (f.chi(), f.c());
        let opts = OdeOptions {
            rtol: 1e-13,
            atol: 1e-13,
            ..Default::default()
        };
        let tr = integrate(
            |t, y: &[f64; 2]| {
                [y[1], (2.0 * t * y[1] - (chi - c * c * t * t) * y[0]) / (1.0 - t * t)]
            },
            0.0,
            [f.psi(0.0), f.dpsi(0.0)],
            0.9999,
            &opts,
        )
        .unwrap();
        for i in 0..=999 {
            let t = 0.9999 * i as f64 / 999.0;
            let y = tr.eval(t);
            assert!((y[0] - f.psi(t)).abs() < 1e-8, "t={t}: {} vs {}", y[0], f.psi(t));
        }
    }

    #[test]
    fn lambda_small_c_limit() {
        // ψ_n → P̄_n as c → 0; matching the x^n coefficient of the integral
        // identity gives |λ_n| ≈ 2 (2c)^n (n!)² / ((2n)! (2n+1)!!)
        let c = 0.01;
        let s = ProlateSpectrum::build(&ProlateContext::new(c, 12).unwrap()).unwrap();
        for ie in s.integral_eigenvalues().unwrap() {
            let n = ie.n;
            let fact = |m: usize| (1..=m).map(|k| k as f64).product::<f64>();
            let dfact: f64 = (1..=2 * n + 1).step_by(2).map(|k| k as f64).product();
            let limit = 2.0 * (2.0 * c).powi(n as i32) * fact(n).powi(2) / (fact(2 * n) * dfact);
            assert!((ie.lambda_abs / limit - 1.0).abs() < 1e-3, "n={n} {} vs {limit}", ie.lambda_abs);
            assert!(ie.phase_consistent);
        }
    }

    #[test]
    fn mu_trace_and_phases() {
        let c = 10.0;
        let s = ProlateSpectrum::build(&ProlateContext::new(c, 40).unwrap()).unwrap();
        let ies = s.integral_eigenvalues().unwrap();
        let trace: f64 = ies.iter().map(|e| e.mu).sum();
        assert!((trace - 2.0 * c / PI).abs() < 1e-8, "trace {trace}");
        for e in &ies {
            assert!(e.mu > 0.0 && e.mu < 1.0 + 1e-12);
            assert!(e.phase_consistent, "n={}", e.n);
        }
        for w in ies.windows(2) {
            assert!(w[0].lambda_abs > w[1].lambda_abs, "n={}", w[1].n);
        }
    }

    #[test]
    fn chi_only_agrees_with_full_build() {
        let s = ProlateSpectrum::build(&ProlateContext::new(50.0, 40).unwrap()).unwrap();
        let ns = [0, 7, 31, 40];
        let v = chi_only(50.0, &ns, 1e-12).unwrap();
        for (k, &n) in ns.iter().enumerate() {
            assert!((v[k] - s.chi(n)).abs() < 1e-11 * s.chi(n));
        }
    }
}
